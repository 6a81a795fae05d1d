#pragma once

#include "tfr/canonical_frame.hpp"
#include "tfr/diffusion.hpp"

#include <Eigen/Core>

#include <vector>

namespace tfr::aam {

/// Shape-normalized texture model over the pixels of a CanonicalFrame.
/// Template and modes are stored over every frame pixel and are zero on
/// pixels hidden by the visibility mask. The template is standardized on the
/// visible support, like the samples it is compared with.
struct AppearanceModel {
    Eigen::VectorXd a0;
    Eigen::MatrixXd modes;  // orthonormal on the visible support, zero-mean
    Eigen::VectorXd variances;
    /// Variance the retained modes do not explain (per sample, summed over pixels).
    double discarded_variance = 0.0;
    std::vector<unsigned char> visible;

    std::size_t visible_count() const;
    int n_modes() const { return static_cast<int>(modes.cols()); }

    friend bool operator==(const AppearanceModel&, const AppearanceModel&) = default;
};

/// Zero mean, unit variance over the selected entries (all when `visible` is empty).
Eigen::VectorXd standardize(const Eigen::VectorXd& v, const std::vector<unsigned char>& visible = {});

/// PCA of standardized textures. `samples` has one column per texture.
AppearanceModel appearance_from_samples(const Eigen::MatrixXd& samples, double retention = 0.95);

/// Warps each detail image into `frame` with its landmarks, then builds the model.
AppearanceModel train_appearance_model(const std::vector<diffusion::DetailImage>& images,
                                       const std::vector<ShapeVec>& shapes, const CanonicalFrame& frame,
                                       double retention = 0.95);

/// Restricts a model to `visible`: the template is restandardized on the reduced
/// support and the modes re-derived from the stored mode covariance.
AppearanceModel restrict_appearance(const AppearanceModel& model, const std::vector<unsigned char>& visible);

}  // namespace tfr::aam
