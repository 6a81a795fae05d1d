/**
 * @file shape_model.hpp
 * @brief Point distribution model: generalized Procrustes alignment followed by PCA.
 *
 * A shape instance is N(s0 + S p; q): non-rigid modes S applied to the centered
 * mean s0, then a similarity N parameterized by four coefficients q over the
 * orthonormal basis {s0, rot90(s0), 1_x, 1_y}. The modes are kept orthogonal to
 * that basis, so the stacked basis [similarity | modes] is orthonormal.
 */
#pragma once

#include "tfr/mesh.hpp"

#include <Eigen/Core>

#include <vector>

namespace tfr::aam {

struct ShapeParams {
    Eigen::Vector4d q = Eigen::Vector4d::Zero();
    Eigen::VectorXd p;

    Eigen::VectorXd stacked() const;
    static ShapeParams from_stacked(const Eigen::VectorXd& v);
};

struct Similarity {
    double a = 1.0;  // s cos(theta)
    double b = 0.0;  // s sin(theta)
    double tx = 0.0;
    double ty = 0.0;

    ShapeVec apply(const ShapeVec& s) const;
    Similarity inverse() const;
};

class ShapeModel {
public:
    ShapeModel() = default;
    ShapeModel(ShapeVec mean, Eigen::MatrixXd modes, Eigen::VectorXd variances);

    const ShapeVec& mean() const noexcept { return mean_; }
    const Eigen::MatrixXd& modes() const noexcept { return modes_; }
    const Eigen::VectorXd& variances() const noexcept { return variances_; }
    const Eigen::MatrixXd& similarity_basis() const noexcept { return sim_basis_; }
    /// [similarity (4) | modes (m)], orthonormal columns.
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }

    int n_landmarks() const noexcept { return static_cast<int>(mean_.size() / 2); }
    int n_modes() const noexcept { return static_cast<int>(modes_.cols()); }
    int n_params() const noexcept { return 4 + n_modes(); }

    Similarity similarity(const Eigen::Vector4d& q) const;
    Eigen::Vector4d similarity_params(const Similarity& t) const;

    ShapeVec instance(const ShapeParams& params) const;
    /// Least-squares similarity to the mean, then mode coefficients of the aligned residual.
    ShapeParams project(const ShapeVec& shape) const;

    friend bool operator==(const ShapeModel& a, const ShapeModel& b) {
        return a.mean_ == b.mean_ && a.modes_ == b.modes_ && a.variances_ == b.variances_;
    }

private:
    ShapeVec mean_;
    Eigen::MatrixXd modes_;
    Eigen::VectorXd variances_;
    Eigen::MatrixXd sim_basis_;
    Eigen::MatrixXd basis_;
};

/// Closed-form similarity T minimizing |T(from) - to|^2.
Similarity procrustes_similarity(const ShapeVec& from, const ShapeVec& to);

ShapeVec centered(const ShapeVec& s);

/// Orthonormal similarity basis for a centered shape.
Eigen::MatrixXd similarity_basis_for(const ShapeVec& centered_mean);

/// Keeps the leading eigenpairs whose cumulative variance reaches `retention` of the total.
int retained_count(const Eigen::VectorXd& descending_eigenvalues, double retention);

ShapeModel train_shape_model(const std::vector<ShapeVec>& shapes, double retention = 0.95);

/// GPA mean only (centered, scaled to the average centroid size).
ShapeVec procrustes_mean(const std::vector<ShapeVec>& shapes);

}  // namespace tfr::aam
