/**
 * @file fitting.hpp
 * @brief Project-out inverse-compositional AAM fitting.
 *
 * The residual r(x) = I_e(W(x;p)) - A0(x) is taken over the visible canonical
 * pixels after standardizing the sampled texture. Appearance modes are projected
 * out of both residual and steepest-descent images, so the fitting error is the
 * part of r no appearance combination explains.
 *
 * Before the inverse-compositional iterations, optional coarse levels align the
 * shape against the smoothed template alone (template and warped samples both
 * smoothed inside the visible support) with additive Gauss-Newton on a
 * finite-difference Jacobian. The inverse-compositional linearization is taken
 * at the template, which sees nothing outside the mesh; from a few pixels off it
 * proposes steps that climb, while the exact residual stays well behaved.
 */
#pragma once

#include "tfr/aam_model.hpp"
#include "tfr/diffusion.hpp"

#include <Eigen/Core>

#include <vector>

namespace tfr::aam {

struct FitConfig {
    int max_iterations = 50;
    double tolerance = 1e-4;
    bool step_halving = true;
    int max_halvings = 8;
    /// When no halved step lowers the error, the fit is polished against the exact
    /// residual and counts as converged once that Gauss-Newton step moves the
    /// landmarks by less than this RMS distance (pixels).
    double stall_tolerance = 0.5;
    /// Smoothing (canonical pixels) of the coarse levels, run coarsest first.
    std::vector<double> coarse_sigmas{4.0, 2.0};
    /// Iteration cap of each coarse level and of the polish.
    int coarse_iterations = 15;

    void validate() const;
};

struct FitResult {
    ShapeParams params;
    ShapeVec shape;
    Eigen::VectorXd appearance;
    double e_icaam = 0.0;
    std::size_t n_pixels = 0;
    double mean_pixel_error = 0.0;
    Raster residual;
    bool converged = false;
    int iterations = 0;
    /// Full-resolution error before the first and after every accepted update.
    std::vector<double> error_history;
};

/// ||r||^2 - ||A^T r||^2 for orthonormal columns A: the least-squares residual of r against span(A).
double projected_out_error(const Eigen::VectorXd& residual, const Eigen::MatrixXd& modes);

/// Precomputed steepest-descent images, Hessian and smoothed templates of one
/// model. Immutable, so one Fitter may serve concurrent fits.
class Fitter {
public:
    Fitter(const AamModel& model, FitConfig cfg = {});

    FitResult fit(const diffusion::DetailImage& ie, const ShapeParams& p0) const;

    /// Projected-out error at `params` on one level (the last level is full resolution).
    double error_at(const diffusion::DetailImage& ie, const ShapeParams& params, std::size_t level) const;
    std::size_t level_count() const noexcept { return levels_.size(); }

    const AamModel& model() const noexcept { return *model_; }
    const FitConfig& config() const noexcept { return cfg_; }

    struct Level {
        double sigma = 0.0;
        Eigen::VectorXd a0;
        Eigen::MatrixXd modes;
        /// (H^-1 SD^T): parameter update per unit residual (full resolution only).
        Eigen::MatrixXd update;
        Raster support_weight;
    };

private:
    double level_error(const Level& lv, const Raster& img, const ShapeVec& shape, Eigen::VectorXd* r) const;
    ShapeParams compose(const ShapeParams& p, const Eigen::VectorXd& delta) const;
    struct NumericRun {
        ShapeParams params;
        double error = 0.0;
        double last_step_px = 0.0;
        std::vector<double> accepted;
    };
    /// Additive Gauss-Newton with a forward-difference Jacobian of the projected-out residual.
    /// Stops once an accepted move is below `min_move_px` (RMS landmark displacement).
    NumericRun refine_numeric(const Level& lv, const Raster& img, const ShapeParams& start, int iterations,
                              double min_move_px) const;

    const AamModel* model_;
    FitConfig cfg_;
    std::vector<int> visible_;
    Raster support_;
    std::vector<Level> levels_;
    std::vector<std::vector<int>> incidence_;
};

FitResult fit_icaam(const diffusion::DetailImage& ie, const AamModel& model, const ShapeParams& p0,
                    const FitConfig& cfg = {});

}  // namespace tfr::aam
