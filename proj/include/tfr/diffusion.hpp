/**
 * @file diffusion.hpp
 * @brief Perona-Malik anisotropic diffusion and the detail-enhancement transform.
 */
#pragma once

#include "tfr/kernels.hpp"
#include "tfr/raster.hpp"

namespace tfr::diffusion {

struct DiffusionConfig {
    double kappa = 400.0;
    double dt = 0.2;
    int steps = 20;

    /// Throws invalid-argument unless 0 < dt <= 0.25, steps >= 1, kappa > 0.
    void validate() const;
};

/// Enhanced image I_e. Values lie in [0,1]; construction checks that.
class DetailImage {
public:
    DetailImage() = default;
    explicit DetailImage(Raster data);

    const Raster& raster() const noexcept { return data_; }
    int width() const noexcept { return data_.width(); }
    int height() const noexcept { return data_.height(); }

    friend bool operator==(const DetailImage&, const DetailImage&) = default;

private:
    Raster data_;
};

/// exp(-gmag / kappa).
double conductance(double gmag, double kappa = 400.0);

/// Explicit Euler iteration of the 4-neighbour flux scheme; returns I_d.
ThermalImage diffuse(const ThermalImage& img, const DiffusionConfig& cfg, kernels::Exec exec = kernels::Exec::Parallel);

/// hist_equalize(I - diffuse(I)); the equalizer's [min,max] binning bounds the signed difference.
DetailImage enhance_detail(const ThermalImage& img, const DiffusionConfig& cfg);

}  // namespace tfr::diffusion
