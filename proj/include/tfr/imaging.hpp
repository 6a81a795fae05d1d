/**
 * @file imaging.hpp
 * @brief Scale-space primitives, histogram equalization and face localization.
 *
 * All functions are pure; they never mutate their inputs.
 */
#pragma once

#include "tfr/kernels.hpp"
#include "tfr/raster.hpp"

#include <vector>

namespace tfr::imaging {

struct GradientField {
    Raster gx;
    Raster gy;
    Raster magnitude;
};

/// Second Gaussian derivatives at one scale. The single lxy channel keeps it symmetric.
struct HessianField {
    Raster lxx;
    Raster lxy;
    Raster lyy;
    double scale = 0.0;
};

struct BoundingBox {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive
};

struct FaceLocus {
    double cx = 0.0;
    double cy = 0.0;
    /// Equivalent radius sqrt(area / pi) of the face component.
    double scale = 0.0;
    BoundingBox bbox;
    std::size_t area = 0;
};

/// Sampled Gaussian taps of radius ceil(3*sigma), normalized to unit sum.
std::vector<double> gaussian_taps(double sigma);
/// First-derivative taps normalized so a unit ramp differentiates to exactly 1.
std::vector<double> gaussian_d1_taps(double sigma);
/// Second-derivative taps: zero sum and x^2 differentiates to exactly 2.
std::vector<double> gaussian_d2_taps(double sigma);

ThermalImage gaussian_smooth(const ThermalImage& img, double sigma, kernels::Exec exec = kernels::Exec::Parallel);

GradientField gradient(const ThermalImage& img);

HessianField hessian_at_scale(const ThermalImage& img, double s, kernels::Exec exec = kernels::Exec::Parallel);

/// 256-bin CDF remapping over the image's [min,max]. Constant images are returned unchanged.
ThermalImage hist_equalize(const ThermalImage& img);

/// Otsu threshold (256 bins over [min,max]); returns the intensity threshold. Pixels > threshold are foreground.
double otsu_threshold(const ThermalImage& img);

/// Otsu foreground, largest 8-connected component, centroid and equivalent radius.
FaceLocus localize_face(const ThermalImage& img);

/// Component mask of the region localize_face picked (same rules).
Mask face_mask(const ThermalImage& img);

/// Affine rescale to [0,1]; constant input maps to all zeros.
Raster rescale_unit(const Raster& img);

}  // namespace tfr::imaging
