/**
 * @file vesselness.hpp
 * @brief Multi-scale Hessian vesselness (tubular-structure likelihood).
 *
 * Two response forms are available. PaperVerbatim evaluates
 *   V = (1 - exp(-R_A / 2 beta^2)) * (1 - exp(-S / 2 c^2))
 * on raw second derivatives. FrangiClassic evaluates
 *   V = exp(-R_A^2 / 2 beta^2) * (1 - exp(-S^2 / 2 c^2))
 * on scale-normalized (s^2) second derivatives. Both are gated on the sign of
 * the larger-magnitude eigenvalue and return 0 where the gate fails.
 */
#pragma once

#include "tfr/imaging.hpp"
#include "tfr/raster.hpp"

#include <string>
#include <vector>

namespace tfr::vesselness {

enum class Mode { PaperVerbatim, FrangiClassic };
/// BrightVessels gates on lambda2 < 0, DarkVessels on lambda2 > 0.
enum class Polarity { BrightVessels, DarkVessels };

struct VesselnessParams {
    double beta = 0.5;
    /// <= 0 selects the automatic value: half the largest Hessian Frobenius norm over the image.
    double cparam = 0.0;
    std::vector<double> scales{1.0, 1.4, 2.0, 2.8, 4.0, 5.7, 8.0};
    Mode mode = Mode::FrangiClassic;
    Polarity polarity = Polarity::BrightVessels;

    void validate() const;
};

/// |lambda1| <= |lambda2|; on a magnitude tie lambda1 is the smaller signed value.
struct EigenPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
};

struct VesselnessMap {
    Raster v0;
    /// Scale that produced v0 at each pixel; 0 where no scale responded.
    Raster argmax_scale;
};

EigenPair eig_sym_2x2(double lxx, double lxy, double lyy);

/// Single-pixel response from an ordered eigenpair.
double vesselness_response(const EigenPair& e, double beta, double c, Mode mode, Polarity polarity);

/// Largest sqrt(lxx^2 + 2 lxy^2 + lyy^2) over the field, after the mode's scale normalization.
double max_hessian_norm(const imaging::HessianField& h, Mode mode);

Raster vesselness_at_scale(const imaging::HessianField& h, const VesselnessParams& p,
                           kernels::Exec exec = kernels::Exec::Parallel);

VesselnessMap vesselness_multiscale(const Raster& img, const VesselnessParams& p,
                                    kernels::Exec exec = kernels::Exec::Parallel);

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);
Polarity parse_polarity(const std::string& s);
std::string to_string(Polarity p);

}  // namespace tfr::vesselness
