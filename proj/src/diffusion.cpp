#include "tfr/diffusion.hpp"

#include "tfr/error.hpp"
#include "tfr/imaging.hpp"

#include <cmath>

namespace tfr::diffusion {

void DiffusionConfig::validate() const {
    if (!(dt > 0.0 && dt <= 0.25)) fail(ErrorKind::InvalidArgument, "diffusion dt must satisfy 0 < dt <= 0.25");
    if (steps < 1) fail(ErrorKind::InvalidArgument, "diffusion steps must be >= 1");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorKind::InvalidArgument, "diffusion kappa must be > 0");
}

DetailImage::DetailImage(Raster data) : data_(std::move(data)) {
    for (double v : data_.values()) {
        if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::InvalidArgument, "detail image values must lie in [0,1]");
    }
}

double conductance(double gmag, double kappa) {
    if (!(gmag >= 0.0)) fail(ErrorKind::InvalidArgument, "gradient magnitude must be >= 0");
    if (!(kappa > 0.0)) fail(ErrorKind::InvalidArgument, "kappa must be > 0");
    return std::exp(-gmag / kappa);
}

ThermalImage diffuse(const ThermalImage& img, const DiffusionConfig& cfg, kernels::Exec exec) {
    cfg.validate();
    Raster cur = img;
    for (int i = 0; i < cfg.steps; ++i) cur = kernels::diffusion_step(cur, cfg.dt, cfg.kappa, exec);
    return cur;
}

DetailImage enhance_detail(const ThermalImage& img, const DiffusionConfig& cfg) {
    // hist_equalize bins over the input's own [min,max], which is the min-max rescale of I - I_d.
    return DetailImage(imaging::hist_equalize(subtract(img, diffuse(img, cfg))));
}

}  // namespace tfr::diffusion
