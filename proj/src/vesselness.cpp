#include "tfr/vesselness.hpp"

#include "tfr/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tfr::vesselness {
namespace {

double normalization(const imaging::HessianField& h, Mode mode) {
    return mode == Mode::FrangiClassic ? h.scale * h.scale : 1.0;
}

}  // namespace

void VesselnessParams::validate() const {
    if (!(beta > 0.0)) fail(ErrorKind::InvalidArgument, "vesselness beta must be > 0");
    if (scales.empty()) fail(ErrorKind::InvalidArgument, "vesselness scales must be nonempty");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (!(scales[i] > 0.0)) fail(ErrorKind::InvalidArgument, "vesselness scales must be > 0");
        if (i > 0 && !(scales[i] > scales[i - 1]))
            fail(ErrorKind::InvalidArgument, "vesselness scales must be strictly increasing");
    }
}

EigenPair eig_sym_2x2(double lxx, double lxy, double lyy) {
    const double m = 0.5 * (lxx + lyy);
    const double half_diff = 0.5 * (lxx - lyy);
    const double d = std::hypot(half_diff, lxy);
    const double lo = m - d;
    const double hi = m + d;
    if (std::abs(hi) < std::abs(lo)) return {hi, lo};
    return {lo, hi};
}

double vesselness_response(const EigenPair& e, double beta, double c, Mode mode, Polarity polarity) {
    const bool gate = polarity == Polarity::BrightVessels ? e.lambda2 < 0.0 : e.lambda2 > 0.0;
    if (!gate) return 0.0;
    const double ra = std::abs(e.lambda1) / std::abs(e.lambda2);
    const double s = std::sqrt(e.lambda1 * e.lambda1 + e.lambda2 * e.lambda2);
    if (mode == Mode::PaperVerbatim) {
        return (1.0 - std::exp(-ra / (2.0 * beta * beta))) * (1.0 - std::exp(-s / (2.0 * c * c)));
    }
    return std::exp(-ra * ra / (2.0 * beta * beta)) * (1.0 - std::exp(-s * s / (2.0 * c * c)));
}

double max_hessian_norm(const imaging::HessianField& h, Mode mode) {
    const double k = normalization(h, mode);
    double best = 0.0;
    for (std::size_t i = 0; i < h.lxx.size(); ++i) {
        const double a = h.lxx.values()[i] * k;
        const double b = h.lxy.values()[i] * k;
        const double c = h.lyy.values()[i] * k;
        best = std::max(best, std::sqrt(a * a + 2.0 * b * b + c * c));
    }
    return best;
}

Raster vesselness_at_scale(const imaging::HessianField& h, const VesselnessParams& p, kernels::Exec exec) {
    if (!(p.beta > 0.0)) fail(ErrorKind::InvalidArgument, "vesselness beta must be > 0");
    double c = p.cparam;
    if (c <= 0.0) c = 0.5 * max_hessian_norm(h, p.mode);
    const double k = normalization(h, p.mode);
    if (!(c > 0.0)) return Raster(h.lxx.width(), h.lxx.height());  // flat input: no structure anywhere
    const double beta = p.beta;
    const Mode mode = p.mode;
    const Polarity polarity = p.polarity;
    return kernels::transform3(
        h.lxx, h.lxy, h.lyy,
        [=](double xx, double xy, double yy) {
            return vesselness_response(eig_sym_2x2(xx * k, xy * k, yy * k), beta, c, mode, polarity);
        },
        exec);
}

VesselnessMap vesselness_multiscale(const Raster& img, const VesselnessParams& p, kernels::Exec exec) {
    p.validate();
    std::vector<imaging::HessianField> fields;
    fields.reserve(p.scales.size());
    for (double s : p.scales) fields.push_back(imaging::hessian_at_scale(img, s, exec));

    VesselnessParams resolved = p;
    if (resolved.cparam <= 0.0) {
        // One c for every scale keeps the normalized responses comparable across scales.
        double norm = 0.0;
        for (const auto& h : fields) norm = std::max(norm, max_hessian_norm(h, p.mode));
        resolved.cparam = 0.5 * norm;
    }

    VesselnessMap out{Raster(img.width(), img.height()), Raster(img.width(), img.height())};
    if (!(resolved.cparam > 0.0)) return out;
    for (const auto& h : fields) {
        const Raster v = vesselness_at_scale(h, resolved, exec);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v.values()[i] > out.v0.values()[i]) {
                out.v0.values()[i] = v.values()[i];
                out.argmax_scale.values()[i] = h.scale;
            }
        }
    }
    return out;
}

Mode parse_mode(const std::string& s) {
    if (s == "paper-verbatim") return Mode::PaperVerbatim;
    if (s == "frangi-classic") return Mode::FrangiClassic;
    fail(ErrorKind::InvalidArgument, "unknown vesselness mode '" + s + "'");
}

std::string to_string(Mode m) { return m == Mode::PaperVerbatim ? "paper-verbatim" : "frangi-classic"; }

Polarity parse_polarity(const std::string& s) {
    if (s == "bright" || s == "bright-vessels") return Polarity::BrightVessels;
    if (s == "dark" || s == "dark-vessels") return Polarity::DarkVessels;
    fail(ErrorKind::InvalidArgument, "unknown vesselness polarity '" + s + "'");
}

std::string to_string(Polarity p) { return p == Polarity::BrightVessels ? "bright-vessels" : "dark-vessels"; }

}  // namespace tfr::vesselness
