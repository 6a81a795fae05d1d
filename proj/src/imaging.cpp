#include "tfr/imaging.hpp"

#include "tfr/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace tfr::imaging {
namespace {

int radius_for(double sigma) { return static_cast<int>(std::ceil(3.0 * sigma)); }

void require_finite_positive(double s, const char* what) {
    if (!std::isfinite(s) || s <= 0.0) fail(ErrorKind::InvalidArgument, std::string(what) + " must be finite and > 0");
}

std::array<std::size_t, 256> histogram256(const Raster& img, double lo, double hi) {
    std::array<std::size_t, 256> hist{};
    const double span = hi - lo;
    for (double v : img.values()) {
        int b = static_cast<int>((v - lo) / span * 256.0);
        hist[static_cast<std::size_t>(std::clamp(b, 0, 255))]++;
    }
    return hist;
}

int bin_of(double v, double lo, double hi) {
    return std::clamp(static_cast<int>((v - lo) / (hi - lo) * 256.0), 0, 255);
}

// Largest 8-connected component of `fg`; ties keep the first in scan order.
std::vector<int> largest_component(const Mask& fg) {
    const int w = fg.width;
    const int h = fg.height;
    std::vector<int> label(fg.data.size(), -1);
    std::vector<int> best;
    std::vector<int> stack;
    int next = 0;
    for (int start = 0; start < static_cast<int>(fg.data.size()); ++start) {
        if (label[start] >= 0 || !fg.data[start]) continue;
        std::vector<int> comp;
        stack.assign(1, start);
        label[start] = next;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            comp.push_back(p);
            const int px = p % w;
            const int py = p / w;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = px + dx;
                    const int ny = py + dy;
                    if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                    const int q = ny * w + nx;
                    if (label[q] >= 0 || !fg.data[q]) continue;
                    label[q] = next;
                    stack.push_back(q);
                }
            }
        }
        ++next;
        if (comp.size() > best.size()) best = std::move(comp);
    }
    return best;
}

}  // namespace

std::vector<double> gaussian_taps(double sigma) {
    require_finite_positive(sigma, "sigma");
    const int r = radius_for(sigma);
    std::vector<double> taps(2 * r + 1);
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) {
        taps[k + r] = std::exp(-0.5 * k * k / (sigma * sigma));
        sum += taps[k + r];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

std::vector<double> gaussian_d1_taps(double sigma) {
    require_finite_positive(sigma, "sigma");
    const int r = radius_for(sigma);
    std::vector<double> taps(2 * r + 1);
    for (int k = -r; k <= r; ++k) taps[k + r] = -k * std::exp(-0.5 * k * k / (sigma * sigma));
    // Convolution sum_k t[k] f(x-k) with f = x must give 1.
    double moment = 0.0;
    for (int k = -r; k <= r; ++k) moment += taps[k + r] * (-k);
    for (double& t : taps) t /= moment;
    return taps;
}

std::vector<double> gaussian_d2_taps(double sigma) {
    require_finite_positive(sigma, "sigma");
    const int r = radius_for(sigma);
    const double s2 = sigma * sigma;
    std::vector<double> taps(2 * r + 1);
    double sum = 0.0;
    for (int k = -r; k <= r; ++k) {
        taps[k + r] = (k * k / s2 - 1.0) / s2 * std::exp(-0.5 * k * k / s2);
        sum += taps[k + r];
    }
    const double mean = sum / static_cast<double>(taps.size());
    for (double& t : taps) t -= mean;
    double moment = 0.0;
    for (int k = -r; k <= r; ++k) moment += taps[k + r] * static_cast<double>(k) * k;
    for (double& t : taps) t *= 2.0 / moment;
    return taps;
}

ThermalImage gaussian_smooth(const ThermalImage& img, double sigma, kernels::Exec exec) {
    if (!std::isfinite(sigma) || sigma < 0.0) fail(ErrorKind::InvalidArgument, "sigma must be finite and >= 0");
    if (sigma == 0.0) return img;
    const auto taps = gaussian_taps(sigma);
    return kernels::convolve_separable(img, taps, taps, exec);
}

GradientField gradient(const ThermalImage& img) {
    const int w = img.width();
    const int h = img.height();
    if (w < 2 || h < 2) fail(ErrorKind::InvalidArgument, "gradient needs width and height >= 2");
    GradientField g{Raster(w, h), Raster(w, h), Raster(w, h)};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double dx;
            if (x == 0) dx = img(1, y) - img(0, y);
            else if (x == w - 1) dx = img(w - 1, y) - img(w - 2, y);
            else dx = 0.5 * (img(x + 1, y) - img(x - 1, y));
            double dy;
            if (y == 0) dy = img(x, 1) - img(x, 0);
            else if (y == h - 1) dy = img(x, h - 1) - img(x, h - 2);
            else dy = 0.5 * (img(x, y + 1) - img(x, y - 1));
            g.gx(x, y) = dx;
            g.gy(x, y) = dy;
            g.magnitude(x, y) = std::sqrt(dx * dx + dy * dy);
        }
    }
    return g;
}

HessianField hessian_at_scale(const ThermalImage& img, double s, kernels::Exec exec) {
    if (!std::isfinite(s) || s <= 0.0) fail(ErrorKind::InvalidArgument, "hessian scale must be > 0");
    const auto g0 = gaussian_taps(s);
    const auto g1 = gaussian_d1_taps(s);
    const auto g2 = gaussian_d2_taps(s);
    HessianField h;
    h.lxx = kernels::convolve_separable(img, g2, g0, exec);
    h.lyy = kernels::convolve_separable(img, g0, g2, exec);
    h.lxy = kernels::convolve_separable(img, g1, g1, exec);
    h.scale = s;
    return h;
}

ThermalImage hist_equalize(const ThermalImage& img) {
    const double lo = img.min();
    const double hi = img.max();
    if (!(hi > lo)) return img;
    const auto hist = histogram256(img, lo, hi);
    std::array<double, 256> cdf{};
    std::size_t running = 0;
    for (std::size_t b = 0; b < 256; ++b) {
        running += hist[b];
        cdf[b] = static_cast<double>(running) / static_cast<double>(img.size());
    }
    Raster out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) out.values()[i] = cdf[bin_of(img.values()[i], lo, hi)];
    return out;
}

namespace {

// Index of the last background bin.
int otsu_bin(const ThermalImage& img, double lo, double hi) {
    const auto hist = histogram256(img, lo, hi);
    const double total = static_cast<double>(img.size());
    double sum_all = 0.0;
    for (std::size_t b = 0; b < 256; ++b) sum_all += static_cast<double>(b) * hist[b];
    double w0 = 0.0;
    double sum0 = 0.0;
    double best_var = -1.0;
    int best_bin = 0;
    for (int b = 0; b < 255; ++b) {
        w0 += hist[b];
        sum0 += static_cast<double>(b) * hist[b];
        const double w1 = total - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double m0 = sum0 / w0;
        const double m1 = (sum_all - sum0) / w1;
        const double between = w0 * w1 * (m0 - m1) * (m0 - m1);
        if (between > best_var) {
            best_var = between;
            best_bin = b;
        }
    }
    return best_bin;
}

}  // namespace

double otsu_threshold(const ThermalImage& img) {
    const double lo = img.min();
    const double hi = img.max();
    if (!(hi > lo)) return hi;
    // Upper edge of the last background bin.
    return lo + (hi - lo) * (otsu_bin(img, lo, hi) + 1) / 256.0;
}

Mask face_mask(const ThermalImage& img) {
    Mask m(img.width(), img.height());
    if (!(img.max() > img.min())) return m;
    // Classify in bin space so an affine intensity change cannot flip a pixel.
    const double lo = img.min();
    const double hi = img.max();
    const int thr = otsu_bin(img, lo, hi);
    Mask fg(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) fg.data[i] = bin_of(img.values()[i], lo, hi) > thr ? 1 : 0;
    for (int p : largest_component(fg)) m.data[static_cast<std::size_t>(p)] = 1;
    return m;
}

FaceLocus localize_face(const ThermalImage& img) {
    const Mask m = face_mask(img);
    const std::size_t area = m.count();
    if (area == 0) fail(ErrorKind::FaceNotFound, "no foreground component above the Otsu threshold");
    FaceLocus locus;
    locus.bbox = {img.width(), img.height(), -1, -1};
    double sx = 0.0, sy = 0.0;
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            if (!m(x, y)) continue;
            sx += x;
            sy += y;
            locus.bbox.x0 = std::min(locus.bbox.x0, x);
            locus.bbox.y0 = std::min(locus.bbox.y0, y);
            locus.bbox.x1 = std::max(locus.bbox.x1, x);
            locus.bbox.y1 = std::max(locus.bbox.y1, y);
        }
    }
    locus.area = area;
    locus.cx = sx / static_cast<double>(area);
    locus.cy = sy / static_cast<double>(area);
    locus.scale = std::sqrt(static_cast<double>(area) / std::numbers::pi);
    return locus;
}

Raster rescale_unit(const Raster& img) {
    const double lo = img.min();
    const double hi = img.max();
    Raster out(img.width(), img.height());
    if (!(hi > lo)) return out;
    for (std::size_t i = 0; i < img.size(); ++i) out.values()[i] = (img.values()[i] - lo) / (hi - lo);
    return out;
}

}  // namespace tfr::imaging
