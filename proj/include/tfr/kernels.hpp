/**
 * @file kernels.hpp
 * @brief Data-parallel raster kernels.
 *
 * Every kernel exists twice: a plain serial loop kept as the reference and an
 * OpenMP version used by the pipeline. Each output pixel is written by exactly
 * one iteration with the same arithmetic, so both paths agree bit for bit
 * regardless of thread count.
 */
#pragma once

#include "tfr/raster.hpp"

#include <cstddef>
#include <span>

namespace tfr::kernels {

enum class Exec { Serial, Parallel };

/// Separable convolution with edge replication. Taps are centered: size 2r+1.
Raster convolve_separable(const Raster& src, std::span<const double> row_taps, std::span<const double> col_taps,
                          Exec exec = Exec::Parallel);

/// One explicit Perona-Malik step with exponential conductance and zero-flux borders.
Raster diffusion_step(const Raster& src, double dt, double kappa, Exec exec = Exec::Parallel);

/// out[i] = fn(a[i], b[i], c[i]) for every pixel.
template <class Fn>
Raster transform3(const Raster& a, const Raster& b, const Raster& c, Fn fn, Exec exec = Exec::Parallel) {
    Raster out(a.width(), a.height());
    const auto n = static_cast<std::ptrdiff_t>(a.size());
    const double* pa = a.values().data();
    const double* pb = b.values().data();
    const double* pc = c.values().data();
    double* po = out.values().data();
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) po[i] = fn(pa[i], pb[i], pc[i]);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) po[i] = fn(pa[i], pb[i], pc[i]);
    }
    return out;
}

/// Sets the worker count for subsequent parallel regions (0 keeps the runtime default).
void set_threads(int n);
int max_threads();

}  // namespace tfr::kernels
