#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tfr {

/// Row-major single-channel floating raster.
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, double fill = 0.0);
    Raster(int width, int height, std::vector<double> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(int x, int y) noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    double operator()(int x, int y) const noexcept { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    /// Edge-replicated access.
    double clamped(int x, int y) const noexcept;
    /// Bilinear sample; caller guarantees 0 <= x <= w-1, 0 <= y <= h-1.
    double bilinear(double x, double y) const noexcept {
        int x0 = static_cast<int>(x);
        int y0 = static_cast<int>(y);
        x0 = x0 < width_ - 1 ? x0 : width_ - 1;
        y0 = y0 < height_ - 1 ? y0 : height_ - 1;
        const int x1 = x0 + 1 < width_ ? x0 + 1 : x0;
        const int y1 = y0 + 1 < height_ ? y0 + 1 : y0;
        const double fx = x - x0;
        const double fy = y - y0;
        const double top = (*this)(x0, y0) * (1.0 - fx) + (*this)(x1, y0) * fx;
        const double bottom = (*this)(x0, y1) * (1.0 - fx) + (*this)(x1, y1) * fx;
        return top * (1.0 - fy) + bottom * fy;
    }
    bool contains(double x, double y) const noexcept {
        return x >= 0.0 && y >= 0.0 && x <= width_ - 1 && y <= height_ - 1;
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }
    std::vector<double>& values() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    double min() const;
    double max() const;
    double mean() const;

    bool same_shape(const Raster& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Thermal intensities; ingest normalizes them to [0,1].
using ThermalImage = Raster;

/// Boolean raster stored as bytes.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<unsigned char> data;

    Mask() = default;
    Mask(int w, int h, bool fill = false) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

    bool operator()(int x, int y) const noexcept { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) noexcept { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t count() const noexcept;

    friend bool operator==(const Mask&, const Mask&) = default;
};

Raster subtract(const Raster& a, const Raster& b);

}  // namespace tfr
