#include "tfr/raster.hpp"

#include "tfr/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tfr {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::FaceNotFound: return "face-not-found";
        case ErrorKind::DegenerateMesh: return "degenerate-mesh";
        case ErrorKind::RankDeficientModel: return "rank-deficient-model";
        case ErrorKind::OverTruncation: return "over-truncation";
        case ErrorKind::InsufficientData: return "insufficient-data";
        case ErrorKind::NoModelFits: return "no-model-fits";
        case ErrorKind::InsufficientOverlap: return "insufficient-overlap";
        case ErrorKind::Io: return "io-error";
    }
    return "unknown";
}

Raster::Raster(int width, int height, double fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) fail(ErrorKind::InvalidArgument, "raster dimensions must be >= 1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Raster::Raster(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) fail(ErrorKind::InvalidArgument, "raster dimensions must be >= 1");
    if (data_.size() != static_cast<std::size_t>(width) * height)
        fail(ErrorKind::InvalidArgument, "raster data length does not match width*height");
}

double Raster::clamped(int x, int y) const noexcept {
    x = std::clamp(x, 0, width_ - 1);
    y = std::clamp(y, 0, height_ - 1);
    return (*this)(x, y);
}

double Raster::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Raster::max() const { return *std::max_element(data_.begin(), data_.end()); }
double Raster::mean() const {
    return std::accumulate(data_.begin(), data_.end(), 0.0) / static_cast<double>(data_.size());
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count_if(data.begin(), data.end(), [](unsigned char v) { return v != 0; }));
}

Raster subtract(const Raster& a, const Raster& b) {
    if (!a.same_shape(b)) fail(ErrorKind::InvalidArgument, "subtract: shape mismatch");
    Raster out(a.width(), a.height());
    for (std::size_t i = 0; i < a.size(); ++i) out.values()[i] = a.values()[i] - b.values()[i];
    return out;
}

}  // namespace tfr
