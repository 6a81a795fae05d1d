#pragma once

#include "tfr/raster.hpp"

#include <filesystem>

namespace tfr::io {

/// Reads binary PGM (P5, 8/16-bit) or grayscale PNG (8/16-bit), chosen by file signature.
/// Samples are divided by their type maximum so the result lies in [0,1].
ThermalImage read_image(const std::filesystem::path& path);

ThermalImage read_pgm(const std::filesystem::path& path);
ThermalImage read_png(const std::filesystem::path& path);

/// Values are clamped to [0,1] and quantized to the requested depth (8 or 16).
void write_png(const std::filesystem::path& path, const Raster& img, int bit_depth = 8);
void write_pgm(const std::filesystem::path& path, const Raster& img, int bit_depth = 16);

/// Headerless little-endian float32 row-major dump.
void write_f32(const std::filesystem::path& path, const Raster& img);

}  // namespace tfr::io
