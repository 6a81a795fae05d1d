#include "tfr/image_io.hpp"

#include "tfr/error.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace tfr::io {
namespace {

using FilePtr = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode), &std::fclose);
    if (!f) fail(ErrorKind::Io, "cannot open " + path.string());
    return f;
}

std::uint16_t quantize(double v, int bit_depth) {
    const double maxv = bit_depth == 16 ? 65535.0 : 255.0;
    return static_cast<std::uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * maxv));
}

// PGM header tokens may be separated by whitespace and '#' comments.
int read_header_int(std::istream& in) {
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string skip;
            std::getline(in, skip);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int v = -1;
    in >> v;
    if (!in) fail(ErrorKind::Io, "malformed PGM header");
    return v;
}

}  // namespace

ThermalImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
    char magic[2] = {};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5') fail(ErrorKind::Io, path.string() + " is not a binary PGM (P5)");
    const int w = read_header_int(in);
    const int h = read_header_int(in);
    const int maxval = read_header_int(in);
    in.get();  // single whitespace before raster
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) fail(ErrorKind::Io, "unsupported PGM header in " + path.string());
    const bool wide = maxval > 255;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<unsigned char> raw(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) fail(ErrorKind::Io, "truncated PGM raster in " + path.string());
    // Normalize by the sample type maximum, not by maxval.
    const double type_max = wide ? 65535.0 : 255.0;
    std::vector<double> data(n);
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = wide ? (static_cast<unsigned>(raw[2 * i]) << 8) | raw[2 * i + 1] : raw[i];
        data[i] = v / type_max;
    }
    return Raster(w, h, std::move(data));
}

ThermalImage read_png(const std::filesystem::path& path) {
    auto f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) fail(ErrorKind::Io, "libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorKind::Io, "cannot decode PNG " + path.string());
    }
    png_init_io(png, f.get());
    png_read_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int depth = png_get_bit_depth(png, info);
    const int color = png_get_color_type(png, info);
    if (color != PNG_COLOR_TYPE_GRAY || (depth != 8 && depth != 16)) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(ErrorKind::Io, path.string() + ": only 8/16-bit grayscale PNG is supported");
    }
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    std::vector<unsigned char> buf(row_bytes * h);
    std::vector<png_bytep> rows(h);
    for (int y = 0; y < h; ++y) rows[y] = buf.data() + row_bytes * y;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);

    const double type_max = depth == 16 ? 65535.0 : 255.0;
    std::vector<double> data(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const unsigned char* row = rows[y];
            const unsigned v = depth == 16 ? (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1] : row[x];
            data[static_cast<std::size_t>(y) * w + x] = v / type_max;
        }
    }
    return Raster(w, h, std::move(data));
}

ThermalImage read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
    unsigned char sig[8] = {};
    in.read(reinterpret_cast<char*>(sig), 8);
    in.close();
    if (sig[0] == 'P' && sig[1] == '5') return read_pgm(path);
    if (png_sig_cmp(sig, 0, 8) == 0) return read_png(path);
    fail(ErrorKind::Io, path.string() + ": unrecognized image format (expected PGM P5 or PNG)");
}

void write_png(const std::filesystem::path& path, const Raster& img, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) fail(ErrorKind::InvalidArgument, "PNG bit depth must be 8 or 16");
    auto f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (!png || !info) fail(ErrorKind::Io, "libpng init failed");
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(ErrorKind::Io, "cannot encode PNG " + path.string());
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, img.width(), img.height(), bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const int bpp = bit_depth / 8;
    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * bpp);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const std::uint16_t q = quantize(img(x, y), bit_depth);
            if (bpp == 2) {
                row[2 * x] = static_cast<unsigned char>(q >> 8);
                row[2 * x + 1] = static_cast<unsigned char>(q & 0xff);
            } else {
                row[x] = static_cast<unsigned char>(q);
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void write_pgm(const std::filesystem::path& path, const Raster& img, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) fail(ErrorKind::InvalidArgument, "PGM bit depth must be 8 or 16");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    out << "P5\n" << img.width() << ' ' << img.height() << '\n' << (bit_depth == 16 ? 65535 : 255) << '\n';
    for (double v : img.values()) {
        const std::uint16_t q = quantize(v, bit_depth);
        if (bit_depth == 16) {
            out.put(static_cast<char>(q >> 8));
            out.put(static_cast<char>(q & 0xff));
        } else {
            out.put(static_cast<char>(q));
        }
    }
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

void write_f32(const std::filesystem::path& path, const Raster& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    for (double v : img.values()) {
        const float fv = static_cast<float>(v);
        std::uint32_t bits = std::bit_cast<std::uint32_t>(fv);
        if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
        out.write(reinterpret_cast<const char*>(&bits), 4);
    }
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace tfr::io
