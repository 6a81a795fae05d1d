#include "tfr/gallery_io.hpp"

#include "tfr/binary_io.hpp"
#include "tfr/error.hpp"

namespace tfr::recognition {

namespace {

void put_raster(io::ByteWriter& w, const Raster& r) {
    for (double v : r.values()) w.f64(v);
}

Raster get_raster(io::ByteReader& in, int width, int height) {
    Raster r(width, height);
    for (double& v : r.values()) v = in.f64();
    return r;
}

}  // namespace

std::vector<std::uint8_t> serialize_signature(const Signature& s) {
    const int w = s.validity.width;
    const int h = s.validity.height;
    if (s.vmap.v0.width() != w || s.vmap.v0.height() != h || s.vmap.argmax_scale.width() != w ||
        s.vmap.argmax_scale.height() != h)
        fail(ErrorKind::InvalidArgument, "signature rasters disagree in size");
    io::ByteWriter p;
    p.str(s.source.identity);
    p.i64(s.source.session);
    p.f64(s.source.yaw);
    p.u8(s.source.hair ? 1 : 0);
    p.u8(s.source.glasses ? 1 : 0);
    p.i64(s.model_id);
    p.u64(static_cast<std::uint64_t>(w));
    p.u64(static_cast<std::uint64_t>(h));
    put_raster(p, s.vmap.v0);
    put_raster(p, s.vmap.argmax_scale);
    p.bytes(s.validity.data);

    io::ByteWriter out;
    out.tag("TFGA");
    out.u64(kGalleryFormatVersion);
    out.u64(p.data().size());
    out.bytes(p.data());
    return out.data();
}

std::vector<std::uint8_t> serialize_gallery(const Gallery& g) {
    std::vector<std::uint8_t> out;
    for (const auto& [id, s] : g.entries()) {
        const auto rec = serialize_signature(s);
        out.insert(out.end(), rec.begin(), rec.end());
    }
    return out;
}

Gallery deserialize_gallery(const std::vector<std::uint8_t>& bytes, const std::string& what) {
    io::ByteReader in(bytes.data(), bytes.size(), what);
    Gallery g;
    while (!in.done()) {
        if (in.tag() != "TFGA") fail(ErrorKind::Io, what + ": not a TFGA signature record");
        const std::uint64_t version = in.u64();
        if (version != kGalleryFormatVersion)
            fail(ErrorKind::Io, what + ": unsupported gallery version " + std::to_string(version));
        const std::size_t len = in.count(1);
        const std::vector<std::uint8_t> payload = in.bytes(len);
        io::ByteReader p(payload.data(), payload.size(), what);

        Signature s;
        s.source.identity = p.str();
        s.source.session = static_cast<int>(p.i64());
        s.source.yaw = p.f64();
        s.source.hair = p.u8() != 0;
        s.source.glasses = p.u8() != 0;
        s.model_id = static_cast<int>(p.i64());
        const std::uint64_t w = p.u64();
        const std::uint64_t h = p.u64();
        if (w == 0 || h == 0 || w > 65536 || h > 65536 || w * h * 17 != p.remaining())
            fail(ErrorKind::Io, what + ": signature record for '" + s.source.identity + "' has a bad size");
        s.vmap.v0 = get_raster(p, static_cast<int>(w), static_cast<int>(h));
        s.vmap.argmax_scale = get_raster(p, static_cast<int>(w), static_cast<int>(h));
        s.validity = Mask(static_cast<int>(w), static_cast<int>(h));
        s.validity.data = p.bytes(w * h);
        try {
            g.add(std::move(s));
        } catch (const Error& e) {
            fail(ErrorKind::Io, what + ": " + e.what());
        }
    }
    return g;
}

void save_gallery(const std::filesystem::path& path, const Gallery& g) { io::write_file(path, serialize_gallery(g)); }

Gallery load_gallery(const std::filesystem::path& path) { return deserialize_gallery(io::read_file(path), path.string()); }

}  // namespace tfr::recognition
