#include "tfr/model_io.hpp"

#include "tfr/error.hpp"

namespace tfr::aam {

std::vector<std::uint8_t> serialize_model(const AamModel& model) {
    io::ByteWriter out;
    out.tag("TFAM");
    out.u64(kModelFormatVersion);

    const MeshTopology& topo = model.topology();
    io::ByteWriter t;
    t.u64(static_cast<std::uint64_t>(topo.n_landmarks));
    t.u64(topo.triangles.size());
    for (std::size_t i = 0; i < topo.triangles.size(); ++i) {
        for (int v : topo.triangles[i]) t.u64(static_cast<std::uint64_t>(v));
        t.u8(static_cast<std::uint8_t>(topo.tags[i]));
    }
    out.section("TOPO", t);

    io::ByteWriter s;
    s.vec(model.shape().mean());
    s.mat(model.shape().modes());
    s.vec(model.shape().variances());
    out.section("SHAP", s);

    const AppearanceModel& app = model.appearance();
    io::ByteWriter a;
    a.vec(app.a0);
    a.mat(app.modes);
    a.vec(app.variances);
    a.f64(app.discarded_variance);
    out.section("APPR", a);

    io::ByteWriter m;
    m.u64(app.visible.size());
    m.bytes(app.visible);
    out.section("MASK", m);

    io::ByteWriter meta;
    meta.i64(model.meta().pose_bin);
    meta.i64(model.meta().cluster_id);
    meta.u8(static_cast<std::uint8_t>(model.meta().truncation));
    meta.f64(model.meta().yaw_lo);
    meta.f64(model.meta().yaw_hi);
    out.section("META", meta);
    return out.data();
}

AamModel deserialize_model(const std::vector<std::uint8_t>& bytes, const std::string& what) {
    io::ByteReader in(bytes.data(), bytes.size(), what);
    if (in.tag() != "TFAM") fail(ErrorKind::Io, what + ": not a TFAM model");
    const std::uint64_t version = in.u64();
    if (version != kModelFormatVersion)
        fail(ErrorKind::Io, what + ": unsupported model version " + std::to_string(version));

    io::ByteReader t = in.section("TOPO");
    MeshTopology topo;
    topo.n_landmarks = static_cast<int>(t.u64());
    const std::size_t ntri = t.count(25);
    for (std::size_t i = 0; i < ntri; ++i) {
        std::array<int, 3> tri{};
        for (int& v : tri) v = static_cast<int>(t.u64());
        topo.triangles.push_back(tri);
        const std::uint8_t tag = t.u8();
        if (tag > 2) fail(ErrorKind::Io, what + ": bad region tag");
        topo.tags.push_back(static_cast<Region>(tag));
    }

    io::ByteReader s = in.section("SHAP");
    ShapeVec mean = s.vec();
    Eigen::MatrixXd smodes = s.mat();
    Eigen::VectorXd svar = s.vec();

    io::ByteReader a = in.section("APPR");
    AppearanceModel app;
    app.a0 = a.vec();
    app.modes = a.mat();
    app.variances = a.vec();
    app.discarded_variance = a.f64();

    io::ByteReader m = in.section("MASK");
    app.visible = m.bytes(m.count(1));

    io::ByteReader meta_in = in.section("META");
    ModelMeta meta;
    meta.pose_bin = static_cast<int>(meta_in.i64());
    meta.cluster_id = static_cast<int>(meta_in.i64());
    const std::uint8_t trunc = meta_in.u8();
    if (trunc > 3) fail(ErrorKind::Io, what + ": bad truncation kind");
    meta.truncation = static_cast<Truncation>(trunc);
    meta.yaw_lo = meta_in.f64();
    meta.yaw_hi = meta_in.f64();
    if (!in.done()) fail(ErrorKind::Io, what + ": trailing data");

    try {
        return AamModel(std::move(topo), ShapeModel(std::move(mean), std::move(smodes), std::move(svar)),
                        std::move(app), meta);
    } catch (const Error& e) {
        fail(ErrorKind::Io, what + ": inconsistent model (" + e.what() + ")");
    }
}

void save_model(const std::filesystem::path& path, const AamModel& model) {
    io::write_file(path, serialize_model(model));
}

AamModel load_model(const std::filesystem::path& path) {
    return deserialize_model(io::read_file(path), path.string());
}

}  // namespace tfr::aam
