#include "tfr/phantom.hpp"

#include "tfr/error.hpp"
#include "tfr/image_io.hpp"
#include "tfr/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tfr::phantom {
namespace {

constexpr double kExponent = 2.4;
constexpr double kNominalHalfWidth = 34.0;
constexpr double kNominalHeight = 92.0;
constexpr double kTexMargin = 4.0;
constexpr double kTexStep = 0.5;
constexpr double kBackground = 0.12;
constexpr double kEyeRow = 0.47;
constexpr double kEyeBandTop = 0.37;
constexpr double kEyeBandBottom = 0.57;
constexpr double kLowerFace = 0.76;
constexpr double kBeardStart = 0.78;
constexpr double kPi = std::numbers::pi;

double outline(double t) {
    const double v = std::abs(2.0 * t - 1.0);
    if (v >= 1.0) return 0.0;
    return std::pow(1.0 - std::pow(v, kExponent), 1.0 / kExponent);
}

bool in_bands(double t) { return (t >= kEyeBandTop && t <= kEyeBandBottom) || t >= kLowerFace; }

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Nominal frontal pixel coordinates of (u, t), origin at the face centre.
aam::Point2 nominal(double u, double t) { return {u * kNominalHalfWidth * outline(t), (t - 0.5) * kNominalHeight}; }

struct TexGrid {
    int w = 0, h = 0;
    double x0 = 0.0, y0 = 0.0;
    TexGrid() {
        x0 = -(kNominalHalfWidth + kTexMargin);
        y0 = -(kNominalHeight / 2 + kTexMargin);
        w = static_cast<int>(2.0 * -x0 / kTexStep) + 1;
        h = static_cast<int>(2.0 * -y0 / kTexStep) + 1;
    }
    aam::Point2 at(int ix, int iy) const { return {x0 + ix * kTexStep, y0 + iy * kTexStep}; }
    double sample(const Raster& r, aam::Point2 p) const {
        const double fx = std::clamp((p.x - x0) / kTexStep, 0.0, w - 1.0);
        const double fy = std::clamp((p.y - y0) / kTexStep, 0.0, h - 1.0);
        return r.bilinear(fx, fy);
    }
};

Raster smooth_noise(Rng& rng, const TexGrid& g, double sigma_samples) {
    Raster n(g.w, g.h);
    for (double& v : n.values()) v = rng.normal();
    Raster s = imaging::gaussian_smooth(n, sigma_samples, kernels::Exec::Serial);
    double ss = 0.0;
    for (double v : s.values()) ss += v * v;
    const double sd = std::sqrt(ss / static_cast<double>(s.values().size()));
    for (double& v : s.values()) v /= sd;
    return s;
}

double gauss2(aam::Point2 p, aam::Point2 c, double sx, double sy) {
    const double dx = (p.x - c.x) / sx, dy = (p.y - c.y) / sy;
    return std::exp(-0.5 * (dx * dx + dy * dy));
}

double segment_distance(aam::Point2 p, aam::Point2 a, aam::Point2 b) {
    const double vx = b.x - a.x, vy = b.y - a.y;
    const double len2 = vx * vx + vy * vy;
    double s = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::hypot(p.x - a.x - s * vx, p.y - a.y - s * vy);
}

// Face coordinates (u, t) of a nominal point; t outside (0,1) or |u| > 1 means off the face.
aam::Point2 face_coords(aam::Point2 p) {
    const double t = p.y / kNominalHeight + 0.5;
    const double w = outline(t) * kNominalHalfWidth;
    return {w > 1e-9 ? p.x / w : 2.0, t};
}

void grow_vessel(Rng& rng, const PhantomSpec& spec, aam::Point2 start, double heading, double length, int depth,
                 bool band_pass, std::vector<Vessel>& out) {
    Vessel v;
    v.sigma = rng.uniform(0.7, 1.3);
    v.amplitude = rng.uniform(0.07, 0.12);
    v.centerline.push_back(start);
    aam::Point2 p = start;
    double turn = 0.0;
    const int steps = static_cast<int>(length);
    std::vector<std::pair<aam::Point2, double>> branches;
    for (int i = 0; i < steps; ++i) {
        turn = 0.8 * turn + rng.normal(0.0, 0.05);
        heading += turn;
        const aam::Point2 q{p.x + std::cos(heading), p.y + std::sin(heading)};
        const aam::Point2 f = face_coords(q);
        if (f.y < 0.04 || f.y > 0.96 || std::abs(f.x) > 0.9) break;
        if (in_bands(f.y) && !band_pass) break;
        p = q;
        v.centerline.push_back(p);
        if (depth < 2 && i > 4 && rng.bernoulli(0.06)) branches.emplace_back(p, heading);
    }
    if (v.centerline.size() >= 4) out.push_back(std::move(v));
    for (const auto& [bp, bh] : branches) {
        const double side = rng.bernoulli(0.5) ? 1.0 : -1.0;
        grow_vessel(rng, spec, bp, bh + side * rng.uniform(0.4, 0.9), 0.6 * length, depth + 1,
                    rng.bernoulli(spec.band_vessel_keep), out);
    }
}

double feature_layer(aam::Point2 p, double u, double t) {
    (void)u;
    const double eye_w = kNominalHalfWidth * outline(kEyeRow);
    const double ey = (kEyeRow - 0.5) * kNominalHeight;
    double v = 0.0;
    for (double side : {-1.0, 1.0}) {
        v += 0.12 * gauss2(p, {side * 0.2 * eye_w, ey}, 2.2, 2.2);
        v -= 0.06 * gauss2(p, {side * 0.5 * eye_w, ey}, 5.0, 2.5);
        v -= 0.03 * gauss2(p, {side * 0.47 * eye_w, (0.40 - 0.5) * kNominalHeight}, 6.0, 1.5);
        v += 0.06 * gauss2(p, {side * 0.12 * kNominalHalfWidth, (0.70 - 0.5) * kNominalHeight}, 1.5, 1.5);
    }
    v -= 0.08 * gauss2(p, {0.0, (0.66 - 0.5) * kNominalHeight}, 4.0, 4.0);
    v += 0.10 * gauss2(p, {0.0, (0.82 - 0.5) * kNominalHeight}, 9.0, 1.3);
    v -= 0.04 * gauss2(p, {0.0, (0.93 - 0.5) * kNominalHeight}, 5.0, 5.0);
    // Smooth shading, cooler towards the rim.
    v += 0.04 * (1.0 - std::min(1.0, (p.x * p.x) / (kNominalHalfWidth * kNominalHalfWidth) +
                                          std::pow(2.0 * t - 1.0, 2.0)));
    return v;
}

double newton_invert(double target, double amp, double lo, double hi) {
    // Solves x + amp * sin(pi x) = target for x in [lo, hi] (monotone for |amp| pi < 1).
    double x = target;
    for (int i = 0; i < 30; ++i) {
        const double f = x + amp * std::sin(kPi * x) - target;
        const double d = 1.0 + amp * kPi * std::cos(kPi * x);
        const double nx = std::clamp(x - f / d, lo, hi);
        if (std::abs(nx - x) < 1e-13) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

struct Pose {
    double d, e, s, half, height, cosr, sinr, scale, cx, cy;
    Pose(const Identity& id, const SessionParams& sp) {
        d = id.row_shift + sp.expression;
        e = id.col_shift;
        const double sy = std::sin(sp.yaw * kPi / 180.0);
        s = 0.55 * sy;
        half = id.half_width * (1.0 - 0.3 * sy * sy);
        height = id.height;
        cosr = std::cos(sp.rotation);
        sinr = std::sin(sp.rotation);
        scale = sp.scale;
        cx = sp.cx;
        cy = sp.cy;
    }
    aam::Point2 forward(double u, double t) const {
        const double tp = t + d * std::sin(kPi * t);
        const double u2 = u + e * std::sin(kPi * u);
        const double u3 = (u2 + s) / (1.0 + s * u2);
        const double x = half * u3 * outline(tp);
        const double y = height * (tp - 0.5);
        return {cx + scale * (cosr * x - sinr * y), cy + scale * (sinr * x + cosr * y)};
    }
    // Returns false off the face.
    bool inverse(double px, double py, double& u, double& t) const {
        const double dx = (px - cx) / scale, dy = (py - cy) / scale;
        const double x = cosr * dx + sinr * dy;
        const double y = -sinr * dx + cosr * dy;
        const double tp = y / height + 0.5;
        if (tp <= 0.0 || tp >= 1.0) return false;
        const double hw = half * outline(tp);
        if (!(hw > 0.0) || std::abs(x) >= hw) return false;
        const double u3 = x / hw;
        const double u2 = (u3 - s) / (1.0 - s * u3);
        t = newton_invert(tp, d, 0.0, 1.0);
        u = newton_invert(u2, e, -1.0, 1.0);
        return true;
    }
};

}  // namespace

void PhantomSpec::validate() const {
    if (n_identities < 1 || sessions < 1) fail(ErrorKind::InvalidArgument, "need at least one identity and session");
    if (width < 64 || height < 64) fail(ErrorKind::InvalidArgument, "phantom images must be at least 64x64");
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(p_glasses) || !prob(p_beard) || !prob(band_vessel_keep))
        fail(ErrorKind::InvalidArgument, "probabilities must lie in [0, 1]");
    if (!(gain_lo > 0.0 && gain_lo <= gain_hi)) fail(ErrorKind::InvalidArgument, "bad gain range");
    if (!(offset_lo <= offset_hi)) fail(ErrorKind::InvalidArgument, "bad offset range");
    if (!(yaw_lo >= -90.0 && yaw_lo <= yaw_hi && yaw_hi <= 90.0)) fail(ErrorKind::InvalidArgument, "bad yaw range");
    if (!(noise_sd >= 0.0)) fail(ErrorKind::InvalidArgument, "noise must be nonnegative");
}

const std::vector<aam::Point2>& canonical_landmarks() {
    static const std::vector<aam::Point2> pts = [] {
        const double rows[] = {0.0, 0.15, kEyeBandTop, kEyeRow, kEyeBandBottom, kLowerFace, 0.86, 1.0};
        const int counts[] = {1, 5, 5, 7, 5, 5, 5, 1};
        std::vector<aam::Point2> out;
        for (int r = 0; r < 8; ++r) {
            const int m = counts[r];
            for (int j = 0; j < m; ++j) out.push_back({m == 1 ? 0.0 : -1.0 + 2.0 * j / (m - 1), rows[r]});
        }
        return out;
    }();
    return pts;
}

int landmark_count() { return static_cast<int>(canonical_landmarks().size()); }

Identity make_identity(const PhantomSpec& spec, int index) {
    Rng rng(mix(spec.seed, 0x1000 + static_cast<std::uint64_t>(index)));
    Identity id;
    char label[32];
    std::snprintf(label, sizeof label, "id%03d", index);
    id.label = label;
    id.half_width = kNominalHalfWidth * rng.uniform(0.92, 1.08);
    id.height = kNominalHeight * rng.uniform(0.94, 1.06);
    id.row_shift = rng.uniform(-0.04, 0.04);
    id.col_shift = rng.uniform(-0.05, 0.05);
    id.skin = rng.uniform(0.55, 0.65);

    const int trees = 4 + static_cast<int>(rng.below(3));
    for (int i = 0; i < trees; ++i) {
        const bool pass = rng.bernoulli(spec.band_vessel_keep);
        aam::Point2 f;
        do {
            f = {rng.uniform(-0.8, 0.8), rng.uniform(0.06, 0.94)};
        } while (in_bands(f.y) && !pass);
        grow_vessel(rng, spec, nominal(f.x, f.y), rng.uniform(0.0, 2.0 * kPi), rng.uniform(15.0, 45.0), 0, pass,
                    id.vessels);
    }

    const TexGrid g;
    const Raster pattern = smooth_noise(rng, g, 3.0);
    const Raster hair = smooth_noise(rng, g, 1.0);
    Raster vessels(g.w, g.h, 0.0);
    for (const Vessel& v : id.vessels) {
        for (std::size_t k = 0; k + 1 < v.centerline.size(); ++k) {
            const aam::Point2 a = v.centerline[k], b = v.centerline[k + 1];
            const double r = 3.0 * v.sigma;
            const int ix0 = std::max(0, static_cast<int>((std::min(a.x, b.x) - r - g.x0) / kTexStep));
            const int ix1 = std::min(g.w - 1, static_cast<int>((std::max(a.x, b.x) + r - g.x0) / kTexStep) + 1);
            const int iy0 = std::max(0, static_cast<int>((std::min(a.y, b.y) - r - g.y0) / kTexStep));
            const int iy1 = std::min(g.h - 1, static_cast<int>((std::max(a.y, b.y) + r - g.y0) / kTexStep) + 1);
            for (int iy = iy0; iy <= iy1; ++iy) {
                for (int ix = ix0; ix <= ix1; ++ix) {
                    const double dd = segment_distance(g.at(ix, iy), a, b);
                    const double val = v.amplitude * std::exp(-0.5 * dd * dd / (v.sigma * v.sigma));
                    vessels(ix, iy) = std::max(vessels(ix, iy), val);
                }
            }
        }
    }
    id.texture = Raster(g.w, g.h);
    id.beard = Raster(g.w, g.h);
    for (int iy = 0; iy < g.h; ++iy) {
        for (int ix = 0; ix < g.w; ++ix) {
            const aam::Point2 p = g.at(ix, iy);
            const aam::Point2 f = face_coords(p);
            const double pattern_amp = in_bands(f.y) ? 0.0015 : 0.004;
            id.texture(ix, iy) = id.skin + feature_layer(p, f.x, f.y) + pattern_amp * pattern(ix, iy) + vessels(ix, iy);
            id.beard(ix, iy) = id.skin - 0.07 + 0.03 * hair(ix, iy);
        }
    }
    return id;
}

SessionParams draw_session(const PhantomSpec& spec, int identity, int session) {
    Rng rng(mix(spec.seed, 0x200000 + static_cast<std::uint64_t>(identity) * 4096 + static_cast<std::uint64_t>(session)));
    SessionParams s;
    s.yaw = rng.uniform(spec.yaw_lo, spec.yaw_hi);
    s.rotation = std::clamp(rng.normal(0.0, 0.05), -0.12, 0.12);
    s.scale = rng.uniform(0.94, 1.06);
    s.cx = spec.width / 2.0 + rng.uniform(-4.0, 4.0);
    s.cy = spec.height / 2.0 + rng.uniform(-4.0, 4.0);
    s.expression = std::clamp(rng.normal(0.0, 0.01), -0.025, 0.025);
    s.gain = rng.uniform(spec.gain_lo, spec.gain_hi);
    s.offset = rng.uniform(spec.offset_lo, spec.offset_hi);
    s.glasses = rng.bernoulli(spec.p_glasses);
    s.beard = rng.bernoulli(spec.p_beard);
    return s;
}

aam::ShapeVec pose_landmarks(const Identity& id, const SessionParams& s) {
    const Pose pose(id, s);
    const auto& pts = canonical_landmarks();
    aam::ShapeVec out(2 * static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const aam::Point2 q = pose.forward(pts[i].x, pts[i].y);
        out[2 * static_cast<Eigen::Index>(i)] = q.x;
        out[2 * static_cast<Eigen::Index>(i) + 1] = q.y;
    }
    return out;
}

Render render(const Identity& id, const SessionParams& s, const PhantomSpec& spec, std::uint64_t noise_seed) {
    const Pose pose(id, s);
    const TexGrid g;
    Rng rng(noise_seed);
    const double eye_w = kNominalHalfWidth * outline(kEyeRow);
    const double ey = (kEyeRow - 0.5) * kNominalHeight;
    Render out{ThermalImage(spec.width, spec.height, kBackground), pose_landmarks(id, s)};
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            double u = 0.0, t = 0.0;
            double v = kBackground;
            if (pose.inverse(x, y, u, t)) {
                const aam::Point2 p = nominal(u, t);
                v = g.sample(id.texture, p);
                if (s.beard && t >= kBeardStart) v = g.sample(id.beard, p);
                if (s.glasses) {
                    for (double side : {-1.0, 1.0}) {
                        const double dx = (p.x - side * 0.45 * eye_w) / (0.28 * eye_w);
                        const double dy = (p.y - ey) / 5.5;
                        if (dx * dx + dy * dy <= 1.0) v = 0.40;
                    }
                    if (std::abs(p.x) < 0.17 * eye_w && std::abs(p.y - ey) < 1.0) v = 0.42;
                }
            }
            v = s.gain * v + s.offset + (spec.noise_sd > 0.0 ? rng.normal(0.0, spec.noise_sd) : 0.0);
            out.image(x, y) = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

std::vector<Sample> generate(const PhantomSpec& spec) {
    spec.validate();
    std::vector<Sample> out;
    for (int i = 0; i < spec.n_identities; ++i) {
        const Identity id = make_identity(spec, i);
        for (int j = 0; j < spec.sessions; ++j) {
            Sample smp;
            smp.params = draw_session(spec, i, j);
            smp.render = render(id, smp.params, spec, mix(spec.seed, 0x30000000 + static_cast<std::uint64_t>(i) * 4096 + j));
            smp.identity = id.label;
            smp.session = j;
            out.push_back(std::move(smp));
        }
    }
    return out;
}

void synth(const PhantomSpec& spec, const std::filesystem::path& outdir) {
    spec.validate();
    std::error_code ec;
    for (const char* sub : {"images", "landmarks", "centerlines"}) {
        std::filesystem::create_directories(outdir / sub, ec);
        if (ec) fail(ErrorKind::Io, "cannot create " + (outdir / sub).string() + ": " + ec.message());
    }
    std::ostringstream manifest;
    manifest << "image,landmarks,identity,session,yaw,hair,glasses\n";
    for (int i = 0; i < spec.n_identities; ++i) {
        const Identity id = make_identity(spec, i);
        std::ofstream cl(outdir / "centerlines" / (id.label + ".txt"));
        if (!cl) fail(ErrorKind::Io, "cannot write centerlines for " + id.label);
        cl << id.vessels.size() << "\n";
        char buf[96];
        for (const Vessel& v : id.vessels) {
            std::snprintf(buf, sizeof buf, "%zu %.4f %.4f\n", v.centerline.size(), v.sigma, v.amplitude);
            cl << buf;
            for (const auto& p : v.centerline) {
                std::snprintf(buf, sizeof buf, "%.4f %.4f\n", p.x, p.y);
                cl << buf;
            }
        }
        for (int j = 0; j < spec.sessions; ++j) {
            const SessionParams s = draw_session(spec, i, j);
            const Render r = render(id, s, spec, mix(spec.seed, 0x30000000 + static_cast<std::uint64_t>(i) * 4096 + j));
            const std::string stem = id.label + "_s" + std::to_string(j);
            io::write_png(outdir / "images" / (stem + ".png"), r.image, 16);
            aam::write_landmarks((outdir / "landmarks" / (stem + ".pts")).string(), r.landmarks);
            std::snprintf(buf, sizeof buf, "%.3f", s.yaw);
            manifest << "images/" << stem << ".png,landmarks/" << stem << ".pts," << id.label << "," << j << "," << buf
                     << "," << (s.beard ? 1 : 0) << "," << (s.glasses ? 1 : 0) << "\n";
        }
    }
    const std::string text = manifest.str();
    std::ofstream out(outdir / "manifest.csv", std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + (outdir / "manifest.csv").string());
    out << text;
}

ThermalImage render_model_instance(const aam::AamModel& model, const aam::ShapeVec& shape,
                                   const Eigen::VectorXd& lambda, int width, int height) {
    const auto& app = model.appearance();
    Eigen::VectorXd tex = app.a0;
    if (lambda.size() > 0) tex += app.modes.leftCols(lambda.size()) * lambda;
    Raster r = aam::extend_outside_mesh(model.frame().to_raster(tex), model.frame());
    for (double& v : r.values()) v = std::clamp(0.55 + 0.1 * v, 0.2, 1.0);
    ThermalImage img(width, height, 0.1);
    aam::render_texture(r, model.frame(), shape, img);
    return img;
}

}  // namespace tfr::phantom
