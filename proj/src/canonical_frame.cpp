#include "tfr/canonical_frame.hpp"

#include "tfr/error.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace tfr::aam {
namespace {

constexpr double kInsideTol = 1e-9;

bool barycentric(Point2 p, Point2 a, Point2 b, Point2 c, double& w0, double& w1, double& w2) {
    const double det = (b.y - c.y) * (a.x - c.x) + (c.x - b.x) * (a.y - c.y);
    if (std::abs(det) < 1e-15) return false;
    w0 = ((b.y - c.y) * (p.x - c.x) + (c.x - b.x) * (p.y - c.y)) / det;
    w1 = ((c.y - a.y) * (p.x - c.x) + (a.x - c.x) * (p.y - c.y)) / det;
    w2 = 1.0 - w0 - w1;
    return w0 >= -kInsideTol && w1 >= -kInsideTol && w2 >= -kInsideTol;
}

}  // namespace

void check_nondegenerate(const ShapeVec& shape, const MeshTopology& topo) {
    for (std::size_t t = 0; t < topo.triangles.size(); ++t) {
        const auto& tri = topo.triangles[t];
        const double area = signed_area(landmark(shape, tri[0]), landmark(shape, tri[1]), landmark(shape, tri[2]));
        if (!(std::abs(area) >= 1e-9))
            fail(ErrorKind::DegenerateMesh, "triangle " + std::to_string(t) + " has zero area");
    }
}

CanonicalFrame::CanonicalFrame(const ShapeVec& mean, const MeshTopology& topo) : mean_(mean), topo_(topo) {
    topo_.validate();
    if (landmark_count(mean) != topo.n_landmarks) fail(ErrorKind::InvalidArgument, "mean shape / topology mismatch");
    check_nondegenerate(mean, topo);
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (int i = 0; i < topo.n_landmarks; ++i) {
        minx = std::min(minx, mean[2 * i]);
        miny = std::min(miny, mean[2 * i + 1]);
        maxx = std::max(maxx, mean[2 * i]);
        maxy = std::max(maxy, mean[2 * i + 1]);
    }
    origin_x_ = std::floor(minx) - 1.0;
    origin_y_ = std::floor(miny) - 1.0;
    width_ = static_cast<int>(std::ceil(maxx) - origin_x_) + 2;
    height_ = static_cast<int>(std::ceil(maxy) - origin_y_) + 2;
    index_.assign(static_cast<std::size_t>(width_) * height_, -1);

    const ShapeVec fs = frame_shape();
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const Point2 p{static_cast<double>(x), static_cast<double>(y)};
            for (int t = 0; t < static_cast<int>(topo.triangles.size()); ++t) {
                const auto& tri = topo.triangles[t];
                FramePixel px{x, y, t};
                if (barycentric(p, landmark(fs, tri[0]), landmark(fs, tri[1]), landmark(fs, tri[2]), px.w0, px.w1,
                                px.w2)) {
                    index_[static_cast<std::size_t>(y) * width_ + x] = static_cast<int>(pixels_.size());
                    pixels_.push_back(px);
                    break;
                }
            }
        }
    }
    if (pixels_.empty()) fail(ErrorKind::DegenerateMesh, "mesh covers no canonical pixel");
}

ShapeVec CanonicalFrame::frame_shape() const {
    ShapeVec s = mean_;
    for (int i = 0; i < landmark_count(s); ++i) {
        s[2 * i] -= origin_x_;
        s[2 * i + 1] -= origin_y_;
    }
    return s;
}

Raster CanonicalFrame::to_raster(const Eigen::VectorXd& values, double fill) const {
    Raster r(width_, height_, fill);
    for (std::size_t i = 0; i < pixels_.size(); ++i) r(pixels_[i].x, pixels_[i].y) = values[static_cast<Eigen::Index>(i)];
    return r;
}

Eigen::VectorXd CanonicalFrame::from_raster(const Raster& r) const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(pixels_.size()));
    for (std::size_t i = 0; i < pixels_.size(); ++i) v[static_cast<Eigen::Index>(i)] = r(pixels_[i].x, pixels_[i].y);
    return v;
}

std::vector<unsigned char> CanonicalFrame::region_pixels(const std::vector<Region>& regions) const {
    std::vector<unsigned char> out(pixels_.size(), 0);
    for (std::size_t i = 0; i < pixels_.size(); ++i) {
        const Region tag = topo_.tags[static_cast<std::size_t>(pixels_[i].tri)];
        out[i] = std::find(regions.begin(), regions.end(), tag) != regions.end() ? 1 : 0;
    }
    return out;
}

double CanonicalFrame::mesh_area() const {
    double area = 0.0;
    for (const auto& t : topo_.triangles)
        area += std::abs(signed_area(landmark(mean_, t[0]), landmark(mean_, t[1]), landmark(mean_, t[2])));
    return area;
}

Point2 CanonicalFrame::mesh_centroid() const {
    double area = 0.0, cx = 0.0, cy = 0.0;
    for (const auto& t : topo_.triangles) {
        const Point2 a = landmark(mean_, t[0]), b = landmark(mean_, t[1]), c = landmark(mean_, t[2]);
        const double w = std::abs(signed_area(a, b, c));
        area += w;
        cx += w * (a.x + b.x + c.x) / 3.0;
        cy += w * (a.y + b.y + c.y) / 3.0;
    }
    return {cx / area, cy / area};
}

void warp_positions(const CanonicalFrame& frame, const ShapeVec& shape, std::vector<double>& xs,
                    std::vector<double>& ys) {
    const auto& px = frame.pixels();
    const auto& tris = frame.topology().triangles;
    xs.resize(px.size());
    ys.resize(px.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        const auto& t = tris[static_cast<std::size_t>(px[i].tri)];
        xs[i] = px[i].w0 * shape[2 * t[0]] + px[i].w1 * shape[2 * t[1]] + px[i].w2 * shape[2 * t[2]];
        ys[i] = px[i].w0 * shape[2 * t[0] + 1] + px[i].w1 * shape[2 * t[1] + 1] + px[i].w2 * shape[2 * t[2] + 1];
    }
}

WarpedTexture warp_to_canonical(const Raster& img, const ShapeVec& shape, const CanonicalFrame& frame,
                                kernels::Exec exec) {
    if (landmark_count(shape) != frame.topology().n_landmarks)
        fail(ErrorKind::InvalidArgument, "shape has wrong landmark count for this mesh");
    check_nondegenerate(shape, frame.topology());
    std::vector<double> xs, ys;
    warp_positions(frame, shape, xs, ys);
    WarpedTexture out{Raster(frame.width(), frame.height()), Mask(frame.width(), frame.height())};
    const auto& px = frame.pixels();
    const auto n = static_cast<std::ptrdiff_t>(px.size());
    auto body = [&](std::ptrdiff_t i) {
        if (!img.contains(xs[i], ys[i])) return;
        out.values(px[i].x, px[i].y) = img.bilinear(xs[i], ys[i]);
        out.valid.data[static_cast<std::size_t>(px[i].y) * frame.width() + px[i].x] = 1;
    };
    if (exec == kernels::Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
    return out;
}

Eigen::VectorXd sample_clamped(const Raster& img, const CanonicalFrame& frame, const ShapeVec& shape) {
    std::vector<double> xs, ys;
    warp_positions(frame, shape, xs, ys);
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    const double xmax = img.width() - 1;
    const double ymax = img.height() - 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = img.bilinear(std::clamp(xs[i], 0.0, xmax), std::clamp(ys[i], 0.0, ymax));
    return v;
}

Raster extend_outside_mesh(const Raster& r, const CanonicalFrame& frame) {
    Raster out = r;
    const int w = frame.width();
    const int h = frame.height();
    std::vector<char> done(static_cast<std::size_t>(w) * h, 0);
    std::deque<int> queue;
    for (const auto& p : frame.pixels()) {
        done[static_cast<std::size_t>(p.y) * w + p.x] = 1;
        queue.push_back(p.y * w + p.x);
    }
    while (!queue.empty()) {
        const int idx = queue.front();
        queue.pop_front();
        const int x = idx % w, y = idx / w;
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nb) {
            const int nx = x + d[0], ny = y + d[1];
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t q = static_cast<std::size_t>(ny) * w + nx;
            if (done[q]) continue;
            done[q] = 1;
            out.values()[q] = out.values()[static_cast<std::size_t>(idx)];
            queue.push_back(static_cast<int>(q));
        }
    }
    return out;
}

void render_texture(const Raster& texture, const CanonicalFrame& frame, const ShapeVec& shape, Raster& dst) {
    const auto& topo = frame.topology();
    check_nondegenerate(shape, topo);
    const ShapeVec fs = frame.frame_shape();
    for (const auto& tri : topo.triangles) {
        const Point2 a = landmark(shape, tri[0]), b = landmark(shape, tri[1]), c = landmark(shape, tri[2]);
        const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
        const int x1 = std::min(dst.width() - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
        const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
        const int y1 = std::min(dst.height() - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
        const Point2 ca = landmark(fs, tri[0]), cb = landmark(fs, tri[1]), cc = landmark(fs, tri[2]);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                double w0, w1, w2;
                if (!barycentric({double(x), double(y)}, a, b, c, w0, w1, w2)) continue;
                const double u = w0 * ca.x + w1 * cb.x + w2 * cc.x;
                const double v = w0 * ca.y + w1 * cb.y + w2 * cc.y;
                dst(x, y) = texture.bilinear(std::clamp(u, 0.0, texture.width() - 1.0),
                                             std::clamp(v, 0.0, texture.height() - 1.0));
            }
        }
    }
}

}  // namespace tfr::aam
