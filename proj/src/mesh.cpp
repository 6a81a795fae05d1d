#include "tfr/mesh.hpp"

#include "tfr/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace tfr::aam {
namespace {

struct Tri {
    int a, b, c;
    double cx, cy, r2;
};

Tri make_tri(const std::vector<Point2>& pts, int a, int b, int c) {
    const Point2 A = pts[a], B = pts[b], C = pts[c];
    const double d = 2.0 * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
    const double a2 = A.x * A.x + A.y * A.y;
    const double b2 = B.x * B.x + B.y * B.y;
    const double c2 = C.x * C.x + C.y * C.y;
    const double ux = (a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d;
    const double uy = (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d;
    const double r2 = (A.x - ux) * (A.x - ux) + (A.y - uy) * (A.y - uy);
    return {a, b, c, ux, uy, r2};
}

}  // namespace

double signed_area(Point2 a, Point2 b, Point2 c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

void MeshTopology::validate() const {
    if (n_landmarks < 3) fail(ErrorKind::InvalidArgument, "mesh needs at least 3 landmarks");
    if (tags.size() != triangles.size()) fail(ErrorKind::InvalidArgument, "mesh tags must cover all triangles");
    std::vector<int> uses(n_landmarks, 0);
    for (const auto& t : triangles) {
        for (int v : t) {
            if (v < 0 || v >= n_landmarks) fail(ErrorKind::InvalidArgument, "triangle index out of range");
            uses[v]++;
        }
    }
    for (int i = 0; i < n_landmarks; ++i)
        if (uses[i] == 0) fail(ErrorKind::InvalidArgument, "landmark " + std::to_string(i) + " is in no triangle");
}

std::vector<std::vector<int>> MeshTopology::incidence() const {
    std::vector<std::vector<int>> inc(n_landmarks);
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
        for (int v : triangles[t]) inc[v].push_back(t);
    return inc;
}

std::vector<std::array<int, 3>> delaunay(const ShapeVec& shape) {
    const int n = landmark_count(shape);
    if (n < 3) fail(ErrorKind::InvalidArgument, "delaunay needs at least 3 points");
    std::vector<Point2> pts(n);
    double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
    for (int i = 0; i < n; ++i) {
        pts[i] = landmark(shape, i);
        minx = std::min(minx, pts[i].x);
        miny = std::min(miny, pts[i].y);
        maxx = std::max(maxx, pts[i].x);
        maxy = std::max(maxy, pts[i].y);
    }
    const double span = std::max({maxx - minx, maxy - miny, 1.0});
    const double mx = 0.5 * (minx + maxx);
    const double my = 0.5 * (miny + maxy);
    pts.push_back({mx - 50.0 * span, my - 30.0 * span});
    pts.push_back({mx + 50.0 * span, my - 30.0 * span});
    pts.push_back({mx, my + 50.0 * span});

    std::vector<Tri> tris{make_tri(pts, n, n + 1, n + 2)};
    for (int i = 0; i < n; ++i) {
        const Point2 p = pts[i];
        std::vector<Tri> keep;
        std::map<std::pair<int, int>, int> edge_count;
        std::vector<std::pair<int, int>> edges;
        for (const Tri& t : tris) {
            const double dx = p.x - t.cx;
            const double dy = p.y - t.cy;
            if (dx * dx + dy * dy < t.r2 * (1.0 - 1e-12)) {
                for (auto e : {std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}}) {
                    auto key = std::minmax(e.first, e.second);
                    if (edge_count[key]++ == 0) edges.push_back(e);
                }
            } else {
                keep.push_back(t);
            }
        }
        for (const auto& e : edges) {
            auto key = std::minmax(e.first, e.second);
            if (edge_count[key] == 1) keep.push_back(make_tri(pts, e.first, e.second, i));
        }
        tris = std::move(keep);
    }

    std::vector<std::array<int, 3>> out;
    for (const Tri& t : tris) {
        if (t.a >= n || t.b >= n || t.c >= n) continue;
        std::array<int, 3> v{t.a, t.b, t.c};
        if (signed_area(pts[v[0]], pts[v[1]], pts[v[2]]) < 0.0) std::swap(v[1], v[2]);
        std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Region> tag_triangles(const ShapeVec& mean_shape, const std::vector<std::array<int, 3>>& triangles,
                                  const RegionBands& bands) {
    double miny = 1e300, maxy = -1e300;
    for (int i = 0; i < landmark_count(mean_shape); ++i) {
        miny = std::min(miny, mean_shape[2 * i + 1]);
        maxy = std::max(maxy, mean_shape[2 * i + 1]);
    }
    const double height = maxy - miny;
    std::vector<Region> tags;
    tags.reserve(triangles.size());
    for (const auto& t : triangles) {
        const double cy = (mean_shape[2 * t[0] + 1] + mean_shape[2 * t[1] + 1] + mean_shape[2 * t[2] + 1]) / 3.0;
        const double f = height > 0.0 ? (cy - miny) / height : 0.0;
        if (f > bands.eye_top && f < bands.eye_bottom) tags.push_back(Region::EyeRegion);
        else if (f > bands.lower_start) tags.push_back(Region::LowerFace);
        else tags.push_back(Region::Other);
    }
    return tags;
}

MeshTopology build_topology(const ShapeVec& mean_shape, const RegionBands& bands) {
    MeshTopology topo;
    topo.n_landmarks = landmark_count(mean_shape);
    topo.triangles = delaunay(mean_shape);
    topo.tags = tag_triangles(mean_shape, topo.triangles, bands);
    topo.validate();
    return topo;
}

ShapeVec read_landmarks(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open landmark file " + path);
    int count = -1;
    in >> count;
    if (!in || count < 1) fail(ErrorKind::Io, "malformed landmark count in " + path);
    ShapeVec s(2 * count);
    for (int i = 0; i < count; ++i) {
        in >> s[2 * i] >> s[2 * i + 1];
        if (!in) fail(ErrorKind::Io, "landmark file " + path + " has fewer than " + std::to_string(count) + " pairs");
    }
    return s;
}

void write_landmarks(const std::string& path, const ShapeVec& shape) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::Io, "cannot write landmark file " + path);
    out << landmark_count(shape) << '\n';
    char buf[64];
    for (int i = 0; i < landmark_count(shape); ++i) {
        std::snprintf(buf, sizeof buf, "%.6f %.6f\n", shape[2 * i], shape[2 * i + 1]);
        out << buf;
    }
}

std::string to_string(Region r) {
    switch (r) {
        case Region::EyeRegion: return "eye-region";
        case Region::LowerFace: return "lower-face";
        case Region::Other: return "other";
    }
    return "other";
}

}  // namespace tfr::aam
