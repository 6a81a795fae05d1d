#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tfr::aam {

/// Landmarks stored interleaved: (x0, y0, x1, y1, ...).
using ShapeVec = Eigen::VectorXd;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 landmark(const ShapeVec& s, int i) { return {s[2 * i], s[2 * i + 1]}; }
inline int landmark_count(const ShapeVec& s) { return static_cast<int>(s.size() / 2); }

enum class Region : std::uint8_t { Other = 0, EyeRegion = 1, LowerFace = 2 };

/// Vertical bands, as fractions of the mean shape's height (0 = top), used to tag triangles.
struct RegionBands {
    double eye_top = 0.37;
    double eye_bottom = 0.57;
    double lower_start = 0.76;
};

struct MeshTopology {
    int n_landmarks = 0;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Region> tags;

    /// Throws invalid-argument when any invariant fails.
    void validate() const;
    /// Triangles incident to each landmark.
    std::vector<std::vector<int>> incidence() const;

    friend bool operator==(const MeshTopology&, const MeshTopology&) = default;
};

/// Bowyer-Watson Delaunay triangulation. Triangles are counter-clockwise in
/// y-down coordinates, rotated to start at their smallest index, and sorted.
std::vector<std::array<int, 3>> delaunay(const ShapeVec& points);

/// Tags each triangle by the band containing its centroid.
std::vector<Region> tag_triangles(const ShapeVec& mean_shape, const std::vector<std::array<int, 3>>& triangles,
                                  const RegionBands& bands);

MeshTopology build_topology(const ShapeVec& mean_shape, const RegionBands& bands = {});

double signed_area(Point2 a, Point2 b, Point2 c);

ShapeVec read_landmarks(const std::string& path);
void write_landmarks(const std::string& path, const ShapeVec& shape);

std::string to_string(Region r);

}  // namespace tfr::aam
