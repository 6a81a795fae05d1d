/**
 * @file canonical_frame.hpp
 * @brief Pixel grid of a mean shape's mesh and the piecewise-affine warp into it.
 */
#pragma once

#include "tfr/kernels.hpp"
#include "tfr/mesh.hpp"
#include "tfr/raster.hpp"

#include <Eigen/Core>

#include <vector>

namespace tfr::aam {

/// A canonical pixel inside the mesh, with its containing triangle and barycentrics.
struct FramePixel {
    int x = 0;
    int y = 0;
    int tri = 0;
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;
};

class CanonicalFrame {
public:
    CanonicalFrame() = default;
    /// `mean` is in shape coordinates; pixel (c, r) sits at (c + origin_x, r + origin_y).
    CanonicalFrame(const ShapeVec& mean, const MeshTopology& topo);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    double origin_x() const noexcept { return origin_x_; }
    double origin_y() const noexcept { return origin_y_; }
    const MeshTopology& topology() const noexcept { return topo_; }
    const ShapeVec& mean() const noexcept { return mean_; }
    const std::vector<FramePixel>& pixels() const noexcept { return pixels_; }
    std::size_t pixel_count() const noexcept { return pixels_.size(); }

    /// Raster index -> position in pixels(), or -1 outside the mesh.
    const std::vector<int>& index_map() const noexcept { return index_; }

    /// Mean shape expressed in frame pixel coordinates.
    ShapeVec frame_shape() const;

    /// Per-pixel vector scattered into a frame raster; pixels outside the mesh get `fill`.
    Raster to_raster(const Eigen::VectorXd& values, double fill = 0.0) const;
    Eigen::VectorXd from_raster(const Raster& r) const;

    /// Canonical pixels belonging to triangles with the given tags.
    std::vector<unsigned char> region_pixels(const std::vector<Region>& regions) const;

    /// Area-weighted centroid (shape coordinates) and total area of the mean mesh.
    Point2 mesh_centroid() const;
    double mesh_area() const;

private:
    int width_ = 0;
    int height_ = 0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    ShapeVec mean_;
    MeshTopology topo_;
    std::vector<FramePixel> pixels_;
    std::vector<int> index_;
};

/// Image position of every canonical pixel under the piecewise-affine warp defined by `shape`.
void warp_positions(const CanonicalFrame& frame, const ShapeVec& shape, std::vector<double>& xs,
                    std::vector<double>& ys);

struct WarpedTexture {
    Raster values;
    Mask valid;
};

/// Samples `img` bilinearly at the warp of every canonical pixel. Samples falling
/// outside the image are masked; pixels outside the mesh are masked.
/// Throws degenerate-mesh when a triangle of `shape` has zero area.
WarpedTexture warp_to_canonical(const Raster& img, const ShapeVec& shape, const CanonicalFrame& frame,
                                kernels::Exec exec = kernels::Exec::Parallel);

/// Per-frame-pixel samples with edge-replicated bilinear lookup (used inside fitting).
Eigen::VectorXd sample_clamped(const Raster& img, const CanonicalFrame& frame, const ShapeVec& shape);

/// Paints a canonical texture into `dst` inside the mesh of `shape` (inverse warp, bilinear).
void render_texture(const Raster& texture, const CanonicalFrame& frame, const ShapeVec& shape, Raster& dst);

/// Throws degenerate-mesh when any triangle of `shape` has |area| below 1e-9.
void check_nondegenerate(const ShapeVec& shape, const MeshTopology& topo);

/// Fills frame pixels outside the mesh with their nearest in-mesh value (for bilinear lookups near the rim).
Raster extend_outside_mesh(const Raster& r, const CanonicalFrame& frame);

}  // namespace tfr::aam
