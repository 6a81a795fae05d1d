#pragma once

#include "tfr/appearance_model.hpp"
#include "tfr/canonical_frame.hpp"
#include "tfr/imaging.hpp"
#include "tfr/mesh.hpp"
#include "tfr/shape_model.hpp"

#include <string>
#include <vector>

namespace tfr::aam {

enum class Truncation : std::uint8_t { None = 0, FacialHair = 1, EyeWear = 2, Both = 3 };

std::string to_string(Truncation t);
Truncation parse_truncation(const std::string& s);
/// Triangle tags removed by a truncation kind.
std::vector<Region> truncated_regions(Truncation t);

struct ModelMeta {
    int pose_bin = 0;
    int cluster_id = 0;
    Truncation truncation = Truncation::None;
    double yaw_lo = -90.0;
    double yaw_hi = 90.0;

    friend bool operator==(const ModelMeta&, const ModelMeta&) = default;
};

/// Shape model, appearance model and the canonical frame they share.
/// The frame is derived from the shape mean and the topology.
class AamModel {
public:
    AamModel() = default;
    AamModel(MeshTopology topology, ShapeModel shape, AppearanceModel appearance, ModelMeta meta = {});

    const MeshTopology& topology() const noexcept { return frame_.topology(); }
    const ShapeModel& shape() const noexcept { return shape_; }
    const AppearanceModel& appearance() const noexcept { return appearance_; }
    const CanonicalFrame& frame() const noexcept { return frame_; }
    const ModelMeta& meta() const noexcept { return meta_; }
    void set_meta(const ModelMeta& m) { meta_ = m; }

    std::size_t visible_pixels() const { return appearance_.visible_count(); }

    friend bool operator==(const AamModel& a, const AamModel& b) {
        return a.topology() == b.topology() && a.shape_ == b.shape_ && a.appearance_ == b.appearance_ &&
               a.meta_ == b.meta_;
    }

private:
    ShapeModel shape_;
    AppearanceModel appearance_;
    CanonicalFrame frame_;
    ModelMeta meta_;
};

/// Trains shape and appearance on detail images annotated with landmarks.
AamModel train_aam(const std::vector<diffusion::DetailImage>& images, const std::vector<ShapeVec>& shapes,
                   const MeshTopology& topology, double retention = 0.95);

/// Masks the appearance support on the tagged triangles and re-derives the modes
/// from the stored statistics. Throws over-truncation below half the pixels.
AamModel truncate_model(const AamModel& model, Truncation kind);

/// Similarity placing the mean mesh at the face locus: centroid onto the
/// locus centroid and the mesh's equivalent radius onto the locus scale.
ShapeParams init_from_locus(const imaging::FaceLocus& locus, const AamModel& model);
ShapeParams init_fit(const ThermalImage& img, const AamModel& model);

}  // namespace tfr::aam
