#include "tfr/aam_model.hpp"

#include "tfr/error.hpp"

#include <cmath>
#include <numbers>

namespace tfr::aam {

std::string to_string(Truncation t) {
    switch (t) {
        case Truncation::None: return "none";
        case Truncation::FacialHair: return "facial-hair";
        case Truncation::EyeWear: return "eye-wear";
        case Truncation::Both: return "both";
    }
    return "none";
}

Truncation parse_truncation(const std::string& s) {
    if (s == "none") return Truncation::None;
    if (s == "facial-hair") return Truncation::FacialHair;
    if (s == "eye-wear") return Truncation::EyeWear;
    if (s == "both") return Truncation::Both;
    fail(ErrorKind::InvalidArgument, "unknown truncation '" + s + "'");
}

std::vector<Region> truncated_regions(Truncation t) {
    switch (t) {
        case Truncation::None: return {};
        case Truncation::FacialHair: return {Region::LowerFace};
        case Truncation::EyeWear: return {Region::EyeRegion};
        case Truncation::Both: return {Region::EyeRegion, Region::LowerFace};
    }
    return {};
}

AamModel::AamModel(MeshTopology topology, ShapeModel shape, AppearanceModel appearance, ModelMeta meta)
    : shape_(std::move(shape)), appearance_(std::move(appearance)), meta_(meta) {
    topology.validate();
    if (topology.n_landmarks != shape_.n_landmarks())
        fail(ErrorKind::InvalidArgument, "topology and shape model disagree on landmark count");
    check_nondegenerate(shape_.mean(), topology);
    frame_ = CanonicalFrame(shape_.mean(), topology);
    if (static_cast<std::size_t>(appearance_.a0.size()) != frame_.pixel_count() ||
        appearance_.visible.size() != frame_.pixel_count())
        fail(ErrorKind::InvalidArgument, "appearance model does not match the canonical frame");
    if (meta_.truncation == Truncation::None && appearance_.visible_count() != frame_.pixel_count())
        fail(ErrorKind::InvalidArgument, "untruncated model with a partial visibility mask");
}

AamModel train_aam(const std::vector<diffusion::DetailImage>& images, const std::vector<ShapeVec>& shapes,
                   const MeshTopology& topology, double retention) {
    ShapeModel shape = train_shape_model(shapes, retention);
    check_nondegenerate(shape.mean(), topology);
    const CanonicalFrame frame(shape.mean(), topology);
    AppearanceModel app = train_appearance_model(images, shapes, frame, retention);
    return AamModel(topology, std::move(shape), std::move(app));
}

AamModel truncate_model(const AamModel& model, Truncation kind) {
    if (kind == Truncation::None) return model;
    const CanonicalFrame& frame = model.frame();
    const std::vector<unsigned char> hidden = frame.region_pixels(truncated_regions(kind));
    std::vector<unsigned char> visible(hidden.size());
    std::size_t n = 0;
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        visible[i] = hidden[i] ? 0 : 1;
        n += visible[i];
    }
    if (2 * n < frame.pixel_count())
        fail(ErrorKind::OverTruncation, to_string(kind) + " truncation leaves " + std::to_string(n) + " of " +
                                            std::to_string(frame.pixel_count()) + " pixels");
    ModelMeta meta = model.meta();
    meta.truncation = kind;
    return AamModel(model.topology(), model.shape(), restrict_appearance(model.appearance(), visible), meta);
}

ShapeParams init_from_locus(const imaging::FaceLocus& locus, const AamModel& model) {
    const CanonicalFrame& frame = model.frame();
    const double radius = std::sqrt(frame.mesh_area() / std::numbers::pi);
    const Point2 c = frame.mesh_centroid();
    Similarity t;
    t.a = locus.scale / radius;
    t.b = 0.0;
    t.tx = locus.cx - t.a * c.x;
    t.ty = locus.cy - t.a * c.y;
    ShapeParams p;
    p.q = model.shape().similarity_params(t);
    p.p = Eigen::VectorXd::Zero(model.shape().n_modes());
    return p;
}

ShapeParams init_fit(const ThermalImage& img, const AamModel& model) {
    return init_from_locus(imaging::localize_face(img), model);
}

}  // namespace tfr::aam
