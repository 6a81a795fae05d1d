#include "tfr/recognition.hpp"

#include "tfr/error.hpp"
#include "tfr/imaging.hpp"

#include <algorithm>

namespace tfr::recognition {

bool operator==(const Signature& a, const Signature& b) {
    return a.vmap.v0 == b.vmap.v0 && a.vmap.argmax_scale == b.vmap.argmax_scale && a.validity == b.validity &&
           a.model_id == b.model_id && a.source == b.source;
}

Signature signature_from_fit(const diffusion::DetailImage& ie, const ensemble::Ensemble& ens,
                             const ensemble::SelectionResult& sel, const vesselness::VesselnessParams& vp) {
    if (sel.model_id < 0 || static_cast<std::size_t>(sel.model_id) >= ens.size())
        fail(ErrorKind::InvalidArgument, "selection does not name an ensemble member");
    const aam::CanonicalFrame& frame = ens.reference_frame();
    const aam::WarpedTexture warped = aam::warp_to_canonical(ie.raster(), sel.fit.shape, frame);

    // Fill the off-mesh margin from the rim so the face outline does not read as a vessel.
    Signature s;
    s.vmap = vesselness::vesselness_multiscale(aam::extend_outside_mesh(warped.values, frame), vp);
    s.model_id = sel.model_id;

    const aam::AamModel& member = ens.members()[static_cast<std::size_t>(sel.model_id)];
    const std::vector<unsigned char> cut = frame.region_pixels(aam::truncated_regions(member.meta().truncation));
    s.validity = Mask(frame.width(), frame.height());
    const auto& px = frame.pixels();
    for (std::size_t k = 0; k < px.size(); ++k)
        if (!cut[k] && warped.valid(px[k].x, px[k].y)) s.validity.set(px[k].x, px[k].y, true);
    return s;
}

Signature extract_signature(const ThermalImage& img, const ensemble::Ensemble& ens,
                            const vesselness::VesselnessParams& vp, const diffusion::DiffusionConfig& dcfg,
                            ensemble::SelectionResult* selection) {
    vp.validate();
    const imaging::FaceLocus locus = imaging::localize_face(img);
    const diffusion::DetailImage ie = diffusion::enhance_detail(img, dcfg);
    ensemble::SelectionResult sel = ens.select_and_fit(ie, locus);
    Signature s = signature_from_fit(ie, ens, sel, vp);
    if (selection) *selection = std::move(sel);
    return s;
}

double match(const Signature& a, const Signature& b) {
    if (a.validity.width != b.validity.width || a.validity.height != b.validity.height ||
        a.vmap.v0.width() != a.validity.width || b.vmap.v0.width() != b.validity.width ||
        a.vmap.v0.height() != a.validity.height || b.vmap.v0.height() != b.validity.height)
        fail(ErrorKind::InvalidArgument, "signatures come from different frames");
    const auto& va = a.vmap.v0.values();
    const auto& vb = b.vmap.v0.values();
    std::vector<std::size_t> common;
    for (std::size_t i = 0; i < a.validity.data.size(); ++i)
        if (a.validity.data[i] && b.validity.data[i]) common.push_back(i);
    if (common.size() < kMinOverlap)
        fail(ErrorKind::InsufficientOverlap,
             "signatures share " + std::to_string(common.size()) + " valid pixels, need " + std::to_string(kMinOverlap));

    // A flat map has no correlation; checked exactly since its mean carries rounding.
    const auto flat = [&](const std::vector<double>& v) {
        for (std::size_t i : common)
            if (v[i] != v[common.front()]) return false;
        return true;
    };
    if (flat(va) || flat(vb)) return 0.0;

    double ma = 0.0, mb = 0.0;
    for (std::size_t i : common) {
        ma += va[i];
        mb += vb[i];
    }
    ma /= static_cast<double>(common.size());
    mb /= static_cast<double>(common.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i : common) {
        const double da = va[i] - ma;
        const double db = vb[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

void Gallery::add(Signature s) {
    if (s.source.identity.empty()) fail(ErrorKind::InvalidArgument, "gallery signature has no identity");
    const std::string id = s.source.identity;
    if (!entries_.emplace(id, std::move(s)).second)
        fail(ErrorKind::InvalidArgument, "identity '" + id + "' is already enrolled");
}

const Signature& Gallery::at(const std::string& id) const {
    const auto it = entries_.find(id);
    if (it == entries_.end()) fail(ErrorKind::InvalidArgument, "identity '" + id + "' is not enrolled");
    return it->second;
}

RankedList identify(const Signature& probe, const Gallery& g) {
    if (g.empty()) fail(ErrorKind::InvalidArgument, "gallery is empty");
    RankedList out;
    out.reserve(g.size());
    for (const auto& [id, sig] : g.entries()) {
        double score = -std::numeric_limits<double>::infinity();
        try {
            score = match(probe, sig);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InsufficientOverlap) throw;
        }
        out.push_back({id, score});
    }
    // Entries arrive in label order, so a stable sort settles ties by label.
    std::stable_sort(out.begin(), out.end(), [](const RankedEntry& x, const RankedEntry& y) { return x.score > y.score; });
    return out;
}

int rank_of(const RankedList& list, const std::string& identity) {
    for (std::size_t i = 0; i < list.size(); ++i)
        if (list[i].identity == identity) return static_cast<int>(i) + 1;
    return 0;
}

}  // namespace tfr::recognition
