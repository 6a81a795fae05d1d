/**
 * @file recognition.hpp
 * @brief Vesselness signatures in the ensemble's reference frame, matching and identification.
 */
#pragma once

#include "tfr/ensemble.hpp"
#include "tfr/raster.hpp"
#include "tfr/vesselness.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace tfr::recognition {

struct SourceInfo {
    std::string identity;
    int session = 0;
    /// NaN when unknown.
    double yaw = std::numeric_limits<double>::quiet_NaN();
    bool hair = false;
    bool glasses = false;

    bool has_yaw() const noexcept { return std::isfinite(yaw); }
    /// Unknown yaws compare equal.
    friend bool operator==(const SourceInfo& a, const SourceInfo& b) {
        const bool yaw_eq = a.has_yaw() ? a.yaw == b.yaw : !b.has_yaw();
        return a.identity == b.identity && a.session == b.session && yaw_eq && a.hair == b.hair &&
               a.glasses == b.glasses;
    }
};

struct Signature {
    vesselness::VesselnessMap vmap;
    /// Mesh coverage minus the selected member's truncated triangles.
    Mask validity;
    int model_id = -1;
    SourceInfo source;
};

bool operator==(const Signature& a, const Signature& b);

/// Builds a signature from an already selected fit: I_e is warped into the reference
/// frame with the fitted shape and filtered there.
Signature signature_from_fit(const diffusion::DetailImage& ie, const ensemble::Ensemble& ens,
                             const ensemble::SelectionResult& sel, const vesselness::VesselnessParams& vp);

Signature extract_signature(const ThermalImage& img, const ensemble::Ensemble& ens,
                            const vesselness::VesselnessParams& vp, const diffusion::DiffusionConfig& dcfg = {},
                            ensemble::SelectionResult* selection = nullptr);

inline constexpr std::size_t kMinOverlap = 100;

/// Pearson correlation of v0 over the intersected validity masks. A constant map on
/// the overlap scores 0. Throws insufficient-overlap below kMinOverlap pixels.
double match(const Signature& a, const Signature& b);

/// One signature per identity, ordered by identity label.
class Gallery {
public:
    /// Throws invalid-argument on an empty or duplicate identity.
    void add(Signature s);
    const std::map<std::string, Signature>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    bool contains(const std::string& id) const { return entries_.count(id) != 0; }
    const Signature& at(const std::string& id) const;

private:
    std::map<std::string, Signature> entries_;
};

struct RankedEntry {
    std::string identity;
    double score = 0.0;
};
using RankedList = std::vector<RankedEntry>;

/// Scores below kMinOverlap get -inf and rank last. Descending, ties by identity label.
RankedList identify(const Signature& probe, const Gallery& g);

/// 1-based rank of `identity`, 0 when absent.
int rank_of(const RankedList& list, const std::string& identity);

}  // namespace tfr::recognition
