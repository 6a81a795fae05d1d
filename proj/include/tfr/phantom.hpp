/**
 * @file phantom.hpp
 * @brief Synthetic thermal face generator with known landmarks and vessel ground truth.
 *
 * An identity is a texture over nominal frontal face coordinates: face outline,
 * systematic features (inner canthi, nose, mouth), fine skin pattern and a
 * set of warm vessel trees. A session poses the identity (yaw, similarity,
 * expression), applies a physiological gain/offset and optional occluders.
 */
#pragma once

#include "tfr/aam_model.hpp"
#include "tfr/raster.hpp"
#include "tfr/random.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tfr::phantom {

struct PhantomSpec {
    int n_identities = 20;
    int sessions = 2;
    int width = 160;
    int height = 160;
    std::uint64_t seed = 7;
    double p_glasses = 0.0;
    double p_beard = 0.0;
    double gain_lo = 0.85;
    double gain_hi = 1.2;
    double offset_lo = -0.04;
    double offset_hi = 0.04;
    double yaw_lo = -60.0;
    double yaw_hi = 60.0;
    double noise_sd = 0.003;
    /// Share of vessel segments kept inside the eye band and the lower face.
    double band_vessel_keep = 0.2;

    void validate() const;
};

struct Vessel {
    std::vector<aam::Point2> centerline;  // nominal frontal face pixels, origin at face centre
    double sigma = 1.0;
    double amplitude = 0.1;
};

struct Identity {
    std::string label;
    double half_width = 34.0;
    double height = 92.0;
    double row_shift = 0.0;
    double col_shift = 0.0;
    double skin = 0.6;
    std::vector<Vessel> vessels;
    Raster texture;  // nominal coordinates, two samples per pixel
    Raster beard;
};

struct SessionParams {
    double yaw = 0.0;
    double rotation = 0.0;
    double scale = 1.0;
    double cx = 80.0;
    double cy = 80.0;
    double expression = 0.0;
    double gain = 1.0;
    double offset = 0.0;
    bool glasses = false;
    bool beard = false;
};

struct Render {
    ThermalImage image;
    aam::ShapeVec landmarks;
};

/// Landmark positions as (u, t): u in [-1, 1] across the face, t in [0, 1] top to bottom.
const std::vector<aam::Point2>& canonical_landmarks();
int landmark_count();

Identity make_identity(const PhantomSpec& spec, int index);
SessionParams draw_session(const PhantomSpec& spec, int identity, int session);
aam::ShapeVec pose_landmarks(const Identity& id, const SessionParams& s);
Render render(const Identity& id, const SessionParams& s, const PhantomSpec& spec, std::uint64_t noise_seed);

struct Sample {
    Render render;
    std::string identity;
    int session = 0;
    SessionParams params;
};

/// All identities and sessions of `spec`, in manifest order.
std::vector<Sample> generate(const PhantomSpec& spec);

/// Writes images (16-bit PNG), landmark files, centerline files and manifest.csv.
void synth(const PhantomSpec& spec, const std::filesystem::path& outdir);

/// Paints model instance A0 + sum(lambda_i A_i) at `shape` over a uniform background,
/// mapped affinely to thermal-like values.
ThermalImage render_model_instance(const aam::AamModel& model, const aam::ShapeVec& shape,
                                   const Eigen::VectorXd& lambda, int width, int height);

}  // namespace tfr::phantom
