/**
 * @file ensemble.hpp
 * @brief Pose-bin by appearance-cluster ensemble of AAMs with truncated variants.
 */
#pragma once

#include "tfr/aam_model.hpp"
#include "tfr/diffusion.hpp"
#include "tfr/fitting.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace tfr::ensemble {

struct CorpusEntry {
    diffusion::DetailImage ie;
    aam::ShapeVec landmarks;
    double yaw = 0.0;
    std::string identity;
};

struct TrainCorpus {
    std::vector<CorpusEntry> entries;
};

struct EnsembleConfig {
    int n_bins = 5;
    int k = 2;
    std::uint64_t seed = 1;
    int restarts = 50;
    double retention = 0.95;
    aam::FitConfig fit;

    void validate() const;
};

/// Equal-width yaw bins over [-90, 90], closed on the left; +90 joins the last bin.
int pose_bin(double yaw, int n_bins);
double bin_lower(int bin, int n_bins);

struct Subset {
    int bin = 0;
    int cluster = 0;
    std::vector<int> members;  // indices into the corpus, ascending
};

/// Clustering features: each face warped into `frame` and standardized.
Eigen::MatrixXd appearance_features(const TrainCorpus& corpus, const std::vector<int>& indices,
                                    const aam::CanonicalFrame& frame);

std::vector<Subset> partition_corpus(const TrainCorpus& corpus, const aam::CanonicalFrame& frame, int n_bins, int k,
                                     std::uint64_t seed, int restarts = 50);

struct SelectionResult {
    int model_id = -1;
    aam::FitResult fit;
    /// Per-member mean pixel error; NaN where the fit raised an error.
    std::vector<double> all_mean_errors;
    std::vector<unsigned char> converged;
};

class Ensemble {
public:
    Ensemble() = default;
    /// Members must share one mesh topology.
    Ensemble(EnsembleConfig cfg, std::vector<aam::AamModel> members);
    Ensemble(Ensemble&&) noexcept = default;
    Ensemble& operator=(Ensemble&&) noexcept = default;

    const EnsembleConfig& config() const noexcept { return cfg_; }
    const std::vector<aam::AamModel>& members() const noexcept { return *members_; }
    std::size_t size() const noexcept { return members_ ? members_->size() : 0; }
    const aam::MeshTopology& topology() const { return members_->front().topology(); }
    /// Common frame for signatures: GPA mean of the untruncated members' mean shapes.
    const aam::CanonicalFrame& reference_frame() const noexcept { return reference_; }

    /// Fits every member from the face locus and keeps the lowest mean pixel error
    /// among converged fits (all fits when none converged). Ties go to the lower index.
    SelectionResult select_and_fit(const diffusion::DetailImage& ie, const imaging::FaceLocus& locus) const;
    SelectionResult select_and_fit(const ThermalImage& img, const diffusion::DiffusionConfig& dcfg) const;

    static std::string member_filename(const aam::AamModel& m);

private:
    EnsembleConfig cfg_;
    std::unique_ptr<std::vector<aam::AamModel>> members_;
    std::vector<std::unique_ptr<aam::Fitter>> fitters_;
    aam::CanonicalFrame reference_;
};

Ensemble train_ensemble(const TrainCorpus& corpus, const EnsembleConfig& cfg);

/// Argmin over mean errors restricted to `eligible`; lowest index on ties, -1 when none.
int select_member(const std::vector<double>& mean_errors, const std::vector<unsigned char>& eligible);

inline constexpr int kEnsembleFormatVersion = 1;

void save_ensemble(const std::filesystem::path& dir, const Ensemble& ens);
Ensemble load_ensemble(const std::filesystem::path& dir, const aam::FitConfig& fit = {});

}  // namespace tfr::ensemble
