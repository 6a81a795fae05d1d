/**
 * @file evaluation.hpp
 * @brief Closed-set identification scoring: CMC, ROC, the rank table and the CSV outputs.
 */
#pragma once

#include "tfr/recognition.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tfr::evaluation {

/// rates[r - 1] = fraction of probes whose true identity sits at rank <= r.
struct CmcCurve {
    std::vector<double> rates;
    double at(int rank) const;
};

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Accept when score >= threshold. Starts at (0,0) with threshold +inf, ends at (1,1).
struct RocCurve {
    std::vector<RocPoint> points;
    std::size_t genuine = 0;
    std::size_t impostor = 0;
};

/// `ranks` are 1-based; 0 or values past gallery_size never count as hits.
CmcCurve cmc_from_ranks(const std::vector<int>& ranks, std::size_t gallery_size);
RocCurve roc_from_scores(const std::vector<double>& genuine, const std::vector<double>& impostor);
/// Trapezoidal area under the ROC.
double roc_auc(const RocCurve& roc);

/// Occlusion difference between a probe and its enrolled counterpart.
enum class Condition { Unoccluded, FacialHair, EyeWear };
inline constexpr std::array<Condition, 3> kConditions{Condition::Unoccluded, Condition::FacialHair,
                                                       Condition::EyeWear};
std::string to_string(Condition c);

/// Pose-difference bands for the split ROCs: [0,30), [30,60), [60,90].
inline constexpr std::array<double, 4> kPoseDeltaEdges{0.0, 30.0, 60.0, 90.0};
std::string split_name(int band);

struct ConditionResult {
    std::size_t probes = 0;
    CmcCurve cmc;
};

struct Report {
    std::vector<std::vector<recognition::RankedEntry>> ranked;
    std::vector<int> ranks;
    CmcCurve cmc;
    RocCurve roc;
    double auc = 0.0;
    std::array<ConditionResult, 3> by_condition;
    /// Present when every probe and enrolled signature carries a yaw.
    std::optional<std::array<RocCurve, 3>> pose_splits;
};

/// Throws invalid-argument naming the first probe whose identity is not enrolled.
Report evaluate(const std::vector<recognition::Signature>& probes, const recognition::Gallery& g);

/// Rank-1..3 table with one column per condition; "-" where a condition has no probes.
std::string summary_table(const Report& r);
std::string cmc_csv(const CmcCurve& c);
std::string roc_csv(const RocCurve& r);

/// cmc.csv, roc.csv, summary.txt and, when available, roc_d00_30.csv, roc_d30_60.csv, roc_d60_90.csv.
void write_report(const std::filesystem::path& dir, const Report& r);

}  // namespace tfr::evaluation
