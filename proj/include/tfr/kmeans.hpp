#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace tfr::ensemble {

struct KMeansResult {
    std::vector<int> labels;
    Eigen::MatrixXd centroids;  // one row per cluster
    double inertia = 0.0;
};

/// Lloyd iterations from k-means++ seeds, best inertia over `restarts` runs.
/// Clusters are numbered in order of their lowest-index member.
KMeansResult kmeans(const Eigen::MatrixXd& samples, int k, std::uint64_t seed, int restarts = 50,
                    int max_iterations = 100);

}  // namespace tfr::ensemble
