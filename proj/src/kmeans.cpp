#include "tfr/kmeans.hpp"

#include "tfr/error.hpp"
#include "tfr/random.hpp"

#include <limits>

namespace tfr::ensemble {
namespace {

KMeansResult lloyd(const Eigen::MatrixXd& x, int k, Rng& rng, int max_iterations) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd c(k, x.cols());
    c.row(0) = x.row(static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n))));
    Eigen::VectorXd d2 = (x.rowwise() - c.row(0)).rowwise().squaredNorm();
    for (int j = 1; j < k; ++j) {
        const double total = d2.sum();
        Eigen::Index pick = 0;
        if (total > 0.0) {
            double u = rng.uniform() * total;
            pick = n - 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                u -= d2[i];
                if (u < 0.0) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(n)));
        }
        c.row(j) = x.row(pick);
        d2 = d2.cwiseMin((x.rowwise() - c.row(j)).rowwise().squaredNorm());
    }

    KMeansResult r;
    r.labels.assign(static_cast<std::size_t>(n), -1);
    for (int it = 0; it < max_iterations; ++it) {
        bool changed = false;
        for (Eigen::Index i = 0; i < n; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const double d = (x.row(i) - c.row(j)).squaredNorm();
                if (d < bd) {
                    bd = d;
                    best = j;
                }
            }
            if (r.labels[static_cast<std::size_t>(i)] != best) {
                r.labels[static_cast<std::size_t>(i)] = best;
                changed = true;
            }
        }
        if (!changed) break;
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(k, x.cols());
        std::vector<int> count(static_cast<std::size_t>(k), 0);
        for (Eigen::Index i = 0; i < n; ++i) {
            sum.row(r.labels[static_cast<std::size_t>(i)]) += x.row(i);
            ++count[static_cast<std::size_t>(r.labels[static_cast<std::size_t>(i)])];
        }
        for (int j = 0; j < k; ++j)
            if (count[static_cast<std::size_t>(j)] > 0) c.row(j) = sum.row(j) / count[static_cast<std::size_t>(j)];
    }
    r.centroids = c;
    r.inertia = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) r.inertia += (x.row(i) - c.row(r.labels[static_cast<std::size_t>(i)])).squaredNorm();
    return r;
}

void relabel(KMeansResult& r, int k) {
    std::vector<int> map(static_cast<std::size_t>(k), -1);
    int next = 0;
    for (int l : r.labels)
        if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;
    for (int j = 0; j < k; ++j)
        if (map[static_cast<std::size_t>(j)] < 0) map[static_cast<std::size_t>(j)] = next++;
    Eigen::MatrixXd c(r.centroids.rows(), r.centroids.cols());
    for (int j = 0; j < k; ++j) c.row(map[static_cast<std::size_t>(j)]) = r.centroids.row(j);
    r.centroids = c;
    for (int& l : r.labels) l = map[static_cast<std::size_t>(l)];
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& samples, int k, std::uint64_t seed, int restarts, int max_iterations) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
    if (samples.rows() < k) fail(ErrorKind::InsufficientData, "fewer samples than clusters");
    if (restarts < 1 || max_iterations < 1) fail(ErrorKind::InvalidArgument, "restarts and iterations must be positive");
    Rng rng(seed);
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (int run = 0; run < restarts; ++run) {
        KMeansResult r = lloyd(samples, k, rng, max_iterations);
        if (r.inertia < best.inertia) best = std::move(r);
    }
    relabel(best, k);
    return best;
}

}  // namespace tfr::ensemble
