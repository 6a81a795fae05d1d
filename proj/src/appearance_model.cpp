#include "tfr/appearance_model.hpp"

#include "tfr/error.hpp"
#include "tfr/shape_model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tfr::aam {
namespace {

// Deterministic sign: largest-magnitude component positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0) v = -v;
}

// Orthonormal principal directions of columns of `centered` (pixels x samples-ish),
// given via a small Gram eigenproblem. Returns directions with descending variance.
void principal_directions(const Eigen::MatrixXd& spread, double denom, double retention, Eigen::MatrixXd& modes,
                          Eigen::VectorXd& variances, double& discarded) {
    const Eigen::MatrixXd gram = spread.transpose() * spread / denom;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Eigen::VectorXd ev = eig.eigenvalues().reverse().cwiseMax(0.0);
    const Eigen::MatrixXd evec = eig.eigenvectors().rowwise().reverse();
    const int keep = retained_count(ev, retention);
    modes.resize(spread.rows(), keep);
    variances.resize(keep);
    int kept = 0;
    for (int k = 0; k < keep; ++k) {
        Eigen::VectorXd v = spread * evec.col(k);
        for (int j = 0; j < kept; ++j) v -= modes.col(j) * modes.col(j).dot(v);
        const double n = v.norm();
        if (!(n > 1e-10)) continue;
        v /= n;
        fix_sign(v);
        modes.col(kept) = v;
        variances[kept] = ev[k];
        ++kept;
    }
    modes.conservativeResize(Eigen::NoChange, kept);
    variances.conservativeResize(kept);
    discarded = std::max(0.0, ev.sum() - variances.sum());
}

}  // namespace

std::size_t AppearanceModel::visible_count() const {
    std::size_t n = 0;
    for (unsigned char v : visible) n += v ? 1 : 0;
    return n;
}

Eigen::VectorXd standardize(const Eigen::VectorXd& v, const std::vector<unsigned char>& visible) {
    const bool all = visible.empty();
    double sum = 0.0, n = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (all || visible[static_cast<std::size_t>(i)]) {
            sum += v[i];
            n += 1.0;
        }
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (all || visible[static_cast<std::size_t>(i)]) ss += (v[i] - mean) * (v[i] - mean);
    const double sd = std::sqrt(ss / n);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (all || visible[static_cast<std::size_t>(i)]) out[i] = sd > 0.0 ? (v[i] - mean) / sd : 0.0;
    return out;
}

AppearanceModel appearance_from_samples(const Eigen::MatrixXd& samples, double retention) {
    if (samples.cols() < 2) fail(ErrorKind::InvalidArgument, "appearance model needs at least 2 samples");
    Eigen::MatrixXd x(samples.rows(), samples.cols());
    for (Eigen::Index i = 0; i < samples.cols(); ++i) x.col(i) = standardize(samples.col(i));
    AppearanceModel m;
    const Eigen::VectorXd mean = x.rowwise().mean();
    const Eigen::MatrixXd dev = x.colwise() - mean;
    m.a0 = standardize(mean);
    principal_directions(dev, static_cast<double>(samples.cols() - 1), retention, m.modes, m.variances,
                         m.discarded_variance);
    m.visible.assign(static_cast<std::size_t>(samples.rows()), 1);
    return m;
}

AppearanceModel train_appearance_model(const std::vector<diffusion::DetailImage>& images,
                                       const std::vector<ShapeVec>& shapes, const CanonicalFrame& frame,
                                       double retention) {
    if (images.size() != shapes.size()) fail(ErrorKind::InvalidArgument, "images and shapes differ in count");
    if (images.size() < 2) fail(ErrorKind::InvalidArgument, "appearance model needs at least 2 samples");
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(frame.pixel_count()), static_cast<Eigen::Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) {
        const WarpedTexture w = warp_to_canonical(images[i].raster(), shapes[i], frame);
        Eigen::VectorXd col = frame.from_raster(w.values);
        // Off-image samples take the mean of the valid ones.
        double sum = 0.0;
        int n = 0;
        for (std::size_t k = 0; k < frame.pixel_count(); ++k) {
            const auto& p = frame.pixels()[k];
            if (w.valid(p.x, p.y)) {
                sum += col[static_cast<Eigen::Index>(k)];
                ++n;
            }
        }
        if (n == 0) fail(ErrorKind::InvalidArgument, "training sample " + std::to_string(i) + " lies outside its image");
        for (std::size_t k = 0; k < frame.pixel_count(); ++k) {
            const auto& p = frame.pixels()[k];
            if (!w.valid(p.x, p.y)) col[static_cast<Eigen::Index>(k)] = sum / n;
        }
        samples.col(static_cast<Eigen::Index>(i)) = col;
    }
    return appearance_from_samples(samples, retention);
}

AppearanceModel restrict_appearance(const AppearanceModel& model, const std::vector<unsigned char>& visible) {
    const Eigen::Index n = model.a0.size();
    if (static_cast<Eigen::Index>(visible.size()) != n) fail(ErrorKind::InvalidArgument, "visibility size mismatch");
    std::vector<unsigned char> vis(visible.size());
    std::size_t ns = 0;
    for (std::size_t i = 0; i < vis.size(); ++i) {
        vis[i] = (visible[i] && model.visible[i]) ? 1 : 0;
        ns += vis[i];
    }
    if (ns == 0) fail(ErrorKind::OverTruncation, "no visible pixels remain");

    AppearanceModel out;
    out.visible = vis;
    out.a0 = standardize(model.a0, vis);
    // Covariance of the retained modes seen through the reduced support, with the
    // per-sample mean over the support removed.
    Eigen::MatrixXd spread = Eigen::MatrixXd::Zero(n, model.n_modes());
    for (int k = 0; k < model.n_modes(); ++k) {
        double mean = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (vis[static_cast<std::size_t>(i)]) mean += model.modes(i, k);
        mean /= static_cast<double>(ns);
        for (Eigen::Index i = 0; i < n; ++i)
            if (vis[static_cast<std::size_t>(i)]) spread(i, k) = (model.modes(i, k) - mean) * std::sqrt(model.variances[k]);
    }
    if (model.n_modes() > 0) {
        principal_directions(spread, 1.0, 1.0, out.modes, out.variances, out.discarded_variance);
    } else {
        out.modes.resize(n, 0);
        out.variances.resize(0);
    }
    out.discarded_variance =
        model.discarded_variance * static_cast<double>(ns) / static_cast<double>(model.visible_count());
    return out;
}

}  // namespace tfr::aam
