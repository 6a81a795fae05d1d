#include "tfr/fitting.hpp"

#include "tfr/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>

namespace tfr::aam {
namespace {

Eigen::VectorXd standardized(const Eigen::VectorXd& v) {
    const double mean = v.mean();
    const double sd = std::sqrt((v.array() - mean).square().mean());
    if (!(sd > 0.0)) return Eigen::VectorXd::Zero(v.size());
    return (v.array() - mean) / sd;
}

// Orthonormal basis of span{1, columns of m}.
Eigen::MatrixXd with_constant(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    Eigen::MatrixXd q(n, m.cols() + 1);
    q.col(0) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    Eigen::Index k = 1;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::VectorXd v = m.col(j);
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index i = 0; i < k; ++i) v -= q.col(i) * q.col(i).dot(v);
        const double nv = v.norm();
        if (nv < 1e-8) continue;
        q.col(k++) = v / nv;
    }
    return q.leftCols(k);
}

// Gaussian smoothing restricted to the pixels flagged in `support` (normalized convolution).
Raster masked_smooth(const Raster& values, const Raster& support, double sigma, const Raster* support_weight = nullptr) {
    if (sigma <= 0.0) return values;
    Raster weighted(values.width(), values.height());
    for (std::size_t i = 0; i < weighted.values().size(); ++i)
        weighted.values()[i] = values.values()[i] * support.values()[i];
    const Raster num = imaging::gaussian_smooth(weighted, sigma);
    Raster own;
    if (!support_weight) own = imaging::gaussian_smooth(support, sigma);
    const Raster& den = support_weight ? *support_weight : own;
    Raster out(values.width(), values.height());
    for (std::size_t i = 0; i < out.values().size(); ++i)
        out.values()[i] = den.values()[i] > 1e-12 ? num.values()[i] / den.values()[i] : 0.0;
    return out;
}

}  // namespace

void FitConfig::validate() const {
    if (max_iterations < 1) fail(ErrorKind::InvalidArgument, "max_iterations must be positive");
    if (!(tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
    if (max_halvings < 0) fail(ErrorKind::InvalidArgument, "max_halvings must be nonnegative");
    if (coarse_iterations < 1) fail(ErrorKind::InvalidArgument, "coarse_iterations must be positive");
    if (!(stall_tolerance >= 0.0)) fail(ErrorKind::InvalidArgument, "stall_tolerance must be nonnegative");
    for (double s : coarse_sigmas)
        if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorKind::InvalidArgument, "coarse sigmas must be positive");
    for (std::size_t i = 1; i < coarse_sigmas.size(); ++i)
        if (!(coarse_sigmas[i] < coarse_sigmas[i - 1]))
            fail(ErrorKind::InvalidArgument, "coarse sigmas must be listed coarsest first");
}

double projected_out_error(const Eigen::VectorXd& residual, const Eigen::MatrixXd& modes) {
    const double e = residual.squaredNorm() - (modes.transpose() * residual).squaredNorm();
    return std::max(0.0, e);
}

Fitter::Fitter(const AamModel& model, FitConfig cfg) : model_(&model), cfg_(std::move(cfg)) {
    cfg_.validate();
    const CanonicalFrame& frame = model.frame();
    const AppearanceModel& app = model.appearance();
    const auto& px = frame.pixels();
    for (std::size_t i = 0; i < px.size(); ++i)
        if (app.visible[i]) visible_.push_back(static_cast<int>(i));
    const auto nv = static_cast<Eigen::Index>(visible_.size());
    if (nv == 0) fail(ErrorKind::RankDeficientModel, "model has no visible pixels");
    incidence_ = model.topology().incidence();

    support_ = Raster(frame.width(), frame.height(), 0.0);
    for (int i : visible_) support_(px[i].x, px[i].y) = 1.0;
    const Raster& support = support_;
    auto compact = [&](const Raster& r) {
        Eigen::VectorXd v(nv);
        for (Eigen::Index k = 0; k < nv; ++k) v[k] = r(px[visible_[k]].x, px[visible_[k]].y);
        return v;
    };

    const Eigen::MatrixXd& basis = model.shape().basis();
    const auto np = basis.cols();
    const auto& tris = model.topology().triangles;

    std::vector<double> sigmas = cfg_.coarse_sigmas;
    sigmas.push_back(0.0);
    for (double sigma : sigmas) {
        Level lv;
        lv.sigma = sigma;
        const Raster a0r = masked_smooth(frame.to_raster(app.a0), support, sigma);
        Eigen::MatrixXd modes(nv, sigma > 0.0 ? 0 : app.n_modes());
        for (Eigen::Index j = 0; j < modes.cols(); ++j) modes.col(j) = compact(frame.to_raster(app.modes.col(j)));
        lv.a0 = standardized(compact(a0r));
        // Smoothed modes span most low-frequency variation, misalignment included,
        // so coarse levels align against the template alone.
        lv.modes = sigma > 0.0 ? Eigen::MatrixXd(nv, 0) : modes;
        if (sigma > 0.0) {
            lv.support_weight = imaging::gaussian_smooth(support, sigma);
            levels_.push_back(std::move(lv));
            continue;
        }
        Raster t = frame.to_raster(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(px.size())));
        for (Eigen::Index k = 0; k < nv; ++k) t(px[visible_[k]].x, px[visible_[k]].y) = lv.a0[k];

        Eigen::MatrixXd sd(nv, np);
        for (Eigen::Index k = 0; k < nv; ++k) {
            const FramePixel& p = px[visible_[k]];
            auto vis = [&](int x, int y) { return support.contains(x, y) && support(x, y) > 0.0; };
            auto diff = [&](int dx, int dy) {
                const bool fwd = vis(p.x + dx, p.y + dy), bwd = vis(p.x - dx, p.y - dy);
                if (fwd && bwd) return 0.5 * (t(p.x + dx, p.y + dy) - t(p.x - dx, p.y - dy));
                if (fwd) return t(p.x + dx, p.y + dy) - t(p.x, p.y);
                if (bwd) return t(p.x, p.y) - t(p.x - dx, p.y - dy);
                return 0.0;
            };
            const double gx = diff(1, 0), gy = diff(0, 1);
            const auto& tri = tris[static_cast<std::size_t>(p.tri)];
            const double w[3] = {p.w0, p.w1, p.w2};
            Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(np);
            for (int c = 0; c < 3; ++c)
                row += w[c] * (gx * basis.row(2 * tri[c]) + gy * basis.row(2 * tri[c] + 1));
            sd.row(k) = row;
        }
        const Eigen::MatrixXd q = with_constant(lv.modes);
        sd -= q * (q.transpose() * sd);
        const Eigen::MatrixXd h = sd.transpose() * sd;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
        const double emax = eig.eigenvalues().maxCoeff();
        const double emin = eig.eigenvalues().minCoeff();
        if (!(emax > 0.0) || !(emin > 1e-10 * emax))
            fail(ErrorKind::RankDeficientModel, "steepest-descent Hessian is not invertible");
        lv.update = h.ldlt().solve(sd.transpose());
        levels_.push_back(std::move(lv));
    }
}

double Fitter::level_error(const Level& lv, const Raster& img, const ShapeVec& shape, Eigen::VectorXd* r) const {
    const CanonicalFrame& frame = model_->frame();
    Eigen::VectorXd all = sample_clamped(img, frame, shape);
    if (lv.sigma > 0.0) all = frame.from_raster(masked_smooth(frame.to_raster(all), support_, lv.sigma, &lv.support_weight));
    Eigen::VectorXd v(static_cast<Eigen::Index>(visible_.size()));
    for (std::size_t k = 0; k < visible_.size(); ++k) v[static_cast<Eigen::Index>(k)] = all[visible_[k]];
    Eigen::VectorXd res = standardized(v) - lv.a0;
    const double e = projected_out_error(res, lv.modes);
    if (r) *r = std::move(res);
    return e;
}

double Fitter::error_at(const diffusion::DetailImage& ie, const ShapeParams& params, std::size_t level) const {
    if (level >= levels_.size()) fail(ErrorKind::InvalidArgument, "no such fitting level");
    return level_error(levels_[level], ie.raster(), model_->shape().instance(params), nullptr);
}

ShapeParams Fitter::compose(const ShapeParams& p, const Eigen::VectorXd& delta) const {
    const ShapeModel& sm = model_->shape();
    const ShapeVec& s0 = sm.mean();
    const ShapeVec s = sm.instance(p);
    const ShapeVec d = sm.basis() * delta;
    const auto& tris = model_->topology().triangles;
    ShapeVec out(s.size());
    for (int i = 0; i < sm.n_landmarks(); ++i) {
        double sx = 0.0, sy = 0.0;
        for (int t : incidence_[static_cast<std::size_t>(i)]) {
            const auto& tri = tris[static_cast<std::size_t>(t)];
            Eigen::Matrix2d m, c;
            m << s0[2 * tri[1]] - s0[2 * tri[0]], s0[2 * tri[2]] - s0[2 * tri[0]],
                s0[2 * tri[1] + 1] - s0[2 * tri[0] + 1], s0[2 * tri[2] + 1] - s0[2 * tri[0] + 1];
            c << s[2 * tri[1]] - s[2 * tri[0]], s[2 * tri[2]] - s[2 * tri[0]], s[2 * tri[1] + 1] - s[2 * tri[0] + 1],
                s[2 * tri[2] + 1] - s[2 * tri[0] + 1];
            const Eigen::Matrix2d lin = c * m.inverse();
            const Eigen::Vector2d moved = lin * Eigen::Vector2d(d[2 * i], d[2 * i + 1]);
            sx += s[2 * i] - moved.x();
            sy += s[2 * i + 1] - moved.y();
        }
        const double n = static_cast<double>(incidence_[static_cast<std::size_t>(i)].size());
        out[2 * i] = sx / n;
        out[2 * i + 1] = sy / n;
    }
    return sm.project(out);
}

Fitter::NumericRun Fitter::refine_numeric(const Level& lv, const Raster& img, const ShapeParams& start,
                                          int iterations, double min_move_px) const {
    const ShapeModel& sm = model_->shape();
    constexpr double kProbe = 0.5;
    auto residual = [&](const Eigen::VectorXd& v, Eigen::VectorXd* r) {
        const double e = level_error(lv, img, sm.instance(ShapeParams::from_stacked(v)), r);
        if (lv.modes.cols() > 0) *r -= lv.modes * (lv.modes.transpose() * *r);
        return e;
    };
    NumericRun run;
    Eigen::VectorXd x = start.stacked();
    Eigen::VectorXd r;
    run.error = residual(x, &r);
    const double rms_scale = 1.0 / std::sqrt(static_cast<double>(sm.n_landmarks()));
    for (int it = 0; it < iterations; ++it) {
        Eigen::MatrixXd jac(r.size(), x.size());
        for (Eigen::Index k = 0; k < x.size(); ++k) {
            Eigen::VectorXd xp = x, rp;
            xp[k] += kProbe;
            residual(xp, &rp);
            jac.col(k) = (rp - r) / kProbe;
        }
        const Eigen::MatrixXd h = jac.transpose() * jac;
        const Eigen::VectorXd delta = -(h + 1e-9 * h.trace() * Eigen::MatrixXd::Identity(h.rows(), h.cols()))
                                          .ldlt()
                                          .solve(jac.transpose() * r);
        if (!delta.allFinite()) break;
        run.last_step_px = delta.norm() * rms_scale;
        double alpha = 1.0;
        bool accepted = false;
        for (int k = 0; k <= cfg_.max_halvings; ++k, alpha *= 0.5) {
            Eigen::VectorXd rc;
            const Eigen::VectorXd xc = x + alpha * delta;
            const double ec = residual(xc, &rc);
            if (ec < run.error) {
                x = xc;
                run.error = ec;
                r = std::move(rc);
                run.accepted.push_back(ec);
                accepted = true;
                break;
            }
        }
        if (!accepted || alpha * run.last_step_px < min_move_px) break;
    }
    run.params = ShapeParams::from_stacked(x);
    return run;
}

FitResult Fitter::fit(const diffusion::DetailImage& ie, const ShapeParams& p0) const {
    const ShapeModel& sm = model_->shape();
    if (p0.p.size() != sm.n_modes()) fail(ErrorKind::InvalidArgument, "initial parameters do not match the model");
    const Raster& img = ie.raster();
    ShapeParams p = p0;
    FitResult res;

    for (std::size_t li = 0; li + 1 < levels_.size(); ++li)
        p = refine_numeric(levels_[li], img, p, cfg_.coarse_iterations, 0.1).params;

    const Level& lv = levels_.back();
    Eigen::VectorXd r;
    double e = level_error(lv, img, sm.instance(p), &r);
    res.error_history.push_back(e);
    int it = 0;
    while (it < cfg_.max_iterations) {
        ++it;
        const Eigen::VectorXd delta = lv.update * r;
        const double step = delta.norm();
        if (!std::isfinite(step)) break;
        double alpha = 1.0;
        bool accepted = false;
        for (int h = 0; h <= (cfg_.step_halving ? cfg_.max_halvings : 0); ++h, alpha *= 0.5) {
            const ShapeParams cand = compose(p, alpha * delta);
            if (!cand.stacked().allFinite()) continue;
            Eigen::VectorXd rc;
            const double ec = level_error(lv, img, sm.instance(cand), &rc);
            if (!cfg_.step_halving || ec <= e) {
                p = cand;
                e = ec;
                r = std::move(rc);
                accepted = true;
                break;
            }
        }
        if (accepted) res.error_history.push_back(e);
        if (step < cfg_.tolerance) {
            res.converged = true;
            break;
        }
        if (!accepted) {
            // The template-side linearization has stopped helping; polish against the exact residual
            // and call it converged once that step has become negligible.
            const NumericRun polish = refine_numeric(lv, img, p, cfg_.coarse_iterations, 0.02);
            p = polish.params;
            res.error_history.insert(res.error_history.end(), polish.accepted.begin(), polish.accepted.end());
            res.converged = polish.last_step_px < cfg_.stall_tolerance;
            break;
        }
    }
    res.iterations = it;

    const Level& fine = lv;
    res.params = p;
    res.shape = sm.instance(p);
    res.e_icaam = level_error(fine, img, res.shape, &r);
    res.appearance = fine.modes.transpose() * r;
    const Eigen::VectorXd projected = r - fine.modes * res.appearance;
    res.n_pixels = visible_.size();
    res.mean_pixel_error = res.e_icaam / static_cast<double>(res.n_pixels);
    const auto& px = model_->frame().pixels();
    res.residual = Raster(model_->frame().width(), model_->frame().height(), 0.0);
    for (std::size_t k = 0; k < visible_.size(); ++k)
        res.residual(px[visible_[k]].x, px[visible_[k]].y) = projected[static_cast<Eigen::Index>(k)];
    return res;
}

FitResult fit_icaam(const diffusion::DetailImage& ie, const AamModel& model, const ShapeParams& p0,
                    const FitConfig& cfg) {
    return Fitter(model, cfg).fit(ie, p0);
}

}  // namespace tfr::aam
