#include "tfr/shape_model.hpp"

#include "tfr/error.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace tfr::aam {

Eigen::VectorXd ShapeParams::stacked() const {
    Eigen::VectorXd v(4 + p.size());
    v.head<4>() = q;
    v.tail(p.size()) = p;
    return v;
}

ShapeParams ShapeParams::from_stacked(const Eigen::VectorXd& v) {
    ShapeParams out;
    out.q = v.head<4>();
    out.p = v.tail(v.size() - 4);
    return out;
}

ShapeVec Similarity::apply(const ShapeVec& s) const {
    ShapeVec out(s.size());
    for (Eigen::Index i = 0; i < s.size() / 2; ++i) {
        const double x = s[2 * i];
        const double y = s[2 * i + 1];
        out[2 * i] = a * x - b * y + tx;
        out[2 * i + 1] = b * x + a * y + ty;
    }
    return out;
}

Similarity Similarity::inverse() const {
    const double d = a * a + b * b;
    const double ia = a / d;
    const double ib = -b / d;
    return {ia, ib, -(ia * tx - ib * ty), -(ib * tx + ia * ty)};
}

ShapeVec centered(const ShapeVec& s) {
    const int n = static_cast<int>(s.size() / 2);
    double cx = 0.0, cy = 0.0;
    for (int i = 0; i < n; ++i) {
        cx += s[2 * i];
        cy += s[2 * i + 1];
    }
    cx /= n;
    cy /= n;
    ShapeVec out = s;
    for (int i = 0; i < n; ++i) {
        out[2 * i] -= cx;
        out[2 * i + 1] -= cy;
    }
    return out;
}

Similarity procrustes_similarity(const ShapeVec& from, const ShapeVec& to) {
    const int n = static_cast<int>(from.size() / 2);
    double fx = 0, fy = 0, tx = 0, ty = 0;
    for (int i = 0; i < n; ++i) {
        fx += from[2 * i];
        fy += from[2 * i + 1];
        tx += to[2 * i];
        ty += to[2 * i + 1];
    }
    fx /= n;
    fy /= n;
    tx /= n;
    ty /= n;
    double dot = 0.0, cross = 0.0, norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = from[2 * i] - fx;
        const double y = from[2 * i + 1] - fy;
        const double u = to[2 * i] - tx;
        const double v = to[2 * i + 1] - ty;
        dot += x * u + y * v;
        cross += x * v - y * u;
        norm += x * x + y * y;
    }
    if (!(norm > 0.0)) fail(ErrorKind::InvalidArgument, "procrustes: degenerate source shape");
    Similarity t{dot / norm, cross / norm, 0.0, 0.0};
    t.tx = tx - (t.a * fx - t.b * fy);
    t.ty = ty - (t.b * fx + t.a * fy);
    return t;
}

Eigen::MatrixXd similarity_basis_for(const ShapeVec& m) {
    const Eigen::Index n2 = m.size();
    const int n = static_cast<int>(n2 / 2);
    Eigen::MatrixXd b(n2, 4);
    const double norm = m.norm();
    for (int i = 0; i < n; ++i) {
        b(2 * i, 0) = m[2 * i] / norm;
        b(2 * i + 1, 0) = m[2 * i + 1] / norm;
        b(2 * i, 1) = -m[2 * i + 1] / norm;
        b(2 * i + 1, 1) = m[2 * i] / norm;
        b(2 * i, 2) = 1.0 / std::sqrt(n);
        b(2 * i + 1, 2) = 0.0;
        b(2 * i, 3) = 0.0;
        b(2 * i + 1, 3) = 1.0 / std::sqrt(n);
    }
    return b;
}

ShapeModel::ShapeModel(ShapeVec mean, Eigen::MatrixXd modes, Eigen::VectorXd variances)
    : mean_(std::move(mean)), modes_(std::move(modes)), variances_(std::move(variances)) {
    if (mean_.size() < 6 || mean_.size() % 2 != 0) fail(ErrorKind::InvalidArgument, "shape model mean malformed");
    if (modes_.cols() > 0 && modes_.rows() != mean_.size())
        fail(ErrorKind::InvalidArgument, "shape modes do not match mean length");
    if (modes_.cols() == 0) modes_.resize(mean_.size(), 0);
    sim_basis_ = similarity_basis_for(mean_);
    basis_.resize(mean_.size(), 4 + modes_.cols());
    basis_.leftCols(4) = sim_basis_;
    basis_.rightCols(modes_.cols()) = modes_;
}

Similarity ShapeModel::similarity(const Eigen::Vector4d& q) const {
    const double norm = mean_.norm();
    const double rn = std::sqrt(static_cast<double>(n_landmarks()));
    return {1.0 + q[0] / norm, q[1] / norm, q[2] / rn, q[3] / rn};
}

Eigen::Vector4d ShapeModel::similarity_params(const Similarity& t) const {
    const double norm = mean_.norm();
    const double rn = std::sqrt(static_cast<double>(n_landmarks()));
    return {(t.a - 1.0) * norm, t.b * norm, t.tx * rn, t.ty * rn};
}

ShapeVec ShapeModel::instance(const ShapeParams& params) const {
    ShapeVec local = mean_;
    if (params.p.size() > 0) local += modes_ * params.p;
    return similarity(params.q).apply(local);
}

ShapeParams ShapeModel::project(const ShapeVec& shape) const {
    if (shape.size() != mean_.size()) fail(ErrorKind::InvalidArgument, "shape has wrong landmark count");
    const Similarity t = procrustes_similarity(mean_, shape);
    const ShapeVec local = t.inverse().apply(shape);
    ShapeParams out;
    out.q = similarity_params(t);
    out.p = modes_.transpose() * (local - mean_);
    return out;
}

int retained_count(const Eigen::VectorXd& ev, double retention) {
    const double total = ev.sum();
    if (!(total > 1e-18)) return 0;
    double acc = 0.0;
    int k = 0;
    while (k < ev.size() && acc < retention * total) {
        if (ev[k] <= 1e-12 * total) break;
        acc += ev[k];
        ++k;
    }
    return k;
}

namespace {

void check_shapes(const std::vector<ShapeVec>& shapes) {
    if (shapes.size() < 2) fail(ErrorKind::InvalidArgument, "shape model needs at least 2 shapes");
    const Eigen::Index len = shapes.front().size();
    if (len < 6 || len % 2 != 0) fail(ErrorKind::InvalidArgument, "shapes need at least 3 landmarks");
    for (const auto& s : shapes)
        if (s.size() != len) fail(ErrorKind::InvalidArgument, "inconsistent landmark counts across shapes");
}

struct Alignment {
    ShapeVec mean;                  // centered, average centroid size
    std::vector<ShapeVec> aligned;  // tangent-projected, same size as mean
};

Alignment generalized_procrustes(const std::vector<ShapeVec>& shapes) {
    std::vector<ShapeVec> unit;
    unit.reserve(shapes.size());
    double mean_size = 0.0;
    for (const auto& s : shapes) {
        ShapeVec c = centered(s);
        const double size = c.norm();
        if (!(size > 0.0)) fail(ErrorKind::InvalidArgument, "shape with all landmarks coincident");
        mean_size += size;
        unit.push_back(c / size);
    }
    mean_size /= static_cast<double>(shapes.size());

    const ShapeVec reference = unit.front();
    ShapeVec mean = reference;
    std::vector<ShapeVec> rotated = unit;
    for (int iter = 0; iter < 100; ++iter) {
        for (std::size_t i = 0; i < unit.size(); ++i) {
            Similarity t = procrustes_similarity(unit[i], mean);
            const double s = std::hypot(t.a, t.b);
            t = {t.a / s, t.b / s, 0.0, 0.0};  // rotation only; both are centered
            rotated[i] = t.apply(unit[i]);
        }
        ShapeVec next = ShapeVec::Zero(mean.size());
        for (const auto& r : rotated) next += r;
        next /= next.norm();
        // Fix the rotational gauge to the first shape.
        Similarity g = procrustes_similarity(next, reference);
        const double gs = std::hypot(g.a, g.b);
        next = Similarity{g.a / gs, g.b / gs, 0.0, 0.0}.apply(next);
        const double change = (next - mean).norm();
        mean = next;
        if (change < 1e-13) break;
    }

    Alignment out;
    out.mean = mean * mean_size;
    for (const auto& u : unit) {
        Similarity t = procrustes_similarity(u, mean);
        ShapeVec a = Similarity{t.a, t.b, 0.0, 0.0}.apply(u);
        // Tangent-space projection onto the plane through the mean.
        a /= a.dot(mean);
        out.aligned.push_back(a * mean_size);
    }
    return out;
}

}  // namespace

ShapeVec procrustes_mean(const std::vector<ShapeVec>& shapes) {
    check_shapes(shapes);
    return generalized_procrustes(shapes).mean;
}

ShapeModel train_shape_model(const std::vector<ShapeVec>& shapes, double retention) {
    check_shapes(shapes);
    const Alignment al = generalized_procrustes(shapes);
    const Eigen::MatrixXd sim = similarity_basis_for(al.mean);
    const Eigen::Index d = al.mean.size();
    const auto n = static_cast<Eigen::Index>(shapes.size());

    Eigen::MatrixXd data(d, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        ShapeVec r = al.aligned[static_cast<std::size_t>(i)] - al.mean;
        r -= sim * (sim.transpose() * r);
        data.col(i) = r;
    }
    const Eigen::MatrixXd cov = data * data.transpose() / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd ev = eig.eigenvalues().reverse();
    const Eigen::MatrixXd evec = eig.eigenvectors().rowwise().reverse();
    const int keep = retained_count(ev.cwiseMax(0.0), retention);

    Eigen::MatrixXd modes(d, keep);
    for (int k = 0; k < keep; ++k) {
        Eigen::VectorXd v = evec.col(k);
        v -= sim * (sim.transpose() * v);
        for (int j = 0; j < k; ++j) v -= modes.col(j) * modes.col(j).dot(v);
        v.normalize();
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v[imax] < 0) v = -v;
        modes.col(k) = v;
    }
    return ShapeModel(al.mean, modes, ev.head(keep));
}

}  // namespace tfr::aam
