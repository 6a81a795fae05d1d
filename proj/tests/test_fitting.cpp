#include "support.hpp"
#include "tfr/aam_model.hpp"
#include "tfr/error.hpp"
#include "tfr/fitting.hpp"

#include <gtest/gtest.h>

#include <algorithm>

namespace tfr {
namespace {

using namespace aam;

const AamModel& base_model() { return test::small_ensemble().members().front(); }

ShapeParams placed(const AamModel& m, double scale, double angle, double tx, double ty) {
    ShapeParams p;
    p.p = Eigen::VectorXd::Zero(m.shape().n_modes());
    p.q = m.shape().similarity_params({scale * std::cos(angle), scale * std::sin(angle), tx, ty});
    return p;
}

TEST(Fitting, ProjectedOutError) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 1);
    a(0, 0) = 1.0;
    const Eigen::Vector4d r(3.0, 1.0, -2.0, 0.5);
    EXPECT_NEAR(projected_out_error(r, a), 1.0 + 4.0 + 0.25, 1e-12);
    EXPECT_NEAR(projected_out_error(r, Eigen::MatrixXd(4, 0)), r.squaredNorm(), 1e-12);
}

TEST(Fitting, ConfigValidation) {
    FitConfig c;
    EXPECT_NO_THROW(c.validate());
    c.max_iterations = 0;
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.coarse_sigmas = {2.0, 4.0};
    EXPECT_THROW(c.validate(), Error);
    c = {};
    c.coarse_iterations = 0;
    EXPECT_THROW(c.validate(), Error);
}

TEST(Fitting, TemplateSelfMatch) {
    const AamModel& m = base_model();
    const ShapeParams p0 = placed(m, 1.0, 0.0, 80.0, 80.0);
    const ThermalImage img = phantom::render_model_instance(m, m.shape().instance(p0), Eigen::VectorXd(), 160, 160);
    const FitResult r = fit_icaam(diffusion::DetailImage(img), m, p0);
    EXPECT_LT(r.e_icaam, 1e-6 * static_cast<double>(r.n_pixels));
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.iterations, 3);
    EXPECT_EQ(r.mean_pixel_error, r.e_icaam / static_cast<double>(r.n_pixels));
}

TEST(Fitting, RecoversPerturbedModelInstances) {
    const AamModel& m = base_model();
    const Fitter fitter(m);
    Rng rng(17);
    int good = 0;
    const int trials = 12;
    for (int t = 0; t < trials; ++t) {
        ShapeParams truth = placed(m, rng.uniform(0.95, 1.05), rng.uniform(-0.1, 0.1), 80 + rng.uniform(-4, 4),
                                   80 + rng.uniform(-4, 4));
        for (int i = 0; i < m.shape().n_modes(); ++i)
            truth.p[i] = rng.uniform(-2, 2) * std::sqrt(m.shape().variances()[i]);
        const ShapeVec target = m.shape().instance(truth);
        const ThermalImage img = phantom::render_model_instance(m, target, Eigen::VectorXd(), 160, 160);
        const FitResult r = fitter.fit(diffusion::enhance_detail(img, {}), init_fit(img, m));
        const double rmse = std::sqrt((r.shape - target).squaredNorm() / m.shape().n_landmarks());
        good += r.converged && rmse < 0.5;
    }
    EXPECT_GE(good, trials - 1);
}

TEST(Fitting, ErrorHistoryNeverIncreases) {
    const AamModel& m = base_model();
    phantom::PhantomSpec spec = test::small_training_spec();
    spec.seed = 77;
    spec.n_identities = 4;
    for (const auto& s : phantom::generate(spec)) {
        const FitResult r = fit_icaam(diffusion::enhance_detail(s.render.image, {}), m, init_fit(s.render.image, m));
        ASSERT_FALSE(r.error_history.empty());
        for (std::size_t i = 1; i < r.error_history.size(); ++i)
            EXPECT_LE(r.error_history[i], r.error_history[i - 1]);
        EXPECT_EQ(r.error_history.back(), r.e_icaam);
        EXPECT_GE(r.e_icaam, 0.0);
    }
}

TEST(Fitting, PureNoiseIsRejected) {
    const AamModel& m = base_model();
    const Fitter fitter(m);
    phantom::PhantomSpec spec = test::small_training_spec();
    spec.seed = 31;
    spec.n_identities = 10;
    std::vector<double> face_errors;
    for (const auto& s : phantom::generate(spec)) {
        const FitResult r = fitter.fit(diffusion::enhance_detail(s.render.image, {}), init_fit(s.render.image, m));
        face_errors.push_back(r.mean_pixel_error);
    }
    // With 20 face fits the 99th percentile is the largest.
    const double p99 = *std::max_element(face_errors.begin(), face_errors.end());
    Raster noise = test::random_raster(160, 160, 5);
    const FitResult r = fitter.fit(diffusion::enhance_detail(noise, {}), placed(m, 1.0, 0.0, 80.0, 80.0));
    EXPECT_TRUE(!r.converged || r.mean_pixel_error > p99) << r.mean_pixel_error << " vs " << p99;
}

TEST(Fitting, TruncatedModelWinsOnEyeOcclusion) {
    const auto& members = test::small_ensemble().members();
    const AamModel& full = members.front();
    const auto eye = std::find_if(members.begin(), members.end(),
                                  [](const AamModel& m) { return m.meta().truncation == Truncation::EyeWear; });
    ASSERT_NE(eye, members.end());
    const Fitter ff(full), fe(*eye);
    phantom::PhantomSpec spec = test::small_training_spec();
    spec.seed = 55;
    spec.n_identities = 25;
    spec.p_glasses = 1.0;
    int wins = 0, n = 0;
    for (const auto& s : phantom::generate(spec)) {
        const auto ie = diffusion::enhance_detail(s.render.image, {});
        const FitResult a = ff.fit(ie, init_fit(s.render.image, full));
        const FitResult b = fe.fit(ie, init_fit(s.render.image, *eye));
        wins += b.mean_pixel_error < a.mean_pixel_error;
        ++n;
    }
    EXPECT_EQ(n, 50);
    EXPECT_GE(wins, 45);
}

TEST(Fitting, DeterministicAcrossRuns) {
    const AamModel& m = base_model();
    const auto s = phantom::generate(test::small_training_spec()).front();
    const auto ie = diffusion::enhance_detail(s.render.image, {});
    const FitResult a = fit_icaam(ie, m, init_fit(s.render.image, m));
    const FitResult b = fit_icaam(ie, m, init_fit(s.render.image, m));
    EXPECT_EQ(a.shape, b.shape);
    EXPECT_EQ(a.e_icaam, b.e_icaam);
    EXPECT_EQ(a.error_history, b.error_history);
}

}  // namespace
}  // namespace tfr
