#include "support.hpp"
#include "tfr/error.hpp"
#include "tfr/imaging.hpp"
#include "tfr/vesselness.hpp"

#include <gtest/gtest.h>

namespace tfr {
namespace {

using namespace vesselness;

Raster bar(int n, double width) {
    Raster img(n, n, 0.1);
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            const double d = std::abs(x - (n / 2.0 - 0.5));
            if (d <= width / 2.0) img(x, y) = 0.9;
        }
    return imaging::gaussian_smooth(img, 0.7);
}

TEST(Vesselness, EigenOrderingExamples) {
    const EigenPair a = eig_sym_2x2(2, 0, 5);
    EXPECT_DOUBLE_EQ(a.lambda1, 2);
    EXPECT_DOUBLE_EQ(a.lambda2, 5);
    const EigenPair b = eig_sym_2x2(-5, 0, 2);
    EXPECT_DOUBLE_EQ(b.lambda1, 2);
    EXPECT_DOUBLE_EQ(b.lambda2, -5);
    const EigenPair c = eig_sym_2x2(0, 1, 0);
    EXPECT_DOUBLE_EQ(c.lambda1, -1);
    EXPECT_DOUBLE_EQ(c.lambda2, 1);
}

TEST(Vesselness, EigenTraceDeterminantProperty) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double a = rng.uniform(-5, 5), b = rng.uniform(-5, 5), d = rng.uniform(-5, 5);
        const EigenPair e = eig_sym_2x2(a, b, d);
        EXPECT_LE(std::abs(e.lambda1), std::abs(e.lambda2));
        EXPECT_NEAR(e.lambda1 + e.lambda2, a + d, 1e-9);
        EXPECT_NEAR(e.lambda1 * e.lambda2, a * d - b * b, 1e-9);
    }
}

TEST(Vesselness, PaperVerbatimWorkedExample) {
    const double v = vesselness_response({1.0, 2.0}, 0.5, 1.0, Mode::PaperVerbatim, Polarity::DarkVessels);
    EXPECT_NEAR(v, (1 - std::exp(-1.0)) * (1 - std::exp(-std::sqrt(5.0) / 2)), 1e-12);
    EXPECT_NEAR(v, 0.42546, 1e-4);
}

TEST(Vesselness, GateFailureGivesZero) {
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        const EigenPair e = eig_sym_2x2(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3));
        for (Mode m : {Mode::PaperVerbatim, Mode::FrangiClassic}) {
            if (e.lambda2 >= 0) EXPECT_EQ(vesselness_response(e, 0.5, 1.0, m, Polarity::BrightVessels), 0.0);
            if (e.lambda2 <= 0) EXPECT_EQ(vesselness_response(e, 0.5, 1.0, m, Polarity::DarkVessels), 0.0);
        }
    }
}

TEST(Vesselness, PaperVerbatimZeroesIdealTube) {
    EXPECT_EQ(vesselness_response({0.0, -3.0}, 0.5, 1.0, Mode::PaperVerbatim, Polarity::BrightVessels), 0.0);
}

TEST(Vesselness, FrangiIdealTubeLimit) {
    const double c = 1.5, l2 = -4.0;
    EXPECT_NEAR(vesselness_response({0.0, l2}, 0.5, c, Mode::FrangiClassic, Polarity::BrightVessels),
                1 - std::exp(-l2 * l2 / (2 * c * c)), 1e-15);
}

TEST(Vesselness, ParamsValidate) {
    VesselnessParams p;
    EXPECT_NO_THROW(p.validate());
    p.scales = {2.0, 1.0};
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.scales.clear();
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.beta = 0;
    EXPECT_THROW(p.validate(), Error);
}

TEST(Vesselness, ModeAndPolarityNamesRoundTrip) {
    for (Mode m : {Mode::PaperVerbatim, Mode::FrangiClassic}) EXPECT_EQ(parse_mode(to_string(m)), m);
    for (Polarity p : {Polarity::BrightVessels, Polarity::DarkVessels}) EXPECT_EQ(parse_polarity(to_string(p)), p);
    EXPECT_EQ(to_string(Mode::FrangiClassic), "frangi-classic");
    EXPECT_THROW(parse_mode("frangi"), Error);
}

TEST(Vesselness, SingleScaleEqualsScaleMap) {
    const Raster img = test::smooth_random(60, 50, 2.0, 2);
    VesselnessParams p;
    p.scales = {2.0};
    const VesselnessMap m = vesselness_multiscale(img, p);
    EXPECT_EQ(m.v0, vesselness_at_scale(imaging::hessian_at_scale(img, 2.0), p));
}

TEST(Vesselness, AddingScaleNeverDecreases) {
    const Raster img = test::smooth_random(60, 50, 1.5, 4);
    VesselnessParams p;
    p.cparam = 0.05;  // fixed, so scales do not interact through the automatic c
    p.scales = {1.0, 2.0};
    const Raster a = vesselness_multiscale(img, p).v0;
    p.scales = {1.0, 2.0, 4.0};
    const Raster b = vesselness_multiscale(img, p).v0;
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_GE(b.values()[i], a.values()[i]);
}

TEST(Vesselness, ValuesInUnitIntervalBothModes) {
    const Raster img = test::smooth_random(64, 64, 1.0, 5);
    for (Mode m : {Mode::PaperVerbatim, Mode::FrangiClassic}) {
        VesselnessParams p;
        p.mode = m;
        const VesselnessMap vm = vesselness_multiscale(img, p);
        EXPECT_GE(vm.v0.min(), 0.0);
        EXPECT_LE(vm.v0.max(), 1.0);
        for (std::size_t i = 0; i < vm.v0.size(); ++i)
            if (vm.v0.values()[i] == 0.0) EXPECT_EQ(vm.argmax_scale.values()[i], 0.0);
    }
}

TEST(Vesselness, SerialEqualsParallel) {
    const Raster img = test::smooth_random(70, 45, 1.0, 6);
    const VesselnessParams p;
    const VesselnessMap a = vesselness_multiscale(img, p, kernels::Exec::Serial);
    const VesselnessMap b = vesselness_multiscale(img, p);
    EXPECT_EQ(a.v0, b.v0);
    EXPECT_EQ(a.argmax_scale, b.argmax_scale);
}

TEST(Vesselness, DetectsBarAtMatchingScale) {
    const Raster img = bar(256, 6.0);
    const VesselnessMap vm = vesselness_multiscale(img, {});
    double centre = 0.0, background = 0.0;
    int nc = 0, nb = 0, good = 0;
    for (int y = 20; y < 236; ++y)
        for (int x = 0; x < 256; ++x) {
            if (x == 127 || x == 128) {
                centre += vm.v0(x, y);
                ++nc;
                const double s = vm.argmax_scale(x, y);
                good += s >= 1.5 && s <= 6.0;
            } else if (std::abs(x - 127.5) > 20) {
                background += vm.v0(x, y);
                ++nb;
            }
        }
    EXPECT_GE(centre / nc, 5.0 * background / nb);
    EXPECT_GE(good, static_cast<int>(0.8 * nc));
}

TEST(Vesselness, RotationBy90Degrees) {
    const Raster img = test::smooth_random(64, 64, 1.5, 7);
    Raster rot(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) rot(63 - y, x) = img(x, y);
    const VesselnessParams p;
    const Raster a = vesselness_multiscale(img, p).v0;
    const Raster b = vesselness_multiscale(rot, p).v0;
    double worst = 0.0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) worst = std::max(worst, std::abs(b(63 - y, x) - a(x, y)));
    EXPECT_LT(worst, 1e-3);
}

TEST(Vesselness, AffineIntensityKeepsGatedSet) {
    const Raster img = test::smooth_random(64, 64, 1.5, 8);
    Raster scaled = img;
    for (double& v : scaled.values()) v = 3.0 * v + 0.25;
    const VesselnessParams p;
    const Raster a = vesselness_multiscale(img, p).v0;
    const Raster b = vesselness_multiscale(scaled, p).v0;
    // Same gate at every pixel; with the per-image c the responses agree too.
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a.values()[i] > 0.0, b.values()[i] > 0.0);
        EXPECT_NEAR(a.values()[i], b.values()[i], 1e-9);
    }
}

}  // namespace
}  // namespace tfr
