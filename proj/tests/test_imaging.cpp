#include "support.hpp"
#include "tfr/error.hpp"
#include "tfr/imaging.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace tfr {
namespace {

using imaging::gaussian_smooth;

Raster disc(int w, int h, double cx, double cy, double r, double inside, double outside) {
    Raster img(w, h, outside);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) img(x, y) = inside;
    return img;
}

TEST(Imaging, GaussianTapsNormalized) {
    for (double s : {0.5, 1.0, 2.7}) {
        const auto g = imaging::gaussian_taps(s);
        EXPECT_EQ(g.size(), 2 * static_cast<std::size_t>(std::ceil(3 * s)) + 1);
        EXPECT_NEAR(std::accumulate(g.begin(), g.end(), 0.0), 1.0, 1e-15);
        // unit ramp -> 1, x^2 -> 2
        const auto d1 = imaging::gaussian_d1_taps(s);
        const auto d2 = imaging::gaussian_d2_taps(s);
        const int r = static_cast<int>(d1.size() / 2);
        double ramp = 0.0, sq = 0.0, sum2 = 0.0;
        for (int k = -r; k <= r; ++k) {
            // convolution: out(x) = sum_k taps[k] * f(x - k)
            ramp += d1[static_cast<std::size_t>(k + r)] * (-k);
            sq += d2[static_cast<std::size_t>(k + r)] * (k * k);
            sum2 += d2[static_cast<std::size_t>(k + r)];
        }
        EXPECT_NEAR(std::abs(ramp), 1.0, 1e-12);
        EXPECT_NEAR(sq, 2.0, 1e-12);
        EXPECT_NEAR(sum2, 0.0, 1e-12);
    }
}

TEST(Imaging, SmoothConstantIsConstant) {
    const Raster img(20, 15, 0.37);
    const Raster out = gaussian_smooth(img, 2.0);
    for (double v : out.values()) EXPECT_NEAR(v, 0.37, 1e-15);
}

TEST(Imaging, SmoothSigmaZeroIsIdentity) {
    const Raster img = test::random_raster(12, 9, 4);
    EXPECT_EQ(gaussian_smooth(img, 0.0), img);
}

TEST(Imaging, ImpulseResponseMatchesDenseGaussian) {
    Raster img(33, 33, 0.0);
    img(16, 16) = 1.0;
    const Raster out = gaussian_smooth(img, 2.0);
    // 2D sampled Gaussian, normalized over the separable support.
    const double s = 2.0;
    const int r = static_cast<int>(std::ceil(3 * s));
    double z = 0.0;
    for (int k = -r; k <= r; ++k) z += std::exp(-k * k / (2 * s * s));
    double worst = 0.0;
    for (int y = 0; y < 33; ++y)
        for (int x = 0; x < 33; ++x) {
            const int dx = x - 16, dy = y - 16;
            double expect = 0.0;
            if (std::abs(dx) <= r && std::abs(dy) <= r) expect = std::exp(-(dx * dx + dy * dy) / (2 * s * s)) / (z * z);
            worst = std::max(worst, std::abs(out(x, y) - expect));
        }
    EXPECT_LT(worst, 1e-6);
}

TEST(Imaging, GradientOfRamps) {
    Raster a(10, 8), b(10, 8);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 10; ++x) {
            a(x, y) = 2.0 * x;
            b(x, y) = x + y;
        }
    const auto ga = imaging::gradient(a);
    const auto gb = imaging::gradient(b);
    for (int y = 1; y < 7; ++y)
        for (int x = 1; x < 9; ++x) {
            EXPECT_DOUBLE_EQ(ga.gx(x, y), 2.0);
            EXPECT_DOUBLE_EQ(ga.gy(x, y), 0.0);
            EXPECT_NEAR(gb.magnitude(x, y), std::sqrt(2.0), 1e-15);
        }
    const auto flat = imaging::gradient(Raster(6, 6, 0.3));
    for (double v : flat.magnitude.values()) EXPECT_EQ(v, 0.0);
}

TEST(Imaging, HessianOfConstantIsZero) {
    const auto h = imaging::hessian_at_scale(Raster(30, 30, 0.8), 2.0);
    for (std::size_t i = 0; i < h.lxx.size(); ++i) {
        EXPECT_NEAR(h.lxx.values()[i], 0.0, 1e-14);
        EXPECT_NEAR(h.lxy.values()[i], 0.0, 1e-14);
        EXPECT_NEAR(h.lyy.values()[i], 0.0, 1e-14);
    }
}

TEST(Imaging, HessianOfParabola) {
    Raster img(64, 64);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) img(x, y) = (x - 32.0) * (x - 32.0);
    const auto h = imaging::hessian_at_scale(img, 2.0);
    for (int y = 20; y < 44; ++y)
        for (int x = 20; x < 44; ++x) {
            EXPECT_NEAR(h.lxx(x, y), 2.0, 1e-3);
            EXPECT_NEAR(h.lxy(x, y), 0.0, 1e-3);
            EXPECT_NEAR(h.lyy(x, y), 0.0, 1e-3);
        }
}

TEST(Imaging, HessianMatchesFiniteDifferencesOfSmoothedImage) {
    const Raster img = test::smooth_random(128, 128, 4.0, 21);
    const double s = 2.0;
    const auto h = imaging::hessian_at_scale(img, s);
    const Raster L = gaussian_smooth(img, s);
    double worst = 0.0;
    const int m = 12;
    for (int y = m; y < 128 - m; ++y)
        for (int x = m; x < 128 - m; ++x) {
            const double fxx = L(x + 1, y) - 2 * L(x, y) + L(x - 1, y);
            const double fyy = L(x, y + 1) - 2 * L(x, y) + L(x, y - 1);
            const double fxy = 0.25 * (L(x + 1, y + 1) - L(x - 1, y + 1) - L(x + 1, y - 1) + L(x - 1, y - 1));
            worst = std::max({worst, std::abs(h.lxx(x, y) - fxx), std::abs(h.lyy(x, y) - fyy), std::abs(h.lxy(x, y) - fxy)});
        }
    EXPECT_LT(worst, 1e-3);
}

TEST(Imaging, HessianSerialEqualsParallel) {
    const Raster img = test::random_raster(40, 33, 8);
    const auto a = imaging::hessian_at_scale(img, 1.4, kernels::Exec::Serial);
    const auto b = imaging::hessian_at_scale(img, 1.4);
    EXPECT_EQ(a.lxx, b.lxx);
    EXPECT_EQ(a.lxy, b.lxy);
    EXPECT_EQ(a.lyy, b.lyy);
}

TEST(Imaging, HistEqualizeConstantUnchanged) {
    const Raster img(7, 7, 0.42);
    EXPECT_EQ(imaging::hist_equalize(img), img);
}

TEST(Imaging, HistEqualizeTwoLevels) {
    Raster img(20, 20, 0.8);
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 20; ++x) img(x, y) = 0.2;
    const Raster eq = imaging::hist_equalize(img);
    EXPECT_NEAR(eq(0, 0), 0.25, 1e-12);
    EXPECT_NEAR(eq(0, 10), 1.0, 1e-12);
}

TEST(Imaging, HistEqualizeUniformIsNearIdentity) {
    Raster img(256, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 256; ++x) img(x, y) = x / 255.0;
    const Raster eq = imaging::hist_equalize(img);
    EXPECT_LE(test::max_abs_diff(eq, img), 1.0 / 256 + 1e-12);
}

TEST(Imaging, LocalizeWarmDisc) {
    const Raster img = disc(200, 160, 100, 80, 30, 0.9, 0.1);
    const auto locus = imaging::localize_face(img);
    EXPECT_NEAR(locus.cx, 100.0, 0.5);
    EXPECT_NEAR(locus.cy, 80.0, 0.5);
    EXPECT_NEAR(locus.scale, 30.0, 1.5);
}

TEST(Imaging, LocalizeBlankThrowsFaceNotFound) {
    try {
        imaging::localize_face(Raster(50, 50, 0.3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FaceNotFound);
    }
}

TEST(Imaging, LocalizePicksLargestComponent) {
    Raster img = disc(200, 160, 60, 80, 30, 0.9, 0.1);
    for (int y = 0; y < 160; ++y)
        for (int x = 0; x < 200; ++x)
            if ((x - 160.0) * (x - 160.0) + (y - 40.0) * (y - 40.0) <= 100.0) img(x, y) = 0.9;
    const auto locus = imaging::localize_face(img);
    EXPECT_NEAR(locus.cx, 60.0, 0.5);
    EXPECT_NEAR(locus.cy, 80.0, 0.5);
}

TEST(Imaging, LocalizeInvariantToAffineIntensity) {
    Raster img = disc(120, 100, 55, 48, 25, 0.7, 0.2);
    const Raster noise = test::random_raster(120, 100, 2);
    for (std::size_t i = 0; i < img.size(); ++i) img.values()[i] += 0.05 * noise.values()[i];
    Raster scaled = img;
    for (double& v : scaled.values()) v = 2.5 * v - 0.3;
    const auto a = imaging::localize_face(img);
    const auto b = imaging::localize_face(scaled);
    EXPECT_EQ(a.area, b.area);
    EXPECT_DOUBLE_EQ(a.cx, b.cx);
    EXPECT_DOUBLE_EQ(a.cy, b.cy);
    EXPECT_EQ(imaging::face_mask(img), imaging::face_mask(scaled));
}

TEST(Imaging, RescaleUnit) {
    Raster img(3, 1, std::vector<double>{2.0, 4.0, 3.0});
    const Raster r = imaging::rescale_unit(img);
    EXPECT_EQ(r.values(), (std::vector<double>{0.0, 1.0, 0.5}));
    const Raster flat = imaging::rescale_unit(Raster(4, 4, 7.0));
    for (double v : flat.values()) EXPECT_EQ(v, 0.0);
}

}  // namespace
}  // namespace tfr
