// Acceptance run: one PASS/FAIL line per primary criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include "../support.hpp"
#include "tfr/diffusion.hpp"
#include "tfr/ensemble.hpp"
#include "tfr/evaluation.hpp"
#include "tfr/fitting.hpp"
#include "tfr/imaging.hpp"
#include "tfr/kernels.hpp"
#include "tfr/model_io.hpp"
#include "tfr/recognition.hpp"
#include "tfr/text.hpp"
#include "tfr/vesselness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <regex>
#include <sstream>

namespace {

using namespace tfr;
using Clock = std::chrono::steady_clock;

// Tolerances and thresholds.
constexpr double kConductanceTol = 1e-12;
constexpr double kWorkedExample = 0.42546;
constexpr double kWorkedExampleTol = 1e-4;
constexpr double kHessianTol = 1e-3;
constexpr double kImpulseTol = 1e-6;
constexpr double kDiffusionStepTol = 1e-9;
constexpr double kBarContrast = 5.0;
constexpr double kBarScaleShare = 0.8;
constexpr int kRecoveryTrials = 100;
constexpr double kRecoveryRate = 0.95;
constexpr double kRecoveryRmsePx = 0.5;
constexpr int kGeneratingTrials = 100;
constexpr double kGeneratingRate = 0.95;
constexpr int kOccludedTrials = 50;
constexpr double kTruncatedRate = 0.90;
constexpr int kCleanTrials = 50;
constexpr double kBaseRate = 0.90;
constexpr double kRank1Unoccluded = 0.95;
constexpr double kAffineTol = 1e-9;
constexpr double kSymmetryTol = 1e-12;
constexpr double kMeanConservationTol = 1e-6;

// Runtime budgets in seconds.
constexpr double kFormulaBudget = 1.0;
constexpr double kOracleBudget = 10.0;
constexpr double kBarBudget = 5.0;
constexpr double kRecoveryBudget = 120.0;
constexpr double kSelectionBudget = 300.0;
constexpr double kEndToEndBudget = 600.0;

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("%s  %-28s %s [%.2fs]\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string pct(double v) { return text::format_fixed(100.0 * v, 1) + "%"; }

// Shared across the selection, end-to-end and invariance checks.
const ensemble::Ensemble& selection_ensemble() {
    static const ensemble::Ensemble ens = [] {
        phantom::PhantomSpec spec;
        spec.n_identities = 40;
        spec.sessions = 2;
        spec.seed = 100;
        ensemble::EnsembleConfig cfg;
        cfg.n_bins = 3;
        cfg.k = 2;
        return ensemble::train_ensemble(test::corpus_from(phantom::generate(spec)), cfg);
    }();
    return ens;
}

void formula_fidelity() {
    const auto t0 = Clock::now();
    const double g = diffusion::conductance(400.0, 400.0);
    const bool c_ok = std::abs(g - std::exp(-1.0)) < kConductanceTol;

    bool gate_ok = true;
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const auto e = vesselness::eig_sym_2x2(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4));
        for (auto pol : {vesselness::Polarity::BrightVessels, vesselness::Polarity::DarkVessels}) {
            const bool fails = pol == vesselness::Polarity::BrightVessels ? !(e.lambda2 < 0) : !(e.lambda2 > 0);
            if (fails && vesselness::vesselness_response(e, 0.5, 1.0, vesselness::Mode::PaperVerbatim, pol) != 0.0)
                gate_ok = false;
        }
    }
    const double v = vesselness::vesselness_response({1.0, 2.0}, 0.5, 1.0, vesselness::Mode::PaperVerbatim,
                                                     vesselness::Polarity::DarkVessels);
    const bool v_ok = std::abs(v - kWorkedExample) < kWorkedExampleTol;
    const double dt = since(t0);
    report("formula fidelity", c_ok && gate_ok && v_ok && dt < kFormulaBudget,
           "c(400)=" + text::format_double(g) + " gate=" + (gate_ok ? "ok" : "violated") +
               " V=" + text::format_fixed(v, 6),
           dt);
}

void oracle_equivalence() {
    const auto t0 = Clock::now();
    // Hessian against second-order central differences of the smoothed image.
    const Raster img = test::smooth_random(128, 128, 4.0, 21);
    const auto h = imaging::hessian_at_scale(img, 2.0);
    const Raster L = imaging::gaussian_smooth(img, 2.0);
    double hess = 0.0;
    for (int y = 12; y < 116; ++y)
        for (int x = 12; x < 116; ++x) {
            const double fxx = L(x + 1, y) - 2 * L(x, y) + L(x - 1, y);
            const double fyy = L(x, y + 1) - 2 * L(x, y) + L(x, y - 1);
            const double fxy = 0.25 * (L(x + 1, y + 1) - L(x - 1, y + 1) - L(x + 1, y - 1) + L(x - 1, y - 1));
            hess = std::max({hess, std::abs(h.lxx(x, y) - fxx), std::abs(h.lyy(x, y) - fyy), std::abs(h.lxy(x, y) - fxy)});
        }

    // Impulse response against a dense 2D sampled Gaussian.
    Raster imp(33, 33, 0.0);
    imp(16, 16) = 1.0;
    const Raster out = imaging::gaussian_smooth(imp, 2.0);
    const int r = 6;
    double z = 0.0;
    for (int k = -r; k <= r; ++k) z += std::exp(-k * k / 8.0);
    double impulse = 0.0;
    for (int y = 0; y < 33; ++y)
        for (int x = 0; x < 33; ++x) {
            const int dx = x - 16, dy = y - 16;
            double dense = 0.0;
            for (int j = -r; j <= r; ++j)
                for (int i = -r; i <= r; ++i)
                    if (dx - i == 0 && dy - j == 0) dense += std::exp(-(i * i + j * j) / 8.0) / (z * z);
            impulse = std::max(impulse, std::abs(out(x, y) - dense));
        }

    // One diffusion step against the scalar 4-neighbour update.
    Raster five(5, 5, 0.0);
    five(2, 2) = 1.0;
    const Raster d = diffusion::diffuse(five, {400.0, 0.2, 1});
    double step = 0.0;
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            double acc = 0.0;
            const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            for (const auto& o : nb) {
                const int nx = x + o[0], ny = y + o[1];
                if (nx < 0 || ny < 0 || nx > 4 || ny > 4) continue;
                const double diff = five(nx, ny) - five(x, y);
                acc += std::exp(-std::abs(diff) / 400.0) * diff;
            }
            step = std::max(step, std::abs(d(x, y) - (five(x, y) + 0.2 * acc)));
        }
    const double dt = since(t0);
    report("oracle equivalence",
           hess < kHessianTol && impulse < kImpulseTol && step < kDiffusionStepTol && dt < kOracleBudget,
           "hessian=" + text::format_double(hess) + " impulse=" + text::format_double(impulse) +
               " step=" + text::format_double(step),
           dt);
}

void vesselness_detection() {
    const auto t0 = Clock::now();
    const int n = 256;
    Raster img(n, n, 0.1);
    for (int y = 0; y < n; ++y)
        for (int x = 125; x <= 130; ++x) img(x, y) = 0.9;  // width 6, centre 127.5
    const auto vm = vesselness::vesselness_multiscale(img, {});
    double centre = 0.0, background = 0.0;
    int nc = 0, nb = 0, in_range = 0;
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            if (x == 127 || x == 128) {
                centre += vm.v0(x, y);
                ++nc;
                const double s = vm.argmax_scale(x, y);
                in_range += s >= 1.5 && s <= 6.0;
            } else if (x < 125 || x > 130) {
                background += vm.v0(x, y);
                ++nb;
            }
        }
    const double ratio = (centre / nc) / std::max(background / nb, 1e-300);
    const double share = static_cast<double>(in_range) / nc;
    const double dt = since(t0);
    report("vesselness detection", ratio >= kBarContrast && share >= kBarScaleShare && dt < kBarBudget,
           "contrast=" + text::format_fixed(ratio, 1) + "x scale-share=" + pct(share), dt);
}

void fitting_recovery() {
    phantom::PhantomSpec spec;
    spec.n_identities = 30;
    spec.sessions = 2;
    spec.seed = 100;
    spec.yaw_lo = -20.0;
    spec.yaw_hi = 20.0;
    ensemble::EnsembleConfig cfg;
    cfg.n_bins = 1;
    cfg.k = 1;
    const auto ens = ensemble::train_ensemble(test::corpus_from(phantom::generate(spec)), cfg);
    const aam::AamModel& m = ens.members().front();
    const aam::Fitter fitter(m);

    const auto t0 = Clock::now();
    Rng rng(5);
    int good = 0;
    double worst = 0.0;
    for (int t = 0; t < kRecoveryTrials; ++t) {
        aam::ShapeParams p;
        p.p = Eigen::VectorXd(m.shape().n_modes());
        for (int i = 0; i < p.p.size(); ++i) p.p[i] = rng.uniform(-2, 2) * std::sqrt(m.shape().variances()[i]);
        const double sc = rng.uniform(0.95, 1.05), tx = 80 + rng.uniform(-4, 4), ty = 80 + rng.uniform(-4, 4);
        const double ang = rng.uniform(-0.1, 0.1);
        p.q = m.shape().similarity_params({sc * std::cos(ang), sc * std::sin(ang), tx, ty});
        const aam::ShapeVec truth = m.shape().instance(p);
        const ThermalImage img = phantom::render_model_instance(m, truth, Eigen::VectorXd(), 160, 160);
        const aam::FitResult r = fitter.fit(diffusion::enhance_detail(img, {}), aam::init_fit(img, m));
        const double rmse = std::sqrt((r.shape - truth).squaredNorm() / m.shape().n_landmarks());
        worst = std::max(worst, rmse);
        good += r.converged && rmse < kRecoveryRmsePx;
    }
    const double dt = since(t0);
    const double rate = static_cast<double>(good) / kRecoveryTrials;
    report("fitting recovery", rate >= kRecoveryRate && dt < kRecoveryBudget,
           std::to_string(good) + "/" + std::to_string(kRecoveryTrials) + " within " +
               text::format_double(kRecoveryRmsePx) + " px (worst " + text::format_fixed(worst, 3) + " px)",
           dt);
}

bool is_eye_truncated(aam::Truncation t) { return t == aam::Truncation::EyeWear || t == aam::Truncation::Both; }

void model_selection() {
    const auto t0 = Clock::now();
    const auto& ens = selection_ensemble();
    const auto& mem = ens.members();
    std::vector<int> bases;
    for (int i = 0; i < static_cast<int>(mem.size()); ++i)
        if (mem[static_cast<std::size_t>(i)].meta().truncation == aam::Truncation::None) bases.push_back(i);

    // Queries rendered from a base member, cycling through members.
    Rng rng(11);
    int generating = 0;
    for (int q = 0; q < kGeneratingTrials; ++q) {
        const aam::AamModel& m = mem[static_cast<std::size_t>(bases[static_cast<std::size_t>(q) % bases.size()])];
        aam::ShapeParams p;
        p.p = Eigen::VectorXd(m.shape().n_modes());
        for (int i = 0; i < p.p.size(); ++i) p.p[i] = rng.uniform(-1.5, 1.5) * std::sqrt(m.shape().variances()[i]);
        p.q = m.shape().similarity_params({rng.uniform(0.95, 1.05), 0.0, 80 + rng.uniform(-4, 4), 80 + rng.uniform(-4, 4)});
        Eigen::VectorXd lambda(m.appearance().n_modes());
        for (int i = 0; i < lambda.size(); ++i) lambda[i] = rng.uniform(-1, 1) * std::sqrt(m.appearance().variances[i]);
        const ThermalImage img = phantom::render_model_instance(m, m.shape().instance(p), lambda, 160, 160);
        const auto sel = ens.select_and_fit(img, {});
        const auto& got = mem[static_cast<std::size_t>(sel.model_id)].meta();
        generating += got.pose_bin == m.meta().pose_bin && got.cluster_id == m.meta().cluster_id;
    }

    // Eye-band occluded phantom faces and clean phantom faces of unseen identities.
    phantom::PhantomSpec occ;
    occ.n_identities = kOccludedTrials;
    occ.sessions = 1;
    occ.seed = 999;
    occ.p_glasses = 1.0;
    int truncated = 0;
    for (const auto& s : phantom::generate(occ)) {
        const auto sel = ens.select_and_fit(s.render.image, {});
        truncated += is_eye_truncated(mem[static_cast<std::size_t>(sel.model_id)].meta().truncation);
    }
    phantom::PhantomSpec clean = occ;
    clean.n_identities = kCleanTrials;
    clean.seed = 555;
    clean.p_glasses = 0.0;
    int base = 0;
    for (const auto& s : phantom::generate(clean)) {
        const auto sel = ens.select_and_fit(s.render.image, {});
        base += mem[static_cast<std::size_t>(sel.model_id)].meta().truncation == aam::Truncation::None;
    }
    const double dt = since(t0);
    const double rg = static_cast<double>(generating) / kGeneratingTrials;
    const double rt = static_cast<double>(truncated) / kOccludedTrials;
    const double rb = static_cast<double>(base) / kCleanTrials;
    report("model selection", rg >= kGeneratingRate && rt >= kTruncatedRate && rb >= kBaseRate && dt < kSelectionBudget,
           "generating=" + pct(rg) + " eye-truncated=" + pct(rt) + " base=" + pct(rb) + " (" +
               std::to_string(ens.size()) + " members)",
           dt);
}

struct Benchmark {
    std::vector<recognition::Signature> probes;
    recognition::Gallery gallery;
    evaluation::Report report;
};

Benchmark run_benchmark(const phantom::PhantomSpec& spec) {
    Benchmark b;
    for (const auto& s : phantom::generate(spec)) {
        recognition::Signature sig = recognition::extract_signature(s.render.image, selection_ensemble(), {});
        sig.source = {s.identity, s.session, s.params.yaw, s.params.beard, s.params.glasses};
        if (s.session == 0) b.gallery.add(std::move(sig));
        else b.probes.push_back(std::move(sig));
    }
    b.report = evaluation::evaluate(b.probes, b.gallery);
    return b;
}

bool cmc_monotone(const evaluation::CmcCurve& c) {
    for (std::size_t i = 1; i < c.rates.size(); ++i)
        if (c.rates[i] < c.rates[i - 1]) return false;
    return !c.rates.empty() && c.rates.back() <= 1.0;
}

bool roc_monotone(const evaluation::RocCurve& r) {
    if (r.points.empty()) return false;
    for (std::size_t i = 1; i < r.points.size(); ++i)
        if (r.points[i].fpr < r.points[i - 1].fpr || r.points[i].tpr < r.points[i - 1].tpr) return false;
    return r.points.front().fpr == 0.0 && r.points.front().tpr == 0.0 && r.points.back().fpr == 1.0 &&
           r.points.back().tpr == 1.0;
}

// Checks every line of the written report against the published layouts.
bool formats_ok(const std::filesystem::path& dir, std::size_t gallery_size, std::string& why) {
    const std::string summary = test::slurp(dir / "summary.txt");
    const std::regex layout(
        "Average recognition rate\n"
        " {7}\\| Unoccluded \\| Facial hair \\| Eye-wear\n"
        "-{7}\\+-{12}\\+-{13}\\+-{9}\n"
        "(Rank [123] \\| +(\\d{1,3}%|-) \\| +(\\d{1,3}%|-) \\| +(\\d{1,3}%|-)\n){3}"
        "Probes \\| +\\d+ \\| +\\d+ \\| +\\d+\n");
    if (!std::regex_match(summary, layout)) {
        why = "summary.txt";
        return false;
    }
    // Right-aligned cells: every row is as wide as the header and its bars line up.
    std::istringstream rows_in(summary);
    std::string row, header;
    std::getline(rows_in, row);
    std::getline(rows_in, header);
    std::getline(rows_in, row);
    while (std::getline(rows_in, row))
        if (row.size() != header.size() || row[7] != header[7] || row[20] != header[20] || row[34] != header[34]) {
            why = "summary alignment: " + row;
            return false;
        }
    const std::string cmc = test::slurp(dir / "cmc.csv");
    std::istringstream cin(cmc);
    std::string line;
    std::getline(cin, line);
    if (line != "rank,rate") {
        why = "cmc header";
        return false;
    }
    std::size_t rows = 0;
    const std::regex cmc_row("(\\d+),([0-9.e-]+)");
    while (std::getline(cin, line)) {
        std::smatch m;
        if (!std::regex_match(line, m, cmc_row) || std::stoul(m[1]) != rows + 1) {
            why = "cmc row " + line;
            return false;
        }
        ++rows;
    }
    if (rows != gallery_size) {
        why = "cmc length";
        return false;
    }
    const std::regex roc_row("(inf|-inf|[0-9.e+-]+),([0-9.e-]+),([0-9.e-]+)");
    for (const std::string name : {"roc.csv", "roc_d00_30.csv", "roc_d30_60.csv", "roc_d60_90.csv"}) {
        if (!std::filesystem::exists(dir / name)) {
            if (name == "roc.csv") {
                why = "missing roc.csv";
                return false;
            }
            continue;
        }
        std::istringstream in(test::slurp(dir / name));
        std::getline(in, line);
        if (line != "threshold,fpr,tpr") {
            why = name + " header";
            return false;
        }
        std::getline(in, line);
        if (line != "inf,0,0") {
            why = name + " first point";
            return false;
        }
        std::string last = line;
        while (std::getline(in, line)) {
            if (!std::regex_match(line, roc_row)) {
                why = name + " row " + line;
                return false;
            }
            last = line;
        }
        if (last.size() < 4 || last.substr(last.size() - 4) != ",1,1") {
            why = name + " last point";
            return false;
        }
    }
    if (cmc.find('\r') != std::string::npos || summary.find('\r') != std::string::npos) {
        why = "line endings";
        return false;
    }
    return true;
}

Benchmark* unoccluded_run = nullptr;

void end_to_end() {
    const auto t0 = Clock::now();
    selection_ensemble();
    const phantom::PhantomSpec clean;  // 20 identities x 2 sessions
    static Benchmark a = run_benchmark(clean);
    unoccluded_run = &a;
    const double rank1 = a.report.by_condition[0].probes > 0 ? a.report.by_condition[0].cmc.at(1) : 0.0;

    phantom::PhantomSpec occluded = clean;
    occluded.p_glasses = 0.5;
    occluded.p_beard = 0.5;
    const Benchmark b = run_benchmark(occluded);
    bool monotone = cmc_monotone(b.report.cmc) && b.report.cmc.at(3) >= b.report.cmc.at(1);
    std::size_t differential = 0;
    for (std::size_t c = 1; c < 3; ++c) {
        const auto& cr = b.report.by_condition[c];
        differential += cr.probes;
        if (cr.probes > 0) monotone = monotone && cmc_monotone(cr.cmc) && cr.cmc.at(3) >= cr.cmc.at(1);
    }

    test::TempDir dir("acceptance_report");
    evaluation::write_report(dir.path(), b.report);
    std::string why;
    const bool formats = formats_ok(dir.path(), b.gallery.size(), why);
    const double dt = since(t0);
    std::printf("%s", evaluation::summary_table(b.report).c_str());
    report("end-to-end phantom benchmark",
           rank1 >= kRank1Unoccluded && monotone && differential > 0 && formats && dt < kEndToEndBudget,
           "unoccluded rank-1=" + pct(rank1) + " occluded rank-1/3=" + pct(b.report.cmc.at(1)) + "/" +
               pct(b.report.cmc.at(3)) + " (" + std::to_string(differential) + " differential probes) formats=" +
               (formats ? "ok" : "bad: " + why),
           dt);
}

void invariance_suite() {
    const auto t0 = Clock::now();
    std::vector<std::string> broken;

    // Match score on real signatures.
    const Benchmark& run = *unoccluded_run;
    double affine = 0.0, symmetry = 0.0;
    Rng rng(3);
    for (std::size_t i = 0; i < run.probes.size(); ++i) {
        const auto& p = run.probes[i];
        for (const auto& [id, g] : run.gallery.entries()) {
            symmetry = std::max(symmetry, std::abs(recognition::match(p, g) - recognition::match(g, p)));
            recognition::Signature q = p;
            const double alpha = rng.uniform(0.1, 10.0), beta = rng.uniform(-5.0, 5.0);
            for (double& v : q.vmap.v0.values()) v = alpha * v + beta;
            affine = std::max(affine, std::abs(recognition::match(q, g) - recognition::match(p, g)));
        }
    }
    if (!(affine < kAffineTol)) broken.push_back("affine " + text::format_double(affine));
    if (!(symmetry < kSymmetryTol)) broken.push_back("symmetry " + text::format_double(symmetry));

    // Diffusion conserves the mean.
    double conservation = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Raster img = test::random_raster(96, 80, seed);
        conservation = std::max(conservation, std::abs(diffusion::diffuse(img, {}).mean() - img.mean()) / img.mean());
    }
    for (const auto& s : phantom::generate(phantom::PhantomSpec{})) {
        const Raster& img = s.render.image;
        conservation = std::max(conservation, std::abs(diffusion::diffuse(img, {}).mean() - img.mean()) / img.mean());
        break;
    }
    if (!(conservation < kMeanConservationTol)) broken.push_back("mean " + text::format_double(conservation));

    // Curve monotonicity.
    if (!cmc_monotone(run.report.cmc) || !roc_monotone(run.report.roc)) broken.push_back("curves");
    if (run.report.pose_splits)
        for (const auto& r : *run.report.pose_splits)
            if (!r.points.empty() && !roc_monotone(r)) broken.push_back("split curves");

    // Seeded pipelines rerun byte for byte.
    phantom::PhantomSpec ps;
    ps.n_identities = 3;
    ps.p_glasses = 0.5;
    ps.p_beard = 0.5;
    test::TempDir d1("det1"), d2("det2");
    phantom::synth(ps, d1.path());
    phantom::synth(ps, d2.path());
    for (const auto& e : std::filesystem::recursive_directory_iterator(d1.path()))
        if (e.is_regular_file() &&
            test::slurp(e.path()) != test::slurp(d2.path() / std::filesystem::relative(e.path(), d1.path())))
            broken.push_back("synth");

    phantom::PhantomSpec ts = test::small_training_spec();
    ensemble::EnsembleConfig ec;
    ec.n_bins = 1;
    ec.k = 2;
    ec.restarts = 5;
    const auto corpus = test::corpus_from(phantom::generate(ts));
    const auto e1 = ensemble::train_ensemble(corpus, ec);
    const auto e2 = ensemble::train_ensemble(corpus, ec);
    for (std::size_t i = 0; i < e1.size(); ++i)
        if (aam::serialize_model(e1.members()[i]) != aam::serialize_model(e2.members()[i])) broken.push_back("train");

    const ThermalImage probe_img = phantom::generate(phantom::PhantomSpec{}).front().render.image;
    const auto s1 = recognition::extract_signature(probe_img, selection_ensemble(), {});
    const auto s2 = recognition::extract_signature(probe_img, selection_ensemble(), {});
    if (!(s1 == s2)) broken.push_back("signature");
    const auto r2 = evaluation::evaluate(run.probes, run.gallery);
    if (evaluation::roc_csv(r2.roc) != evaluation::roc_csv(run.report.roc) ||
        evaluation::summary_table(r2) != evaluation::summary_table(run.report))
        broken.push_back("evaluate");

    std::string detail = "affine=" + text::format_double(affine) + " symmetry=" + text::format_double(symmetry) +
                         " mean=" + text::format_double(conservation) + " determinism=";
    detail += broken.empty() ? "ok" : "broken:";
    for (const auto& b : broken) detail += " " + b;
    report("invariance suite", broken.empty(), detail, since(t0));
}

}  // namespace

int main() {
    std::printf("threads: %d\n", tfr::kernels::max_threads());
    formula_fidelity();
    oracle_equivalence();
    vesselness_detection();
    fitting_recovery();
    model_selection();
    end_to_end();
    invariance_suite();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
