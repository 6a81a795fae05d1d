#include "tfr/cli.hpp"

#include "tfr/error.hpp"
#include "tfr/evaluation.hpp"
#include "tfr/gallery_io.hpp"
#include "tfr/image_io.hpp"
#include "tfr/imaging.hpp"
#include "tfr/kernels.hpp"
#include "tfr/mesh.hpp"
#include "tfr/phantom.hpp"
#include "tfr/text.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace tfr::cli {

ensemble::TrainCorpus corpus_from_manifest(const std::vector<manifest::Row>& rows,
                                           const diffusion::DiffusionConfig& dcfg) {
    ensemble::TrainCorpus corpus;
    corpus.entries.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].landmarks.empty())
            fail(ErrorKind::InvalidArgument, "training row for '" + rows[i].identity + "' has no landmarks");
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows.size()); ++i) {
        const manifest::Row& r = rows[static_cast<std::size_t>(i)];
        ensemble::CorpusEntry& e = corpus.entries[static_cast<std::size_t>(i)];
        e.ie = diffusion::enhance_detail(io::read_image(r.image), dcfg);
        e.landmarks = aam::read_landmarks(r.landmarks.string());
        e.yaw = r.yaw;
        e.identity = r.identity;
    }
    return corpus;
}

recognition::Signature signature_for_row(const manifest::Row& row, const ensemble::Ensemble& ens,
                                         const config::PipelineConfig& cfg) {
    recognition::Signature s =
        recognition::extract_signature(io::read_image(row.image), ens, cfg.vesselness, cfg.diffusion);
    s.source.identity = row.identity;
    s.source.session = row.session;
    s.source.yaw = row.yaw;
    s.source.hair = row.hair;
    s.source.glasses = row.glasses;
    return s;
}

namespace {

struct Globals {
    std::string config_path;
    std::string dump_config;
    int threads = 0;
    bool verbose = false;
};

std::vector<manifest::Row> session_rows(const std::filesystem::path& path, int session) {
    std::vector<manifest::Row> rows = manifest::read_manifest(path);
    if (session < 0) return rows;
    std::vector<manifest::Row> kept;
    for (auto& r : rows)
        if (r.session == session) kept.push_back(std::move(r));
    if (kept.empty()) fail(ErrorKind::InvalidArgument, "no manifest rows for session " + std::to_string(session));
    return kept;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermal face recognition on vesselness signatures", "tfr"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "key=value file overriding module defaults")->check(CLI::ExistingFile);
    app.add_option("--dump-config", g.dump_config, "write the effective configuration here");
    app.add_option("--threads", g.threads, "worker threads (0 keeps the OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_flag("--verbose", g.verbose, "progress on standard error");

    std::string image, out_path, raw_out, scale_out, manifest_path, ensemble_dir, gallery_path;
    bool enhance = false;
    int session = -1;
    int top = 0;
    phantom::PhantomSpec spec;
    int size = spec.width;

    auto* pre = app.add_subcommand("preprocess", "write the detail-enhanced image I_e");
    pre->add_option("--image", image)->required()->check(CLI::ExistingFile);
    pre->add_option("--out", out_path, "16-bit PNG")->required();

    auto* ves = app.add_subcommand("vesselness", "write the multiscale vesselness map");
    ves->add_option("--image", image)->required()->check(CLI::ExistingFile);
    ves->add_option("--out", out_path, "16-bit PNG of V0")->required();
    ves->add_option("--raw-out", raw_out, "float32 dump of V0");
    ves->add_option("--scale-out", scale_out, "float32 dump of the winning scale");
    ves->add_flag("--enhance", enhance, "filter I_e instead of the raw image");

    auto* syn = app.add_subcommand("synth", "generate a phantom dataset");
    syn->add_option("--out", out_path)->required();
    syn->add_option("--identities", spec.n_identities)->check(CLI::PositiveNumber);
    syn->add_option("--sessions", spec.sessions)->check(CLI::PositiveNumber);
    syn->add_option("--seed", spec.seed);
    syn->add_option("--size", size, "square image side")->check(CLI::Range(64, 4096));
    syn->add_option("--p-glasses", spec.p_glasses)->check(CLI::Range(0.0, 1.0));
    syn->add_option("--p-beard", spec.p_beard)->check(CLI::Range(0.0, 1.0));
    syn->add_option("--yaw-min", spec.yaw_lo)->check(CLI::Range(-90.0, 90.0));
    syn->add_option("--yaw-max", spec.yaw_hi)->check(CLI::Range(-90.0, 90.0));

    auto* trn = app.add_subcommand("train", "train an ensemble from a landmarked manifest");
    trn->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
    trn->add_option("--out", out_path, "ensemble directory")->required();

    auto* enr = app.add_subcommand("enroll", "build a gallery, one signature per identity");
    enr->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
    enr->add_option("--ensemble", ensemble_dir)->required()->check(CLI::ExistingDirectory);
    enr->add_option("--out", out_path, "gallery file")->required();
    enr->add_option("--session", session, "only rows of this session");

    auto* idf = app.add_subcommand("identify", "rank the gallery against one image");
    idf->add_option("--image", image)->required()->check(CLI::ExistingFile);
    idf->add_option("--ensemble", ensemble_dir)->required()->check(CLI::ExistingDirectory);
    idf->add_option("--gallery", gallery_path)->required()->check(CLI::ExistingFile);
    idf->add_option("--top", top, "print only the first N entries")->check(CLI::NonNegativeNumber);

    auto* evl = app.add_subcommand("evaluate", "score a probe manifest against a gallery");
    evl->add_option("--manifest", manifest_path)->required()->check(CLI::ExistingFile);
    evl->add_option("--ensemble", ensemble_dir)->required()->check(CLI::ExistingDirectory);
    evl->add_option("--gallery", gallery_path)->required()->check(CLI::ExistingFile);
    evl->add_option("--out", out_path, "directory for cmc.csv, roc.csv, summary.txt")->required();
    evl->add_option("--session", session, "only rows of this session");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "tfr: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        config::PipelineConfig cfg;
        if (!g.config_path.empty()) cfg = config::load_config(g.config_path);
        cfg.validate();
        if (!g.dump_config.empty()) write_text(g.dump_config, config::dump_config(cfg));
        if (g.threads > 0) kernels::set_threads(g.threads);
        auto log = [&](const std::string& msg) {
            if (g.verbose) err << msg << "\n";
        };

        if (*pre) {
            io::write_png(out_path, diffusion::enhance_detail(io::read_image(image), cfg.diffusion).raster(), 16);
        } else if (*ves) {
            Raster src = io::read_image(image);
            if (enhance) src = diffusion::enhance_detail(src, cfg.diffusion).raster();
            const vesselness::VesselnessMap vm = vesselness::vesselness_multiscale(src, cfg.vesselness);
            io::write_png(out_path, vm.v0, 16);
            if (!raw_out.empty()) io::write_f32(raw_out, vm.v0);
            if (!scale_out.empty()) io::write_f32(scale_out, vm.argmax_scale);
        } else if (*syn) {
            spec.width = spec.height = size;
            spec.validate();
            phantom::synth(spec, out_path);
            log("wrote " + std::to_string(spec.n_identities * spec.sessions) + " images to " + out_path);
        } else if (*trn) {
            const auto rows = manifest::read_manifest(manifest_path);
            const ensemble::Ensemble ens = ensemble::train_ensemble(corpus_from_manifest(rows, cfg.diffusion), cfg.ensemble);
            ensemble::save_ensemble(out_path, ens);
            log("trained " + std::to_string(ens.size()) + " members");
        } else if (*enr) {
            const ensemble::Ensemble ens = ensemble::load_ensemble(ensemble_dir, cfg.ensemble.fit);
            recognition::Gallery gallery;
            for (const auto& row : session_rows(manifest_path, session)) {
                gallery.add(signature_for_row(row, ens, cfg));
                log("enrolled " + row.identity);
            }
            recognition::save_gallery(out_path, gallery);
        } else if (*idf) {
            const ensemble::Ensemble ens = ensemble::load_ensemble(ensemble_dir, cfg.ensemble.fit);
            const recognition::Gallery gallery = recognition::load_gallery(gallery_path);
            const recognition::Signature probe =
                recognition::extract_signature(io::read_image(image), ens, cfg.vesselness, cfg.diffusion);
            const recognition::RankedList ranked = recognition::identify(probe, gallery);
            const std::size_t n = top > 0 ? std::min<std::size_t>(static_cast<std::size_t>(top), ranked.size()) : ranked.size();
            out << "rank,identity,score\n";
            for (std::size_t i = 0; i < n; ++i)
                out << i + 1 << "," << ranked[i].identity << "," << text::format_double(ranked[i].score) << "\n";
        } else if (*evl) {
            const ensemble::Ensemble ens = ensemble::load_ensemble(ensemble_dir, cfg.ensemble.fit);
            const recognition::Gallery gallery = recognition::load_gallery(gallery_path);
            std::vector<recognition::Signature> probes;
            for (const auto& row : session_rows(manifest_path, session)) {
                probes.push_back(signature_for_row(row, ens, cfg));
                log("probe " + row.identity + " session " + std::to_string(row.session));
            }
            const evaluation::Report rep = evaluation::evaluate(probes, gallery);
            evaluation::write_report(out_path, rep);
            out << evaluation::summary_table(rep);
        }
    } catch (const Error& e) {
        err << "tfr: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitDomain;
    } catch (const std::exception& e) {
        err << "tfr: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_command(args, out, err);
}

}  // namespace tfr::cli
