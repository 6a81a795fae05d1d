#include "tfr/ensemble.hpp"

#include "tfr/appearance_model.hpp"
#include "tfr/error.hpp"
#include "tfr/kmeans.hpp"
#include "tfr/model_io.hpp"
#include "tfr/text.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace tfr::ensemble {

void EnsembleConfig::validate() const {
    if (n_bins < 1) fail(ErrorKind::InvalidArgument, "n_bins must be at least 1");
    if (k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
    if (restarts < 1) fail(ErrorKind::InvalidArgument, "restarts must be at least 1");
    if (!(retention > 0.0 && retention <= 1.0)) fail(ErrorKind::InvalidArgument, "retention must lie in (0, 1]");
    fit.validate();
}

double bin_lower(int bin, int n_bins) { return -90.0 + 180.0 * bin / n_bins; }

int pose_bin(double yaw, int n_bins) {
    if (n_bins < 1) fail(ErrorKind::InvalidArgument, "n_bins must be at least 1");
    if (!(yaw >= -90.0 && yaw <= 90.0)) fail(ErrorKind::InvalidArgument, "yaw outside [-90, 90]");
    int b = 0;
    while (b + 1 < n_bins && yaw >= bin_lower(b + 1, n_bins)) ++b;
    return b;
}

Eigen::MatrixXd appearance_features(const TrainCorpus& corpus, const std::vector<int>& indices,
                                    const aam::CanonicalFrame& frame) {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(indices.size()), static_cast<Eigen::Index>(frame.pixel_count()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const CorpusEntry& e = corpus.entries[static_cast<std::size_t>(indices[i])];
        x.row(static_cast<Eigen::Index>(i)) =
            aam::standardize(aam::sample_clamped(e.ie.raster(), frame, e.landmarks)).transpose();
    }
    return x;
}

std::vector<Subset> partition_corpus(const TrainCorpus& corpus, const aam::CanonicalFrame& frame, int n_bins, int k,
                                     std::uint64_t seed, int restarts) {
    if (n_bins < 1 || k < 1) fail(ErrorKind::InvalidArgument, "n_bins and k must be at least 1");
    std::vector<std::vector<int>> bins(static_cast<std::size_t>(n_bins));
    for (std::size_t i = 0; i < corpus.entries.size(); ++i)
        bins[static_cast<std::size_t>(pose_bin(corpus.entries[i].yaw, n_bins))].push_back(static_cast<int>(i));
    std::vector<Subset> out;
    for (int b = 0; b < n_bins; ++b) {
        const auto& idx = bins[static_cast<std::size_t>(b)];
        if (idx.size() < static_cast<std::size_t>(2 * k))
            fail(ErrorKind::InsufficientData, "pose bin " + std::to_string(b) + " has " + std::to_string(idx.size()) +
                                                  " entries, needs " + std::to_string(2 * k));
        std::vector<int> labels(idx.size(), 0);
        if (k > 1) labels = kmeans(appearance_features(corpus, idx, frame), k, seed + static_cast<std::uint64_t>(b), restarts).labels;
        for (int c = 0; c < k; ++c) {
            Subset s{b, c, {}};
            for (std::size_t i = 0; i < idx.size(); ++i)
                if (labels[i] == c) s.members.push_back(idx[i]);
            if (s.members.size() < 2)
                fail(ErrorKind::InsufficientData, "pose bin " + std::to_string(b) + " cluster " + std::to_string(c) +
                                                      " has fewer than 2 entries");
            out.push_back(std::move(s));
        }
    }
    return out;
}

int select_member(const std::vector<double>& mean_errors, const std::vector<unsigned char>& eligible) {
    int best = -1;
    for (std::size_t i = 0; i < mean_errors.size(); ++i) {
        if (!eligible[i] || std::isnan(mean_errors[i])) continue;
        if (best < 0 || mean_errors[i] < mean_errors[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
    }
    return best;
}

Ensemble::Ensemble(EnsembleConfig cfg, std::vector<aam::AamModel> members)
    : cfg_(std::move(cfg)), members_(std::make_unique<std::vector<aam::AamModel>>(std::move(members))) {
    cfg_.validate();
    if (members_->empty()) fail(ErrorKind::InvalidArgument, "ensemble has no members");
    const aam::MeshTopology& topo = members_->front().topology();
    std::vector<aam::ShapeVec> means;
    for (const auto& m : *members_) {
        if (!(m.topology() == topo)) fail(ErrorKind::InvalidArgument, "ensemble members use different meshes");
        if (m.meta().truncation == aam::Truncation::None) means.push_back(m.shape().mean());
    }
    if (means.empty()) means.push_back(members_->front().shape().mean());
    const aam::ShapeVec ref = means.size() == 1 ? means.front() : aam::procrustes_mean(means);
    reference_ = aam::CanonicalFrame(ref, topo);
    for (const auto& m : *members_) fitters_.push_back(std::make_unique<aam::Fitter>(m, cfg_.fit));
}

std::string Ensemble::member_filename(const aam::AamModel& m) {
    return "pose" + std::to_string(m.meta().pose_bin) + "_cluster" + std::to_string(m.meta().cluster_id) + "_" +
           aam::to_string(m.meta().truncation) + ".tfam";
}

SelectionResult Ensemble::select_and_fit(const diffusion::DetailImage& ie, const imaging::FaceLocus& locus) const {
    const auto n = static_cast<std::ptrdiff_t>(size());
    std::vector<aam::FitResult> fits(static_cast<std::size_t>(n));
    SelectionResult out;
    out.all_mean_errors.assign(static_cast<std::size_t>(n), std::nan(""));
    out.converged.assign(static_cast<std::size_t>(n), 0);
    std::vector<unsigned char> ok(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            fits[u] = fitters_[u]->fit(ie, aam::init_from_locus(locus, (*members_)[u]));
            out.all_mean_errors[u] = fits[u].mean_pixel_error;
            out.converged[u] = fits[u].converged ? 1 : 0;
            ok[u] = 1;
        } catch (const Error&) {
        }
    }
    bool any_converged = false;
    for (unsigned char c : out.converged) any_converged = any_converged || c;
    out.model_id = select_member(out.all_mean_errors, any_converged ? out.converged : ok);
    if (out.model_id < 0) fail(ErrorKind::NoModelFits, "no ensemble member produced a fit");
    out.fit = std::move(fits[static_cast<std::size_t>(out.model_id)]);
    return out;
}

SelectionResult Ensemble::select_and_fit(const ThermalImage& img, const diffusion::DiffusionConfig& dcfg) const {
    const imaging::FaceLocus locus = imaging::localize_face(img);
    return select_and_fit(diffusion::enhance_detail(img, dcfg), locus);
}

Ensemble train_ensemble(const TrainCorpus& corpus, const EnsembleConfig& cfg) {
    cfg.validate();
    if (corpus.entries.size() < 2) fail(ErrorKind::InsufficientData, "training corpus has fewer than 2 entries");
    std::vector<aam::ShapeVec> all;
    for (const auto& e : corpus.entries) all.push_back(e.landmarks);
    const aam::ShapeVec mean = aam::procrustes_mean(all);
    const aam::MeshTopology topo = aam::build_topology(mean);
    const aam::CanonicalFrame frame(mean, topo);

    std::vector<aam::AamModel> members;
    for (const Subset& s : partition_corpus(corpus, frame, cfg.n_bins, cfg.k, cfg.seed, cfg.restarts)) {
        std::vector<diffusion::DetailImage> images;
        std::vector<aam::ShapeVec> shapes;
        for (int i : s.members) {
            images.push_back(corpus.entries[static_cast<std::size_t>(i)].ie);
            shapes.push_back(corpus.entries[static_cast<std::size_t>(i)].landmarks);
        }
        aam::AamModel base = aam::train_aam(images, shapes, topo, cfg.retention);
        aam::ModelMeta meta;
        meta.pose_bin = s.bin;
        meta.cluster_id = s.cluster;
        meta.yaw_lo = bin_lower(s.bin, cfg.n_bins);
        meta.yaw_hi = bin_lower(s.bin + 1, cfg.n_bins);
        base.set_meta(meta);
        members.push_back(base);
        for (auto kind : {aam::Truncation::FacialHair, aam::Truncation::EyeWear, aam::Truncation::Both})
            members.push_back(aam::truncate_model(base, kind));
    }
    return Ensemble(cfg, std::move(members));
}

void save_ensemble(const std::filesystem::path& dir, const Ensemble& ens) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
    std::ostringstream manifest;
    manifest << "format=tfr-ensemble\n";
    manifest << "version=" << kEnsembleFormatVersion << "\n";
    manifest << "bins=" << ens.config().n_bins << "\n";
    manifest << "k=" << ens.config().k << "\n";
    manifest << "seed=" << ens.config().seed << "\n";
    manifest << "restarts=" << ens.config().restarts << "\n";
    manifest << "retention=" << text::format_double(ens.config().retention) << "\n";
    manifest << "members=" << ens.size() << "\n";
    for (const auto& m : ens.members()) {
        const std::string name = Ensemble::member_filename(m);
        aam::save_model(dir / name, m);
        manifest << "member=" << name << "\n";
    }
    const std::string text = manifest.str();
    io::write_file(dir / "manifest.txt", {text.begin(), text.end()});
}

Ensemble load_ensemble(const std::filesystem::path& dir, const aam::FitConfig& fit) {
    const std::filesystem::path path = dir / "manifest.txt";
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "no ensemble manifest at " + path.string());
    std::map<std::string, std::string> kv;
    std::vector<std::string> files;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Io, path.string() + ": malformed line '" + line + "'");
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "member") files.push_back(value);
        else kv[key] = value;
    }
    if (kv["format"] != "tfr-ensemble") fail(ErrorKind::Io, path.string() + ": not an ensemble manifest");
    if (kv["version"] != std::to_string(kEnsembleFormatVersion))
        fail(ErrorKind::Io, path.string() + ": unsupported ensemble version " + kv["version"]);
    EnsembleConfig cfg;
    try {
        cfg.n_bins = std::stoi(kv.at("bins"));
        cfg.k = std::stoi(kv.at("k"));
        cfg.seed = std::stoull(kv.at("seed"));
        if (kv.count("restarts")) cfg.restarts = std::stoi(kv["restarts"]);
        if (kv.count("retention")) cfg.retention = text::parse_double(kv["retention"], "retention");
        if (std::stoull(kv.at("members")) != files.size()) fail(ErrorKind::Io, path.string() + ": member count mismatch");
    } catch (const std::logic_error&) {
        fail(ErrorKind::Io, path.string() + ": missing or malformed manifest field");
    }
    cfg.fit = fit;
    std::vector<aam::AamModel> members;
    for (const auto& f : files) members.push_back(aam::load_model(dir / f));
    return Ensemble(cfg, std::move(members));
}

}  // namespace tfr::ensemble
