#include "tfr/config.hpp"

#include "tfr/error.hpp"
#include "tfr/text.hpp"

#include <fstream>
#include <sstream>

namespace tfr::config {

namespace {

std::vector<double> parse_list(const std::string& v, const std::string& key) {
    std::vector<double> out;
    if (text::trim(v).empty()) return out;
    for (const std::string& item : text::split(v, ',')) out.push_back(text::parse_double(item, key));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + text::format_double(v[i]);
    return out;
}

int parse_small_int(const std::string& v, const std::string& key) {
    const long long n = text::parse_int(v, key);
    if (n < -1000000000LL || n > 1000000000LL) fail(ErrorKind::InvalidArgument, key + " is out of range");
    return static_cast<int>(n);
}

}  // namespace

void PipelineConfig::validate() const {
    diffusion.validate();
    vesselness.validate();
    ensemble.validate();
}

std::vector<std::string> known_keys() {
    return {"kappa",        "dt",           "steps",         "beta",          "c",
            "scales",       "mode",         "polarity",      "n_bins",        "k",
            "seed",         "restarts",     "retention",     "max_iterations", "tolerance",
            "step_halving", "max_halvings", "stall_tolerance", "coarse_sigmas", "coarse_iterations"};
}

void apply(PipelineConfig& cfg, const std::string& key, const std::string& value) {
    auto& d = cfg.diffusion;
    auto& v = cfg.vesselness;
    auto& e = cfg.ensemble;
    auto& f = cfg.ensemble.fit;
    if (key == "kappa") d.kappa = text::parse_double(value, key);
    else if (key == "dt") d.dt = text::parse_double(value, key);
    else if (key == "steps") d.steps = parse_small_int(value, key);
    else if (key == "beta") v.beta = text::parse_double(value, key);
    else if (key == "c") v.cparam = text::parse_double(value, key);
    else if (key == "scales") v.scales = parse_list(value, key);
    else if (key == "mode") v.mode = vesselness::parse_mode(std::string(text::trim(value)));
    else if (key == "polarity") v.polarity = vesselness::parse_polarity(std::string(text::trim(value)));
    else if (key == "n_bins") e.n_bins = parse_small_int(value, key);
    else if (key == "k") e.k = parse_small_int(value, key);
    else if (key == "seed") {
        const long long s = text::parse_int(value, key);
        if (s < 0) fail(ErrorKind::InvalidArgument, "seed must be non-negative");
        e.seed = static_cast<std::uint64_t>(s);
    } else if (key == "restarts") e.restarts = parse_small_int(value, key);
    else if (key == "retention") e.retention = text::parse_double(value, key);
    else if (key == "max_iterations") f.max_iterations = parse_small_int(value, key);
    else if (key == "tolerance") f.tolerance = text::parse_double(value, key);
    else if (key == "step_halving") f.step_halving = text::parse_bool(value, key);
    else if (key == "max_halvings") f.max_halvings = parse_small_int(value, key);
    else if (key == "stall_tolerance") f.stall_tolerance = text::parse_double(value, key);
    else if (key == "coarse_sigmas") f.coarse_sigmas = parse_list(value, key);
    else if (key == "coarse_iterations") f.coarse_iterations = parse_small_int(value, key);
    else fail(ErrorKind::InvalidArgument, "unknown configuration key '" + key + "'");
}

PipelineConfig parse_config(const std::string& text_in, const std::string& what, PipelineConfig base) {
    std::istringstream in(text_in);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string_view body = text::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            fail(ErrorKind::InvalidArgument, what + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key(text::trim(body.substr(0, eq)));
        const std::string value(text::trim(body.substr(eq + 1)));
        try {
            apply(base, key, value);
        } catch (const Error& e) {
            fail(ErrorKind::InvalidArgument, what + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    base.validate();
    return base;
}

PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read config " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string(), std::move(base));
}

std::string dump_config(const PipelineConfig& cfg) {
    const auto& d = cfg.diffusion;
    const auto& v = cfg.vesselness;
    const auto& e = cfg.ensemble;
    const auto& f = cfg.ensemble.fit;
    std::ostringstream o;
    o << "kappa = " << text::format_double(d.kappa) << "\n"
      << "dt = " << text::format_double(d.dt) << "\n"
      << "steps = " << d.steps << "\n"
      << "beta = " << text::format_double(v.beta) << "\n"
      << "c = " << text::format_double(v.cparam) << "\n"
      << "scales = " << join(v.scales) << "\n"
      << "mode = " << vesselness::to_string(v.mode) << "\n"
      << "polarity = " << vesselness::to_string(v.polarity) << "\n"
      << "n_bins = " << e.n_bins << "\n"
      << "k = " << e.k << "\n"
      << "seed = " << e.seed << "\n"
      << "restarts = " << e.restarts << "\n"
      << "retention = " << text::format_double(e.retention) << "\n"
      << "max_iterations = " << f.max_iterations << "\n"
      << "tolerance = " << text::format_double(f.tolerance) << "\n"
      << "step_halving = " << (f.step_halving ? "true" : "false") << "\n"
      << "max_halvings = " << f.max_halvings << "\n"
      << "stall_tolerance = " << text::format_double(f.stall_tolerance) << "\n"
      << "coarse_sigmas = " << join(f.coarse_sigmas) << "\n"
      << "coarse_iterations = " << f.coarse_iterations << "\n";
    return o.str();
}

}  // namespace tfr::config
