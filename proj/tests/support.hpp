#pragma once

#include "tfr/diffusion.hpp"
#include "tfr/ensemble.hpp"
#include "tfr/phantom.hpp"
#include "tfr/random.hpp"
#include "tfr/raster.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

namespace tfr::test {

/// Directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("tfr_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Smooth random field: white noise blurred at `sigma`, rescaled to [0,1].
Raster smooth_random(int w, int h, double sigma, std::uint64_t seed);

inline Raster random_raster(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    Raster r(w, h);
    for (double& v : r.values()) v = rng.uniform();
    return r;
}

inline double max_abs_diff(const Raster& a, const Raster& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

ensemble::TrainCorpus corpus_from(const std::vector<phantom::Sample>& samples);

/// Phantom spec of the small training corpus the unit tests share.
phantom::PhantomSpec small_training_spec();

/// Single-member ensemble (n_bins=1, k=1) trained once per process.
const ensemble::Ensemble& small_ensemble();

}  // namespace tfr::test
