#include "support.hpp"

#include "tfr/imaging.hpp"


namespace tfr::test {

Raster smooth_random(int w, int h, double sigma, std::uint64_t seed) {
    return imaging::rescale_unit(imaging::gaussian_smooth(random_raster(w, h, seed), sigma));
}

ensemble::TrainCorpus corpus_from(const std::vector<phantom::Sample>& samples) {
    ensemble::TrainCorpus c;
    for (const auto& s : samples)
        c.entries.push_back({diffusion::enhance_detail(s.render.image, {}), s.render.landmarks, s.params.yaw, s.identity});
    return c;
}

phantom::PhantomSpec small_training_spec() {
    phantom::PhantomSpec spec;
    spec.n_identities = 12;
    spec.sessions = 2;
    spec.seed = 100;
    spec.yaw_lo = -20.0;
    spec.yaw_hi = 20.0;
    return spec;
}

const ensemble::Ensemble& small_ensemble() {
    static const ensemble::Ensemble ens = [] {
        ensemble::EnsembleConfig cfg;
        cfg.n_bins = 1;
        cfg.k = 1;
        cfg.restarts = 5;
        return ensemble::train_ensemble(corpus_from(phantom::generate(small_training_spec())), cfg);
    }();
    return ens;
}

}  // namespace tfr::test
