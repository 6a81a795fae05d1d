/**
 * @file config.hpp
 * @brief Text key=value configuration covering every tunable module default.
 *
 * One `key = value` per line; `#` starts a comment. Lists are comma separated.
 * Unknown keys are rejected so that typos do not silently fall back to defaults.
 */
#pragma once

#include "tfr/diffusion.hpp"
#include "tfr/ensemble.hpp"
#include "tfr/vesselness.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tfr::config {

struct PipelineConfig {
    diffusion::DiffusionConfig diffusion;
    vesselness::VesselnessParams vesselness;
    ensemble::EnsembleConfig ensemble;

    void validate() const;
};

/// Applies one assignment; throws invalid-argument for an unknown key or bad value.
void apply(PipelineConfig& cfg, const std::string& key, const std::string& value);

PipelineConfig parse_config(const std::string& text, const std::string& what, PipelineConfig base = {});
PipelineConfig load_config(const std::filesystem::path& path, PipelineConfig base = {});

/// Every key with its effective value; parse_config(dump_config(c)) reproduces c exactly.
std::string dump_config(const PipelineConfig& cfg);

std::vector<std::string> known_keys();

}  // namespace tfr::config
