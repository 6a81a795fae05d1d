#pragma once

#include "tfr/aam_model.hpp"
#include "tfr/binary_io.hpp"

#include <filesystem>

namespace tfr::aam {

inline constexpr std::uint64_t kModelFormatVersion = 1;

/// TFAM container: magic, version, then TOPO, SHAP, APPR, MASK and META sections.
std::vector<std::uint8_t> serialize_model(const AamModel& model);
AamModel deserialize_model(const std::vector<std::uint8_t>& bytes, const std::string& what = "model");

void save_model(const std::filesystem::path& path, const AamModel& model);
AamModel load_model(const std::filesystem::path& path);

}  // namespace tfr::aam
