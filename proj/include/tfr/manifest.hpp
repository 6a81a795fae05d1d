/**
 * @file manifest.hpp
 * @brief Dataset manifest CSV: image,landmarks,identity,session,yaw,hair,glasses.
 */
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace tfr::manifest {

inline constexpr const char* kHeader = "image,landmarks,identity,session,yaw,hair,glasses";

struct Row {
    /// Resolved against the manifest's directory when read.
    std::filesystem::path image;
    /// Empty when the manifest says "-".
    std::filesystem::path landmarks;
    std::string identity;
    int session = 0;
    double yaw = 0.0;
    bool hair = false;
    bool glasses = false;
};

/// Checks the header, field count, yaw range, identity and that referenced files exist.
std::vector<Row> read_manifest(const std::filesystem::path& path);
/// Paths are written relative to `base` when they lie beneath it.
std::string format_manifest(const std::vector<Row>& rows, const std::filesystem::path& base);

}  // namespace tfr::manifest
