/**
 * @file gallery_io.hpp
 * @brief Gallery files: concatenated little-endian signature records, each opened by "TFGA".
 *
 * Record: "TFGA", u64 version, u64 payload length, payload. Concatenating two gallery
 * files yields a valid gallery as long as identities stay unique.
 */
#pragma once

#include "tfr/recognition.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tfr::recognition {

inline constexpr std::uint64_t kGalleryFormatVersion = 1;

std::vector<std::uint8_t> serialize_signature(const Signature& s);
std::vector<std::uint8_t> serialize_gallery(const Gallery& g);
/// Throws io-error on a bad magic, version or truncated record.
Gallery deserialize_gallery(const std::vector<std::uint8_t>& bytes, const std::string& what);

void save_gallery(const std::filesystem::path& path, const Gallery& g);
Gallery load_gallery(const std::filesystem::path& path);

}  // namespace tfr::recognition
