#pragma once

// JSON encoding for configs and result records (reals as 17-significant-digit
// decimal strings, rationals as [numerator, denominator] pairs), the binary
// cloud file format, and content hashing.

#include "torus/dynamics.hpp"
#include "torus/geom.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace torus::serialize {

using nlohmann::json;

std::string real_str(double v);
double real_from_json(const json& j, const std::string& field);

json rat_to_json(const geom::Rat& r);
geom::Rat rat_from_json(const json& j, const std::string& field);

json vec2q_to_json(const geom::Vec2Q& v);
geom::Vec2Q vec2q_from_json(const json& j, const std::string& field);

json word_to_json(const dynamics::LiftWord& w);
dynamics::LiftWord word_from_json(const json& j, const std::string& field);

// Flat little-endian float64 pairs behind an 8-byte magic and a point count.
inline constexpr char kCloudMagic[8] = {'T', 'C', 'L', 'O', 'U', 'D', '0', '1'};

void write_cloud_file(const std::filesystem::path& path, const geom::PointCloud& cloud);
geom::PointCloud read_cloud_file(const std::filesystem::path& path);

// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(const void* data, std::size_t size);
std::string file_hash(const std::filesystem::path& path);

// write-then-rename
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace torus::serialize
