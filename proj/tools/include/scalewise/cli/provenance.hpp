#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace scalewise::cli {

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// 16 lowercase hex digits of fnv1a64.
std::string hash_hex(std::string_view bytes);

/// Hash of the compact dump of `doc`. Object keys are already sorted by
/// nlohmann::json, so equal documents hash equally regardless of input order.
std::string canonical_hash(const nlohmann::json& doc);

}  // namespace scalewise::cli
