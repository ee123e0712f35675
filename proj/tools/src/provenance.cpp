#include "scalewise/cli/provenance.hpp"

#include <cstdio>

namespace scalewise::cli {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string canonical_hash(const nlohmann::json& doc) { return hash_hex(doc.dump()); }

}  // namespace scalewise::cli
