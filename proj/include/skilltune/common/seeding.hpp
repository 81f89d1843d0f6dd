#ifndef SKILLTUNE_COMMON_SEEDING_HPP
#define SKILLTUNE_COMMON_SEEDING_HPP

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace skilltune {

std::uint64_t splitmix64(std::uint64_t x);

/// Child seed from a parent seed and a path of counters. Counter-based, so the
/// seed of world k in iteration i never depends on evaluation order.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path);

/// FNV-1a, used for config hashes.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace skilltune

#endif
