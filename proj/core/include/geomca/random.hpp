#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace geomca {

/// Identifier written into reports next to every seed.
inline constexpr const char* kSamplerId = "mt19937_64+lemire-bounded+partial-fisher-yates";

/// Uniform integer in [0, bound) from a 64-bit engine. Unlike
/// std::uniform_int_distribution the output sequence is fixed by the engine
/// alone, so seeds reproduce across standard libraries.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t bound);

/// `count` distinct indices drawn uniformly from [0, population), in draw
/// order (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t population, std::size_t count,
                                                    std::uint64_t seed);

}  // namespace geomca
