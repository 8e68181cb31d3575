#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace hexeval {

/// 32-bit FNV-1a hash; derives per-scenario seeds from scenario names so
/// adding or removing one scenario never perturbs the others.
inline std::uint32_t fnv1a(std::string_view text) {
    std::uint32_t hash = 2166136261u;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 16777619u;
    }
    return hash;
}

/// Uniform double in [0,1) from the raw 32-bit stream. std distributions are
/// implementation-defined, so drawing directly keeps sequences identical
/// across standard libraries.
inline double unit_draw(std::mt19937& rng) {
    return static_cast<double>(rng()) * (1.0 / 4294967296.0);
}

/// Fisher-Yates with explicit draws, for the same portability reason as
/// unit_draw (std::shuffle's draw sequence is implementation-defined).
inline void portable_shuffle(std::vector<std::size_t>& indices, std::mt19937& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(indices[i - 1], indices[j]);
    }
}

} // namespace hexeval
