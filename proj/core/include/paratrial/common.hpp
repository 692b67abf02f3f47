#pragma once

#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace paratrial {

using Index = std::int32_t;

/// Whether a model/graph carries exact 64-bit integer values or doubles.
enum class ValueKind { integer, floating };

template <class T>
constexpr ValueKind kind_of() {
    if constexpr (std::is_same_v<T, std::int64_t>) {
        return ValueKind::integer;
    } else {
        static_assert(std::is_same_v<T, double>, "supported scalars: int64_t, double");
        return ValueKind::floating;
    }
}

inline const char* to_string(ValueKind k) {
    return k == ValueKind::integer ? "integer" : "float";
}

/// A candidate solution: one 0/1 value per variable.
using Assignment = std::vector<std::uint8_t>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Deterministic uniform stream. All random draws in the library go through
/// this wrapper so that results are reproducible across platforms; in
/// particular we never use std::uniform_real_distribution, whose output is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return engine_(); }

    bool coin() { return (engine_() >> 63) != 0; }

    /// Uniform integer in [0, k).
    std::size_t below(std::size_t k) {
        std::size_t v = static_cast<std::size_t>(uniform01() * static_cast<double>(k));
        return v < k ? v : k - 1;
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64-style finalizer used to derive independent child seeds
/// (per run, per replica, ...) from one master seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline Assignment random_assignment(Index n, Rng& rng) {
    Assignment x(static_cast<std::size_t>(n));
    for (auto& b : x) b = rng.coin() ? 1 : 0;
    return x;
}

/// Floats in reports are written with 17 significant digits so that the
/// exact double value survives a round trip through text.
inline std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace paratrial
