#pragma once

#include <cstdint>
#include <string_view>

namespace ortho {

// Deterministic keyed random stream. Streams are addressed by
// (seed, purpose-tag, index) so that adding a new sampled field never
// perturbs the values drawn by existing fields.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0)
        : state_(mix(mix(mix(seed) ^ hash_tag(tag)) ^ index)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return finalize(state_);
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(bounded(span));
    }

    // Uniform double in [0, 1).
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_real();
    }

    static std::uint64_t hash_tag(std::string_view tag) {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

private:
    // 128-bit multiply keeps the mapping unbiased and platform-stable.
    std::uint64_t bounded(std::uint64_t span) {
        if (span == 0) return next_u64();
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
    }

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        return finalize(z);
    }

    std::uint64_t state_;
};

}  // namespace ortho
