#pragma once

#include <cstdint>
#include <string_view>

namespace jacring {

// SplitMix64 stream. Deterministic across platforms, cheap to split: child
// streams are derived by hashing (state, key), so parallel schedules cannot
// change any drawn value.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t limit = ~0ull - ~0ull % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Child stream independent of draws made on this one.
    Rng split(std::uint64_t key) const { return Rng(mix(mix(state_, 0x8e9c5f3d1b7a2461ull), key)); }

    Rng split(std::string_view key) const {
        std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
        for (char c : key) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return split(h);
    }

private:
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace jacring
