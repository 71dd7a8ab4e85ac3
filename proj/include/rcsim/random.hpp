#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <cstddef>
#include <string_view>
#include <utility>

namespace rcsim {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Child seed = hash(parent, role tag, indices). Every stochastic stage of a
/// run draws its stream from one of these, so any trace can be regenerated
/// in isolation from the master seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                                    std::initializer_list<std::uint64_t> indices = {}) noexcept {
    std::uint64_t h = mix64(parent ^ 0x5bd1e9955bd1e995ULL);
    for (char c : tag) h = mix64(h ^ static_cast<unsigned char>(c));
    for (std::uint64_t i : indices) h = mix64(h ^ mix64(i + 0x2545f4914f6cdd1dULL));
    return h;
}

/// Per-call random stream. The bounded/real helpers are written out rather
/// than using <random> distributions, whose output is implementation-defined;
/// this keeps outputs identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's nearly-divisionless rejection.
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool coin() { return (engine_() >> 63) != 0; }

    template <class Range>
    void shuffle(Range& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    /// Moves a uniform random subset of size k to the front (partial Fisher-Yates).
    template <class Range>
    void partial_shuffle(Range& items, std::size_t k) {
        for (std::size_t i = 0; i < k && i < items.size(); ++i) {
            std::swap(items[i], items[i + below(items.size() - i)]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace rcsim
