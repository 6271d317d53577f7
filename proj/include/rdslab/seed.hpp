#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace rdslab {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Child indices used for named sub-streams. Kept far above any trial index.
namespace stream {
inline constexpr std::uint64_t omega = 0x6f6d656761000000ULL;
inline constexpr std::uint64_t rho = 0x72686f0000000000ULL;
inline constexpr std::uint64_t trial = 0x747269616c000000ULL;
inline constexpr std::uint64_t probe = 0x70726f6265000000ULL;
} // namespace stream

/// A master seed plus the chain of derivation indices that led to a stream.
/// Two lineages with equal (master, path) always produce the same key.
class SeedLineage {
  public:
    SeedLineage() : SeedLineage(0) {}
    SeedLineage(std::uint64_t master); // NOLINT: seeds convert implicitly

    SeedLineage child(std::uint64_t index) const;
    SeedLineage child(std::uint64_t tag, std::uint64_t index) const { return child(tag).child(index); }

    std::uint64_t master() const noexcept { return master_; }
    const std::vector<std::uint64_t> &path() const noexcept { return path_; }
    std::uint64_t key() const noexcept { return key_; }

    /// "master/i0/i1/..." in decimal.
    std::string to_string() const;

    friend bool operator==(const SeedLineage &a, const SeedLineage &b) {
        return a.master_ == b.master_ && a.path_ == b.path_;
    }

  private:
    std::uint64_t master_;
    std::vector<std::uint64_t> path_;
    std::uint64_t key_;
};

/// Counter-based bit generator: the stream is a pure function of (key, counter),
/// so any cell of any path can be regenerated without touching its neighbours.
class CounterRng {
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t key, std::uint64_t counter) noexcept
        : state_(mix64(key ^ mix64(counter + kGolden))) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        state_ += kGolden;
        return mix64(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal pair by Box-Muller.
    std::pair<double, double> normal_pair() noexcept;

  private:
    std::uint64_t state_;
};

} // namespace rdslab
