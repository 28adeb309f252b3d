#pragma once

// Counter-based random streams. Every (seed, stream) pair addresses a disjoint
// counter space of a Philox-4x32-10 generator, so replicate r of an experiment
// draws the same numbers no matter which thread runs it or in what order.

#include <array>
#include <cstdint>
#include <limits>

namespace pairedfd {

/// Philox-4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block encrypt(Block counter, Key key) noexcept;
};

/// Uniform 64-bit generator over the counter space of one (seed, stream) pair.
/// Satisfies std::uniform_random_bit_generator.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform() noexcept;
    /// Standard normal by the Box-Muller transform.
    double normal() noexcept;
    /// Unit-rate exponential.
    double exponential() noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace pairedfd
