// rng.hpp - counter-based random number generation (Philox4x32-10).
//
// Every random decision in the project draws from an RngStream identified by a
// 64-bit stream id. Stream ids are derived, never invented ad hoc:
//
//     stream_id = derive_stream({part0, part1, ...})
//
// folds the parts through the SplitMix64 finalizer, so any tuple of integers
// (master seed, purpose tag, map id, repetition index, tick, ...) names one
// independent stream. The same tuple always names the same stream on every
// platform, which is what makes experiment cells and replays reproducible.
#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace swarmnav {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3"). Exposed so tests can check it against known-answer vectors.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

std::uint64_t splitmix64(std::uint64_t x);

// Fold an ordered tuple of 64-bit parts into a stream id.
std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts);

// Purpose tags used in stream derivations across the project. Kept in one
// place so the splitting rule is auditable.
namespace stream_tag {
inline constexpr std::uint64_t kEnv = 0x20656e76;       // environment build + dynamics
inline constexpr std::uint64_t kPlan = 0x706c616e;      // planner / optimizer search
inline constexpr std::uint64_t kDynamics = 0x64796e61;  // per-tick obstacle motion
inline constexpr std::uint64_t kCell = 0x63656c6c;      // experiment matrix cell
}  // namespace stream_tag

class RngStream {
public:
    explicit RngStream(std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform in [0,1) with 53 random bits.
    double u01();
    double uniform(double lo, double hi);
    // Standard normal via Box-Muller (one spare cached).
    double normal();
    // Uniform integer in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n);
    int uniform_int(int lo, int hi);  // inclusive bounds

    std::uint64_t stream_id() const { return id_; }

private:
    void refill();

    std::uint64_t id_;
    std::array<std::uint32_t, 2> key_;
    std::uint64_t counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int pos_ = 4;  // empty
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace swarmnav
