#pragma once

#include <cstdint>
#include <initializer_list>

namespace lorasim {

// All randomness in the simulator flows through the generators below so that
// results are bit-reproducible across platforms and compilers. Distributions
// are implemented by hand on top of the raw 64-bit stream; the standard
// library's distribution objects are deliberately avoided because their
// output sequences are implementation-defined.

/// One step of the SplitMix64 sequence (Steele/Lea/Flood). Mutates `state`
/// and returns the next output word.
std::uint64_t splitmix64(std::uint64_t& state);

/// Hash-combine a list of 64-bit tokens into a stream seed. Used to derive
/// independent named sub-streams from (base_seed, run_index, stream id, keys)
/// without any ordering coupling between streams.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tokens);

/// Stream identifiers for the named sub-streams of one simulation run.
enum class Stream : std::uint64_t {
  Placement = 1,  // node positions
  Shadowing = 2,  // per-ordered-pair lognormal shadow fading
  Mac = 3,        // traffic phase jitter
  Channel = 4,    // uplink channel selection
  Los = 5,        // probabilistic LOS draws (optional channel model)
};

/// xoshiro256++ generator, seeded via SplitMix64 from a single 64-bit value.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n), n > 0. Lemire's multiply-shift with rejection.
  std::uint32_t uniform_int(std::uint32_t n);

  /// Normal deviate via Box-Muller (two uniforms per call, spare discarded).
  double normal(double mean, double sigma);

 private:
  std::uint64_t s_[4];
};

}  // namespace lorasim
