#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cdpsim {

// One named substream of the master seed. Streams with equal (seed, label)
// produce identical sequences; distinct labels decorrelate, so adding draws
// to one concern (say mobility) never perturbs another (say the workload).
//
// Draw helpers are implemented directly on the raw mt19937_64 output instead
// of <random> distributions, whose algorithms are implementation-defined.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t master_seed, const std::string& label);

  const std::string& label() const { return label_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Uniform integer in [0, n). n must be > 0.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // K distinct indices from [0, n), uniform without replacement, ascending order
  // of selection preserved.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::string label_;
  std::mt19937_64 engine_;
};

// Registry of named substreams for one run. rng("x") called twice returns the
// same stream object, already advanced by earlier draws.
class RngRegistry {
 public:
  explicit RngRegistry(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const { return master_seed_; }

  RngStream& stream(const std::string& label);

 private:
  std::uint64_t master_seed_ = 0;
  std::map<std::string, RngStream> streams_;
};

}  // namespace cdpsim
