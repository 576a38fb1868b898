#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace melro {

// Error taxonomy used across the library. The CLI maps these onto its
// exit codes: UsageError -> 1, DataError -> 2, NumericError -> 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic, platform-independent RNG (xoshiro256** seeded via
// splitmix64). All randomness in the project flows through this class so
// that fixed seeds give bitwise-identical runs on any standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);
  // Standard normal via Box-Muller (no cached spare, so forks stay aligned).
  double normal();
  double normal(double mean, double stddev);

  // Derive an independent stream; (purpose, index) pairs give stable
  // per-step / per-module seeding.
  Rng fork(uint64_t stream) const;
  static uint64_t mix(uint64_t seed, uint64_t stream);

 private:
  uint64_t s_[4];
};

// Thread pool used by the compute kernels. Work is always partitioned into
// deterministic contiguous ranges with disjoint writes, so results do not
// depend on the number of threads or their scheduling.
void set_num_threads(int n);
int num_threads();
void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

inline bool is_pow2(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace melro
