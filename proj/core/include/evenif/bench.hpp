#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "evenif/explain.hpp"

namespace evenif {

/// One timed solver run. `size` is the node count for FBDDs, the neuron
/// count for MLPs and the feature count for perceptrons; `micros` is -1
/// when an MLP trial exceeded the evaluation budget (recorded, not fatal).
struct BenchRecord {
  std::string kind;
  std::size_t n = 0;
  std::size_t size = 0;
  int trial = 0;
  long long micros = 0;
  Mode mode = Mode::semifactual;
};

inline constexpr std::uint64_t kDefaultMlpBenchBudget = std::uint64_t{1}
                                                        << 22;

/// For each size and trial: generate a model, pick a random instance, time
/// one solve (the greedy solver for perceptrons and FBDDs, the exhaustive
/// one for MLPs) and record it. Sizes must be ascending. Solver outputs
/// are never altered by timing.
std::vector<BenchRecord> bench_scaling(
    const std::string& kind, std::span<const std::size_t> sizes, int trials,
    std::uint64_t seed, Mode mode,
    std::uint64_t mlp_budget = kDefaultMlpBenchBudget);

/// CSV with header "kind,n,size,trial,micros".
std::string bench_csv(std::span<const BenchRecord> records);

}  // namespace evenif
