#include "evenif/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "evenif/errors.hpp"
#include "evenif/generate.hpp"
#include "evenif/solver.hpp"

namespace evenif {

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t fbdd_feature_count(std::size_t node_budget) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < node_budget) ++bits;
  return std::max<std::size_t>(10, bits + 4);
}

long long time_call(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration_cast<std::chrono::microseconds>(stop - start)
      .count();
}

}  // namespace

std::vector<BenchRecord> bench_scaling(const std::string& kind,
                                       std::span<const std::size_t> sizes,
                                       int trials, std::uint64_t seed,
                                       Mode mode, std::uint64_t mlp_budget) {
  if (kind != "perceptron" && kind != "fbdd" && kind != "mlp") {
    throw std::invalid_argument("unknown model kind '" + kind + "'");
  }
  if (sizes.empty()) throw std::invalid_argument("no sizes given");
  if (!std::is_sorted(sizes.begin(), sizes.end())) {
    throw std::invalid_argument("sizes must be ascending");
  }
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");

  std::vector<BenchRecord> records;
  records.reserve(sizes.size() * static_cast<std::size_t>(trials));
  for (std::size_t size : sizes) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t s = mix(seed, mix(size, trial));
      BenchRecord record;
      record.kind = kind;
      record.trial = trial;
      record.mode = mode;

      if (kind == "perceptron") {
        record.n = size;
        record.size = size;
        const Perceptron model = gen_perceptron(size, s);
        const Instance x = gen_instance(size, mix(s, 1));
        record.micros = time_call([&] {
          try {
            if (mode == Mode::semifactual) {
              perceptron_semifactual(model, x);
            } else {
              perceptron_counterfactual(model, x);
            }
          } catch (const NoCounterfactualError&) {
          }
        });
      } else if (kind == "fbdd") {
        record.n = fbdd_feature_count(size);
        const Fbdd model = gen_fbdd(record.n, s, size);
        record.size = model.nodes.size();
        const Instance x = gen_instance(record.n, mix(s, 1));
        record.micros = time_call([&] {
          try {
            if (mode == Mode::semifactual) {
              fbdd_semifactual(model, x);
            } else {
              fbdd_counterfactual(model, x);
            }
          } catch (const NoCounterfactualError&) {
          }
        });
      } else {
        record.n = size;
        const std::vector<std::size_t> hidden{8};
        const Mlp model = gen_mlp(size, s, hidden);
        record.size = hidden.front() + 1;  // neurons
        const Instance x = gen_instance(size, mix(s, 1));
        try {
          record.micros = time_call(
              [&] { mlp_explanations_exact(model, x, mode, {}, mlp_budget); });
        } catch (const BudgetExceededError&) {
          record.micros = -1;
        }
      }
      records.push_back(std::move(record));
    }
  }
  return records;
}

std::string bench_csv(std::span<const BenchRecord> records) {
  std::ostringstream out;
  out << "kind,n,size,trial,micros\n";
  for (const BenchRecord& r : records) {
    out << r.kind << "," << r.n << "," << r.size << "," << r.trial << ","
        << r.micros << "\n";
  }
  return out.str();
}

}  // namespace evenif
