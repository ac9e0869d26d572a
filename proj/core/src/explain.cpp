#include "evenif/explain.hpp"

#include <cstdint>
#include <cstdlib>

#include "evenif/errors.hpp"

namespace evenif {

int hamming(const Instance& x, const Instance& y) {
  if (x.size() != y.size()) {
    throw DimensionError("hamming distance of instances with lengths " +
                         std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
  int d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

Instance flip(const Instance& x, std::span<const int> features) {
  Instance y = x;
  for (int f : features) {
    if (f < 0 || static_cast<std::size_t>(f) >= x.size()) {
      throw DimensionError("flip index f" + std::to_string(f + 1) +
                           " is outside the instance of length " +
                           std::to_string(x.size()));
    }
    y.set(f, 1 - y[f]);
  }
  return y;
}

namespace detail {

// Shared exhaustive search behind the oracle and the exact MLP solver.
// Enumerates instances in lexicographic order (f1 is the most significant
// counter bit), so collected results need no re-sorting.
std::vector<Explanation> enumerate_explanations(
    const Model& model, const Instance& focal, Mode mode,
    const std::vector<PreferenceRule>& preferences, bool best_only) {
  const std::size_t n = focal.size();
  const int focal_class = eval_model(model, focal);
  const bool want_same = (mode == Mode::semifactual);

  int best_distance = want_same ? -1 : static_cast<int>(n) + 1;
  std::vector<Instance> kept;

  Instance candidate = Instance::zeros(n);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::size_t j = 0; j < n; ++j) {
      candidate.set(j, static_cast<int>((code >> (n - 1 - j)) & 1));
    }
    if ((eval_model(model, candidate) == focal_class) != want_same) continue;
    const int d = hamming(focal, candidate);
    const bool better = want_same ? d > best_distance : d < best_distance;
    if (better) {
      best_distance = d;
      kept.clear();
    }
    if (d == best_distance) kept.push_back(candidate);
  }

  if (!preferences.empty() && best_only) {
    kept = pareto_best(std::move(kept), preferences);
  }

  std::vector<Explanation> result;
  result.reserve(kept.size());
  for (Instance& y : kept) {
    Explanation e;
    e.distance = best_distance;
    e.degrees = preferences.empty() ? std::vector<DegreeValue>{}
                                    : degree_vector(y, preferences);
    e.instance = std::move(y);
    result.push_back(std::move(e));
  }
  return result;
}

}  // namespace detail

namespace {

std::vector<Explanation> run_oracle(const ExplanationQuery& query,
                                    std::size_t max_features, bool best_only) {
  const std::size_t n = feature_count(query.model);
  if (query.focal.size() != n) {
    throw DimensionError("focal instance has length " +
                         std::to_string(query.focal.size()) +
                         ", model expects " + std::to_string(n));
  }
  if (n > max_features || n >= 63) {
    throw CapExceededError(n, max_features);
  }
  return detail::enumerate_explanations(query.model, query.focal, query.mode,
                                        query.preferences, best_only);
}

}  // namespace

std::vector<Explanation> oracle_explanations(const ExplanationQuery& query,
                                             std::size_t max_features) {
  return run_oracle(query, max_features, /*best_only=*/false);
}

std::vector<Explanation> oracle_best(const ExplanationQuery& query,
                                     std::size_t max_features) {
  return run_oracle(query, max_features, /*best_only=*/true);
}

}  // namespace evenif
