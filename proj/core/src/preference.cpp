#include "evenif/preference.hpp"

#include <algorithm>

#include "evenif/errors.hpp"

namespace evenif {

bool is_single_linear_rule(const std::vector<PreferenceRule>& rules) {
  return rules.size() == 1 && rules.front().is_linear();
}

bool satisfies_literal(const Instance& y, const Literal& phi) {
  if (phi.feature < 0 || static_cast<std::size_t>(phi.feature) >= y.size()) {
    throw DimensionError("literal feature f" +
                         std::to_string(phi.feature + 1) +
                         " is outside the instance of length " +
                         std::to_string(y.size()));
  }
  return phi.positive ? y[phi.feature] == 1 : y[phi.feature] == 0;
}

DegreeValue degree(const Instance& y, const PreferenceRule& rule) {
  for (const Literal& phi : rule.body) {
    if (!satisfies_literal(y, phi)) return DegreeValue::finite(1);
  }
  for (std::size_t i = 0; i < rule.head.size(); ++i) {
    if (satisfies_literal(y, rule.head[i])) {
      return DegreeValue::finite(static_cast<int>(i) + 1);
    }
  }
  return DegreeValue::infinite();
}

std::vector<DegreeValue> degree_vector(
    const Instance& y, const std::vector<PreferenceRule>& rules) {
  std::vector<DegreeValue> degrees;
  degrees.reserve(rules.size());
  for (const PreferenceRule& rule : rules) degrees.push_back(degree(y, rule));
  return degrees;
}

bool weakly_dominates(const std::vector<DegreeValue>& a,
                      const std::vector<DegreeValue>& b) {
  if (a.size() != b.size()) {
    throw DimensionError("degree vectors of different lengths");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool weakly_dominates(const Instance& y, const Instance& z,
                      const std::vector<PreferenceRule>& rules) {
  if (y.size() != z.size()) {
    throw DimensionError("instances of different lengths");
  }
  return weakly_dominates(degree_vector(y, rules), degree_vector(z, rules));
}

bool strictly_dominates(const Instance& y, const Instance& z,
                        const std::vector<PreferenceRule>& rules) {
  const auto dy = degree_vector(y, rules);
  const auto dz = degree_vector(z, rules);
  return weakly_dominates(dy, dz) && !weakly_dominates(dz, dy);
}

std::vector<Instance> pareto_best(std::vector<Instance> candidates,
                                  const std::vector<PreferenceRule>& rules) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  std::vector<std::vector<DegreeValue>> degrees;
  degrees.reserve(candidates.size());
  for (const Instance& c : candidates) degrees.push_back(degree_vector(c, rules));

  std::vector<Instance> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < candidates.size() && !dominated; ++j) {
      if (j == i) continue;
      dominated = weakly_dominates(degrees[j], degrees[i]) &&
                  !weakly_dominates(degrees[i], degrees[j]);
    }
    if (!dominated) best.push_back(candidates[i]);
  }
  return best;  // input order kept: already lexicographic
}

}  // namespace evenif
