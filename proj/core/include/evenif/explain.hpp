#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "evenif/instance.hpp"
#include "evenif/model.hpp"
#include "evenif/preference.hpp"

namespace evenif {

enum class Mode { semifactual, counterfactual };

/// An explanation instance together with its Hamming distance from the
/// focal instance and, when preferences are in play, one degree per rule.
struct Explanation {
  Instance instance;
  int distance = 0;
  std::vector<DegreeValue> degrees;

  friend bool operator==(const Explanation& a, const Explanation& b) {
    return a.instance == b.instance && a.distance == b.distance;
  }
};

struct ExplanationQuery {
  Mode mode = Mode::semifactual;
  Model model;
  Instance focal;
  std::vector<PreferenceRule> preferences;
};

/// Number of features where x and y differ; throws DimensionError on
/// length mismatch.
int hamming(const Instance& x, const Instance& y);

/// y with the listed (0-based, distinct) features complemented.
Instance flip(const Instance& x, std::span<const int> features);

inline constexpr std::size_t kDefaultOracleMaxFeatures = 20;

/// Ground truth by exhaustive enumeration of all 2^n instances.
///
/// Counterfactual mode: every opposite-class instance at minimum distance
/// (empty when the model is constant). Semifactual mode: every same-class
/// instance at maximum distance, which is {x} itself when x is the only
/// instance of its class. Results are in lexicographic bitstring order and
/// carry degree vectors when the query has preferences.
///
/// Throws CapExceededError when n exceeds max_features.
std::vector<Explanation> oracle_explanations(
    const ExplanationQuery& query,
    std::size_t max_features = kDefaultOracleMaxFeatures);

/// The Pareto-undominated subset of oracle_explanations under the query's
/// preference rules; with no rules this is the full set.
std::vector<Explanation> oracle_best(
    const ExplanationQuery& query,
    std::size_t max_features = kDefaultOracleMaxFeatures);

namespace detail {

/// Exhaustive engine shared by the oracle and by the exact MLP search;
/// callers are responsible for the cap/budget check.
std::vector<Explanation> enumerate_explanations(
    const Model& model, const Instance& focal, Mode mode,
    const std::vector<PreferenceRule>& preferences, bool best_only);

}  // namespace detail

}  // namespace evenif
