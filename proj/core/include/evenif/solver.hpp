#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "evenif/explain.hpp"
#include "evenif/instance.hpp"
#include "evenif/model.hpp"
#include "evenif/preference.hpp"

namespace evenif {

/// Per-feature cost of flipping that feature while keeping the current
/// class: w_i(2x_i - 1) when the class of x is 1, w_i(1 - 2x_i) when it
/// is 0.
struct ScoredFeature {
  int feature = 0;  // 0-based
  Rational score;
};

std::vector<ScoredFeature> perceptron_scores(const Perceptron& model,
                                             const Instance& x);

/// Greedy maximum-distance semifactual for a perceptron: sort features by
/// ascending flip cost (ties by ascending feature index), take the longest
/// class-preserving prefix, then try the single-swap repair for each head
/// literal of the linear rule in order. Always returns a semifactual; with
/// a rule the result is a best semifactual.
///
/// Throws std::invalid_argument for rules with a non-empty body.
Explanation perceptron_semifactual(
    const Perceptron& model, const Instance& x,
    const std::optional<PreferenceRule>& rule = std::nullopt);

/// Mirror of the semifactual greedy: sort by descending flip cost, take
/// the shortest class-crossing prefix, same single-swap repair. Throws
/// NoCounterfactualError when the model is constant.
Explanation perceptron_counterfactual(
    const Perceptron& model, const Instance& x,
    const std::optional<PreferenceRule>& rule = std::nullopt);

struct EnumerationResult {
  std::vector<Explanation> explanations;  // lexicographic order
  bool truncated = false;                 // more existed beyond the cap
};

/// All optimal-distance explanations of the given mode, in lexicographic
/// order, up to `cap` of them.
EnumerationResult perceptron_enumerate(const Perceptron& model,
                                       const Instance& x, Mode mode,
                                       std::size_t cap);

/// The input FBDD re-labeled with agreement weights: an edge weighs 1 iff
/// its label matches x at the feature tested by its source node.
struct AgreementFbdd {
  Fbdd base;
  std::vector<std::array<int, 2>> weight;  // [node][edge label], 0 or 1
};

AgreementFbdd fbdd_agreement_weights(const Fbdd& model, const Instance& x);

/// Restriction of an AgreementFbdd to the edges lying on some
/// minimum-weight root-to-target-class-leaf path. Every root-to-leaf path
/// inside it has the same, minimal weight.
struct MinWeightSubgraph {
  int target_class = 0;
  bool reachable = false;  // some target-class leaf is reachable at all
  long min_weight = 0;     // weight shared by every kept path
  std::vector<std::uint8_t> node_kept;
  std::vector<std::array<std::uint8_t, 2>> edge_kept;
};

MinWeightSubgraph min_weight_subgraph(const AgreementFbdd& weighted,
                                      int target_class);

/// Maximum distance of a same-class instance: n minus the minimum
/// agreement weight over root-to-leaf paths of x's class, by a single
/// dynamic-programming pass over the DAG.
int fbdd_mca_value(const Fbdd& model, const Instance& x);

/// Maximum-distance semifactual for an FBDD. Scans the linear rule's head
/// literals in order and returns a semifactual satisfying the first
/// satisfiable one; literal satisfiability is decided by a weight/DP query
/// over the minimum-weight paths, never by materializing them. Among the
/// qualifying semifactuals the lexicographically smallest is returned.
Explanation fbdd_semifactual(
    const Fbdd& model, const Instance& x,
    const std::optional<PreferenceRule>& rule = std::nullopt);

/// Minimum-distance counterfactual for an FBDD, the dual construction:
/// edges weigh 1 where they disagree with x, target leaves are the
/// opposite class, and the counterfactual keeps x outside the chosen path.
/// Throws NoCounterfactualError when no opposite-class leaf is reachable.
Explanation fbdd_counterfactual(
    const Fbdd& model, const Instance& x,
    const std::optional<PreferenceRule>& rule = std::nullopt);

/// Distinct semifactuals reachable through minimum-weight paths, in
/// lexicographic order, up to `cap`.
EnumerationResult fbdd_enumerate_semifactuals(const Fbdd& model,
                                              const Instance& x,
                                              std::size_t cap);

/// Counterfactual counterpart of the enumerator.
EnumerationResult fbdd_enumerate_counterfactuals(const Fbdd& model,
                                                 const Instance& x,
                                                 std::size_t cap);

/// Exact explanation search for MLPs by exhaustive enumeration (the
/// problem is NP-complete, so desk scale is the intended regime). Same
/// contract as the oracle; returns the best set when rules are non-empty.
/// Throws BudgetExceededError when 2^n exceeds `budget`.
std::vector<Explanation> mlp_explanations_exact(
    const Mlp& model, const Instance& x, Mode mode,
    const std::vector<PreferenceRule>& rules, std::uint64_t budget);

/// Is y a best explanation of x for the given mode? True iff no z of the
/// required class has a strictly better distance, or equal distance and
/// z ⊐ y.
///
/// For perceptrons and FBDDs with no rules or a single linear rule this is
/// decided in polynomial time against the fast solver's optimum; otherwise
/// it falls back to oracle enumeration under `oracle_max_features`.
///
/// Preconditions: eval(y) must relate to eval(x) as the mode requires
/// (counterfactual: differ, semifactual: equal); violations throw
/// std::invalid_argument.
bool verify_best(const Model& model, const std::vector<PreferenceRule>& rules,
                 const Instance& x, const Instance& y, Mode mode,
                 std::size_t oracle_max_features = kDefaultOracleMaxFeatures);

}  // namespace evenif
