#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "evenif/instance.hpp"

namespace evenif {

/// A feature literal: f_i (positive, satisfied when the bit is 1) or
/// ¬f_i (negative, satisfied when the bit is 0). Indices are 0-based here;
/// the surface syntax is 1-based.
struct Literal {
  int feature = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Preference rule: a head chain phi_1 > ... > phi_k guarded by an optional
/// body conjunction. Head literals are pairwise distinct; an empty body
/// makes the rule linear.
struct PreferenceRule {
  std::vector<Literal> head;
  std::vector<Literal> body;

  bool is_linear() const { return body.empty(); }
};

/// True iff the set is exactly one rule with an empty body -- the class of
/// preferences the polynomial solvers accept directly.
bool is_single_linear_rule(const std::vector<PreferenceRule>& rules);

/// Degree to which an instance satisfies a rule: the 1-based position of
/// the first satisfied head literal, or unbounded when the body holds but
/// no head literal does. Infinite compares greater than every finite value.
///
/// Infinity is a distinct sentinel, not head-length + 1: degrees of rules
/// with different head lengths must compare consistently inside one vector.
class DegreeValue {
 public:
  static DegreeValue finite(int position) { return DegreeValue(position); }
  static DegreeValue infinite() { return DegreeValue(-1); }

  bool is_infinite() const { return position_ < 0; }
  int position() const { return position_; }

  friend bool operator==(const DegreeValue&, const DegreeValue&) = default;
  friend std::strong_ordering operator<=>(const DegreeValue& a,
                                          const DegreeValue& b) {
    if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
    if (a.is_infinite()) return std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    return a.position_ <=> b.position_;
  }

  std::string str() const {
    return is_infinite() ? "inf" : std::to_string(position_);
  }

 private:
  explicit DegreeValue(int position) : position_(position) {}
  int position_;  // >= 1, or -1 for infinity
};

/// phi is satisfied in y; throws DimensionError when the feature index is
/// outside y.
bool satisfies_literal(const Instance& y, const Literal& phi);

/// Degree of satisfaction of `rule` by y: 1 when the body is unsatisfied,
/// the first satisfied head position when the body holds, infinite when the
/// body holds but no head literal is satisfied.
DegreeValue degree(const Instance& y, const PreferenceRule& rule);

std::vector<DegreeValue> degree_vector(const Instance& y,
                                       const std::vector<PreferenceRule>&
                                           rules);

/// Pointwise comparison of two degree vectors of equal length.
bool weakly_dominates(const std::vector<DegreeValue>& a,
                      const std::vector<DegreeValue>& b);

/// y ⊒ z: degree(y, k) <= degree(z, k) for every rule. With zero rules all
/// instances are mutually comparable.
bool weakly_dominates(const Instance& y, const Instance& z,
                      const std::vector<PreferenceRule>& rules);

/// y ⊐ z: y ⊒ z and not z ⊒ y.
bool strictly_dominates(const Instance& y, const Instance& z,
                        const std::vector<PreferenceRule>& rules);

/// The candidates not strictly dominated by any other candidate, in
/// canonical lexicographic order (duplicates collapsed).
std::vector<Instance> pareto_best(std::vector<Instance> candidates,
                                  const std::vector<PreferenceRule>& rules);

}  // namespace evenif
