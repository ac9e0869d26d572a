#include "evenif/solver.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>

#include "evenif/errors.hpp"

namespace evenif {

namespace {

void check_arity(std::size_t model_n, std::size_t instance_n,
                 const char* kind) {
  if (model_n != instance_n) {
    throw DimensionError(std::string(kind) + " expects " +
                         std::to_string(model_n) + " features, instance has " +
                         std::to_string(instance_n));
  }
}

void require_linear_rule(const std::optional<PreferenceRule>& rule,
                         std::size_t n) {
  if (!rule) return;
  if (!rule->is_linear()) {
    throw std::invalid_argument(
        "the fast solvers accept only a linear preference rule (empty body)");
  }
  if (rule->head.empty()) {
    throw std::invalid_argument("preference rule with an empty head");
  }
  for (std::size_t i = 0; i < rule->head.size(); ++i) {
    const Literal& phi = rule->head[i];
    if (phi.feature < 0 || static_cast<std::size_t>(phi.feature) >= n) {
      throw DimensionError("preference literal f" +
                           std::to_string(phi.feature + 1) +
                           " is outside the model's " + std::to_string(n) +
                           " features");
    }
    for (std::size_t j = i + 1; j < rule->head.size(); ++j) {
      if (rule->head[j] == phi) {
        throw std::invalid_argument("duplicate literal in preference head");
      }
    }
  }
}

Explanation make_explanation(const Instance& x, Instance y,
                             const std::optional<PreferenceRule>& rule) {
  Explanation e;
  e.distance = hamming(x, y);
  if (rule) e.degrees = {degree(y, *rule)};
  e.instance = std::move(y);
  return e;
}

// ---------------------------------------------------------------------------
// Perceptron: greedy flip-cost prefixes plus the single-swap repair.
// ---------------------------------------------------------------------------

// Class of x after flipping a feature set whose scores sum to `sum`.
// Flipping changes the margin by -sum when the class of x is 1 and by +sum
// when it is 0, so the class is kept iff:
bool keeps_class(int cls, const Rational& margin, const Rational& sum) {
  if (cls == 1) return (margin - sum).sign() >= 0;
  return (margin + sum).sign() < 0;
}

struct GreedyOrder {
  int cls = 0;
  Rational margin;                    // x.w + b
  std::vector<ScoredFeature> sorted;  // flip order q_1..q_n
  std::vector<Rational> prefix;       // prefix[i] = sum of the first i scores
};

GreedyOrder greedy_order(const Perceptron& model, const Instance& x,
                         Mode mode) {
  GreedyOrder g;
  g.margin = model.bias;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (x[i]) g.margin += model.weights[i];
  }
  g.cls = g.margin.sign() >= 0 ? 1 : 0;
  g.sorted = perceptron_scores(model, x);
  // Semifactuals flip the cheapest class-preserving features first;
  // counterfactuals flip the strongest class-crossing ones first. Ties
  // break on ascending feature index for determinism.
  if (mode == Mode::semifactual) {
    std::sort(g.sorted.begin(), g.sorted.end(),
              [](const ScoredFeature& a, const ScoredFeature& b) {
                if (a.score != b.score) return a.score < b.score;
                return a.feature < b.feature;
              });
  } else {
    std::sort(g.sorted.begin(), g.sorted.end(),
              [](const ScoredFeature& a, const ScoredFeature& b) {
                if (a.score != b.score) return a.score > b.score;
                return a.feature < b.feature;
              });
  }
  g.prefix.reserve(g.sorted.size() + 1);
  g.prefix.emplace_back(0);
  for (const ScoredFeature& s : g.sorted) {
    g.prefix.push_back(g.prefix.back() + s.score);
  }
  return g;
}

std::vector<int> prefix_features(const GreedyOrder& g, std::size_t k) {
  std::vector<int> features;
  features.reserve(k);
  for (std::size_t i = 0; i < k; ++i) features.push_back(g.sorted[i].feature);
  return features;
}

Explanation perceptron_explain(const Perceptron& model, const Instance& x,
                               const std::optional<PreferenceRule>& rule,
                               Mode mode) {
  const std::size_t n = model.feature_count();
  check_arity(n, x.size(), "perceptron");
  if (n == 0) throw DimensionError("perceptron with no features");
  require_linear_rule(rule, n);

  const GreedyOrder g = greedy_order(model, x, mode);

  std::size_t k = 0;
  if (mode == Mode::semifactual) {
    // Maximum prefix whose flip preserves the class; the predicate is not
    // assumed monotone, so scan downward and take the first feasible size.
    for (std::size_t i = n + 1; i-- > 0;) {
      if (keeps_class(g.cls, g.margin, g.prefix[i])) {
        k = i;
        break;
      }
    }
    if (k == 0) return make_explanation(x, x, rule);
  } else {
    // Minimum prefix whose flip crosses the boundary.
    k = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (!keeps_class(g.cls, g.margin, g.prefix[i])) {
        k = i;
        break;
      }
    }
    if (k == 0) throw NoCounterfactualError();
  }
  if (k == n) {
    std::vector<int> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
    return make_explanation(x, flip(x, all), rule);
  }

  Instance y = flip(x, prefix_features(g, k));
  if (!rule) return make_explanation(x, std::move(y), rule);

  // Single-swap repair: walk the head literals better than y's degree and
  // try to satisfy each one while keeping the distance at k. Swapping out
  // q_k (when x and y agree at the literal) or in q_{k+1} (when they
  // differ) is the cost-optimal distance-preserving exchange.
  const int want = mode == Mode::semifactual ? g.cls : 1 - g.cls;
  const DegreeValue dy = degree(y, *rule);
  const std::size_t limit =
      dy.is_infinite() ? rule->head.size()
                       : static_cast<std::size_t>(dy.position()) - 1;
  for (std::size_t i = 0; i < limit; ++i) {
    const Literal& phi = rule->head[i];
    if (satisfies_literal(y, phi)) return make_explanation(x, std::move(y), rule);
    const int p = phi.feature;
    const int j = (x[p] == y[p]) ? g.sorted[k - 1].feature
                                 : g.sorted[k].feature;
    const std::array<int, 2> swap{p, j};
    Instance z = flip(y, swap);
    if (eval_perceptron(model, z) == want) {
      return make_explanation(x, std::move(z), rule);
    }
  }
  return make_explanation(x, std::move(y), rule);
}

// ---------------------------------------------------------------------------
// Perceptron enumeration: all optimal-distance flip sets in lexicographic
// instance order. A Fenwick tree over score ranks answers "sum of the r
// smallest/largest scores still available" for the prefix feasibility test.
// ---------------------------------------------------------------------------

class ScorePool {
 public:
  explicit ScorePool(const std::vector<ScoredFeature>& scores)
      : n_(scores.size()),
        rank_of_feature_(n_),
        score_of_rank_(n_),
        cnt_(n_ + 1, 0),
        sum_(n_ + 1, Rational(0)) {
    std::vector<int> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (scores[a].score != scores[b].score) {
        return scores[a].score < scores[b].score;
      }
      return scores[a].feature < scores[b].feature;
    });
    for (std::size_t r = 0; r < n_; ++r) {
      rank_of_feature_[scores[order[r]].feature] = r;
      score_of_rank_[r] = scores[order[r]].score;
    }
    highbit_ = 1;
    while (highbit_ * 2 <= n_) highbit_ *= 2;
    for (std::size_t r = 0; r < n_; ++r) update(r, +1);
  }

  std::size_t present() const { return present_; }

  void remove_feature(int feature) { update(rank_of_feature_[feature], -1); }
  void restore_feature(int feature) { update(rank_of_feature_[feature], +1); }

  /// Sum of the r smallest scores still present (r <= present()).
  Rational sum_smallest(std::size_t r) const {
    std::size_t pos = 0;
    long long rem = static_cast<long long>(r);
    Rational acc(0);
    for (std::size_t bit = highbit_; bit > 0; bit >>= 1) {
      const std::size_t next = pos + bit;
      if (next <= n_ && cnt_[next] <= rem) {
        rem -= cnt_[next];
        acc += sum_[next];
        pos = next;
      }
    }
    assert(rem == 0);
    return acc;
  }

  Rational sum_largest(std::size_t r) const {
    return total_ - sum_smallest(present_ - r);
  }

 private:
  void update(std::size_t rank, int delta) {
    present_ += delta;
    if (delta > 0) {
      total_ += score_of_rank_[rank];
    } else {
      total_ -= score_of_rank_[rank];
    }
    for (std::size_t i = rank + 1; i <= n_; i += i & (~i + 1)) {
      cnt_[i] += delta;
      if (delta > 0) {
        sum_[i] += score_of_rank_[rank];
      } else {
        sum_[i] -= score_of_rank_[rank];
      }
    }
  }

  std::size_t n_;
  std::size_t highbit_ = 1;
  std::size_t present_ = 0;
  Rational total_;
  std::vector<std::size_t> rank_of_feature_;
  std::vector<Rational> score_of_rank_;
  std::vector<long long> cnt_;
  std::vector<Rational> sum_;
};

}  // namespace

std::vector<ScoredFeature> perceptron_scores(const Perceptron& model,
                                             const Instance& x) {
  check_arity(model.feature_count(), x.size(), "perceptron");
  const int cls = eval_perceptron(model, x);
  std::vector<ScoredFeature> scores;
  scores.reserve(model.weights.size());
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    const Rational& w = model.weights[i];
    const Rational contribution = x[i] ? w : -w;  // w_i(2x_i - 1)
    scores.push_back(
        {static_cast<int>(i), cls == 1 ? contribution : -contribution});
  }
  return scores;
}

Explanation perceptron_semifactual(const Perceptron& model, const Instance& x,
                                   const std::optional<PreferenceRule>& rule) {
  return perceptron_explain(model, x, rule, Mode::semifactual);
}

Explanation perceptron_counterfactual(
    const Perceptron& model, const Instance& x,
    const std::optional<PreferenceRule>& rule) {
  return perceptron_explain(model, x, rule, Mode::counterfactual);
}

EnumerationResult perceptron_enumerate(const Perceptron& model,
                                       const Instance& x, Mode mode,
                                       std::size_t cap) {
  const std::size_t n = model.feature_count();
  check_arity(n, x.size(), "perceptron");
  const std::size_t k = static_cast<std::size_t>(
      perceptron_explain(model, x, std::nullopt, mode).distance);

  const GreedyOrder g = greedy_order(model, x, mode);
  std::vector<Rational> score_of(n);
  for (const ScoredFeature& s : perceptron_scores(model, x)) {
    score_of[s.feature] = s.score;
  }

  const auto feasible_total = [&](const Rational& total) {
    const bool kept = keeps_class(g.cls, g.margin, total);
    return mode == Mode::semifactual ? kept : !kept;
  };

  ScorePool pool(perceptron_scores(model, x));

  EnumerationResult result;
  std::vector<int> flips;
  flips.reserve(k);
  Rational sigma(0);

  // feasibility of completing a partial choice: r more flips must come
  // from the remaining pool, and the best achievable total must qualify.
  const auto can_complete = [&](std::size_t chosen) {
    if (chosen > k) return false;
    const std::size_t r = k - chosen;
    if (r > pool.present()) return false;
    const Rational ext = mode == Mode::semifactual ? pool.sum_smallest(r)
                                                   : pool.sum_largest(r);
    return feasible_total(sigma + ext);
  };

  const auto record = [&]() {
    Explanation e;
    e.distance = static_cast<int>(k);
    e.instance = flip(x, flips);
    result.explanations.push_back(std::move(e));
  };

  // Iterative DFS over y's bits in index order, value 0 before 1, so the
  // outputs come out lexicographically sorted.
  struct Level {
    std::int8_t phase = 0;   // 0: try bit 0, 1: try bit 1, 2: unwind
    std::int8_t active = -1; // bit currently applied at this level
  };
  std::vector<Level> level(n);

  const auto unapply = [&](std::size_t j) {
    if (level[j].active >= 0 && level[j].active != x[j]) {
      flips.pop_back();
      sigma -= score_of[j];
    }
    level[j].active = -1;
  };

  if (n == 0 || !can_complete(0)) {
    return result;  // no features or nothing qualifies (cannot happen for k from the solver)
  }

  std::ptrdiff_t j = 0;
  pool.remove_feature(0);
  level[0] = Level{};
  while (j >= 0) {
    if (result.explanations.size() > cap) break;
    Level& L = level[j];
    if (L.phase >= 2) {
      unapply(j);
      pool.restore_feature(static_cast<int>(j));
      --j;
      continue;
    }
    const int bit = L.phase;
    ++L.phase;
    unapply(j);
    L.active = static_cast<std::int8_t>(bit);
    if (bit != x[j]) {
      flips.push_back(static_cast<int>(j));
      sigma += score_of[j];
    }
    if (!can_complete(flips.size())) continue;
    if (static_cast<std::size_t>(j) + 1 == n) {
      record();
      continue;
    }
    ++j;
    pool.remove_feature(static_cast<int>(j));
    level[j] = Level{};
  }

  result.truncated = result.explanations.size() > cap;
  if (result.truncated) result.explanations.resize(cap);
  return result;
}

// ---------------------------------------------------------------------------
// FBDD machinery.
// ---------------------------------------------------------------------------

AgreementFbdd fbdd_agreement_weights(const Fbdd& model, const Instance& x) {
  check_arity(model.feature_count(), x.size(), "fbdd");
  AgreementFbdd weighted;
  weighted.weight.resize(model.nodes.size(), {0, 0});
  for (std::size_t u = 0; u < model.nodes.size(); ++u) {
    const Fbdd::Node& node = model.nodes[u];
    if (node.is_leaf()) continue;
    for (int label = 0; label <= 1; ++label) {
      weighted.weight[u][label] = (x[node.feature] == label) ? 1 : 0;
    }
  }
  weighted.base = model;
  return weighted;
}

namespace {

constexpr long kUnreachable = -1;

void ensure_valid_fbdd(const Fbdd& model) {
  auto violations = validate_fbdd(model);
  if (!violations.empty()) {
    throw ValidationError("fbdd", std::move(violations));
  }
}

// Reachable nodes, children before parents.
std::vector<int> reverse_topological(const Fbdd& g) {
  std::vector<int> order;
  order.reserve(g.nodes.size());
  std::vector<std::int8_t> seen(g.nodes.size(), 0);
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(g.root, 0);
  seen[g.root] = 1;
  while (!stack.empty()) {
    auto& [u, next] = stack.back();
    const Fbdd::Node& node = g.nodes[u];
    if (node.is_leaf() || next == 2) {
      order.push_back(u);
      stack.pop_back();
      continue;
    }
    const int to = node.edge[next++];
    if (!seen[to]) {
      seen[to] = 1;
      stack.emplace_back(to, 0);
    }
  }
  return order;
}

mpz_class feature_bit(std::size_t n, int feature) {
  mpz_class v = 1;
  v <<= static_cast<unsigned long>(n - 1 - feature);
  return v;
}

Instance decode_instance(const mpz_class& value, std::size_t n) {
  Instance y = Instance::zeros(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (mpz_tstbit(value.get_mpz_t(),
                   static_cast<mp_bitcnt_t>(n - 1 - j))) {
      y.set(j, 1);
    }
  }
  return y;
}

// Integer value of the instance produced by an empty path: the full flip
// of x for semifactuals (off-path features flip), x itself for
// counterfactuals (off-path features are kept).
mpz_class path_base_value(const Instance& x, Mode mode) {
  mpz_class base = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const bool bit = mode == Mode::semifactual ? x[j] == 0 : x[j] == 1;
    if (bit) base += feature_bit(x.size(), static_cast<int>(j));
  }
  return base;
}

struct PathBest {
  bool reachable = false;
  long cost = 0;
  long hits = 0;
  mpz_class value;  // sum of on-path contributions, excluding the base
};

/// Minimum over root-to-target-class-leaf paths of the lexicographic
/// triple (weight, -pinned-feature hits, resulting instance value).
///
/// `pins` (empty, or one entry per feature in {-1,0,1}) restricts the
/// admissible instances: a pin that keeps a path edge's effect is counted
/// as a hit the path must collect, a pin that contradicts it disables the
/// edge. The caller compares cost and hit count against their unpinned
/// optima to decide feasibility.
PathBest min_weight_path(const AgreementFbdd& weighted,
                         std::span<const int> order, const Instance& x,
                         int target_class, Mode mode,
                         std::span<const std::int8_t> pins) {
  const Fbdd& g = weighted.base;
  const std::size_t n = x.size();

  struct Entry {
    long cost = 0;
    long hits = 0;
    mpz_class value;
    bool ok = false;
  };
  std::vector<Entry> best(g.nodes.size());

  for (int u : order) {
    const Fbdd::Node& node = g.nodes[u];
    if (node.is_leaf()) {
      if (node.leaf_value == target_class) {
        best[u].ok = true;
      }
      continue;
    }
    const int j = node.feature;
    const int pin = pins.empty() ? -1 : pins[j];
    Entry out;
    for (int label = 0; label <= 1; ++label) {
      const bool agree = weighted.weight[u][label] != 0;
      if (pin >= 0) {
        // An edge whose effect contradicts the pinned bit is unusable.
        if (mode == Mode::semifactual && pin != x[j] && agree) continue;
        if (mode == Mode::counterfactual && pin == x[j] && !agree) continue;
      }
      const Entry& sub = best[node.edge[label]];
      if (!sub.ok) continue;

      const long cost =
          sub.cost + (mode == Mode::semifactual ? (agree ? 1 : 0)
                                                : (agree ? 0 : 1));
      long hits = sub.hits;
      if (pin >= 0) {
        if (mode == Mode::semifactual && pin == x[j] && agree) ++hits;
        if (mode == Mode::counterfactual && pin != x[j] && label == pin) {
          ++hits;
        }
      }
      mpz_class value = sub.value;
      if (mode == Mode::semifactual) {
        if (agree) {
          if (x[j]) {
            value += feature_bit(n, j);
          } else {
            value -= feature_bit(n, j);
          }
        }
      } else {
        if (!agree) {
          if (label == 1) {
            value += feature_bit(n, j);
          } else {
            value -= feature_bit(n, j);
          }
        }
      }

      const bool better =
          !out.ok || cost < out.cost ||
          (cost == out.cost &&
           (hits > out.hits || (hits == out.hits && value < out.value)));
      if (better) {
        out.ok = true;
        out.cost = cost;
        out.hits = hits;
        out.value = std::move(value);
      }
    }
    best[u] = std::move(out);
  }

  const Entry& r = best[g.root];
  PathBest pb;
  pb.reachable = r.ok;
  pb.cost = r.ok ? r.cost : kUnreachable;
  pb.hits = r.hits;
  pb.value = r.value;
  return pb;
}

long required_hits(std::span<const std::int8_t> pins, const Instance& x,
                   Mode mode) {
  long required = 0;
  for (std::size_t j = 0; j < pins.size(); ++j) {
    if (pins[j] < 0) continue;
    if (mode == Mode::semifactual ? pins[j] == x[j] : pins[j] != x[j]) {
      ++required;
    }
  }
  return required;
}

struct FbddSolveContext {
  AgreementFbdd weighted;
  std::vector<int> order;
  int focal_class = 0;
  int target_class = 0;
  Mode mode = Mode::semifactual;
  mpz_class base_value;
  PathBest base;

  Instance decode(const mpz_class& path_value, std::size_t n) const {
    return decode_instance(base_value + path_value, n);
  }
};

FbddSolveContext fbdd_solve_context(const Fbdd& model, const Instance& x,
                                    Mode mode) {
  ensure_valid_fbdd(model);
  check_arity(model.feature_count(), x.size(), "fbdd");
  FbddSolveContext ctx;
  ctx.mode = mode;
  ctx.focal_class = eval_fbdd(model, x).value;
  ctx.target_class =
      mode == Mode::semifactual ? ctx.focal_class : 1 - ctx.focal_class;
  ctx.weighted = fbdd_agreement_weights(model, x);
  ctx.order = reverse_topological(model);
  ctx.base_value = path_base_value(x, mode);
  ctx.base = min_weight_path(ctx.weighted, ctx.order, x, ctx.target_class,
                             mode, {});
  return ctx;
}

int path_distance(const FbddSolveContext& ctx, long cost, std::size_t n) {
  return ctx.mode == Mode::semifactual ? static_cast<int>(n) -
                                             static_cast<int>(cost)
                                       : static_cast<int>(cost);
}

Explanation fbdd_explain(const Fbdd& model, const Instance& x,
                         const std::optional<PreferenceRule>& rule,
                         Mode mode) {
  const std::size_t n = model.feature_count();
  require_linear_rule(rule, n);
  FbddSolveContext ctx = fbdd_solve_context(model, x, mode);
  if (!ctx.base.reachable) {
    if (mode == Mode::counterfactual) throw NoCounterfactualError();
    throw std::logic_error("no path to the focal class leaf");
  }

  if (rule) {
    std::vector<std::int8_t> pins(n, -1);
    for (const Literal& phi : rule->head) {
      const std::int8_t want = phi.positive ? 1 : 0;
      pins[phi.feature] = want;
      const PathBest q = min_weight_path(ctx.weighted, ctx.order, x,
                                         ctx.target_class, mode, pins);
      if (q.reachable && q.cost == ctx.base.cost &&
          q.hits == required_hits(pins, x, mode)) {
        return make_explanation(x, ctx.decode(q.value, n), rule);
      }
      pins[phi.feature] = -1;
    }
  }
  return make_explanation(x, ctx.decode(ctx.base.value, n), rule);
}

EnumerationResult fbdd_enumerate(const Fbdd& model, const Instance& x,
                                 Mode mode, std::size_t cap) {
  const std::size_t n = model.feature_count();
  FbddSolveContext ctx = fbdd_solve_context(model, x, mode);
  if (!ctx.base.reachable) {
    if (mode == Mode::counterfactual) throw NoCounterfactualError();
    throw std::logic_error("no path to the focal class leaf");
  }
  const int distance = path_distance(ctx, ctx.base.cost, n);

  EnumerationResult result;
  Instance y = ctx.decode(ctx.base.value, n);

  std::vector<std::int8_t> pins(n, -1);
  // Walk the explanation set in lexicographic order: the successor of y is
  // found by raising the lowest-index 0 bit (scanning from the right) whose
  // pinned prefix still admits an optimal path, then taking the query's
  // lexicographically minimal completion.
  while (true) {
    if (result.explanations.size() == cap + 1) break;
    Explanation e;
    e.distance = distance;
    e.instance = y;
    result.explanations.push_back(std::move(e));
    if (result.explanations.size() == cap + 1) break;

    bool advanced = false;
    for (std::size_t i = n; i-- > 0;) {
      if (y[i] == 1) continue;
      std::fill(pins.begin(), pins.end(), static_cast<std::int8_t>(-1));
      for (std::size_t j = 0; j < i; ++j) {
        pins[j] = static_cast<std::int8_t>(y[j]);
      }
      pins[i] = 1;
      const PathBest q = min_weight_path(ctx.weighted, ctx.order, x,
                                         ctx.target_class, mode, pins);
      if (q.reachable && q.cost == ctx.base.cost &&
          q.hits == required_hits(pins, x, mode)) {
        y = ctx.decode(q.value, n);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  result.truncated = result.explanations.size() > cap;
  if (result.truncated) result.explanations.resize(cap);
  return result;
}

}  // namespace

MinWeightSubgraph min_weight_subgraph(const AgreementFbdd& weighted,
                                      int target_class) {
  const Fbdd& g = weighted.base;
  const std::size_t count = g.nodes.size();
  MinWeightSubgraph sub;
  sub.target_class = target_class;
  sub.node_kept.assign(count, 0);
  sub.edge_kept.assign(count, {0, 0});

  constexpr long kInf = std::numeric_limits<long>::max() / 4;
  std::vector<long> to_leaf(count, kInf);
  std::vector<long> from_root(count, kInf);

  const std::vector<int> order = reverse_topological(g);
  for (int u : order) {
    const Fbdd::Node& node = g.nodes[u];
    if (node.is_leaf()) {
      if (node.leaf_value == target_class) to_leaf[u] = 0;
      continue;
    }
    for (int label = 0; label <= 1; ++label) {
      const long sub_cost = to_leaf[node.edge[label]];
      if (sub_cost == kInf) continue;
      to_leaf[u] = std::min(to_leaf[u],
                            sub_cost + weighted.weight[u][label]);
    }
  }
  from_root[g.root] = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (from_root[u] == kInf) continue;
    const Fbdd::Node& node = g.nodes[u];
    if (node.is_leaf()) continue;
    for (int label = 0; label <= 1; ++label) {
      from_root[node.edge[label]] =
          std::min(from_root[node.edge[label]],
                   from_root[u] + weighted.weight[u][label]);
    }
  }

  sub.reachable = to_leaf[g.root] != kInf;
  if (!sub.reachable) return sub;
  sub.min_weight = to_leaf[g.root];

  for (std::size_t u = 0; u < count; ++u) {
    if (from_root[u] == kInf || to_leaf[u] == kInf) continue;
    if (from_root[u] + to_leaf[u] == sub.min_weight) sub.node_kept[u] = 1;
    const Fbdd::Node& node = g.nodes[u];
    if (node.is_leaf()) continue;
    for (int label = 0; label <= 1; ++label) {
      const int v = node.edge[label];
      if (to_leaf[v] == kInf) continue;
      if (from_root[u] + weighted.weight[u][label] + to_leaf[v] ==
          sub.min_weight) {
        sub.edge_kept[u][label] = 1;
      }
    }
  }
  return sub;
}

int fbdd_mca_value(const Fbdd& model, const Instance& x) {
  FbddSolveContext ctx = fbdd_solve_context(model, x, Mode::semifactual);
  return path_distance(ctx, ctx.base.cost, model.feature_count());
}

Explanation fbdd_semifactual(const Fbdd& model, const Instance& x,
                             const std::optional<PreferenceRule>& rule) {
  return fbdd_explain(model, x, rule, Mode::semifactual);
}

Explanation fbdd_counterfactual(const Fbdd& model, const Instance& x,
                                const std::optional<PreferenceRule>& rule) {
  return fbdd_explain(model, x, rule, Mode::counterfactual);
}

EnumerationResult fbdd_enumerate_semifactuals(const Fbdd& model,
                                              const Instance& x,
                                              std::size_t cap) {
  return fbdd_enumerate(model, x, Mode::semifactual, cap);
}

EnumerationResult fbdd_enumerate_counterfactuals(const Fbdd& model,
                                                 const Instance& x,
                                                 std::size_t cap) {
  return fbdd_enumerate(model, x, Mode::counterfactual, cap);
}

std::vector<Explanation> mlp_explanations_exact(
    const Mlp& model, const Instance& x, Mode mode,
    const std::vector<PreferenceRule>& rules, std::uint64_t budget) {
  auto violations = validate_mlp(model);
  if (!violations.empty()) throw ValidationError("mlp", std::move(violations));
  check_arity(model.feature_count(), x.size(), "mlp");
  const std::size_t n = model.feature_count();
  if (n >= 63 || (std::uint64_t{1} << n) > budget) {
    throw BudgetExceededError(n, budget);
  }
  return detail::enumerate_explanations(Model(model), x, mode, rules,
                                        /*best_only=*/!rules.empty());
}

bool verify_best(const Model& model, const std::vector<PreferenceRule>& rules,
                 const Instance& x, const Instance& y, Mode mode,
                 std::size_t oracle_max_features) {
  const std::size_t n = feature_count(model);
  check_arity(n, x.size(), "model");
  check_arity(n, y.size(), "model");
  const int cx = eval_model(model, x);
  const int cy = eval_model(model, y);
  if (mode == Mode::counterfactual && cx == cy) {
    throw std::invalid_argument(
        "candidate must have the opposite class for counterfactual "
        "verification");
  }
  if (mode == Mode::semifactual && cx != cy) {
    throw std::invalid_argument(
        "candidate must have the same class for semifactual verification");
  }

  const bool linear = rules.empty() || is_single_linear_rule(rules);
  const bool fast = linear && !std::holds_alternative<Mlp>(model);
  if (fast) {
    const std::optional<PreferenceRule> rule =
        rules.empty() ? std::nullopt
                      : std::optional<PreferenceRule>(rules.front());
    const Explanation opt =
        std::holds_alternative<Perceptron>(model)
            ? (mode == Mode::semifactual
                   ? perceptron_semifactual(std::get<Perceptron>(model), x,
                                            rule)
                   : perceptron_counterfactual(std::get<Perceptron>(model), x,
                                               rule))
            : (mode == Mode::semifactual
                   ? fbdd_semifactual(std::get<Fbdd>(model), x, rule)
                   : fbdd_counterfactual(std::get<Fbdd>(model), x, rule));
    if (hamming(x, y) != opt.distance) return false;
    if (!rule) return true;
    return degree(y, *rule) == degree(opt.instance, *rule);
  }

  ExplanationQuery query{mode, model, x, rules};
  const std::vector<Explanation> best =
      oracle_best(query, oracle_max_features);
  return std::any_of(best.begin(), best.end(),
                     [&](const Explanation& e) { return e.instance == y; });
}

}  // namespace evenif
