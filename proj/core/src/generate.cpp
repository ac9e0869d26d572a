#include "evenif/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "evenif/errors.hpp"

namespace evenif {

namespace {

// mt19937_64 with a rejection-free bounded draw; std::uniform_int_distribution
// is not pinned across standard library versions, this is.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish integer in [lo, hi] (modulo bias is irrelevant here).
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool chance(std::uint32_t percent) {
    return engine_() % 100 < percent;
  }

 private:
  std::mt19937_64 engine_;
};

void require_positive_n(std::size_t n) {
  if (n == 0) throw std::invalid_argument("feature count must be at least 1");
}

}  // namespace

Perceptron gen_perceptron(std::size_t n, std::uint64_t seed,
                          std::int64_t weight_range) {
  require_positive_n(n);
  if (weight_range < 1) {
    throw std::invalid_argument("weight range must be at least 1");
  }
  Rng rng(seed);
  Perceptron model;
  model.weights.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.weights.emplace_back(rng.range(-weight_range, weight_range));
  }
  model.bias = Rational(rng.range(-weight_range, weight_range));
  return model;
}

Fbdd gen_fbdd(std::size_t n, std::uint64_t seed, std::size_t node_budget) {
  require_positive_n(n);
  if (node_budget == 0) {
    throw std::invalid_argument("node budget must be at least 1");
  }
  Rng rng(seed);

  Fbdd tree;
  tree.n = n;
  tree.nodes.resize(2);
  tree.nodes[0].feature = -1;
  tree.nodes[0].leaf_value = 0;
  tree.nodes[1].feature = -1;
  tree.nodes[1].leaf_value = 1;

  std::size_t internal_left = node_budget;
  std::vector<int> available(n);
  for (std::size_t i = 0; i < n; ++i) available[i] = static_cast<int>(i);

  // Depth-first growth of a free decision tree: each node consumes one
  // feature from the path's remaining pool, leaves appear when the budget
  // or the pool runs out (plus a small random stop).
  struct Grow {
    int parent;
    int label;
    std::size_t avail;  // features available on this path: available[0..avail)
  };
  std::vector<Grow> stack;

  const auto make_leaf = [&](int parent, int label) {
    const int leaf = static_cast<int>(rng.range(0, 1));
    if (parent >= 0) tree.nodes[parent].edge[label] = leaf;
    return leaf;
  };
  const auto make_internal = [&](int parent, int label, std::size_t avail) {
    const std::size_t pick =
        static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(avail) - 1));
    std::swap(available[pick], available[avail - 1]);
    Fbdd::Node node;
    node.feature = available[avail - 1];
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);
    if (parent >= 0) tree.nodes[parent].edge[label] = id;
    --internal_left;
    stack.push_back({id, 1, avail - 1});
    stack.push_back({id, 0, avail - 1});
    return id;
  };

  tree.root = make_internal(-1, 0, n);
  while (!stack.empty()) {
    const Grow g = stack.back();
    stack.pop_back();
    const bool grow =
        internal_left > 0 && g.avail > 0 && !rng.chance(10);
    if (grow) {
      make_internal(g.parent, g.label, g.avail);
    } else {
      make_leaf(g.parent, g.label);
    }
  }

  // Label pruning: a node whose two children coincide tests nothing, so it
  // collapses into that child; unreachable nodes are dropped afterwards.
  std::vector<int> replacement(tree.nodes.size());
  for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
    replacement[u] = static_cast<int>(u);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < tree.nodes.size(); ++u) {
      Fbdd::Node& node = tree.nodes[u];
      if (node.is_leaf()) continue;
      for (int label = 0; label <= 1; ++label) {
        if (replacement[node.edge[label]] != node.edge[label]) {
          node.edge[label] = replacement[node.edge[label]];
          changed = true;
        }
      }
      if (node.edge[0] == node.edge[1] &&
          replacement[u] == static_cast<int>(u)) {
        replacement[u] = node.edge[0];
        changed = true;
      }
    }
  }
  int root = tree.root;
  while (replacement[root] != root) root = replacement[root];

  // Compact to the reachable subgraph.
  Fbdd out;
  out.n = n;
  std::vector<int> remap(tree.nodes.size(), -1);
  std::vector<int> todo{root};
  remap[root] = 0;
  out.nodes.push_back(tree.nodes[root]);
  while (!todo.empty()) {
    const int u = todo.back();
    todo.pop_back();
    const Fbdd::Node& node = tree.nodes[u];
    if (node.is_leaf()) continue;
    for (int label = 0; label <= 1; ++label) {
      const int v = node.edge[label];
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(tree.nodes[v]);
        todo.push_back(v);
      }
      out.nodes[remap[u]].edge[label] = remap[v];
    }
  }
  out.root = remap[root];
  out.names.reserve(out.nodes.size());
  for (std::size_t u = 0; u < out.nodes.size(); ++u) {
    out.names.push_back("n" + std::to_string(u));
  }
  return out;
}

Mlp gen_mlp(std::size_t n, std::uint64_t seed,
            std::span<const std::size_t> hidden,
            std::int64_t weight_range) {
  require_positive_n(n);
  if (weight_range < 1) {
    throw std::invalid_argument("weight range must be at least 1");
  }
  for (std::size_t width : hidden) {
    if (width == 0) {
      throw std::invalid_argument("hidden layer width must be at least 1");
    }
  }
  Rng rng(seed);
  Mlp model;
  model.n = n;
  std::size_t in_dim = n;
  std::vector<std::size_t> widths(hidden.begin(), hidden.end());
  widths.push_back(1);
  for (std::size_t width : widths) {
    MlpLayer layer;
    layer.weights.resize(in_dim);
    for (auto& row : layer.weights) {
      row.reserve(width);
      for (std::size_t j = 0; j < width; ++j) {
        row.emplace_back(rng.range(-weight_range, weight_range));
      }
    }
    layer.biases.reserve(width);
    for (std::size_t j = 0; j < width; ++j) {
      layer.biases.emplace_back(rng.range(-weight_range, weight_range));
    }
    model.layers.push_back(std::move(layer));
    in_dim = width;
  }
  return model;
}

Instance gen_instance(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.range(0, 1));
  return Instance(std::move(bits));
}

PreferenceRule gen_linear_rule(std::size_t n, std::uint64_t seed,
                               std::size_t max_head) {
  require_positive_n(n);
  Rng rng(seed);
  const std::size_t head_len = static_cast<std::size_t>(
      rng.range(1, static_cast<std::int64_t>(std::min(max_head, n))));
  std::vector<int> features(n);
  for (std::size_t i = 0; i < n; ++i) features[i] = static_cast<int>(i);
  PreferenceRule rule;
  for (std::size_t i = 0; i < head_len; ++i) {
    const std::size_t pick = static_cast<std::size_t>(
        rng.range(static_cast<std::int64_t>(i),
                  static_cast<std::int64_t>(n) - 1));
    std::swap(features[i], features[pick]);
    rule.head.push_back({features[i], !rng.chance(40)});
  }
  return rule;
}

}  // namespace evenif
