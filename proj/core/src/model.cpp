#include "evenif/model.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

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

}  // namespace

int eval_perceptron(const Perceptron& model, const Instance& x) {
  check_arity(model.feature_count(), x.size(), "perceptron");
  Rational score = model.bias;
  for (std::size_t i = 0; i < model.weights.size(); ++i) {
    if (x[i]) score += model.weights[i];
  }
  return score.sign() >= 0 ? 1 : 0;
}

FbddTrace eval_fbdd(const Fbdd& model, const Instance& x) {
  check_arity(model.feature_count(), x.size(), "fbdd");
  FbddTrace trace;
  int cur = model.root;
  // A validated FBDD reaches a leaf after at most n internal nodes; the
  // bound guards against evaluating an unvalidated graph.
  for (std::size_t steps = 0; steps <= model.nodes.size(); ++steps) {
    if (cur < 0 || static_cast<std::size_t>(cur) >= model.nodes.size()) {
      throw std::logic_error("fbdd traversal left the node table; "
                             "was the model validated?");
    }
    trace.path.push_back(cur);
    const Fbdd::Node& node = model.nodes[cur];
    if (node.is_leaf()) {
      trace.value = node.leaf_value;
      return trace;
    }
    cur = node.edge[x[node.feature]];
  }
  throw std::logic_error("fbdd traversal did not terminate; "
                         "was the model validated?");
}

int eval_mlp(const Mlp& model, const Instance& x) {
  check_arity(model.feature_count(), x.size(), "mlp");
  std::vector<Rational> h(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) h[i] = x[i];

  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const MlpLayer& layer = model.layers[l];
    if (layer.in_dim() != h.size()) {
      throw DimensionError("mlp layer " + std::to_string(l + 1) +
                           " expects width " + std::to_string(layer.in_dim()) +
                           ", got " + std::to_string(h.size()));
    }
    std::vector<Rational> out(layer.out_dim());
    for (std::size_t j = 0; j < layer.out_dim(); ++j) {
      Rational acc = layer.biases[j];
      for (std::size_t i = 0; i < layer.in_dim(); ++i) {
        acc += h[i] * layer.weights[i][j];
      }
      out[j] = std::move(acc);
    }
    const bool last = (l + 1 == model.layers.size());
    if (!last) {
      for (auto& v : out) {
        if (v.sign() < 0) v = Rational(0);  // relu
      }
    } else {
      if (out.size() != 1) {
        throw DimensionError("mlp output layer has width " +
                             std::to_string(out.size()) + ", expected 1");
      }
      return out[0].sign() >= 0 ? 1 : 0;  // step
    }
    h = std::move(out);
  }
  throw DimensionError("mlp has no layers");
}

int eval_model(const Model& model, const Instance& x) {
  return std::visit(
      [&](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Perceptron>) {
          return eval_perceptron(m, x);
        } else if constexpr (std::is_same_v<T, Fbdd>) {
          return eval_fbdd(m, x).value;
        } else {
          return eval_mlp(m, x);
        }
      },
      model);
}

std::size_t feature_count(const Model& model) {
  return std::visit([](const auto& m) { return m.feature_count(); }, model);
}

std::string model_kind(const Model& model) {
  return std::visit(
      [](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Perceptron>) return "perceptron";
        if constexpr (std::is_same_v<T, Fbdd>) return "fbdd";
        return "mlp";
      },
      model);
}

namespace {

/// Dense bitset keyed by remapped feature id; one block row per node.
class FeatureSets {
 public:
  FeatureSets(std::size_t node_count, std::size_t feature_slots)
      : words_per_row_((feature_slots + 63) / 64),
        data_(node_count * words_per_row_, 0) {}

  void add(std::size_t node, std::size_t feature) {
    data_[node * words_per_row_ + feature / 64] |= std::uint64_t{1}
                                                   << (feature % 64);
  }
  void merge_from(std::size_t node, std::size_t child) {
    auto* dst = &data_[node * words_per_row_];
    const auto* src = &data_[child * words_per_row_];
    for (std::size_t w = 0; w < words_per_row_; ++w) dst[w] |= src[w];
  }
  bool contains(std::size_t node, std::size_t feature) const {
    return (data_[node * words_per_row_ + feature / 64] >>
            (feature % 64)) & 1;
  }

 private:
  std::size_t words_per_row_;
  std::vector<std::uint64_t> data_;
};

}  // namespace

std::vector<std::string> validate_fbdd(const Fbdd& model) {
  std::vector<std::string> violations;
  const std::size_t count = model.nodes.size();

  if (model.n == 0) violations.push_back("feature count must be at least 1");
  if (count == 0) {
    violations.push_back("model has no nodes");
    return violations;
  }
  if (model.root < 0 || static_cast<std::size_t>(model.root) >= count) {
    violations.push_back("root node id is not in the node table");
    return violations;
  }

  bool edges_ok = true;
  for (std::size_t u = 0; u < count; ++u) {
    const Fbdd::Node& node = model.nodes[u];
    if (node.is_leaf()) {
      if (node.leaf_value != 0 && node.leaf_value != 1) {
        violations.push_back("leaf " + model.name_of(static_cast<int>(u)) +
                             " has class " + std::to_string(node.leaf_value));
      }
      continue;
    }
    if (static_cast<std::size_t>(node.feature) >= model.n) {
      violations.push_back("node " + model.name_of(static_cast<int>(u)) +
                           " tests feature f" +
                           std::to_string(node.feature + 1) +
                           " outside [1," + std::to_string(model.n) + "]");
      edges_ok = false;
    }
    for (int label = 0; label <= 1; ++label) {
      const int to = node.edge[label];
      if (to < 0) {
        violations.push_back("node " + model.name_of(static_cast<int>(u)) +
                             " is missing its " + std::to_string(label) +
                             "-edge");
        edges_ok = false;
      } else if (static_cast<std::size_t>(to) >= count) {
        violations.push_back("node " + model.name_of(static_cast<int>(u)) +
                             " has a dangling " + std::to_string(label) +
                             "-edge");
        edges_ok = false;
      }
    }
  }
  if (!edges_ok) return violations;  // graph checks need sound edges

  // Cycle check and topological order via iterative DFS from the root.
  std::vector<int> state(count, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<int> order;            // reverse topological (children first)
  order.reserve(count);
  {
    std::vector<std::pair<int, int>> stack;  // (node, next edge label)
    stack.emplace_back(model.root, 0);
    state[model.root] = 1;
    bool cyclic = false;
    while (!stack.empty() && !cyclic) {
      auto& [u, next] = stack.back();
      const Fbdd::Node& node = model.nodes[u];
      if (node.is_leaf() || next == 2) {
        state[u] = 2;
        order.push_back(u);
        stack.pop_back();
        continue;
      }
      const int to = node.edge[next++];
      if (state[to] == 1) {
        violations.push_back("cycle through nodes " + model.name_of(u) +
                             " and " + model.name_of(to));
        cyclic = true;
      } else if (state[to] == 0) {
        state[to] = 1;
        stack.emplace_back(to, 0);
      }
    }
    if (cyclic) return violations;  // freeness is undefined on cyclic graphs
  }

  for (std::size_t u = 0; u < count; ++u) {
    if (state[u] == 0) {
      violations.push_back("node " + model.name_of(static_cast<int>(u)) +
                           " is unreachable from the root");
    }
  }

  // Freeness: a feature tested at u must not be tested again below u.
  // Features are remapped to dense ids so the per-node descendant sets stay
  // proportional to the features that actually occur.
  std::vector<int> dense(model.n, -1);
  std::size_t distinct = 0;
  for (int u : order) {
    const Fbdd::Node& node = model.nodes[u];
    if (!node.is_leaf() && dense[node.feature] < 0) {
      dense[node.feature] = static_cast<int>(distinct++);
    }
  }
  FeatureSets below(count, std::max<std::size_t>(distinct, 1));
  for (int u : order) {  // children precede parents
    const Fbdd::Node& node = model.nodes[u];
    if (node.is_leaf()) continue;
    const int fid = dense[node.feature];
    for (int label = 0; label <= 1; ++label) {
      if (below.contains(node.edge[label], fid)) {
        // Locate a concrete duplicate below for the report.
        int v = node.edge[label];
        while (model.nodes[v].feature != node.feature) {
          const auto& vn = model.nodes[v];
          v = below.contains(vn.edge[0], fid) ? vn.edge[0] : vn.edge[1];
        }
        violations.push_back("feature f" + std::to_string(node.feature + 1) +
                             " repeats on a path: tested at node " +
                             model.name_of(u) + " and again at node " +
                             model.name_of(v));
      }
    }
    below.merge_from(u, node.edge[0]);
    below.merge_from(u, node.edge[1]);
    below.add(u, fid);
  }

  return violations;
}

std::vector<std::string> validate_mlp(const Mlp& model) {
  std::vector<std::string> violations;
  if (model.n == 0) violations.push_back("feature count must be at least 1");
  if (model.layers.empty()) {
    violations.push_back("mlp has no layers");
    return violations;
  }
  std::size_t width = model.n;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const MlpLayer& layer = model.layers[l];
    if (layer.in_dim() != width) {
      violations.push_back("layer " + std::to_string(l + 1) +
                           " expects input width " +
                           std::to_string(layer.in_dim()) +
                           " but the previous width is " +
                           std::to_string(width));
    }
    for (std::size_t r = 0; r < layer.weights.size(); ++r) {
      if (layer.weights[r].size() != layer.out_dim()) {
        violations.push_back("layer " + std::to_string(l + 1) + " row " +
                             std::to_string(r + 1) + " has " +
                             std::to_string(layer.weights[r].size()) +
                             " entries, expected " +
                             std::to_string(layer.out_dim()));
      }
    }
    width = layer.out_dim();
  }
  if (width != 1) {
    violations.push_back("last layer has output width " +
                         std::to_string(width) + ", expected 1");
  }
  return violations;
}

}  // namespace evenif
