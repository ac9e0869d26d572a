#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "evenif/instance.hpp"
#include "evenif/rational.hpp"

namespace evenif {

/// Linear threshold classifier: class 1 iff x.w + b >= 0 (exactly 0 is
/// class 1).
struct Perceptron {
  std::vector<Rational> weights;
  Rational bias;

  std::size_t feature_count() const { return weights.size(); }
};

/// Free binary decision diagram over features f1..fn.
///
/// Nodes are dense indices into `nodes`; `names` keeps the surface
/// identifiers for serialization and diagnostics (synthesized when absent).
/// Structural invariants (acyclicity, both out-edges present, freeness,
/// reachability from the root) are checked by validate_fbdd, not by the
/// constructor, so that parsers can report every violation at once.
struct Fbdd {
  struct Node {
    int feature = -1;                   // 0-based tested feature; -1 on leaves
    std::array<int, 2> edge{-1, -1};    // successors for edge labels 0 and 1
    int leaf_value = 0;                 // class bit, meaningful on leaves only

    bool is_leaf() const { return feature < 0; }
  };

  std::size_t n = 0;  // declared feature count
  std::vector<Node> nodes;
  std::vector<std::string> names;  // parallel to nodes; may be empty
  int root = -1;

  std::size_t feature_count() const { return n; }

  /// Surface identifier of a node ("n<i>" fallback when names are absent).
  std::string name_of(int node) const {
    if (node >= 0 && static_cast<std::size_t>(node) < names.size() &&
        !names[node].empty()) {
      return names[node];
    }
    return "n" + std::to_string(node);
  }
};

struct MlpLayer {
  std::vector<std::vector<Rational>> weights;  // [in_dim][out_dim]
  std::vector<Rational> biases;                // [out_dim]

  std::size_t in_dim() const { return weights.size(); }
  std::size_t out_dim() const { return biases.size(); }
};

/// Multilayer perceptron with ReLU on every layer except the last and a
/// step output (1 at pre-activation >= 0). Zero hidden layers makes this a
/// perceptron.
struct Mlp {
  std::size_t n = 0;
  std::vector<MlpLayer> layers;

  std::size_t feature_count() const { return n; }
  std::size_t hidden_layer_count() const {
    return layers.empty() ? 0 : layers.size() - 1;
  }
};

using Model = std::variant<Perceptron, Fbdd, Mlp>;

/// Class bit of the perceptron on x; throws DimensionError on arity
/// mismatch.
int eval_perceptron(const Perceptron& model, const Instance& x);

struct FbddTrace {
  int value = 0;
  std::vector<int> path;  // traversed node ids, root first, leaf last
};

/// Follows the unique root-to-leaf path of x through a validated FBDD.
FbddTrace eval_fbdd(const Fbdd& model, const Instance& x);

/// Class bit of the MLP on x: ReLU hidden layers, step output.
int eval_mlp(const Mlp& model, const Instance& x);

int eval_model(const Model& model, const Instance& x);
std::size_t feature_count(const Model& model);
std::string model_kind(const Model& model);  // "perceptron" | "fbdd" | "mlp"

/// Structural check; returns one message per violated invariant (empty
/// means valid). Violations name the offending nodes.
std::vector<std::string> validate_fbdd(const Fbdd& model);

/// Checks layer dimension chaining and that the last layer has width 1.
std::vector<std::string> validate_mlp(const Mlp& model);

}  // namespace evenif
