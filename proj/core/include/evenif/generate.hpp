#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "evenif/instance.hpp"
#include "evenif/model.hpp"
#include "evenif/preference.hpp"

namespace evenif {

/// Deterministic random models: the same (kind, n, seed, params) always
/// produces the same model, and every generated model passes validation.
/// Weights are integers in [-weight_range, weight_range].
Perceptron gen_perceptron(std::size_t n, std::uint64_t seed,
                          std::int64_t weight_range = 10);

/// Random free decision tree of roughly `node_budget` internal nodes with
/// two shared leaves, then reduced by merging nodes whose children
/// coincide and dropping anything unreachable.
Fbdd gen_fbdd(std::size_t n, std::uint64_t seed, std::size_t node_budget);

Mlp gen_mlp(std::size_t n, std::uint64_t seed,
            std::span<const std::size_t> hidden,
            std::int64_t weight_range = 10);

Instance gen_instance(std::size_t n, std::uint64_t seed);

/// A random linear rule: 1..max_head distinct literals, mixed polarities.
PreferenceRule gen_linear_rule(std::size_t n, std::uint64_t seed,
                               std::size_t max_head = 4);

}  // namespace evenif
