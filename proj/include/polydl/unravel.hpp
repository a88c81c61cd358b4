#pragma once

// Depth-bounded g-unraveling of a binary interpretation: nodes are walks
// from the root along roles and inverse roles that never step straight back
// along the edge they came from.

#include <cstddef>
#include <string>
#include <vector>

#include "polydl/model.hpp"

namespace polydl {

struct UnravelResult {
  /// Nodes are named by their walk, e.g. "(r,R,a,R^-,b)". Node 0 is the root.
  Interp tree;
  /// Last element of each walk, as an element of the source interpretation.
  std::vector<Elem> canon;
  /// Parent node (the root is its own parent) and edge count from the root.
  std::vector<Elem> parent;
  std::vector<std::size_t> depth;
};

/// Throws ValidationError for non-binary roles or a root outside the
/// domain, BudgetExceeded when more than `node_budget` walks arise.
UnravelResult g_unravel(const Interp& interp, Elem root, std::size_t depth,
                        std::size_t node_budget = 1'000'000);
UnravelResult g_unravel(const Interp& interp, const std::string& root, std::size_t depth,
                        std::size_t node_budget = 1'000'000);

/// canon of the node with the given walk name; throws ValidationError for
/// an unknown node.
Elem canonical_map(const UnravelResult& result, const std::string& node);

}  // namespace polydl
