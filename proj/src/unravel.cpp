#include "polydl/unravel.hpp"

#include "polydl/error.hpp"

namespace polydl {

UnravelResult g_unravel(const Interp& interp, Elem root, std::size_t depth,
                        std::size_t node_budget) {
  if (root >= interp.domain_size()) throw ValidationError("root outside the domain");
  for (const auto& [r, ext] : interp.roles()) {
    if (ext.arity() != 2) throw ValidationError("role '" + r + "' is not binary");
  }

  struct Step {
    std::string role;
    bool inverse = false;
  };
  UnravelResult out;
  std::vector<Step> via;  // edge into each node
  std::vector<std::string> walk;

  out.tree.add_element("(" + interp.name(root) + ")");
  out.canon.push_back(root);
  out.parent.push_back(0);
  out.depth.push_back(0);
  via.push_back({});
  walk.push_back(interp.name(root));

  for (Elem node = 0; node < out.canon.size(); ++node) {
    if (out.depth[node] == depth) continue;
    const Elem last = out.canon[node];
    for (const auto& [role, ext] : interp.roles()) {
      for (bool inverse : {false, true}) {
        for (const auto& t : ext) {
          const Elem from = inverse ? t[1] : t[0];
          const Elem to = inverse ? t[0] : t[1];
          if (from != last) continue;
          // No immediate backtrack along the incoming edge.
          if (node != 0 && via[node].role == role && via[node].inverse != inverse &&
              out.canon[out.parent[node]] == to) {
            continue;
          }
          if (out.canon.size() >= node_budget) {
            throw BudgetExceeded("unraveling exceeds " + std::to_string(node_budget) + " nodes");
          }
          std::string w = walk[node] + "," + role + (inverse ? "^-" : "") + "," + interp.name(to);
          const Elem child = out.tree.add_element("(" + w + ")");
          out.canon.push_back(to);
          out.parent.push_back(node);
          out.depth.push_back(out.depth[node] + 1);
          via.push_back({role, inverse});
          walk.push_back(std::move(w));
          if (inverse) {
            out.tree.add_tuple(role, {child, node});
          } else {
            out.tree.add_tuple(role, {node, child});
          }
        }
      }
    }
  }

  for (const auto& [role, _] : interp.roles()) {
    if (!out.tree.has_role(role)) out.tree.set_role(role, ArityRel(2));
  }
  for (const auto& [c, ext] : interp.concepts()) {
    ElemSet lifted(out.canon.size());
    for (Elem n = 0; n < out.canon.size(); ++n) {
      if (ext.contains(out.canon[n])) lifted.insert(n);
    }
    out.tree.set_concept(c, std::move(lifted));
  }
  return out;
}

UnravelResult g_unravel(const Interp& interp, const std::string& root, std::size_t depth,
                        std::size_t node_budget) {
  auto r = interp.find(root);
  if (!r) throw ValidationError("root '" + root + "' is not in the domain");
  return g_unravel(interp, *r, depth, node_budget);
}

Elem canonical_map(const UnravelResult& result, const std::string& node) {
  auto n = result.tree.find(node);
  if (!n) throw ValidationError("unknown node '" + node + "'");
  return result.canon[*n];
}

}  // namespace polydl
