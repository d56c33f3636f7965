#include "curator/chem/scaffold.h"

#include <deque>

#include "curator/chem/canonical.h"

namespace curator::chem {

Scaffold murcko_scaffold(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  const std::vector<bool> ring = mol.ring_membership();
  std::vector<bool> alive(n, true);
  std::vector<int> degree(n);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    degree[i] = mol.degree(i);
    if (!ring[i] && degree[i] <= 1) {
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (!alive[a]) {
      continue;
    }
    alive[a] = false;
    for (const Neighbor &nb: mol.neighbors(a)) {
      if (alive[nb.atom] && --degree[nb.atom] <= 1 && !ring[nb.atom]) {
        queue.push_back(nb.atom);
      }
    }
  }

  Scaffold out;
  std::vector<int> map;
  out.graph = mol.induced_subgraph(alive, &map);
  for (int i = 0; i < n; ++i) {
    if (map[i] < 0) {
      continue;
    }
    out.source_atoms.push_back(i);
    Atom &atom = out.graph.atom(map[i]);
    if (!atom.explicit_h) {
      continue;
    }
    for (const Neighbor &nb: mol.neighbors(i)) {
      if (!alive[nb.atom]) {
        const BondOrder order = mol.bond(nb.bond).order;
        *atom.explicit_h +=
            order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
      }
    }
  }
  out.key = out.graph.empty() ? std::string() : canonical_form(out.graph);
  return out;
}

}  // namespace curator::chem
