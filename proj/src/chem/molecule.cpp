#include "curator/chem/molecule.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string_view>

namespace curator::chem {
namespace {

constexpr std::array<std::string_view, 119> kElementSymbols = {
  "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

}  // namespace

int atomic_number(std::string_view symbol) {
  for (std::size_t z = 1; z < kElementSymbols.size(); ++z) {
    if (kElementSymbols[z] == symbol) {
      return static_cast<int>(z);
    }
  }
  return 0;
}

int MoleculeGraph::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return num_atoms() - 1;
}

int MoleculeGraph::add_bond(int begin, int end, BondOrder order) {
  if (begin < 0 || end < 0 || begin >= num_atoms() || end >= num_atoms()) {
    throw std::invalid_argument("bond endpoint out of range");
  }
  if (begin == end) {
    throw std::invalid_argument("self-loop bond");
  }
  if (find_bond(begin, end) >= 0) {
    throw std::invalid_argument("duplicate bond");
  }
  const int idx = num_bonds();
  bonds_.push_back({ begin, end, order });
  adjacency_[begin].push_back({ end, idx });
  adjacency_[end].push_back({ begin, idx });
  return idx;
}

int MoleculeGraph::find_bond(int a, int b) const {
  for (const Neighbor &n: adjacency_[a]) {
    if (n.atom == b) {
      return n.bond;
    }
  }
  return -1;
}

std::vector<bool> MoleculeGraph::ring_membership() const {
  // An atom is on a cycle iff it touches a non-bridge bond. Bridges via an
  // iterative low-link DFS so long chains do not exhaust the stack.
  const int n = num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> bridge(bonds_.size(), false);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) {
      continue;
    }
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &top = stack.back();
      const auto &adj = adjacency_[top.atom];
      if (top.next < adj.size()) {
        const Neighbor nb = adj[top.next++];
        if (nb.bond == top.parent_bond) {
          continue;
        }
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[top.atom] = std::min(low[top.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = top;
      stack.pop_back();
      if (!stack.empty()) {
        const int parent = stack.back().atom;
        low[parent] = std::min(low[parent], low[done.atom]);
        if (low[done.atom] > disc[parent]) {
          bridge[done.parent_bond] = true;
        }
      }
    }
  }

  std::vector<bool> ring(n, false);
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    if (!bridge[b]) {
      ring[bonds_[b].begin] = true;
      ring[bonds_[b].end] = true;
    }
  }
  return ring;
}

MoleculeGraph
MoleculeGraph::induced_subgraph(const std::vector<bool> &keep,
                                std::vector<int> *old_to_new) const {
  MoleculeGraph sub;
  std::vector<int> map(atoms_.size(), -1);
  for (int i = 0; i < num_atoms(); ++i) {
    if (keep[i]) {
      map[i] = sub.add_atom(atoms_[i]);
    }
  }
  for (const Bond &b: bonds_) {
    if (map[b.begin] >= 0 && map[b.end] >= 0) {
      sub.add_bond(map[b.begin], map[b.end], b.order);
    }
  }
  if (old_to_new != nullptr) {
    *old_to_new = std::move(map);
  }
  return sub;
}

int heavy_atom_count(const MoleculeGraph &mol) {
  return static_cast<int>(
      std::count_if(mol.atoms().begin(), mol.atoms().end(),
                    [](const Atom &a) { return a.symbol != "H"; }));
}

}  // namespace curator::chem
