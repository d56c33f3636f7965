#include "curator/chem/valence.h"

#include <algorithm>
#include <optional>
#include <vector>

namespace curator::chem {
namespace {

struct Placement {
  int group;
  int period;
};

std::optional<Placement> checked_element(std::string_view symbol) {
  if (symbol == "B") return Placement { 3, 2 };
  if (symbol == "C") return Placement { 4, 2 };
  if (symbol == "N") return Placement { 5, 2 };
  if (symbol == "O") return Placement { 6, 2 };
  if (symbol == "F") return Placement { 7, 2 };
  if (symbol == "P") return Placement { 5, 3 };
  if (symbol == "S") return Placement { 6, 3 };
  if (symbol == "Cl") return Placement { 7, 3 };
  if (symbol == "Br") return Placement { 7, 4 };
  if (symbol == "I") return Placement { 7, 5 };
  return std::nullopt;
}

// Allowed valences of an atom isoelectronic with main group `group` in
// `period`. A formal charge shifts the effective group (N+ behaves like C).
std::vector<int> allowed_valences(int group, int period) {
  if (group < 0 || group > 8) {
    return {};
  }
  if (group <= 4) {
    return { group };
  }
  if (group == 8) {
    return { 0 };
  }
  if (period == 2) {
    return { 8 - group };
  }
  switch (group) {
  case 5:
    return { 3, 5 };
  case 6:
    return { 2, 4, 6 };
  default:
    return period >= 5 ? std::vector<int> { 1, 3, 5 } : std::vector<int> { 1 };
  }
}

struct BondSums {
  int localized = 0;  // sum of non-aromatic bond orders
  int aromatic = 0;   // number of aromatic bonds
};

BondSums bond_sums(const MoleculeGraph &mol, int atom) {
  BondSums s;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    const BondOrder order = mol.bond(nb.bond).order;
    if (order == BondOrder::kAromatic) {
      ++s.aromatic;
    } else {
      s.localized += static_cast<int>(order);
    }
  }
  return s;
}

}  // namespace

bool is_organic_subset(std::string_view symbol, bool aromatic) {
  if (aromatic) {
    return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O"
           || symbol == "P" || symbol == "S";
  }
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O"
         || symbol == "P" || symbol == "S" || symbol == "F" || symbol == "Cl"
         || symbol == "Br" || symbol == "I";
}

ValenceVerdict validate_valence(const MoleculeGraph &mol) {
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    const auto place = checked_element(a.symbol);
    if (!place) {
      continue;
    }
    const std::vector<int> allowed =
        allowed_valences(place->group - a.charge, place->period);
    if (allowed.empty()) {
      return { false, i };
    }
    const BondSums s = bond_sums(mol, i);
    const int total = s.localized + s.aromatic + a.explicit_h.value_or(0);
    if (total > *std::max_element(allowed.begin(), allowed.end())) {
      return { false, i };
    }
  }
  return {};
}

int default_hydrogens(const MoleculeGraph &mol, int atom) {
  const Atom &a = mol.atom(atom);
  if (!is_organic_subset(a.symbol, a.aromatic)) {
    return 0;
  }
  const auto place = checked_element(a.symbol);
  const std::vector<int> allowed =
      allowed_valences(place->group - a.charge, place->period);
  if (allowed.empty()) {
    return 0;
  }
  const BondSums s = bond_sums(mol, atom);
  if (s.aromatic > 0) {
    // One of the aromatic bonds is taken as double; atoms already past
    // their lowest valence donate a lone pair and carry no hydrogen.
    const int sum = s.localized + s.aromatic + 1;
    return sum <= allowed.front() ? allowed.front() - sum : 0;
  }
  for (int v: allowed) {
    if (v >= s.localized) {
      return v - s.localized;
    }
  }
  return 0;
}

int implicit_hydrogens(const MoleculeGraph &mol, int atom) {
  return mol.atom(atom).explicit_h ? 0 : default_hydrogens(mol, atom);
}

int total_hydrogens(const MoleculeGraph &mol, int atom) {
  const Atom &a = mol.atom(atom);
  return a.explicit_h ? *a.explicit_h : implicit_hydrogens(mol, atom);
}

}  // namespace curator::chem
