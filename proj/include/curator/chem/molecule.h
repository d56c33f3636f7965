#ifndef CURATOR_CHEM_MOLECULE_H_
#define CURATOR_CHEM_MOLECULE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace curator::chem {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  // Capitalized element symbol ("C", "Cl", "Se"); aromaticity is kept in
  // the flag, not in the case of the symbol.
  std::string symbol;
  bool aromatic = false;
  int charge = 0;
  std::optional<int> isotope;
  // Set for bracket atoms only; organic-subset atoms carry implicit H.
  std::optional<int> explicit_h;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin;
  int end;
  BondOrder order;

  int other(int atom) const { return atom == begin ? end : begin; }
  bool operator==(const Bond &) const = default;
};

struct Neighbor {
  int atom;
  int bond;
};

// Undirected attributed molecular graph. Hydrogens implied by the SMILES
// valence model are never materialized as atoms.
class MoleculeGraph {
public:
  int add_atom(Atom atom);

  // Throws std::invalid_argument for out-of-range endpoints, self-loops
  // and duplicate bonds.
  int add_bond(int begin, int end, BondOrder order);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &atom(int i) { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int atom) const {
    return adjacency_[atom];
  }
  int degree(int atom) const {
    return static_cast<int>(adjacency_[atom].size());
  }

  // Index of the bond joining a and b, or -1.
  int find_bond(int a, int b) const;

  // true for exactly the atoms lying on at least one cycle.
  std::vector<bool> ring_membership() const;

  // Subgraph induced by the atoms with keep[i] set, in original order.
  // old_to_new receives -1 for dropped atoms when non-null.
  MoleculeGraph induced_subgraph(const std::vector<bool> &keep,
                                 std::vector<int> *old_to_new = nullptr) const;

  bool operator==(const MoleculeGraph &other) const {
    return atoms_ == other.atoms_ && bonds_ == other.bonds_;
  }

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

// Number of atoms whose element is not hydrogen.
int heavy_atom_count(const MoleculeGraph &mol);

// Atomic number for a capitalized element symbol, 0 if unknown.
int atomic_number(std::string_view symbol);

}  // namespace curator::chem

#endif  // CURATOR_CHEM_MOLECULE_H_
