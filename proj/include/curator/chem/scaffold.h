#ifndef CURATOR_CHEM_SCAFFOLD_H_
#define CURATOR_CHEM_SCAFFOLD_H_

#include <string>
#include <vector>

#include "curator/chem/molecule.h"

namespace curator::chem {

struct Scaffold {
  MoleculeGraph graph;
  // canonical_form(graph); "" for acyclic input.
  std::string key;
  // Index in the source molecule of each scaffold atom.
  std::vector<int> source_atoms;
};

// Generic Bemis-Murcko framework: the fixed point of repeatedly deleting
// non-ring atoms of degree <= 1. Exocyclic multiply-bonded atoms are not
// retained. Surviving bracket atoms absorb the bond orders they lost as
// explicit hydrogens so the key matches the unsubstituted ring system.
Scaffold murcko_scaffold(const MoleculeGraph &mol);

}  // namespace curator::chem

#endif  // CURATOR_CHEM_SCAFFOLD_H_
