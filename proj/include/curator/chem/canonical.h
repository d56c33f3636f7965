#ifndef CURATOR_CHEM_CANONICAL_H_
#define CURATOR_CHEM_CANONICAL_H_

#include <string>
#include <vector>

#include "curator/chem/molecule.h"

namespace curator::chem {

// Copy of mol with plain terminal hydrogen atoms ([H] bonded once, neutral,
// no isotope) folded into the hydrogen count of their neighbor.
MoleculeGraph fold_hydrogens(const MoleculeGraph &mol);

// Canonical atom ranks (a permutation of 0..n-1) for mol as given; hydrogen
// atoms are not folded here.
std::vector<int> canonical_ranks(const MoleculeGraph &mol);

// Canonical SMILES key: invariant under atom relabeling and alternative
// spellings of the same constitution (stereo is not represented). Empty
// graphs map to "".
std::string canonical_form(const MoleculeGraph &mol);

}  // namespace curator::chem

#endif  // CURATOR_CHEM_CANONICAL_H_
