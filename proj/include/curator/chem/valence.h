#ifndef CURATOR_CHEM_VALENCE_H_
#define CURATOR_CHEM_VALENCE_H_

#include <string_view>

#include "curator/chem/molecule.h"

namespace curator::chem {

struct ValenceVerdict {
  bool ok = true;
  int atom = -1;  // first offending atom when !ok
};

// Checks bond-order sum plus explicit hydrogens against the charge-adjusted
// valence table for B, C, N, O, P, S, F, Cl, Br and I. Other elements are
// trusted. Aromatic bonds count one each (the Kekulé lower bound).
ValenceVerdict validate_valence(const MoleculeGraph &mol);

// SMILES organic subset; aromatic forms are b c n o p s.
bool is_organic_subset(std::string_view symbol, bool aromatic);

// Hydrogens the SMILES default-valence rule would give this atom if it were
// written without brackets, regardless of any explicit count.
int default_hydrogens(const MoleculeGraph &mol, int atom);

// Hydrogens implied by the SMILES default-valence rule for an atom that has
// no explicit hydrogen count. Zero for atoms outside the organic subset.
int implicit_hydrogens(const MoleculeGraph &mol, int atom);

// explicit_h when present, implicit_hydrogens otherwise.
int total_hydrogens(const MoleculeGraph &mol, int atom);

}  // namespace curator::chem

#endif  // CURATOR_CHEM_VALENCE_H_
