#ifndef CURATOR_CHEM_SMILES_H_
#define CURATOR_CHEM_SMILES_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "curator/chem/molecule.h"

namespace curator::chem {

enum class SmilesErrorKind {
  kSyntax,
  kUnmatchedRingClosure,
  kUnmatchedParenthesis,
  kValence,
};

class SmilesError: public std::runtime_error {
public:
  SmilesError(SmilesErrorKind kind, std::size_t position,
              const std::string &what);

  SmilesErrorKind kind() const { return kind_; }
  // Byte offset into the input; for valence errors, the atom index.
  std::size_t position() const { return position_; }

private:
  SmilesErrorKind kind_;
  std::size_t position_;
};

struct SmilesParseOptions {
  bool check_valence = true;
};

// Parses the supported SMILES subset: organic-subset and bracket atoms,
// bonds - = # : / \, branches, ring-bond digits and %nn, and '.'
// disconnections. Stereo markers are accepted and dropped.
MoleculeGraph parse_smiles(std::string_view text,
                           SmilesParseOptions options = {});

// Parse + valence check without throwing.
bool is_legal_smiles(std::string_view text);

// Writes a SMILES string whose traversal follows `rank` (lower first): each
// component starts at its lowest-ranked atom and branches are visited in
// rank order. Any permutation of ranks yields a valid spelling of the same
// graph; canonical ranks yield the canonical spelling.
std::string write_smiles(const MoleculeGraph &mol, std::span<const int> rank);

}  // namespace curator::chem

#endif  // CURATOR_CHEM_SMILES_H_
