#include <set>

#include "curator/chem/canonical.h"
#include "curator/chem/smiles.h"
#include "curator/curation/curation.h"
#include "curator/parallel.h"

namespace curator::curation {

MoleculeTable MoleculeTable::build(std::span<const RawActivityRecord> records,
                                   int jobs) {
  std::set<std::string_view> distinct;
  for (const RawActivityRecord &r: records) {
    if (r.smiles) {
      distinct.insert(*r.smiles);
    }
  }
  const std::vector<std::string_view> keys(distinct.begin(), distinct.end());
  std::vector<MoleculeInfo> infos(keys.size());
  parallel_for(keys.size(), jobs, [&](std::size_t i) {
    try {
      const chem::MoleculeGraph mol = chem::parse_smiles(keys[i]);
      infos[i].legal = true;
      infos[i].canonical_key = chem::canonical_form(mol);
      infos[i].heavy_atoms = chem::heavy_atom_count(mol);
    } catch (const chem::SmilesError &) {
      infos[i] = MoleculeInfo {};
    }
  });

  MoleculeTable table;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    table.entries_.emplace(std::string(keys[i]), std::move(infos[i]));
  }
  return table;
}

const MoleculeInfo *MoleculeTable::find(std::string_view smiles) const {
  const auto it = entries_.find(smiles);
  return it == entries_.end() ? nullptr : &it->second;
}

bool MoleculeTable::legal(const std::optional<std::string> &smiles) const {
  if (!smiles) {
    return false;
  }
  const MoleculeInfo *info = find(*smiles);
  return info != nullptr && info->legal;
}

}  // namespace curator::curation
