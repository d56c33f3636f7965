#include "curator/chem/canonical.h"

#include <algorithm>
#include <numeric>
#include <optional>

#include "curator/chem/smiles.h"
#include "curator/chem/valence.h"

namespace curator::chem {
namespace {

// Leaves of the tie-breaking search tree explored before settling for the
// best string found so far. Ties left after refinement are almost always
// automorphic, in which case every leaf yields the same string.
constexpr int kLeafBudget = 64;

using Key = std::vector<long>;

// Class index of each atom = number of atoms with a strictly smaller key.
std::vector<int> rank_by_keys(const std::vector<Key> &keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(n);
  for (int i = 0; i < n; ++i) {
    ranks[order[i]] =
        i > 0 && keys[order[i]] == keys[order[i - 1]] ? ranks[order[i - 1]] : i;
  }
  return ranks;
}

int count_classes(const std::vector<int> &ranks) {
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::unique(sorted.begin(), sorted.end())
                          - sorted.begin());
}

class Canonicalizer {
public:
  explicit Canonicalizer(const MoleculeGraph &mol): mol_(mol) { }

  void run() {
    const std::vector<bool> ring = mol_.ring_membership();
    std::vector<Key> keys(mol_.num_atoms());
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      const Atom &a = mol_.atom(i);
      keys[i] = { atomic_number(a.symbol),
                  a.aromatic ? 1 : 0,
                  a.charge,
                  a.isotope.value_or(0),
                  total_hydrogens(mol_, i),
                  mol_.degree(i),
                  ring[i] ? 1 : 0 };
    }
    search(rank_by_keys(keys));
  }

  const std::string &best_string() const { return *best_; }
  const std::vector<int> &best_ranks() const { return best_ranks_; }

private:
  std::vector<int> refine(std::vector<int> ranks) const {
    int classes = count_classes(ranks);
    const int n = mol_.num_atoms();
    while (classes < n) {
      std::vector<Key> keys(n);
      for (int i = 0; i < n; ++i) {
        std::vector<std::pair<int, int>> env;
        for (const Neighbor &nb: mol_.neighbors(i)) {
          env.emplace_back(ranks[nb.atom],
                           static_cast<int>(mol_.bond(nb.bond).order));
        }
        std::sort(env.begin(), env.end());
        Key &k = keys[i];
        k.push_back(ranks[i]);
        for (const auto &[r, o]: env) {
          k.push_back(r);
          k.push_back(o);
        }
      }
      ranks = rank_by_keys(keys);
      const int next = count_classes(ranks);
      if (next == classes) {
        break;
      }
      classes = next;
    }
    return ranks;
  }

  void search(std::vector<int> ranks) {
    ranks = refine(std::move(ranks));
    const int n = mol_.num_atoms();

    std::vector<int> counts(n, 0);
    for (int r: ranks) {
      ++counts[r];
    }
    int tied = -1;
    for (int r = 0; r < n; ++r) {
      if (counts[r] > 1) {
        tied = r;
        break;
      }
    }

    if (tied < 0) {
      std::string s = write_smiles(mol_, ranks);
      if (!best_ || s < *best_) {
        best_ = std::move(s);
        best_ranks_ = ranks;
      }
      --budget_;
      return;
    }

    for (int cand = 0; cand < n; ++cand) {
      if (ranks[cand] != tied) {
        continue;
      }
      if (budget_ <= 0 && best_) {
        break;
      }
      std::vector<Key> keys(n);
      for (int i = 0; i < n; ++i) {
        keys[i] = { ranks[i], ranks[i] == tied && i != cand ? 1 : 0 };
      }
      search(rank_by_keys(keys));
    }
  }

  const MoleculeGraph &mol_;
  int budget_ = kLeafBudget;
  std::optional<std::string> best_;
  std::vector<int> best_ranks_;
};

bool is_foldable_hydrogen(const MoleculeGraph &mol, int i) {
  const Atom &a = mol.atom(i);
  if (a.symbol != "H" || a.charge != 0 || a.isotope || a.explicit_h.value_or(0) != 0
      || mol.degree(i) != 1) {
    return false;
  }
  const Neighbor nb = mol.neighbors(i)[0];
  return mol.bond(nb.bond).order == BondOrder::kSingle
         && mol.atom(nb.atom).symbol != "H";
}

}  // namespace

MoleculeGraph fold_hydrogens(const MoleculeGraph &mol) {
  std::vector<bool> keep(mol.num_atoms(), true);
  std::vector<int> extra_h(mol.num_atoms(), 0);
  bool any = false;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (is_foldable_hydrogen(mol, i)) {
      keep[i] = false;
      ++extra_h[mol.neighbors(i)[0].atom];
      any = true;
    }
  }
  if (!any) {
    return mol;
  }
  std::vector<int> map;
  MoleculeGraph out = mol.induced_subgraph(keep, &map);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (map[i] >= 0 && extra_h[i] > 0) {
      Atom &a = out.atom(map[i]);
      // Organic-subset atoms recompute their implicit count from the
      // remaining bonds, which already accounts for the removed H.
      if (a.explicit_h) {
        *a.explicit_h += extra_h[i];
      }
    }
  }
  return out;
}

std::vector<int> canonical_ranks(const MoleculeGraph &mol) {
  if (mol.empty()) {
    return {};
  }
  Canonicalizer c(mol);
  c.run();
  return c.best_ranks();
}

std::string canonical_form(const MoleculeGraph &mol) {
  const MoleculeGraph folded = fold_hydrogens(mol);
  if (folded.empty()) {
    return "";
  }
  Canonicalizer c(folded);
  c.run();
  return c.best_string();
}

}  // namespace curator::chem
