#include "curator/chem/scaffold.h"

#include <gtest/gtest.h>

#include "curator/chem/canonical.h"
#include "curator/chem/smiles.h"
#include "oracles.h"

namespace curator::chem {
namespace {

TEST(ScaffoldTest, EthylbenzeneKeepsRing) {
  const Scaffold s = murcko_scaffold(parse_smiles("CCc1ccccc1"));
  EXPECT_EQ(s.graph.num_atoms(), 6);
  EXPECT_EQ(s.key, canonical_form(parse_smiles("c1ccccc1")));
  EXPECT_EQ(s.source_atoms, (std::vector<int> { 2, 3, 4, 5, 6, 7 }));
}

TEST(ScaffoldTest, AcyclicIsEmpty) {
  const Scaffold s = murcko_scaffold(parse_smiles("CCO"));
  EXPECT_TRUE(s.graph.empty());
  EXPECT_EQ(s.key, "");
}

TEST(ScaffoldTest, BiphenylUnchanged) {
  const MoleculeGraph mol = parse_smiles("c1ccccc1-c1ccccc1");
  const Scaffold s = murcko_scaffold(mol);
  EXPECT_EQ(s.graph.num_atoms(), 12);
  EXPECT_EQ(s.key, canonical_form(mol));
}

TEST(ScaffoldTest, LinkerBetweenRingsSurvives) {
  const Scaffold s = murcko_scaffold(parse_smiles("c1ccccc1CCOC1CC1C"));
  EXPECT_EQ(s.graph.num_atoms(), 6 + 3 + 3);
  EXPECT_EQ(s.key, canonical_form(parse_smiles("c1ccccc1CCOC1CC1")));
}

TEST(ScaffoldTest, ExocyclicCarbonylIsPruned) {
  const Scaffold s = murcko_scaffold(parse_smiles("O=C1CCCN1C"));
  EXPECT_EQ(s.key, canonical_form(parse_smiles("C1CCCN1")));
}

TEST(ScaffoldTest, SubstitutedAromaticNitrogenKeepsKeyStable) {
  // A bracket [nH] stays [nH]; an N-substituted ring loses the substituent.
  EXPECT_EQ(murcko_scaffold(parse_smiles("Cc1cc[nH]c1")).key,
            canonical_form(parse_smiles("c1cc[nH]c1")));
}

TEST(ScaffoldTest, Idempotent) {
  for (const char *smi: { "CCc1ccccc1", "c1ccccc1CCOC1CC1C", "CC(=O)Nc1ccc(O)cc1",
                          "C1CC2CCC1C2CC", "c1ccc2[nH]ccc2c1CCN" }) {
    const Scaffold s = murcko_scaffold(parse_smiles(smi));
    EXPECT_EQ(murcko_scaffold(s.graph).key, s.key) << smi;
  }
}

TEST(ScaffoldTest, MatchesBruteForceOracle) {
  for (const char *smi: { "CCc1ccccc1", "c1ccccc1CCOC1CC1C", "CC(C)(C)CC1CCCC1",
                          "C1CC1C(C)C1CCC1", "NCCCC", "C1CCCCC1CC(CC)CC1CC1" }) {
    const MoleculeGraph mol = parse_smiles(smi);
    const std::vector<bool> expected = testing::brute_force_scaffold_atoms(mol);
    const Scaffold s = murcko_scaffold(mol);
    std::vector<bool> got(mol.num_atoms(), false);
    for (const int a: s.source_atoms) {
      got[a] = true;
    }
    EXPECT_EQ(got, expected) << smi;
  }
}

TEST(RingMembershipTest, MatchesFromScratchDefinition) {
  for (const char *smi: { "C1CC1CC", "C1CC2CCC1C2", "c1ccccc1-c1ccccc1",
                          "CCCC", "C1CCC1C1CCCCC1" }) {
    const MoleculeGraph mol = parse_smiles(smi);
    EXPECT_EQ(mol.ring_membership(),
              testing::ring_atoms_from_scratch(
                  mol, std::vector<bool>(mol.num_atoms(), true)))
        << smi;
  }
}

}  // namespace
}  // namespace curator::chem
