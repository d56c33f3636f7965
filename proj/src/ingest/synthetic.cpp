#include "curator/ingest/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "curator/chem/smiles.h"
#include "curator/error.h"
#include "curator/random.h"

namespace curator::ingest {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Cores end on the atom that takes the substituent; the prefix binds to
// the first atom.
const std::vector<std::string> kCores = {
  "c1ccccc1",         "c1ccncc1",        "C1CCNCC1",      "c1ccc2ccccc2c1",
  "c1ccsc1",          "c1ccoc1",         "c1ccc2[nH]ccc2c1", "C1CCCCC1",
  "c1ccc(-c2ccccc2)cc1", "C1CCC(=O)N1",  "C1CC1",         "c1cnc2ccccc2c1",
  "C1CCOC1",          "CC(C)",           "CCCC",          "NCC",
};
const std::vector<std::string> kPrefixes = { "", "C", "O", "N", "CC", "Cl", "F" };
const std::vector<std::string> kSubstituents = {
  "",         "C",          "CC",        "O",       "OC",
  "N",        "NC(=O)C",    "C(=O)O",    "F",       "Cl",
  "Br",       "C(F)(F)F",   "CN",        "S(=O)(=O)N", "OCC",
  "C#N",      "CCN(C)C",    "Cc1ccccc1", "N1CCOCC1", "c1ccccc1",
};
const std::vector<std::string> kIllegalSmiles = {
  "C1CC",   "CC(C)(C)(C)C", "N(C)(C)(C)C", "c1ccccc", "C(C",
  "CC)C",   "C1CC1C1",      "[Xx]C",       "C==C",    "O(C)(C)C",
};
const std::vector<std::string> kTargetTypes = {
  "SINGLE PROTEIN", "PROTEIN COMPLEX", "PROTEIN FAMILY", "ORGANISM",
  "CELL-LINE",
};
const std::vector<double> kTargetTypeWeights = { 0.7, 0.1, 0.1, 0.05, 0.05 };
const std::vector<double> kConfidenceWeights = {
  // score 0 .. 9
  0.02, 0.02, 0.03, 0.05, 0.06, 0.06, 0.06, 0.10, 0.10, 0.50,
};
const std::vector<std::vector<std::string>> kClassPaths = {
  { "Enzyme", "Kinase", "Protein Kinase", "CMGC protein kinase group" },
  { "Enzyme", "Protease", "Serine protease" },
  { "Membrane receptor", "Family A G protein-coupled receptor",
    "Small molecule receptor (family A GPCR)" },
  { "Ion channel", "Voltage-gated ion channel" },
  { "Transcription factor", "Nuclear receptor" },
  { "Epigenetic regulator", "Reader" },
  { "Transporter", "Electrochemical transporter" },
  { "Enzyme", "Cytochrome P450" },
};
const std::vector<std::string> kInequalities = { ">", "<", ">=", "<=" };
constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

std::size_t weighted(Rng &rng, const std::vector<double> &weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) {
      return i;
    }
    u -= weights[i];
  }
  return weights.size() - 1;
}

double round_significant(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

struct Target {
  std::string id;
  std::optional<std::string> sequence;
  std::optional<std::vector<std::string>> class_path;
};

struct PoolMolecule {
  std::string smiles;
  double potency;  // intrinsic pValue
};

std::vector<PoolMolecule> build_pool(const SyntheticSpec &spec, Rng &rng) {
  std::vector<PoolMolecule> pool;
  std::set<std::string> seen;
  const int max_attempts = spec.molecule_pool * 20;
  for (int attempt = 0;
       static_cast<int>(pool.size()) < spec.molecule_pool; ++attempt) {
    std::string smiles = rng.pick(kPrefixes) + rng.pick(kCores)
                         + rng.pick(kSubstituents);
    if (!chem::is_legal_smiles(smiles)
        || (!seen.insert(smiles).second && attempt < max_attempts)) {
      continue;
    }
    pool.push_back({ std::move(smiles), 5.4 + 1.0 * rng.normal() });
  }
  return pool;
}

std::string respell(const std::string &smiles, Rng &rng) {
  const chem::MoleculeGraph mol = chem::parse_smiles(smiles);
  std::vector<int> rank(mol.num_atoms());
  std::iota(rank.begin(), rank.end(), 0);
  rng.shuffle(rank);
  return chem::write_smiles(mol, rank);
}

}  // namespace

ordered_json SyntheticSpec::to_json() const {
  ordered_json j;
  j["n_assays"] = n_assays;
  j["min_molecules_per_assay"] = min_molecules_per_assay;
  j["max_molecules_per_assay"] = max_molecules_per_assay;
  j["measurement_types"] = measurement_types;
  j["n_targets"] = n_targets;
  j["molecule_pool"] = molecule_pool;
  j["p_inequality"] = p_inequality;
  j["p_missing_value"] = p_missing_value;
  j["p_missing_smiles"] = p_missing_smiles;
  j["p_illegal_smiles"] = p_illegal_smiles;
  j["p_other_unit"] = p_other_unit;
  j["p_corrupt_row"] = p_corrupt_row;
  j["p_respell"] = p_respell;
  j["p_missing_target_info"] = p_missing_target_info;
  return j;
}

SyntheticSpec SyntheticSpec::from_json(const json &j) {
  SyntheticSpec s;
  const auto get = [&](const char *key, auto &field) {
    if (j.contains(key)) {
      try {
        j.at(key).get_to(field);
      } catch (const json::exception &) {
        throw Error(ErrorCode::kInvalidSpec,
                    std::string("synthetic spec field '") + key
                        + "' has the wrong type");
      }
    }
  };
  for (const auto &[key, value]: j.items()) {
    if (!s.to_json().contains(key)) {
      throw Error(ErrorCode::kInvalidSpec,
                  "unknown synthetic spec field '" + key + "'");
    }
  }
  get("n_assays", s.n_assays);
  get("min_molecules_per_assay", s.min_molecules_per_assay);
  get("max_molecules_per_assay", s.max_molecules_per_assay);
  get("measurement_types", s.measurement_types);
  get("n_targets", s.n_targets);
  get("molecule_pool", s.molecule_pool);
  get("p_inequality", s.p_inequality);
  get("p_missing_value", s.p_missing_value);
  get("p_missing_smiles", s.p_missing_smiles);
  get("p_illegal_smiles", s.p_illegal_smiles);
  get("p_other_unit", s.p_other_unit);
  get("p_corrupt_row", s.p_corrupt_row);
  get("p_respell", s.p_respell);
  get("p_missing_target_info", s.p_missing_target_info);
  return s;
}

void validate(const SyntheticSpec &spec) {
  const auto positive = [](int v, const char *name) {
    if (v <= 0) {
      throw Error(ErrorCode::kInvalidSpec,
                  std::string(name) + " must be positive");
    }
  };
  positive(spec.n_assays, "n_assays");
  positive(spec.min_molecules_per_assay, "min_molecules_per_assay");
  positive(spec.max_molecules_per_assay, "max_molecules_per_assay");
  positive(spec.n_targets, "n_targets");
  positive(spec.molecule_pool, "molecule_pool");
  if (spec.min_molecules_per_assay > spec.max_molecules_per_assay) {
    throw Error(ErrorCode::kInvalidSpec,
                "min_molecules_per_assay exceeds max_molecules_per_assay");
  }
  if (spec.max_molecules_per_assay > spec.molecule_pool) {
    throw Error(ErrorCode::kInvalidSpec,
                "max_molecules_per_assay exceeds molecule_pool");
  }
  if (spec.measurement_types.empty()) {
    throw Error(ErrorCode::kInvalidSpec, "measurement_types is empty");
  }
  for (const double p:
       { spec.p_inequality, spec.p_missing_value, spec.p_missing_smiles,
         spec.p_illegal_smiles, spec.p_other_unit, spec.p_corrupt_row,
         spec.p_respell, spec.p_missing_target_info }) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::kInvalidSpec, "probabilities must lie in [0, 1]");
    }
  }
}

std::string generate_synthetic_dump(const SyntheticSpec &spec,
                                    std::uint64_t seed) {
  validate(spec);
  Rng rng(seed);

  const std::vector<PoolMolecule> pool = build_pool(spec, rng);

  std::vector<Target> targets;
  for (int t = 0; t < spec.n_targets; ++t) {
    Target target;
    target.id = "CHEMBL" + std::to_string(200000 + t);
    if (!rng.chance(spec.p_missing_target_info)) {
      std::string seq;
      const int len = rng.between(40, 120);
      for (int i = 0; i < len; ++i) {
        seq += kAminoAcids[rng.below(kAminoAcids.size())];
      }
      target.sequence = std::move(seq);
    }
    if (!rng.chance(spec.p_missing_target_info)) {
      target.class_path = rng.pick(kClassPaths);
    }
    targets.push_back(std::move(target));
  }

  std::ostringstream out;
  std::int64_t activity_id = 100000;
  for (int a = 0; a < spec.n_assays; ++a) {
    const std::string assay_id = "CHEMBL" + std::to_string(1000000 + a);
    const std::string type = rng.pick(spec.measurement_types);
    const Target &target = targets[rng.below(targets.size())];
    const std::optional<int> confidence =
        rng.chance(0.02) ? std::nullopt
                         : std::optional<int>(static_cast<int>(
                             weighted(rng, kConfidenceWeights)));
    const std::optional<std::string> target_type =
        rng.chance(0.02) ? std::nullopt
                         : std::optional<std::string>(
                             kTargetTypes[weighted(rng, kTargetTypeWeights)]);
    const double assay_shift = 0.5 * rng.normal();

    const int n = rng.between(spec.min_molecules_per_assay,
                              spec.max_molecules_per_assay);
    std::set<std::size_t> chosen;
    while (static_cast<int>(chosen.size()) < n) {
      chosen.insert(rng.below(pool.size()));
    }

    for (const std::size_t m: chosen) {
      activity_id += 1 + static_cast<std::int64_t>(rng.below(3));
      RawActivityRecord r;
      r.activity_id = activity_id;
      r.assay_id = assay_id;
      r.standard_type = type;
      r.confidence_score = confidence;
      r.target_type = target_type;
      r.target_id = target.id;
      r.protein_sequence = target.sequence;
      r.protein_class_path = target.class_path;

      if (rng.chance(spec.p_missing_smiles)) {
        r.smiles.reset();
      } else if (rng.chance(spec.p_illegal_smiles)) {
        r.smiles = rng.pick(kIllegalSmiles);
      } else if (rng.chance(spec.p_respell)) {
        r.smiles = respell(pool[m].smiles, rng);
      } else {
        r.smiles = pool[m].smiles;
      }

      if (rng.chance(spec.p_inequality)) {
        r.standard_relation = rng.pick(kInequalities);
      } else {
        r.standard_relation = rng.chance(0.1) ? "~" : "=";
      }

      const double pvalue = std::clamp(
          pool[m].potency + assay_shift + 0.25 * rng.normal(), 2.5, 11.0);
      double nanomolar = std::pow(10.0, 9.0 - pvalue);
      if (rng.chance(spec.p_other_unit)) {
        if (rng.chance(0.5)) {
          r.standard_units = "%";
          nanomolar = 100.0 * rng.uniform();
        }
      } else if (rng.chance(0.3)) {
        r.standard_units = "uM";
        nanomolar /= 1000.0;
      } else {
        r.standard_units = "nM";
      }
      if (!rng.chance(spec.p_missing_value)) {
        r.standard_value = round_significant(nanomolar, 4);
      }

      ordered_json row = record_to_json(r);
      if (rng.chance(spec.p_corrupt_row)) {
        row["standard_value"] = "n/a";
      }
      out << row.dump() << '\n';
    }
  }
  return out.str();
}

void generate_synthetic_source(const SyntheticSpec &spec, std::uint64_t seed,
                               const std::filesystem::path &path) {
  const std::string content = generate_synthetic_dump(spec, seed);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
}

}  // namespace curator::ingest
