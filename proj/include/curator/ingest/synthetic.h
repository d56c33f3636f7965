#ifndef CURATOR_INGEST_SYNTHETIC_H_
#define CURATOR_INGEST_SYNTHETIC_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "curator/ingest/ingest.h"

namespace curator::ingest {

// Miniature ChEMBL-like source. The knobs control how often each filter
// branch is hit; every relation symbol, both admissible units, all
// confidence scores and several target types appear at default settings.
struct SyntheticSpec {
  int n_assays = 60;
  int min_molecules_per_assay = 5;
  int max_molecules_per_assay = 150;
  std::vector<std::string> measurement_types = { "IC50", "EC50", "Ki",
                                                 "Potency" };
  int n_targets = 12;
  // Distinct molecules to draw from; repeated draws across assays create
  // multiple measurements of one molecule.
  int molecule_pool = 900;

  double p_inequality = 0.2;
  double p_missing_value = 0.03;
  double p_missing_smiles = 0.01;
  double p_illegal_smiles = 0.02;
  double p_other_unit = 0.03;
  double p_corrupt_row = 0.005;
  double p_respell = 0.3;
  double p_missing_target_info = 0.05;

  nlohmann::ordered_json to_json() const;
  static SyntheticSpec from_json(const nlohmann::json &j);
};

// Throws Error(kInvalidSpec) for non-positive counts or bad probabilities.
void validate(const SyntheticSpec &spec);

// Pure function of (spec, seed): the flat-dump file contents.
std::string generate_synthetic_dump(const SyntheticSpec &spec,
                                    std::uint64_t seed);

// Writes generate_synthetic_dump(spec, seed) to `out`.
void generate_synthetic_source(const SyntheticSpec &spec, std::uint64_t seed,
                               const std::filesystem::path &out);

}  // namespace curator::ingest

#endif  // CURATOR_INGEST_SYNTHETIC_H_
