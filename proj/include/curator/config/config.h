#ifndef CURATOR_CONFIG_CONFIG_H_
#define CURATOR_CONFIG_CONFIG_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "curator/curation/curation.h"
#include "curator/ingest/ingest.h"
#include "curator/split/split.h"
#include "curator/types.h"

namespace curator::config {

struct UncertaintyConfig {
  bool average_multiple = true;
  curation::DeltaMap delta_map = curation::default_delta_map();

  bool operator==(const UncertaintyConfig &) const = default;
};

// A complete curation recipe. JSON keys follow the usual curator layout:
//
//   task, chembl, source_kind, save_dir, dataset_name,
//   filter.assay_filter.{measurement_type, assay_value_units,
//       molecules_number, confidence_score, target_type}
//   filter.sample_filter.{filter_none, smile_exist, smile_legal,
//       value_relation}
//   filter.{preset, measurement_type}   (instead of the two above)
//   uncertainty.{multiple_measurement_average, uncertainty_delta,
//       binary_threshold.{lower_bound, upper_bound, fix_value}}
//   split.domain.{domain_generate_field, domain_name, sort_func, sort_order}
//   split.fractions.{train_fraction_ood, val_fraction_ood,
//       IID_train_sample_fractions, IID_val_sample_fractions}
//   split.seed
//
// Required: task, filter, split.domain.domain_name. A null
// molecules_number, confidence_score or target_type means unrestricted.
struct CurationConfig {
  Task task = Task::kLbap;
  std::optional<std::filesystem::path> source;
  std::optional<ingest::SourceKind> source_kind;  // inferred when absent
  std::filesystem::path save_dir = "data";
  std::string dataset_name;  // derived when absent
  curation::NoiseFilterConfig noise;
  UncertaintyConfig uncertainty;
  curation::ThresholdRule threshold;
  split::DomainSpec domain;
  split::SplitConfig split;

  bool operator==(const CurationConfig &) const = default;
};

// Throws Error(kConfigSyntax | kUnknownKey | kMissingKey |
// kInvariantViolation | kIncompatibleCombination) with the offending key in
// the message.
CurationConfig parse_config(std::string_view text);
CurationConfig parse_config_file(const std::filesystem::path &path);

// Every invariant parse_config enforces, for configs built in code.
void validate(const CurationConfig &cfg);

nlohmann::ordered_json to_json(const CurationConfig &cfg);
std::string serialize(const CurationConfig &cfg);

// SHA-256 over the serialization minus chembl and save_dir, which locate
// inputs and outputs without changing the dataset.
std::string config_digest(const CurationConfig &cfg);

// .db / .sqlite / .sqlite3 are relational exports; anything else is a flat
// dump.
ingest::SourceKind infer_source_kind(const std::filesystem::path &path);

// --- presets -----------------------------------------------------------

struct PresetId {
  Task task;
  curation::NoiseLevel level;
  std::string measurement_type;  // IC50, EC50, Ki or Potency
  split::DomainKind domain;

  bool operator==(const PresetId &) const = default;
};

extern const std::vector<std::string> kPresetMeasurementTypes;

// Throws Error(kIncompatibleCombination) for lbap with a protein domain.
CurationConfig resolve_preset(const PresetId &id);

// All 96 compatible combinations in a fixed order: task, level,
// measurement type, domain kind.
std::vector<PresetId> all_presets();

// "lbap-core-ic50-assay", "sbap-general-ki-protein-family".
std::string dataset_name(const PresetId &id);

// "sbap,general,Ki,protein_family" (case-insensitive on input).
std::string preset_spec(const PresetId &id);
PresetId parse_preset_spec(std::string_view text);

// Accepts either preset_spec or dataset_name form.
PresetId parse_preset(std::string_view text);

}  // namespace curator::config

#endif  // CURATOR_CONFIG_CONFIG_H_
