#ifndef CURATOR_CURATION_CURATION_H_
#define CURATOR_CURATION_CURATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "curator/ingest/ingest.h"
#include "curator/types.h"

namespace curator::curation {

using ingest::RawActivityRecord;

// Every relation symbol a record may carry.
extern const std::set<std::string> kRelationSymbols;

struct MoleculeCountRange {
  int min = 1;
  int max = 0;
  bool operator==(const MoleculeCountRange &) const = default;
};

struct NoiseFilterConfig {
  std::set<std::string> measurement_types;
  std::optional<MoleculeCountRange> molecules_per_assay;  // nullopt: any
  std::set<std::string> allowed_units;
  std::optional<int> min_confidence;                      // nullopt: any
  std::optional<std::set<std::string>> allowed_target_types;  // nullopt: any
  std::set<std::string> allowed_relations;
  bool require_value = true;
  bool require_legal_smiles = true;

  bool operator==(const NoiseFilterConfig &) const = default;
};

// Throws Error(kInvariantViolation) naming the broken rule.
void validate(const NoiseFilterConfig &cfg);

enum class NoiseLevel {
  kCore,
  kRefined,
  kGeneral,
};

std::string_view noise_level_name(NoiseLevel level);
std::optional<NoiseLevel> parse_noise_level(std::string_view text);

// The filter matrix for one noise level, restricted to one measurement type.
NoiseFilterConfig noise_preset(NoiseLevel level,
                               const std::string &measurement_type);

// --- molecule legality and keys ----------------------------------------

struct MoleculeInfo {
  bool legal = false;
  std::string canonical_key;  // empty when !legal
  int heavy_atoms = 0;
};

// Parse results for every distinct SMILES string of a record set, computed
// once (in parallel) and shared by filtering and merging.
class MoleculeTable {
public:
  static MoleculeTable build(std::span<const RawActivityRecord> records,
                             int jobs = 1);

  const MoleculeInfo *find(std::string_view smiles) const;
  bool legal(const std::optional<std::string> &smiles) const;

private:
  std::map<std::string, MoleculeInfo, std::less<>> entries_;
};

// --- filters ----------------------------------------------------------

struct AssaySummary {
  std::string measurement_type;
  int molecule_count = 0;
  std::optional<int> confidence_score;
  std::optional<std::string> target_type;
};

bool assay_passes(const AssaySummary &assay, const NoiseFilterConfig &cfg);

// Name of the first sample-level criterion the record fails, if any. In
// sbap mode a record must also carry target id, sequence and class path.
std::optional<std::string_view> sample_rejection(const RawActivityRecord &r,
                                                 const NoiseFilterConfig &cfg,
                                                 bool legal_smiles,
                                                 Task task = Task::kLbap);

bool sample_passes(const RawActivityRecord &r, const NoiseFilterConfig &cfg,
                   bool legal_smiles, Task task = Task::kLbap);

struct FilterReport {
  std::int64_t input_count = 0;
  std::int64_t output_count = 0;
  std::map<std::string, std::int64_t> dropped;

  nlohmann::ordered_json to_json() const;
  static FilterReport from_json(const nlohmann::json &j);
  bool operator==(const FilterReport &) const = default;
};

struct FilterResult {
  std::vector<RawActivityRecord> records;  // survivors, input order
  FilterReport report;
};

// Pass 1 screens samples and tallies distinct surviving molecules per
// assay; pass 2 drops every record of an assay failing assay_passes.
FilterResult apply_filters(std::span<const RawActivityRecord> records,
                           const NoiseFilterConfig &cfg, Task task,
                           const MoleculeTable &molecules);

// --- uncertainty ------------------------------------------------------

using DeltaMap = std::map<std::string, int, std::less<>>;

// {'<': -1, '<=': -1, '>': 1, '>=': 1}
DeltaMap default_delta_map();

// value * 10^delta for inequality relations; unchanged for "=" and "~".
// Throws Error(kUnknownRelation) for symbols absent from delta_map.
double offset_uncertain(double value, std::string_view relation,
                        const DeltaMap &delta_map);

// -log10 of the molar value: 9 - log10(nM). Throws Error(kUnknownUnit) or
// Error(kNonPositiveValue).
double to_pvalue(double value, std::string_view units);

// --- merging and labels -----------------------------------------------

struct MergedSample {
  // Molecule key (lbap) or "molecule_key target_id" (sbap).
  std::string input_key;
  std::string molecule_key;
  std::string smiles;  // canonical SMILES
  std::optional<std::string> target_id;
  std::optional<std::string> protein_sequence;
  std::optional<std::vector<std::string>> protein_class_path;
  double pvalue = 0;
  int n_measurements = 1;
  std::set<std::string> assay_ids;
  // Smallest activity_id among merged records; stable tie-breaker.
  std::int64_t first_activity_id = 0;

  bool operator==(const MergedSample &) const = default;
};

// One sample per filtered record with its offset-resolved pValue. Records
// that cannot be scored (no value/units, or no parseable molecule when the
// filters allowed it through) are dropped and tallied into report.dropped
// under "unscorable".
std::vector<MergedSample> score_records(std::span<const RawActivityRecord> records,
                                        Task task, const MoleculeTable &molecules,
                                        const DeltaMap &delta_map,
                                        FilterReport *report = nullptr);

// Groups by input_key; the group pValue is the n-weighted mean of member
// pValues summed in first_activity_id order, assay_ids is the union. Output
// is sorted by input_key. Groups of one are returned unchanged.
std::vector<MergedSample> merge_measurements(std::vector<MergedSample> samples);

struct ThresholdRule {
  double lower = 4.0;
  double upper = 6.0;
  double fix = 5.0;
  bool operator==(const ThresholdRule &) const = default;
};

double median(std::vector<double> values);

// Median of all pValues when it lies in [lower, upper], else fix. Throws
// Error(kEmptyInput) for an empty list.
double compute_threshold(std::span<const double> pvalues,
                         const ThresholdRule &rule = {});

struct LabeledSample: MergedSample {
  int label = 0;  // 1 = active
  double threshold_used = 0;

  bool operator==(const LabeledSample &) const = default;
};

// Active iff pvalue >= threshold.
std::vector<LabeledSample> assign_labels(const std::vector<MergedSample> &samples,
                                         double threshold);

}  // namespace curator::curation

#endif  // CURATOR_CURATION_CURATION_H_
