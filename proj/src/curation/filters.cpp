#include <algorithm>
#include <map>

#include "curator/curation/curation.h"
#include "curator/error.h"

namespace curator::curation {

const std::set<std::string> kRelationSymbols = { "=", "~", ">", "<", ">=",
                                                 "<=" };

void validate(const NoiseFilterConfig &cfg) {
  if (cfg.molecules_per_assay) {
    if (cfg.molecules_per_assay->min < 1) {
      throw Error(ErrorCode::kInvariantViolation,
                  "molecules_number lower bound must be >= 1");
    }
    if (cfg.molecules_per_assay->max < cfg.molecules_per_assay->min) {
      throw Error(ErrorCode::kInvariantViolation,
                  "molecules_number upper bound below lower bound");
    }
  }
  for (const std::string &rel: cfg.allowed_relations) {
    if (kRelationSymbols.count(rel) == 0) {
      throw Error(ErrorCode::kInvariantViolation,
                  "value_relation contains unknown symbol '" + rel + "'");
    }
  }
  if (cfg.measurement_types.empty()) {
    throw Error(ErrorCode::kInvariantViolation, "measurement_type is empty");
  }
}

std::string_view noise_level_name(NoiseLevel level) {
  switch (level) {
  case NoiseLevel::kCore:
    return "core";
  case NoiseLevel::kRefined:
    return "refined";
  case NoiseLevel::kGeneral:
    return "general";
  }
  return "";
}

std::optional<NoiseLevel> parse_noise_level(std::string_view text) {
  for (const NoiseLevel l:
       { NoiseLevel::kCore, NoiseLevel::kRefined, NoiseLevel::kGeneral }) {
    if (noise_level_name(l) == text) {
      return l;
    }
  }
  return std::nullopt;
}

NoiseFilterConfig noise_preset(NoiseLevel level,
                               const std::string &measurement_type) {
  NoiseFilterConfig cfg;
  cfg.measurement_types = { measurement_type };
  cfg.allowed_units = { "nM", "uM" };
  cfg.require_value = true;
  cfg.require_legal_smiles = true;
  switch (level) {
  case NoiseLevel::kCore:
    cfg.molecules_per_assay = MoleculeCountRange { 50, 3000 };
    cfg.min_confidence = 9;
    cfg.allowed_target_types = std::set<std::string> { "SINGLE PROTEIN" };
    cfg.allowed_relations = { "=", "~" };
    break;
  case NoiseLevel::kRefined:
    cfg.molecules_per_assay = MoleculeCountRange { 32, 5000 };
    cfg.min_confidence = 3;
    cfg.allowed_target_types = std::set<std::string> {
      "SINGLE PROTEIN", "PROTEIN COMPLEX", "PROTEIN FAMILY"
    };
    cfg.allowed_relations = { "=", "~", ">=", "<=" };
    break;
  case NoiseLevel::kGeneral:
    cfg.molecules_per_assay = MoleculeCountRange { 10, 5000 };
    cfg.allowed_relations = { "=", "~", ">=", "<=", ">", "<" };
    break;
  }
  return cfg;
}

namespace {

std::optional<std::string_view> assay_rejection(const AssaySummary &assay,
                                                const NoiseFilterConfig &cfg) {
  if (cfg.measurement_types.count(assay.measurement_type) == 0) {
    return "measurement_type";
  }
  if (cfg.molecules_per_assay
      && (assay.molecule_count < cfg.molecules_per_assay->min
          || assay.molecule_count > cfg.molecules_per_assay->max)) {
    return "molecules_number";
  }
  if (cfg.min_confidence
      && (!assay.confidence_score
          || *assay.confidence_score < *cfg.min_confidence)) {
    return "confidence_score";
  }
  if (cfg.allowed_target_types
      && (!assay.target_type
          || cfg.allowed_target_types->count(*assay.target_type) == 0)) {
    return "target_type";
  }
  return std::nullopt;
}

}  // namespace

bool assay_passes(const AssaySummary &assay, const NoiseFilterConfig &cfg) {
  return !assay_rejection(assay, cfg);
}

std::optional<std::string_view> sample_rejection(const RawActivityRecord &r,
                                                 const NoiseFilterConfig &cfg,
                                                 bool legal_smiles, Task task) {
  if (cfg.measurement_types.count(r.standard_type) == 0) {
    return "measurement_type";
  }
  if (cfg.require_value
      && (!r.standard_value || !r.standard_units || !r.standard_relation
          || !r.smiles)) {
    return "missing_value";
  }
  if (r.standard_value && *r.standard_value <= 0) {
    return "non_positive_value";
  }
  if (!r.standard_units || cfg.allowed_units.count(*r.standard_units) == 0) {
    return "units_of_values";
  }
  if (!r.standard_relation
      || cfg.allowed_relations.count(*r.standard_relation) == 0) {
    return "value_relation";
  }
  if (cfg.require_legal_smiles && !legal_smiles) {
    return "legal_smiles";
  }
  if (task == Task::kSbap
      && (!r.target_id || !r.protein_sequence || !r.protein_class_path)) {
    return "missing_target_info";
  }
  return std::nullopt;
}

bool sample_passes(const RawActivityRecord &r, const NoiseFilterConfig &cfg,
                   bool legal_smiles, Task task) {
  return !sample_rejection(r, cfg, legal_smiles, task);
}

nlohmann::ordered_json FilterReport::to_json() const {
  nlohmann::ordered_json j;
  j["input_count"] = input_count;
  j["output_count"] = output_count;
  j["dropped"] = nlohmann::ordered_json::object();
  for (const auto &[criterion, count]: dropped) {
    j["dropped"][criterion] = count;
  }
  return j;
}

FilterReport FilterReport::from_json(const nlohmann::json &j) {
  FilterReport r;
  r.input_count = j.at("input_count").get<std::int64_t>();
  r.output_count = j.at("output_count").get<std::int64_t>();
  for (const auto &[k, v]: j.at("dropped").items()) {
    r.dropped[k] = v.get<std::int64_t>();
  }
  return r;
}

FilterResult apply_filters(std::span<const RawActivityRecord> records,
                           const NoiseFilterConfig &cfg, Task task,
                           const MoleculeTable &molecules) {
  FilterResult out;
  out.report.input_count = static_cast<std::int64_t>(records.size());

  struct AssayTally {
    const RawActivityRecord *first = nullptr;
    std::set<std::string> molecules;
    std::set<std::string> types;
  };
  std::map<std::string, AssayTally> assays;
  std::vector<const RawActivityRecord *> screened;

  for (const RawActivityRecord &r: records) {
    const bool legal = molecules.legal(r.smiles);
    if (const auto why = sample_rejection(r, cfg, legal, task)) {
      ++out.report.dropped[std::string(*why)];
      continue;
    }
    screened.push_back(&r);
    AssayTally &tally = assays[r.assay_id];
    if (tally.first == nullptr || r.activity_id < tally.first->activity_id) {
      tally.first = &r;
    }
    const MoleculeInfo *info = r.smiles ? molecules.find(*r.smiles) : nullptr;
    tally.molecules.insert(info != nullptr && info->legal
                               ? info->canonical_key
                               : r.smiles.value_or(""));
    tally.types.insert(r.standard_type);
  }

  std::map<std::string, std::optional<std::string_view>> verdicts;
  for (const auto &[assay_id, tally]: assays) {
    AssaySummary summary;
    summary.measurement_type = *tally.types.begin();
    summary.molecule_count = static_cast<int>(tally.molecules.size());
    summary.confidence_score = tally.first->confidence_score;
    summary.target_type = tally.first->target_type;
    verdicts[assay_id] = assay_rejection(summary, cfg);
  }

  for (const RawActivityRecord *r: screened) {
    if (const auto why = verdicts[r->assay_id]) {
      ++out.report.dropped[std::string(*why)];
      continue;
    }
    out.records.push_back(*r);
  }
  out.report.output_count = static_cast<std::int64_t>(out.records.size());
  return out;
}

}  // namespace curator::curation
