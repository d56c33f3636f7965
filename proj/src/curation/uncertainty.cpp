#include <cmath>

#include "curator/curation/curation.h"
#include "curator/error.h"

namespace curator::curation {

DeltaMap default_delta_map() {
  return { { "<", -1 }, { "<=", -1 }, { ">", 1 }, { ">=", 1 } };
}

double offset_uncertain(double value, std::string_view relation,
                        const DeltaMap &delta_map) {
  if (relation == "=" || relation == "~") {
    return value;
  }
  const auto it = delta_map.find(relation);
  if (it == delta_map.end()) {
    throw Error(ErrorCode::kUnknownRelation,
                "no offset defined for relation '" + std::string(relation)
                    + "'");
  }
  return value * std::pow(10.0, it->second);
}

double to_pvalue(double value, std::string_view units) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kNonPositiveValue,
                "activity value must be positive, got "
                    + std::to_string(value));
  }
  if (units == "nM") {
    return 9.0 - std::log10(value);
  }
  if (units == "uM") {
    return 9.0 - std::log10(value * 1000.0);
  }
  throw Error(ErrorCode::kUnknownUnit,
              "cannot convert unit '" + std::string(units) + "' to molar");
}

std::vector<MergedSample> score_records(std::span<const RawActivityRecord> records,
                                        Task task, const MoleculeTable &molecules,
                                        const DeltaMap &delta_map,
                                        FilterReport *report) {
  std::vector<MergedSample> out;
  out.reserve(records.size());
  for (const RawActivityRecord &r: records) {
    const MoleculeInfo *info = r.smiles ? molecules.find(*r.smiles) : nullptr;
    if (info == nullptr || !info->legal || !r.standard_value
        || !r.standard_units || !r.standard_relation
        || *r.standard_value <= 0
        || (*r.standard_units != "nM" && *r.standard_units != "uM")) {
      if (report != nullptr) {
        ++report->dropped["unscorable"];
        --report->output_count;
      }
      continue;
    }
    MergedSample s;
    s.molecule_key = info->canonical_key;
    s.smiles = info->canonical_key;
    s.input_key = s.molecule_key;
    if (task == Task::kSbap) {
      s.target_id = r.target_id;
      s.protein_sequence = r.protein_sequence;
      s.protein_class_path = r.protein_class_path;
      s.input_key += ' ';
      s.input_key += r.target_id.value_or("");
    }
    s.pvalue = to_pvalue(
        offset_uncertain(*r.standard_value, *r.standard_relation, delta_map),
        *r.standard_units);
    s.n_measurements = 1;
    s.assay_ids = { r.assay_id };
    s.first_activity_id = r.activity_id;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace curator::curation
