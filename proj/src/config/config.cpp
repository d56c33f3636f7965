#include "curator/config/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "curator/digest.h"
#include "curator/error.h"

namespace curator::config {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Walks one JSON object, handing out members by name. finish() rejects
// whatever was not asked for.
class ObjectReader {
public:
  ObjectReader(const json &j, std::string path): j_(j), path_(std::move(path)) {
    if (!j_.is_object()) {
      throw Error(ErrorCode::kConfigSyntax, where() + " must be an object");
    }
  }

  const json *optional(const std::string &key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const json &required(const std::string &key) {
    const json *v = optional(key);
    if (v == nullptr) {
      throw Error(ErrorCode::kMissingKey,
                  "missing required key '" + child(key) + "'");
    }
    return *v;
  }

  void finish() const {
    for (const auto &[key, value]: j_.items()) {
      if (seen_.count(key) == 0) {
        throw Error(ErrorCode::kUnknownKey, "unknown key '" + child(key) + "'");
      }
    }
  }

  std::string child(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

[[noreturn]] void type_error(const std::string &key, const char *expected) {
  throw Error(ErrorCode::kConfigSyntax,
              "'" + key + "' must be " + expected);
}

std::string as_string(const json &v, const std::string &key) {
  if (!v.is_string()) {
    type_error(key, "a string");
  }
  return v.get<std::string>();
}

bool as_bool(const json &v, const std::string &key) {
  if (!v.is_boolean()) {
    type_error(key, "a boolean");
  }
  return v.get<bool>();
}

double as_number(const json &v, const std::string &key) {
  if (!v.is_number()) {
    type_error(key, "a number");
  }
  return v.get<double>();
}

int as_int(const json &v, const std::string &key) {
  if (!v.is_number_integer()) {
    type_error(key, "an integer");
  }
  return v.get<int>();
}

// A list of strings; a lone string is accepted as a one-element list.
std::set<std::string> as_string_set(const json &v, const std::string &key) {
  std::set<std::string> out;
  if (v.is_string()) {
    out.insert(v.get<std::string>());
    return out;
  }
  if (!v.is_array()) {
    type_error(key, "a list of strings");
  }
  for (const json &item: v) {
    out.insert(as_string(item, key));
  }
  return out;
}

void invariant(bool ok, const std::string &message) {
  if (!ok) {
    throw Error(ErrorCode::kInvariantViolation, message);
  }
}

void read_assay_filter(ObjectReader &r, curation::NoiseFilterConfig &noise) {
  noise.measurement_types =
      as_string_set(r.required("measurement_type"), r.child("measurement_type"));
  if (const json *v = r.optional("assay_value_units")) {
    noise.allowed_units = as_string_set(*v, r.child("assay_value_units"));
  } else {
    noise.allowed_units = { "nM", "uM" };
  }
  if (const json *v = r.optional("molecules_number"); v && !v->is_null()) {
    const std::string key = r.child("molecules_number");
    if (!v->is_array() || v->size() != 2) {
      type_error(key, "a [lower, upper] pair");
    }
    noise.molecules_per_assay =
        curation::MoleculeCountRange { as_int((*v)[0], key), as_int((*v)[1], key) };
  }
  if (const json *v = r.optional("confidence_score"); v && !v->is_null()) {
    noise.min_confidence = as_int(*v, r.child("confidence_score"));
  }
  if (const json *v = r.optional("target_type"); v && !v->is_null()) {
    noise.allowed_target_types = as_string_set(*v, r.child("target_type"));
  }
}

void read_sample_filter(ObjectReader &r, curation::NoiseFilterConfig &noise) {
  if (const json *v = r.optional("filter_none")) {
    noise.require_value = as_bool(*v, r.child("filter_none"));
  }
  bool smile_exist = true;
  if (const json *v = r.optional("smile_exist")) {
    smile_exist = as_bool(*v, r.child("smile_exist"));
  }
  if (const json *v = r.optional("smile_legal")) {
    noise.require_legal_smiles = as_bool(*v, r.child("smile_legal"));
  }
  invariant(smile_exist || !noise.require_legal_smiles,
            "filter.sample_filter.smile_legal requires smile_exist");
  noise.allowed_relations =
      as_string_set(r.required("value_relation"), r.child("value_relation"));
}

void read_filter(const json &j, CurationConfig &cfg) {
  ObjectReader r(j, "filter");
  const json *preset = r.optional("preset");
  if (preset != nullptr) {
    const std::string level_text = as_string(*preset, "filter.preset");
    const auto level = curation::parse_noise_level(level_text);
    if (!level) {
      throw Error(ErrorCode::kInvariantViolation,
                  "filter.preset must be core, refined or general, got '"
                      + level_text + "'");
    }
    const std::string mt =
        as_string(r.required("measurement_type"), "filter.measurement_type");
    cfg.noise = curation::noise_preset(*level, mt);
  } else {
    ObjectReader assay(r.required("assay_filter"), "filter.assay_filter");
    read_assay_filter(assay, cfg.noise);
    assay.finish();
    ObjectReader sample(r.required("sample_filter"), "filter.sample_filter");
    read_sample_filter(sample, cfg.noise);
    sample.finish();
  }
  r.finish();
}

void read_uncertainty(const json &j, CurationConfig &cfg) {
  ObjectReader r(j, "uncertainty");
  if (const json *v = r.optional("multiple_measurement_average")) {
    cfg.uncertainty.average_multiple =
        as_bool(*v, "uncertainty.multiple_measurement_average");
  }
  if (const json *v = r.optional("uncertainty_delta")) {
    if (!v->is_object()) {
      type_error("uncertainty.uncertainty_delta", "an object");
    }
    cfg.uncertainty.delta_map.clear();
    for (const auto &[rel, delta]: v->items()) {
      cfg.uncertainty.delta_map[rel] =
          as_int(delta, "uncertainty.uncertainty_delta." + rel);
    }
  }
  if (const json *v = r.optional("binary_threshold")) {
    ObjectReader t(*v, "uncertainty.binary_threshold");
    if (const json *x = t.optional("lower_bound")) {
      cfg.threshold.lower = as_number(*x, t.child("lower_bound"));
    }
    if (const json *x = t.optional("upper_bound")) {
      cfg.threshold.upper = as_number(*x, t.child("upper_bound"));
    }
    if (const json *x = t.optional("fix_value")) {
      cfg.threshold.fix = as_number(*x, t.child("fix_value"));
    }
    t.finish();
  }
  r.finish();
}

void read_split(const json &j, CurationConfig &cfg) {
  ObjectReader r(j, "split");
  ObjectReader d(r.required("domain"), "split.domain");
  const std::string name =
      as_string(d.required("domain_name"), "split.domain.domain_name");
  const auto kind = split::parse_domain_kind(name);
  if (!kind) {
    throw Error(ErrorCode::kInvariantViolation,
                "split.domain.domain_name '" + name + "' is not one of assay, "
                "scaffold, size, protein, protein_family");
  }
  cfg.domain = split::DomainSpec::for_kind(*kind);
  if (const json *v = d.optional("domain_generate_field")) {
    const std::string field =
        as_string(*v, "split.domain.domain_generate_field");
    invariant(field == split::domain_field_name(*kind),
              "split.domain.domain_generate_field '" + field
                  + "' does not match domain '" + name + "' (expected '"
                  + std::string(split::domain_field_name(*kind)) + "')");
  }
  if (const json *v = d.optional("sort_func")) {
    const std::string text = as_string(*v, "split.domain.sort_func");
    const auto desc = split::parse_descriptor(text);
    invariant(desc.has_value(), "split.domain.sort_func '" + text
                                    + "' is not domain_capacity or "
                                      "molecular_size");
    cfg.domain.descriptor = *desc;
  }
  if (const json *v = d.optional("sort_order")) {
    const std::string text = as_string(*v, "split.domain.sort_order");
    const auto order = split::parse_sort_order(text);
    invariant(order.has_value(), "split.domain.sort_order '" + text
                                     + "' is not descending or ascending");
    cfg.domain.sort_order = *order;
  }
  d.finish();

  if (const json *v = r.optional("fractions")) {
    ObjectReader f(*v, "split.fractions");
    const std::pair<const char *, double *> fields[] = {
      { "train_fraction_ood", &cfg.split.train_fraction_ood },
      { "val_fraction_ood", &cfg.split.val_fraction_ood },
      { "IID_train_sample_fractions", &cfg.split.iid_train_fraction },
      { "IID_val_sample_fractions", &cfg.split.iid_val_fraction },
    };
    for (const auto &[key, target]: fields) {
      if (const json *x = f.optional(key)) {
        *target = as_number(*x, f.child(key));
      }
    }
    f.finish();
  }
  if (const json *v = r.optional("seed")) {
    if (!v->is_number_unsigned()) {
      type_error("split.seed", "a non-negative integer");
    }
    cfg.split.seed = v->get<std::uint64_t>();
  }
  r.finish();
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string default_dataset_name(const CurationConfig &cfg) {
  std::string level = "custom";
  if (cfg.noise.measurement_types.size() == 1) {
    const std::string &mt = *cfg.noise.measurement_types.begin();
    for (const auto l: { curation::NoiseLevel::kCore,
                         curation::NoiseLevel::kRefined,
                         curation::NoiseLevel::kGeneral }) {
      if (curation::noise_preset(l, mt) == cfg.noise) {
        level = curation::noise_level_name(l);
      }
    }
  }
  std::string types;
  for (const std::string &mt: cfg.noise.measurement_types) {
    types += (types.empty() ? "" : "_") + lower(mt);
  }
  std::string domain(split::domain_kind_name(cfg.domain.kind));
  std::replace(domain.begin(), domain.end(), '_', '-');
  return std::string(task_name(cfg.task)) + "-" + level + "-" + types + "-"
         + domain;
}

template <class T>
ordered_json nullable(const std::optional<T> &v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ingest::SourceKind infer_source_kind(const std::filesystem::path &path) {
  const std::string ext = lower(path.extension().string());
  if (ext == ".db" || ext == ".sqlite" || ext == ".sqlite3") {
    return ingest::SourceKind::kRelationalExport;
  }
  return ingest::SourceKind::kFlatDump;
}

void validate(const CurationConfig &cfg) {
  curation::validate(cfg.noise);
  for (const std::string &rel: cfg.noise.allowed_relations) {
    invariant(rel == "=" || rel == "~" || cfg.uncertainty.delta_map.count(rel),
              "value_relation '" + rel + "' has no uncertainty_delta entry");
  }
  for (const auto &[rel, delta]: cfg.uncertainty.delta_map) {
    invariant(curation::kRelationSymbols.count(rel) && rel != "=" && rel != "~",
              "uncertainty_delta key '" + rel
                  + "' is not an inequality relation");
  }
  for (const std::string &unit: cfg.noise.allowed_units) {
    invariant(unit == "nM" || unit == "uM",
              "assay_value_units '" + unit + "' cannot be converted to molar");
  }
  const curation::ThresholdRule &t = cfg.threshold;
  invariant(t.lower <= t.fix && t.fix <= t.upper,
            "binary_threshold requires lower_bound <= fix_value <= upper_bound");
  split::validate(cfg.domain, cfg.task);
  split::validate(cfg.split);
  invariant(!cfg.dataset_name.empty()
                && cfg.dataset_name.find_first_of("/\\") == std::string::npos
                && cfg.dataset_name != "." && cfg.dataset_name != "..",
            "dataset_name must be a plain directory name");
}

CurationConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kConfigSyntax, e.what());
  }
  CurationConfig cfg;
  ObjectReader r(j, "");
  const std::string task = as_string(r.required("task"), "task");
  const auto parsed_task = parse_task(task);
  if (!parsed_task) {
    throw Error(ErrorCode::kInvariantViolation,
                "task must be lbap or sbap, got '" + task + "'");
  }
  cfg.task = *parsed_task;
  if (const json *v = r.optional("chembl"); v && !v->is_null()) {
    cfg.source = as_string(*v, "chembl");
  }
  if (const json *v = r.optional("source_kind"); v && !v->is_null()) {
    const std::string kind = as_string(*v, "source_kind");
    cfg.source_kind = ingest::parse_source_kind(kind);
    invariant(cfg.source_kind.has_value(),
              "source_kind '" + kind + "' is not relational_export, "
                                       "flat_dump or synthetic");
  }
  if (const json *v = r.optional("save_dir")) {
    cfg.save_dir = as_string(*v, "save_dir");
  }
  read_filter(r.required("filter"), cfg);
  if (const json *v = r.optional("uncertainty")) {
    read_uncertainty(*v, cfg);
  }
  read_split(r.required("split"), cfg);
  if (const json *v = r.optional("dataset_name")) {
    cfg.dataset_name = as_string(*v, "dataset_name");
  } else {
    cfg.dataset_name = default_dataset_name(cfg);
  }
  r.finish();
  validate(cfg);
  return cfg;
}

CurationConfig parse_config_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kConfigSyntax,
                "cannot read config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

ordered_json to_json(const CurationConfig &cfg) {
  const curation::NoiseFilterConfig &n = cfg.noise;
  ordered_json j;
  j["task"] = task_name(cfg.task);
  j["chembl"] = cfg.source ? ordered_json(cfg.source->string())
                           : ordered_json(nullptr);
  j["source_kind"] = cfg.source_kind
                         ? ordered_json(ingest::source_kind_name(*cfg.source_kind))
                         : ordered_json(nullptr);
  j["save_dir"] = cfg.save_dir.string();
  j["dataset_name"] = cfg.dataset_name;

  ordered_json assay;
  assay["measurement_type"] = n.measurement_types;
  assay["assay_value_units"] = n.allowed_units;
  assay["molecules_number"] =
      n.molecules_per_assay
          ? ordered_json::array({ n.molecules_per_assay->min,
                                  n.molecules_per_assay->max })
          : ordered_json(nullptr);
  assay["confidence_score"] = nullable(n.min_confidence);
  assay["target_type"] = nullable(n.allowed_target_types);
  ordered_json sample;
  sample["filter_none"] = n.require_value;
  sample["smile_exist"] = n.require_legal_smiles;
  sample["smile_legal"] = n.require_legal_smiles;
  sample["value_relation"] = n.allowed_relations;
  j["filter"]["assay_filter"] = assay;
  j["filter"]["sample_filter"] = sample;

  ordered_json &u = j["uncertainty"];
  u["multiple_measurement_average"] = cfg.uncertainty.average_multiple;
  u["uncertainty_delta"] = ordered_json::object();
  for (const auto &[rel, delta]: cfg.uncertainty.delta_map) {
    u["uncertainty_delta"][rel] = delta;
  }
  u["binary_threshold"]["lower_bound"] = cfg.threshold.lower;
  u["binary_threshold"]["upper_bound"] = cfg.threshold.upper;
  u["binary_threshold"]["fix_value"] = cfg.threshold.fix;

  ordered_json &s = j["split"];
  s["domain"]["domain_generate_field"] = split::domain_field_name(cfg.domain.kind);
  s["domain"]["domain_name"] = split::domain_kind_name(cfg.domain.kind);
  s["domain"]["sort_func"] = split::descriptor_name(cfg.domain.descriptor);
  s["domain"]["sort_order"] = split::sort_order_name(cfg.domain.sort_order);
  s["fractions"]["train_fraction_ood"] = cfg.split.train_fraction_ood;
  s["fractions"]["val_fraction_ood"] = cfg.split.val_fraction_ood;
  s["fractions"]["IID_train_sample_fractions"] = cfg.split.iid_train_fraction;
  s["fractions"]["IID_val_sample_fractions"] = cfg.split.iid_val_fraction;
  s["seed"] = cfg.split.seed;
  return j;
}

std::string serialize(const CurationConfig &cfg) {
  return to_json(cfg).dump(2) + "\n";
}

std::string config_digest(const CurationConfig &cfg) {
  ordered_json j = to_json(cfg);
  j.erase("chembl");
  j.erase("save_dir");
  return sha256_hex(j.dump());
}

}  // namespace curator::config
