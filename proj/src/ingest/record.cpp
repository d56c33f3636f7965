#include <charconv>
#include <cmath>
#include <fstream>

#include "curator/error.h"
#include "curator/ingest/ingest.h"

namespace curator::ingest {

using nlohmann::json;
using nlohmann::ordered_json;

const std::vector<std::string> kRecordFields = {
  "activity_id",     "assay_id",         "smiles",
  "standard_type",   "standard_value",   "standard_units",
  "standard_relation", "confidence_score", "target_type",
  "target_id",       "protein_sequence", "protein_class_path",
};

namespace {

template <class T>
json optional_json(const std::optional<T> &v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::string> optional_string(const json &row, const char *key) {
  const auto it = row.find(key);
  if (it == row.end() || it->is_null()) {
    return std::nullopt;
  }
  if (!it->is_string()) {
    throw DecodeError(std::string("bad_") + key);
  }
  return it->get<std::string>();
}

std::optional<double> parse_double(const std::string &text) {
  double value = 0;
  const char *first = text.data();
  const char *last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

ordered_json record_to_json(const RawActivityRecord &r) {
  ordered_json j;
  j["activity_id"] = r.activity_id;
  j["assay_id"] = r.assay_id;
  j["smiles"] = optional_json(r.smiles);
  j["standard_type"] = r.standard_type;
  j["standard_value"] = optional_json(r.standard_value);
  j["standard_units"] = optional_json(r.standard_units);
  j["standard_relation"] = optional_json(r.standard_relation);
  j["confidence_score"] = optional_json(r.confidence_score);
  j["target_type"] = optional_json(r.target_type);
  j["target_id"] = optional_json(r.target_id);
  j["protein_sequence"] = optional_json(r.protein_sequence);
  j["protein_class_path"] = optional_json(r.protein_class_path);
  return j;
}

RawActivityRecord record_from_json(const json &row) {
  if (!row.is_object()) {
    throw DecodeError("malformed_row");
  }
  RawActivityRecord r;

  const auto id = row.find("activity_id");
  if (id == row.end() || !id->is_number_integer()) {
    throw DecodeError("bad_activity_id");
  }
  r.activity_id = id->get<std::int64_t>();

  auto assay = optional_string(row, "assay_id");
  if (!assay || assay->empty()) {
    throw DecodeError("bad_assay_id");
  }
  r.assay_id = std::move(*assay);

  auto type = optional_string(row, "standard_type");
  if (!type) {
    throw DecodeError("bad_standard_type");
  }
  r.standard_type = std::move(*type);

  r.smiles = optional_string(row, "smiles");
  if (r.smiles && r.smiles->empty()) {
    r.smiles.reset();
  }

  if (const auto v = row.find("standard_value");
      v != row.end() && !v->is_null()) {
    if (v->is_number()) {
      r.standard_value = v->get<double>();
    } else if (v->is_string()) {
      r.standard_value = parse_double(v->get<std::string>());
    }
    if (!r.standard_value || !std::isfinite(*r.standard_value)) {
      throw DecodeError("bad_standard_value");
    }
  }

  r.standard_units = optional_string(row, "standard_units");
  r.standard_relation = optional_string(row, "standard_relation");

  if (const auto c = row.find("confidence_score");
      c != row.end() && !c->is_null()) {
    if (!c->is_number_integer()) {
      throw DecodeError("bad_confidence_score");
    }
    r.confidence_score = c->get<int>();
  }

  r.target_type = optional_string(row, "target_type");
  r.target_id = optional_string(row, "target_id");
  r.protein_sequence = optional_string(row, "protein_sequence");

  if (const auto p = row.find("protein_class_path");
      p != row.end() && !p->is_null()) {
    if (!p->is_array()) {
      throw DecodeError("bad_protein_class_path");
    }
    std::vector<std::string> path;
    for (const json &level: *p) {
      if (!level.is_string()) {
        throw DecodeError("bad_protein_class_path");
      }
      path.push_back(level.get<std::string>());
    }
    if (!path.empty()) {
      r.protein_class_path = std::move(path);
    }
  }
  return r;
}

void IngestReport::skip(std::optional<std::int64_t> activity_id,
                        std::int64_t row, const std::string &reason) {
  ++rows_skipped;
  ++skip_reasons[reason];
  if (issues.size() < 20) {
    issues.push_back({ activity_id, row, reason });
  }
}

ordered_json IngestReport::to_json() const {
  ordered_json j;
  j["rows_read"] = rows_read;
  j["rows_skipped"] = rows_skipped;
  j["skip_reasons"] = ordered_json::object();
  for (const auto &[reason, count]: skip_reasons) {
    j["skip_reasons"][reason] = count;
  }
  return j;
}

void write_flat_dump(const std::vector<RawActivityRecord> &records,
                     const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  for (const RawActivityRecord &r: records) {
    out << record_to_json(r).dump() << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for " + path.string());
  }
}

}  // namespace curator::ingest
