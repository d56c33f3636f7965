// ChEMBL 29 SQLite adapter. The assay/molecule/target join happens inside
// one ordered query that is stepped row by row; only the small protein
// classification tree is held in memory.
//
// Column mapping: standard_value, standard_units, standard_relation and
// standard_type come from the standardized activity columns; assay_id and
// target_id are the assay and target ChEMBL identifiers.

#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include <sqlite3.h>

#include "curator/error.h"
#include "internal.h"

namespace curator::ingest::internal {
namespace {

struct DbCloser {
  void operator()(sqlite3 *db) const { sqlite3_close(db); }
};
struct StmtFinalizer {
  void operator()(sqlite3_stmt *stmt) const { sqlite3_finalize(stmt); }
};
using DbPtr = std::unique_ptr<sqlite3, DbCloser>;
using StmtPtr = std::unique_ptr<sqlite3_stmt, StmtFinalizer>;

const std::map<std::string, std::vector<std::string>> kRequiredSchema = {
  { "activities",
    { "activity_id", "assay_id", "molregno", "standard_relation",
      "standard_value", "standard_units", "standard_type" } },
  { "assays", { "assay_id", "chembl_id", "tid", "confidence_score" } },
  { "compound_structures", { "molregno", "canonical_smiles" } },
  { "target_dictionary", { "tid", "target_type", "chembl_id" } },
  { "target_components", { "tid", "component_id" } },
  { "component_sequences", { "component_id", "sequence" } },
  { "component_class", { "component_id", "protein_class_id" } },
  { "protein_classification",
    { "protein_class_id", "parent_id", "pref_name", "class_level" } },
};

DbPtr open_db(const std::filesystem::path &path) {
  sqlite3 *raw = nullptr;
  const int rc = sqlite3_open_v2(path.c_str(), &raw, SQLITE_OPEN_READONLY,
                                 nullptr);
  DbPtr db(raw);
  if (rc != SQLITE_OK) {
    throw Error(ErrorCode::kMissingFile,
                "cannot open SQLite export " + path.string() + ": "
                    + (raw != nullptr ? sqlite3_errmsg(raw) : "unknown"));
  }
  return db;
}

StmtPtr prepare(sqlite3 *db, const std::string &sql) {
  sqlite3_stmt *raw = nullptr;
  if (sqlite3_prepare_v2(db, sql.c_str(), -1, &raw, nullptr) != SQLITE_OK) {
    throw Error(ErrorCode::kMalformedSchema,
                std::string("SQLite error: ") + sqlite3_errmsg(db));
  }
  return StmtPtr(raw);
}

std::optional<std::string> column_text(sqlite3_stmt *stmt, int col) {
  if (sqlite3_column_type(stmt, col) == SQLITE_NULL) {
    return std::nullopt;
  }
  const auto *text =
      reinterpret_cast<const char *>(sqlite3_column_text(stmt, col));
  return std::string(text, sqlite3_column_bytes(stmt, col));
}

class RelationalStream: public RecordStream {
public:
  RelationalStream(const std::filesystem::path &path, Task task)
      : db_(open_db(path)), task_(task) {
    if (task_ == Task::kSbap) {
      load_classification();
    }
    const std::string protein_columns =
        task_ == Task::kSbap
            ? "(SELECT seq.sequence FROM target_components tc"
              " JOIN component_sequences seq"
              " ON seq.component_id = tc.component_id"
              " WHERE tc.tid = td.tid ORDER BY tc.component_id LIMIT 1),"
              " (SELECT MIN(cc.protein_class_id) FROM target_components tc"
              " JOIN component_class cc ON cc.component_id = tc.component_id"
              " WHERE tc.tid = td.tid)"
            : "NULL, NULL";
    stmt_ = prepare(
        db_.get(),
        "SELECT act.activity_id, ass.chembl_id, cs.canonical_smiles,"
        " act.standard_type, act.standard_value, act.standard_units,"
        " act.standard_relation, ass.confidence_score, td.target_type,"
        " td.chembl_id, "
            + protein_columns
            + " FROM activities act"
              " JOIN assays ass ON ass.assay_id = act.assay_id"
              " LEFT JOIN compound_structures cs ON cs.molregno = act.molregno"
              " LEFT JOIN target_dictionary td ON td.tid = ass.tid"
              " ORDER BY act.activity_id");
  }

  std::optional<RawActivityRecord> next() override {
    for (;;) {
      const int rc = sqlite3_step(stmt_.get());
      if (rc == SQLITE_DONE) {
        return std::nullopt;
      }
      if (rc != SQLITE_ROW) {
        throw Error(ErrorCode::kIo, std::string("SQLite read failed: ")
                                        + sqlite3_errmsg(db_.get()));
      }
      ++row_no_;
      ++report_.rows_read;
      const std::int64_t id = sqlite3_column_int64(stmt_.get(), 0);
      try {
        return decode(id);
      } catch (const DecodeError &e) {
        report_.skip(id, row_no_, e.what());
      }
    }
  }

private:
  RawActivityRecord decode(std::int64_t id) {
    sqlite3_stmt *s = stmt_.get();
    RawActivityRecord r;
    r.activity_id = id;
    auto assay = column_text(s, 1);
    if (!assay) {
      throw DecodeError("bad_assay_id");
    }
    r.assay_id = std::move(*assay);
    r.smiles = column_text(s, 2);
    if (r.smiles && r.smiles->empty()) {
      r.smiles.reset();
    }
    auto type = column_text(s, 3);
    if (!type) {
      throw DecodeError("bad_standard_type");
    }
    r.standard_type = std::move(*type);

    switch (sqlite3_column_type(s, 4)) {
    case SQLITE_NULL:
      break;
    case SQLITE_INTEGER:
    case SQLITE_FLOAT:
      r.standard_value = sqlite3_column_double(s, 4);
      break;
    default: {
      const std::string text = *column_text(s, 4);
      double v = 0;
      const auto [ptr, ec] =
          std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw DecodeError("bad_standard_value");
      }
      r.standard_value = v;
    }
    }
    if (r.standard_value && !std::isfinite(*r.standard_value)) {
      throw DecodeError("bad_standard_value");
    }

    r.standard_units = column_text(s, 5);
    r.standard_relation = column_text(s, 6);
    if (sqlite3_column_type(s, 7) != SQLITE_NULL) {
      if (sqlite3_column_type(s, 7) != SQLITE_INTEGER) {
        throw DecodeError("bad_confidence_score");
      }
      r.confidence_score = sqlite3_column_int(s, 7);
    }
    r.target_type = column_text(s, 8);
    r.target_id = column_text(s, 9);
    if (task_ == Task::kSbap) {
      r.protein_sequence = column_text(s, 10);
      if (sqlite3_column_type(s, 11) != SQLITE_NULL) {
        r.protein_class_path = class_path(sqlite3_column_int64(s, 11));
      }
    }
    return r;
  }

  void load_classification() {
    StmtPtr q = prepare(db_.get(),
                        "SELECT protein_class_id, parent_id, pref_name,"
                        " class_level FROM protein_classification");
    while (sqlite3_step(q.get()) == SQLITE_ROW) {
      ClassNode node;
      node.parent = sqlite3_column_type(q.get(), 1) == SQLITE_NULL
                        ? -1
                        : sqlite3_column_int64(q.get(), 1);
      node.name = column_text(q.get(), 2).value_or("");
      node.level = sqlite3_column_int(q.get(), 3);
      classes_.emplace(sqlite3_column_int64(q.get(), 0), std::move(node));
    }
  }

  // Root-first names; the level-0 "Protein class" root is omitted so the
  // first element is the top-level family.
  std::optional<std::vector<std::string>> class_path(std::int64_t id) const {
    std::vector<std::string> path;
    std::set<std::int64_t> seen;
    while (id >= 0 && seen.insert(id).second) {
      const auto it = classes_.find(id);
      if (it == classes_.end()) {
        break;
      }
      if (it->second.level > 0) {
        path.push_back(it->second.name);
      }
      id = it->second.parent;
    }
    if (path.empty()) {
      return std::nullopt;
    }
    return std::vector<std::string>(path.rbegin(), path.rend());
  }

  struct ClassNode {
    std::int64_t parent;
    std::string name;
    int level;
  };

  DbPtr db_;
  StmtPtr stmt_;
  Task task_;
  std::int64_t row_no_ = 0;
  std::map<std::int64_t, ClassNode> classes_;
};

}  // namespace

void check_relational_schema(const std::filesystem::path &path) {
  DbPtr db = open_db(path);
  for (const auto &[table, columns]: kRequiredSchema) {
    sqlite3_stmt *raw = nullptr;
    if (sqlite3_prepare_v2(db.get(),
                           ("PRAGMA table_info(" + table + ")").c_str(), -1,
                           &raw, nullptr)
        != SQLITE_OK) {
      throw Error(ErrorCode::kMalformedSchema,
                  path.string() + " is not a readable SQLite database");
    }
    StmtPtr info(raw);
    std::set<std::string> present;
    int rc;
    while ((rc = sqlite3_step(info.get())) == SQLITE_ROW) {
      present.insert(*column_text(info.get(), 1));
    }
    if (rc != SQLITE_DONE) {
      throw Error(ErrorCode::kMalformedSchema,
                  path.string() + " is not a readable SQLite database");
    }
    if (present.empty()) {
      throw Error(ErrorCode::kMalformedSchema,
                  path.string() + ": missing table '" + table + "'");
    }
    for (const std::string &col: columns) {
      if (present.count(col) == 0) {
        throw Error(ErrorCode::kMalformedSchema,
                    path.string() + ": missing column '" + table + "."
                        + col + "'");
      }
    }
  }
}

std::unique_ptr<RecordStream>
open_relational_export(const std::filesystem::path &path, Task task) {
  return std::make_unique<RelationalStream>(path, task);
}

}  // namespace curator::ingest::internal
