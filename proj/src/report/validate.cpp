#include <fstream>
#include <map>
#include <set>

#include "curator/error.h"
#include "curator/report/report.h"

namespace curator::report {

using nlohmann::json;
namespace fs = std::filesystem;
using split::SplitName;

namespace {

json read_json_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "missing " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kMalformedSchema,
                path.string() + ": " + e.what());
  }
}

struct Line {
  std::string input;  // smiles, plus target for sbap
  std::string domain_key;
  int domain_id = 0;
  double pvalue = 0;
  int label = 0;
};

}  // namespace

ValidationReport validate_dataset_dir(const fs::path &dir) {
  ValidationReport report;
  auto fail = [&](std::string message) {
    report.failures.push_back(std::move(message));
  };

  const json meta = read_json_file(dir / "metadata.json");
  double threshold = 0;
  bool merged = true;
  std::string name;
  json counts;
  try {
    threshold = meta.at("threshold").get<double>();
    merged = meta.at("multiple_measurement_average").get<bool>();
    name = meta.at("dataset_name").get<std::string>();
    counts = meta.at("counts");
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kMalformedSchema,
                "metadata.json: " + std::string(e.what()));
  }

  std::array<std::vector<Line>, 5> lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string split(split::split_name(split::kAllSplits[i]));
    const fs::path path = dir / (split + ".jsonl");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kMissingFile, "missing " + path.string());
    }
    std::string text;
    std::int64_t line_no = 0;
    while (std::getline(in, text)) {
      ++line_no;
      try {
        const json j = json::parse(text);
        Line l;
        l.input = j.at("smiles").get<std::string>();
        if (const auto t = j.find("target_id"); t != j.end() && t->is_string()) {
          l.input += " " + t->get<std::string>();
        }
        l.domain_key = j.at("domain_key").get<std::string>();
        l.domain_id = j.at("domain_id").get<int>();
        l.pvalue = j.at("pvalue").get<double>();
        l.label = j.at("label").get<int>();
        lines[i].push_back(std::move(l));
      } catch (const json::exception &e) {
        fail(split + ".jsonl line " + std::to_string(line_no)
             + " is malformed: " + e.what());
      }
    }
    const auto expected = counts.find(split);
    if (expected == counts.end() || !expected->is_number_integer()
        || expected->get<std::int64_t>()
               != static_cast<std::int64_t>(lines[i].size())) {
      fail("metadata count for " + split + " does not match "
           + std::to_string(lines[i].size()) + " lines");
    }
  }

  // Domain id <-> key must be a bijection over the whole dataset.
  std::map<int, std::string> key_of;
  std::map<std::string, int> id_of;
  for (const auto &split: lines) {
    for (const Line &l: split) {
      const auto [k, new_id] = key_of.emplace(l.domain_id, l.domain_key);
      const auto [i, new_key] = id_of.emplace(l.domain_key, l.domain_id);
      if (k->second != l.domain_key || i->second != l.domain_id) {
        fail("domain_id " + std::to_string(l.domain_id) + " and domain_key '"
             + l.domain_key + "' are inconsistent");
        break;
      }
    }
  }

  auto keys_of = [&](std::initializer_list<SplitName> names) {
    std::set<std::string> keys;
    for (const SplitName n: names) {
      for (const Line &l: lines[static_cast<std::size_t>(n)]) {
        keys.insert(l.domain_key);
      }
    }
    return keys;
  };
  const std::set<std::string> train_side =
      keys_of({ SplitName::kTrain, SplitName::kIidVal, SplitName::kIidTest });
  const std::set<std::string> ood_val = keys_of({ SplitName::kOodVal });
  const std::set<std::string> ood_test = keys_of({ SplitName::kOodTest });
  auto check_disjoint = [&](const std::set<std::string> &a,
                            const std::set<std::string> &b, const char *an,
                            const char *bn) {
    for (const std::string &k: a) {
      if (b.count(k)) {
        fail(std::string("domain '") + k + "' appears in both " + an + " and "
             + bn);
        return;
      }
    }
  };
  check_disjoint(train_side, ood_val, "train-side", "ood_val");
  check_disjoint(train_side, ood_test, "train-side", "ood_test");
  check_disjoint(ood_val, ood_test, "ood_val", "ood_test");

  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const Line &l: lines[i]) {
      if (l.label != (l.pvalue >= threshold ? 1 : 0)) {
        fail("label of " + l.input + " in "
             + std::string(split::split_name(split::kAllSplits[i]))
             + " disagrees with threshold");
        break;
      }
    }
  }

  if (merged) {
    std::set<std::string> inputs;
    for (const auto &split: lines) {
      for (const Line &l: split) {
        if (!inputs.insert(l.input).second) {
          fail("sample " + l.input + " appears more than once");
          break;
        }
      }
    }
  }

  std::array<std::vector<LabeledKey>, 5> labeled;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (const Line &l: lines[i]) {
      labeled[i].push_back({ l.domain_key, l.label });
    }
  }
  report.stats = compute_stats(name, threshold, labeled);
  if (const auto total = meta.find("total_samples");
      total == meta.end() || !total->is_number_integer()
      || total->get<std::int64_t>() != report.stats.total_samples) {
    fail("metadata total_samples does not match the split files");
  }
  if (fs::exists(dir / "stats.json")) {
    StatsReport stored;
    try {
      stored = stats_from_json(read_json_file(dir / "stats.json"));
    } catch (const Error &e) {
      fail(std::string("stats.json unreadable: ") + e.what());
      return report;
    }
    if (!(stored == report.stats)) {
      fail("stats.json does not match a recount of the split files");
    }
  }
  return report;
}

}  // namespace curator::report
