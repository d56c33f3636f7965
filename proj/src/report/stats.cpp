#include <cstdio>
#include <iomanip>
#include <set>
#include <sstream>

#include "curator/error.h"
#include "curator/report/report.h"

namespace curator::report {

using nlohmann::json;
using nlohmann::ordered_json;
using split::SplitName;

namespace {

constexpr const char *kTableSplitLabels[] = { "Train", "ID Val", "ID Test",
                                              "OOD Val", "OOD Test" };

const char *const kCsvHeader =
    "split,domain_count,sample_count,positive_count,negative_count,"
    "positive_ratio,dataset_name,threshold,total_domains,total_samples";

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void malformed(const std::string &what) {
  throw Error(ErrorCode::kMalformedSchema, "malformed stats: " + what);
}

std::optional<std::size_t> split_index(std::string_view name) {
  for (std::size_t i = 0; i < split::kAllSplits.size(); ++i) {
    if (split::split_name(split::kAllSplits[i]) == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<std::string> csv_fields(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

std::int64_t to_int(const std::string &s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) {
    malformed("bad integer '" + s + "'");
  }
  return v;
}

double to_double(const std::string &s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    malformed("bad number '" + s + "'");
  }
  return v;
}

void finish_split(SplitStats &s) {
  s.negative_count = s.sample_count - s.positive_count;
  s.positive_ratio = s.sample_count == 0
                         ? 0.0
                         : static_cast<double>(s.positive_count)
                               / static_cast<double>(s.sample_count);
}

}  // namespace

StatsReport compute_stats(std::string_view dataset_name, double threshold,
                          const std::array<std::vector<LabeledKey>, 5> &splits) {
  StatsReport r;
  r.dataset_name = dataset_name;
  r.threshold = threshold;
  std::set<std::string> all_keys;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    std::set<std::string> keys;
    SplitStats &s = r.splits[i];
    for (const LabeledKey &k: splits[i]) {
      keys.insert(k.domain_key);
      ++s.sample_count;
      s.positive_count += k.label == 1 ? 1 : 0;
    }
    s.domain_count = static_cast<std::int64_t>(keys.size());
    finish_split(s);
    r.total_samples += s.sample_count;
    all_keys.insert(keys.begin(), keys.end());
  }
  r.total_domains = static_cast<std::int64_t>(all_keys.size());
  return r;
}

StatsReport compute_stats(const split::CuratedDataset &dataset) {
  std::array<std::vector<LabeledKey>, 5> keys;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (const split::DomainAnnotatedSample &s: dataset.splits[i]) {
      keys[i].push_back({ s.domain_key, s.label });
    }
  }
  return compute_stats(dataset.dataset_name, dataset.threshold, keys);
}

std::optional<StatsFormat> parse_stats_format(std::string_view text) {
  if (text == "json") {
    return StatsFormat::kJson;
  }
  if (text == "table-text") {
    return StatsFormat::kTableText;
  }
  if (text == "csv") {
    return StatsFormat::kCsv;
  }
  return std::nullopt;
}

ordered_json stats_to_json(const StatsReport &report) {
  ordered_json j;
  j["dataset_name"] = report.dataset_name;
  j["threshold"] = report.threshold;
  j["total_domains"] = report.total_domains;
  j["total_samples"] = report.total_samples;
  j["splits"] = ordered_json::object();
  for (const SplitName name: split::kAllSplits) {
    const SplitStats &s = report.split(name);
    ordered_json &o = j["splits"][std::string(split::split_name(name))];
    o["domain_count"] = s.domain_count;
    o["sample_count"] = s.sample_count;
    o["positive_count"] = s.positive_count;
    o["negative_count"] = s.negative_count;
    o["positive_ratio"] = s.positive_ratio;
  }
  return j;
}

StatsReport stats_from_json(const json &j) {
  try {
    StatsReport r;
    r.dataset_name = j.at("dataset_name").get<std::string>();
    r.threshold = j.at("threshold").get<double>();
    r.total_domains = j.at("total_domains").get<std::int64_t>();
    r.total_samples = j.at("total_samples").get<std::int64_t>();
    for (std::size_t i = 0; i < split::kAllSplits.size(); ++i) {
      const json &o =
          j.at("splits").at(std::string(split::split_name(split::kAllSplits[i])));
      SplitStats &s = r.splits[i];
      s.domain_count = o.at("domain_count").get<std::int64_t>();
      s.sample_count = o.at("sample_count").get<std::int64_t>();
      s.positive_count = o.at("positive_count").get<std::int64_t>();
      s.negative_count = o.at("negative_count").get<std::int64_t>();
      s.positive_ratio = o.at("positive_ratio").get<double>();
    }
    return r;
  } catch (const json::exception &e) {
    malformed(e.what());
  }
}

std::string render_stats_table(const std::vector<StatsReport> &reports) {
  std::vector<std::string> header = { "Data subset", "Pos#", "Neg#" };
  for (const char *label: kTableSplitLabels) {
    header.push_back(std::string(label) + " D#");
    header.push_back(std::string(label) + " C#");
  }
  std::vector<std::vector<std::string>> rows;
  for (const StatsReport &r: reports) {
    std::int64_t pos = 0;
    std::int64_t neg = 0;
    std::vector<std::string> row = { r.dataset_name };
    std::vector<std::string> cells;
    for (const SplitStats &s: r.splits) {
      pos += s.positive_count;
      neg += s.negative_count;
      cells.push_back(std::to_string(s.domain_count));
      cells.push_back(std::to_string(s.sample_count));
    }
    row.push_back(std::to_string(pos));
    row.push_back(std::to_string(neg));
    row.insert(row.end(), cells.begin(), cells.end());
    rows.push_back(std::move(row));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto &row: rows) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string> &cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c]))
            << cells[c];
      }
    }
    out << '\n';
  };
  emit(header);
  for (const auto &row: rows) {
    emit(row);
  }
  return out.str();
}

std::string render_stats(const StatsReport &report, StatsFormat format) {
  switch (format) {
  case StatsFormat::kJson:
    return stats_to_json(report).dump(2) + "\n";
  case StatsFormat::kTableText:
    return render_stats_table({ report });
  case StatsFormat::kCsv: {
    std::string out = std::string(kCsvHeader) + "\n";
    for (const SplitName name: split::kAllSplits) {
      const SplitStats &s = report.split(name);
      out += std::string(split::split_name(name)) + ","
             + std::to_string(s.domain_count) + ","
             + std::to_string(s.sample_count) + ","
             + std::to_string(s.positive_count) + ","
             + std::to_string(s.negative_count) + "," + exact(s.positive_ratio)
             + "," + report.dataset_name + "," + exact(report.threshold) + ","
             + std::to_string(report.total_domains) + ","
             + std::to_string(report.total_samples) + "\n";
    }
    return out;
  }
  }
  return "";
}

StatsReport parse_stats(std::string_view text, StatsFormat format) {
  if (format == StatsFormat::kJson) {
    try {
      return stats_from_json(json::parse(text));
    } catch (const json::parse_error &e) {
      malformed(e.what());
    }
  }
  if (format != StatsFormat::kCsv) {
    malformed("table-text is not machine readable");
  }
  std::istringstream in { std::string(text) };
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    malformed("unexpected csv header");
  }
  StatsReport r;
  std::array<bool, 5> seen {};
  try {
    while (std::getline(in, line)) {
      const std::vector<std::string> f = csv_fields(line);
      if (f.size() != 10) {
        malformed("csv row has " + std::to_string(f.size()) + " fields");
      }
      const auto idx = split_index(f[0]);
      if (!idx || seen[*idx]) {
        malformed("unexpected split '" + f[0] + "'");
      }
      seen[*idx] = true;
      SplitStats &s = r.splits[*idx];
      s.domain_count = to_int(f[1]);
      s.sample_count = to_int(f[2]);
      s.positive_count = to_int(f[3]);
      s.negative_count = to_int(f[4]);
      s.positive_ratio = to_double(f[5]);
      r.dataset_name = f[6];
      r.threshold = to_double(f[7]);
      r.total_domains = to_int(f[8]);
      r.total_samples = to_int(f[9]);
    }
  } catch (const std::logic_error &e) {
    malformed(e.what());
  }
  for (const bool s: seen) {
    if (!s) {
      malformed("csv is missing a split row");
    }
  }
  return r;
}

}  // namespace curator::report
