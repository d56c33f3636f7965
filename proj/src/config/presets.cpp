#include <algorithm>
#include <cctype>

#include "curator/config/config.h"
#include "curator/error.h"

namespace curator::config {

const std::vector<std::string> kPresetMeasurementTypes = { "IC50", "EC50",
                                                           "Ki", "Potency" };

namespace {

constexpr curation::NoiseLevel kLevels[] = { curation::NoiseLevel::kCore,
                                             curation::NoiseLevel::kRefined,
                                             curation::NoiseLevel::kGeneral };

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string> split_on(std::string_view text, char sep,
                                  std::size_t max_parts) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (parts.size() + 1 < max_parts) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      break;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  parts.emplace_back(text.substr(start));
  return parts;
}

[[noreturn]] void bad_preset(std::string_view text, const std::string &why) {
  throw Error(ErrorCode::kInvalidSpec,
              "invalid preset '" + std::string(text) + "': " + why);
}

PresetId build_id(std::string_view text, const std::string &task,
                  const std::string &level, const std::string &mt,
                  const std::string &domain) {
  PresetId id {};
  const auto t = parse_task(lower(task));
  if (!t) {
    bad_preset(text, "unknown task '" + task + "'");
  }
  id.task = *t;
  const auto l = curation::parse_noise_level(lower(level));
  if (!l) {
    bad_preset(text, "unknown noise level '" + level + "'");
  }
  id.level = *l;
  const auto m = std::find_if(
      kPresetMeasurementTypes.begin(), kPresetMeasurementTypes.end(),
      [&](const std::string &candidate) { return lower(candidate) == lower(mt); });
  if (m == kPresetMeasurementTypes.end()) {
    bad_preset(text, "unknown measurement type '" + mt + "'");
  }
  id.measurement_type = *m;
  const auto d = split::parse_domain_kind(lower(domain));
  if (!d) {
    bad_preset(text, "unknown domain '" + domain + "'");
  }
  id.domain = *d;
  return id;
}

}  // namespace

CurationConfig resolve_preset(const PresetId &id) {
  if (split::requires_sbap(id.domain) && id.task != Task::kSbap) {
    throw Error(ErrorCode::kIncompatibleCombination,
                "domain '" + std::string(split::domain_kind_name(id.domain))
                    + "' requires task sbap");
  }
  CurationConfig cfg;
  cfg.task = id.task;
  cfg.noise = curation::noise_preset(id.level, id.measurement_type);
  cfg.domain = split::DomainSpec::for_kind(id.domain);
  cfg.dataset_name = dataset_name(id);
  return cfg;
}

std::vector<PresetId> all_presets() {
  std::vector<PresetId> out;
  for (const Task task: { Task::kLbap, Task::kSbap }) {
    for (const curation::NoiseLevel level: kLevels) {
      for (const std::string &mt: kPresetMeasurementTypes) {
        for (const split::DomainKind kind:
             { split::DomainKind::kAssay, split::DomainKind::kScaffold,
               split::DomainKind::kSize, split::DomainKind::kProtein,
               split::DomainKind::kProteinFamily }) {
          if (split::requires_sbap(kind) && task != Task::kSbap) {
            continue;
          }
          out.push_back({ task, level, mt, kind });
        }
      }
    }
  }
  return out;
}

std::string dataset_name(const PresetId &id) {
  std::string domain(split::domain_kind_name(id.domain));
  std::replace(domain.begin(), domain.end(), '_', '-');
  return std::string(task_name(id.task)) + "-"
         + std::string(curation::noise_level_name(id.level)) + "-"
         + lower(id.measurement_type) + "-" + domain;
}

std::string preset_spec(const PresetId &id) {
  return std::string(task_name(id.task)) + ","
         + std::string(curation::noise_level_name(id.level)) + ","
         + id.measurement_type + ","
         + std::string(split::domain_kind_name(id.domain));
}

PresetId parse_preset_spec(std::string_view text) {
  const std::vector<std::string> parts = split_on(text, ',', 5);
  if (parts.size() != 4) {
    bad_preset(text, "expected task,noise,measurement,domain");
  }
  return build_id(text, parts[0], parts[1], parts[2], parts[3]);
}

PresetId parse_preset(std::string_view text) {
  if (text.find(',') != std::string_view::npos) {
    return parse_preset_spec(text);
  }
  // The domain may itself contain '-' (protein-family).
  std::vector<std::string> parts = split_on(text, '-', 4);
  if (parts.size() != 4) {
    bad_preset(text, "expected task-noise-measurement-domain");
  }
  std::replace(parts[3].begin(), parts[3].end(), '-', '_');
  return build_id(text, parts[0], parts[1], parts[2], parts[3]);
}

}  // namespace curator::config
