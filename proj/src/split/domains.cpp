#include <algorithm>
#include <map>

#include "curator/chem/molecule.h"
#include "curator/chem/scaffold.h"
#include "curator/chem/smiles.h"
#include "curator/error.h"
#include "curator/parallel.h"
#include "curator/split/split.h"

namespace curator::split {

namespace {

constexpr std::array<DomainKind, 5> kKinds = {
  DomainKind::kAssay, DomainKind::kScaffold, DomainKind::kSize,
  DomainKind::kProtein, DomainKind::kProteinFamily,
};

template <class Enum, std::size_t N, class NameFn>
std::optional<Enum> parse_by_name(const std::array<Enum, N> &values,
                                  std::string_view text, NameFn name) {
  for (const Enum v: values) {
    if (name(v) == text) {
      return v;
    }
  }
  return std::nullopt;
}

std::string missing(const DomainAnnotatedSample &s, std::string_view field) {
  return "sample " + s.input_key + " has no " + std::string(field);
}

}  // namespace

std::string_view domain_kind_name(DomainKind kind) {
  switch (kind) {
  case DomainKind::kAssay:
    return "assay";
  case DomainKind::kScaffold:
    return "scaffold";
  case DomainKind::kSize:
    return "size";
  case DomainKind::kProtein:
    return "protein";
  case DomainKind::kProteinFamily:
    return "protein_family";
  }
  return "";
}

std::optional<DomainKind> parse_domain_kind(std::string_view text) {
  return parse_by_name(kKinds, text, domain_kind_name);
}

std::string_view descriptor_name(Descriptor d) {
  return d == Descriptor::kDomainCapacity ? "domain_capacity"
                                          : "molecular_size";
}

std::optional<Descriptor> parse_descriptor(std::string_view text) {
  return parse_by_name(std::array { Descriptor::kDomainCapacity,
                                    Descriptor::kMolecularSize },
                       text, descriptor_name);
}

std::string_view sort_order_name(SortOrder order) {
  return order == SortOrder::kDescending ? "descending" : "ascending";
}

std::optional<SortOrder> parse_sort_order(std::string_view text) {
  return parse_by_name(std::array { SortOrder::kDescending,
                                    SortOrder::kAscending },
                       text, sort_order_name);
}

std::string_view domain_field_name(DomainKind kind) {
  switch (kind) {
  case DomainKind::kAssay:
    return "assay_id";
  case DomainKind::kScaffold:
    return "scaffold";
  case DomainKind::kSize:
    return "size";
  case DomainKind::kProtein:
    return "target_id";
  case DomainKind::kProteinFamily:
    return "protein_class";
  }
  return "";
}

bool requires_sbap(DomainKind kind) {
  return kind == DomainKind::kProtein || kind == DomainKind::kProteinFamily;
}

DomainSpec DomainSpec::for_kind(DomainKind kind) {
  DomainSpec spec;
  spec.kind = kind;
  spec.descriptor = kind == DomainKind::kSize || kind == DomainKind::kScaffold
                        ? Descriptor::kMolecularSize
                        : Descriptor::kDomainCapacity;
  return spec;
}

void validate(const DomainSpec &spec, Task task) {
  if (requires_sbap(spec.kind) && task != Task::kSbap) {
    throw Error(ErrorCode::kIncompatibleCombination,
                "domain '" + std::string(domain_kind_name(spec.kind))
                    + "' requires task sbap");
  }
  if (spec.descriptor == Descriptor::kMolecularSize
      && spec.kind != DomainKind::kSize && spec.kind != DomainKind::kScaffold) {
    throw Error(ErrorCode::kIncompatibleCombination,
                "descriptor molecular_size applies only to size and scaffold "
                "domains");
  }
}

std::vector<DomainAnnotatedSample>
assign_domains(const std::vector<LabeledSample> &samples,
               const DomainSpec &spec, int jobs) {
  std::vector<DomainAnnotatedSample> out(samples.size());
  parallel_for(samples.size(), jobs, [&](std::size_t i) {
    DomainAnnotatedSample &s = out[i];
    static_cast<LabeledSample &>(s) = samples[i];
    switch (spec.kind) {
    case DomainKind::kAssay:
      // Merged samples may span assays; the smallest id represents them.
      if (s.assay_ids.empty()) {
        throw Error(ErrorCode::kMissingDomainField, missing(s, "assay_id"));
      }
      s.domain_key = *s.assay_ids.begin();
      break;
    case DomainKind::kScaffold:
      s.domain_key = chem::murcko_scaffold(chem::parse_smiles(s.smiles)).key;
      break;
    case DomainKind::kSize:
      s.domain_key =
          std::to_string(chem::heavy_atom_count(chem::parse_smiles(s.smiles)));
      break;
    case DomainKind::kProtein:
      if (!s.target_id) {
        throw Error(ErrorCode::kMissingDomainField, missing(s, "target_id"));
      }
      s.domain_key = *s.target_id;
      break;
    case DomainKind::kProteinFamily:
      if (!s.protein_class_path || s.protein_class_path->empty()) {
        throw Error(ErrorCode::kMissingDomainField,
                    missing(s, "protein_class_path"));
      }
      s.domain_key = s.protein_class_path->front();
      break;
    }
  });
  return out;
}

double domain_descriptor(std::string_view key, std::size_t member_count,
                         const DomainSpec &spec) {
  if (spec.descriptor == Descriptor::kDomainCapacity) {
    return static_cast<double>(member_count);
  }
  if (spec.kind == DomainKind::kSize) {
    return std::stod(std::string(key));
  }
  if (key.empty()) {
    return 0;
  }
  chem::SmilesParseOptions opts;
  opts.check_valence = false;
  return chem::heavy_atom_count(chem::parse_smiles(key, opts));
}

std::vector<Domain> group_domains(std::vector<DomainAnnotatedSample> &samples,
                                  const DomainSpec &spec) {
  std::map<std::string, std::vector<std::size_t>> by_key;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_key[samples[i].domain_key].push_back(i);
  }
  std::vector<Domain> domains;
  domains.reserve(by_key.size());
  for (auto &[key, members]: by_key) {
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) {
                       return samples[a].first_activity_id
                              < samples[b].first_activity_id;
                     });
    Domain d;
    d.key = key;
    d.descriptor = domain_descriptor(key, members.size(), spec);
    d.members = std::move(members);
    domains.push_back(std::move(d));
  }
  const bool descending = spec.sort_order == SortOrder::kDescending;
  std::stable_sort(domains.begin(), domains.end(),
                   [descending](const Domain &a, const Domain &b) {
                     if (a.descriptor != b.descriptor) {
                       return descending ? a.descriptor > b.descriptor
                                         : a.descriptor < b.descriptor;
                     }
                     return a.key < b.key;
                   });
  for (std::size_t id = 0; id < domains.size(); ++id) {
    for (const std::size_t m: domains[id].members) {
      samples[m].domain_id = static_cast<int>(id);
    }
  }
  return domains;
}

}  // namespace curator::split
