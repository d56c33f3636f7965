#ifndef CURATOR_SPLIT_SPLIT_H_
#define CURATOR_SPLIT_SPLIT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curator/curation/curation.h"
#include "curator/types.h"

namespace curator::split {

using curation::LabeledSample;

enum class DomainKind {
  kAssay,
  kScaffold,
  kSize,
  kProtein,
  kProteinFamily,
};

enum class Descriptor {
  kDomainCapacity,
  kMolecularSize,
};

enum class SortOrder {
  kDescending,
  kAscending,
};

// Names as they appear in configs: "assay", "protein_family",
// "domain_capacity", "descending", ...
std::string_view domain_kind_name(DomainKind kind);
std::optional<DomainKind> parse_domain_kind(std::string_view text);
std::string_view descriptor_name(Descriptor d);
std::optional<Descriptor> parse_descriptor(std::string_view text);
std::string_view sort_order_name(SortOrder order);
std::optional<SortOrder> parse_sort_order(std::string_view text);

// Record field a domain kind groups on: "assay_id", "scaffold", "size",
// "target_id", "protein_class".
std::string_view domain_field_name(DomainKind kind);

bool requires_sbap(DomainKind kind);

struct DomainSpec {
  DomainKind kind = DomainKind::kAssay;
  Descriptor descriptor = Descriptor::kDomainCapacity;
  SortOrder sort_order = SortOrder::kDescending;

  // Default descriptor for the kind, descending order.
  static DomainSpec for_kind(DomainKind kind);
  bool operator==(const DomainSpec &) const = default;
};

// Throws Error(kIncompatibleCombination) for protein kinds under lbap.
void validate(const DomainSpec &spec, Task task);

struct DomainAnnotatedSample: LabeledSample {
  std::string domain_key;
  int domain_id = -1;

  bool operator==(const DomainAnnotatedSample &) const = default;
};

struct SplitConfig {
  double train_fraction_ood = 0.6;
  double val_fraction_ood = 0.2;
  double iid_train_fraction = 0.6;
  double iid_val_fraction = 0.2;
  std::uint64_t seed = 0;

  bool operator==(const SplitConfig &) const = default;
};

// Throws Error(kInvariantViolation) naming the offending fraction.
void validate(const SplitConfig &cfg);

// Fills domain_key; domain_id stays -1. Throws Error(kMissingDomainField).
std::vector<DomainAnnotatedSample>
assign_domains(const std::vector<LabeledSample> &samples,
               const DomainSpec &spec, int jobs = 1);

// Sort key of a domain. `key` and `member_count` describe one non-empty
// domain.
double domain_descriptor(std::string_view key, std::size_t member_count,
                         const DomainSpec &spec);

struct Domain {
  std::string key;
  double descriptor = 0;
  std::vector<std::size_t> members;  // sample indices, first_activity_id order
};

// Groups annotated samples, orders domains by (descriptor in sort_order,
// key ascending) and writes the dense domain_id back into the samples.
std::vector<Domain> group_domains(std::vector<DomainAnnotatedSample> &samples,
                                  const DomainSpec &spec);

struct OodPartition {
  std::vector<std::size_t> train;  // indices into the sorted domain list
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
  std::vector<std::string> warnings;
};

// Greedy walk over domains in sorted order. With c the running sample count
// before a domain: train while c < f_train*N, then val while
// c < (f_train+f_val)*N, rest to test.
OodPartition ood_split(const std::vector<std::size_t> &domain_sizes,
                       const SplitConfig &cfg);

struct IdPartition {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

// Splits one train-side domain. `members` must be in a stable order; they
// are shuffled by a stream seeded from (cfg.seed, domain_key). Domains with
// fewer than 3 members stay in train.
IdPartition id_split(std::vector<std::size_t> members,
                     std::string_view domain_key, const SplitConfig &cfg);

enum class SplitName {
  kTrain,
  kIidVal,
  kIidTest,
  kOodVal,
  kOodTest,
};

inline constexpr std::array<SplitName, 5> kAllSplits = {
  SplitName::kTrain, SplitName::kIidVal, SplitName::kIidTest,
  SplitName::kOodVal, SplitName::kOodTest,
};

std::string_view split_name(SplitName split);

struct CuratedDataset {
  Task task = Task::kLbap;
  std::string dataset_name;
  // Indexed by SplitName; each sorted by (domain_id, input_key).
  std::array<std::vector<DomainAnnotatedSample>, 5> splits;
  double threshold = 0;
  std::string config_digest;
  std::string source_digest;
  std::uint64_t seed = 0;
  DomainSpec domain;
  bool merged = true;  // repeated measurements were averaged
  curation::FilterReport filter_report;
  ingest::IngestReport ingest_report;
  std::vector<std::string> warnings;

  std::vector<DomainAnnotatedSample> &split(SplitName s) {
    return splits[static_cast<std::size_t>(s)];
  }
  const std::vector<DomainAnnotatedSample> &split(SplitName s) const {
    return splits[static_cast<std::size_t>(s)];
  }
  std::size_t total_samples() const;
};

// Partitions labeled samples: domains, OOD split, then per-domain ID split.
// Throws Error(kEmptyDataset) when `samples` is empty.
CuratedDataset split_dataset(const std::vector<LabeledSample> &samples,
                             const DomainSpec &spec, const SplitConfig &cfg,
                             int jobs = 1);

}  // namespace curator::split

#endif  // CURATOR_SPLIT_SPLIT_H_
