#include <algorithm>
#include <cmath>
#include <numeric>

#include "curator/error.h"
#include "curator/parallel.h"
#include "curator/random.h"
#include "curator/split/split.h"

namespace curator::split {

namespace {

// Absorbs representation error in products like 0.6 * 100.
constexpr double kEps = 1e-9;

void check_fraction(double v, bool allow_zero, bool allow_one,
                    const char *name) {
  const bool ok = std::isfinite(v) && (allow_zero ? v >= 0 : v > 0)
                  && (allow_one ? v <= 1 : v < 1);
  if (!ok) {
    throw Error(ErrorCode::kInvariantViolation,
                std::string(name) + " out of range: " + std::to_string(v));
  }
}

std::size_t floor_share(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::floor(fraction * n + kEps));
}

}  // namespace

void validate(const SplitConfig &cfg) {
  check_fraction(cfg.train_fraction_ood, false, true, "train_fraction_ood");
  check_fraction(cfg.val_fraction_ood, true, false, "val_fraction_ood");
  if (cfg.train_fraction_ood + cfg.val_fraction_ood > 1 + kEps) {
    throw Error(ErrorCode::kInvariantViolation,
                "train_fraction_ood + val_fraction_ood exceeds 1");
  }
  check_fraction(cfg.iid_train_fraction, true, true,
                 "IID_train_sample_fractions");
  check_fraction(cfg.iid_val_fraction, true, true, "IID_val_sample_fractions");
  if (cfg.iid_train_fraction + cfg.iid_val_fraction > 1 + kEps) {
    throw Error(ErrorCode::kInvariantViolation,
                "IID_train_sample_fractions + IID_val_sample_fractions "
                "exceeds 1");
  }
}

OodPartition ood_split(const std::vector<std::size_t> &domain_sizes,
                       const SplitConfig &cfg) {
  const double n = static_cast<double>(
      std::accumulate(domain_sizes.begin(), domain_sizes.end(), std::size_t { 0 }));
  const double train_target = cfg.train_fraction_ood * n - kEps;
  const double val_target =
      (cfg.train_fraction_ood + cfg.val_fraction_ood) * n - kEps;

  OodPartition out;
  double c = 0;
  for (std::size_t i = 0; i < domain_sizes.size(); ++i) {
    if (c < train_target) {
      out.train.push_back(i);
    } else if (c < val_target) {
      out.val.push_back(i);
    } else {
      out.test.push_back(i);
    }
    c += static_cast<double>(domain_sizes[i]);
  }
  if (out.val.empty()) {
    out.warnings.push_back("ood_val split is empty");
  }
  if (out.test.empty()) {
    out.warnings.push_back("ood_test split is empty");
  }
  return out;
}

IdPartition id_split(std::vector<std::size_t> members,
                     std::string_view domain_key, const SplitConfig &cfg) {
  IdPartition out;
  const std::size_t n = members.size();
  if (n < 3) {
    out.train = std::move(members);
    return out;
  }
  const std::size_t n_val = floor_share(cfg.iid_val_fraction, n);
  const std::size_t n_test = floor_share(
      1.0 - cfg.iid_train_fraction - cfg.iid_val_fraction, n);
  Rng rng(derive_seed(cfg.seed, domain_key));
  rng.shuffle(members);
  out.val.assign(members.begin(), members.begin() + n_val);
  out.test.assign(members.begin() + n_val, members.begin() + n_val + n_test);
  out.train.assign(members.begin() + n_val + n_test, members.end());
  return out;
}

std::string_view split_name(SplitName split) {
  switch (split) {
  case SplitName::kTrain:
    return "train";
  case SplitName::kIidVal:
    return "iid_val";
  case SplitName::kIidTest:
    return "iid_test";
  case SplitName::kOodVal:
    return "ood_val";
  case SplitName::kOodTest:
    return "ood_test";
  }
  return "";
}

std::size_t CuratedDataset::total_samples() const {
  std::size_t total = 0;
  for (const auto &s: splits) {
    total += s.size();
  }
  return total;
}

CuratedDataset split_dataset(const std::vector<LabeledSample> &samples,
                             const DomainSpec &spec, const SplitConfig &cfg,
                             int jobs) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no samples to split");
  }
  std::vector<DomainAnnotatedSample> annotated =
      assign_domains(samples, spec, jobs);
  const std::vector<Domain> domains = group_domains(annotated, spec);

  std::vector<std::size_t> sizes;
  sizes.reserve(domains.size());
  for (const Domain &d: domains) {
    sizes.push_back(d.members.size());
  }
  const OodPartition ood = ood_split(sizes, cfg);

  std::vector<IdPartition> id_parts(ood.train.size());
  parallel_for(ood.train.size(), jobs, [&](std::size_t i) {
    const Domain &d = domains[ood.train[i]];
    id_parts[i] = id_split(d.members, d.key, cfg);
  });

  CuratedDataset out;
  out.seed = cfg.seed;
  out.domain = spec;
  out.warnings = ood.warnings;
  auto take = [&](SplitName split, const std::vector<std::size_t> &idx) {
    for (const std::size_t i: idx) {
      out.split(split).push_back(annotated[i]);
    }
  };
  for (const IdPartition &p: id_parts) {
    take(SplitName::kTrain, p.train);
    take(SplitName::kIidVal, p.val);
    take(SplitName::kIidTest, p.test);
  }
  for (const std::size_t d: ood.val) {
    take(SplitName::kOodVal, domains[d].members);
  }
  for (const std::size_t d: ood.test) {
    take(SplitName::kOodTest, domains[d].members);
  }
  for (auto &split: out.splits) {
    std::sort(split.begin(), split.end(),
              [](const DomainAnnotatedSample &a, const DomainAnnotatedSample &b) {
                if (a.domain_id != b.domain_id) {
                  return a.domain_id < b.domain_id;
                }
                if (a.input_key != b.input_key) {
                  return a.input_key < b.input_key;
                }
                return a.first_activity_id < b.first_activity_id;
              });
  }
  return out;
}

}  // namespace curator::split
