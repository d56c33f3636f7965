#include <algorithm>
#include <cmath>

#include "curator/curation/curation.h"
#include "curator/error.h"

namespace curator::curation {

double median(std::vector<double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kEmptyInput, "median of an empty list");
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) {
    return values[mid];
  }
  return (values[mid - 1] + values[mid]) / 2.0;
}

double compute_threshold(std::span<const double> pvalues,
                         const ThresholdRule &rule) {
  if (pvalues.empty()) {
    throw Error(ErrorCode::kEmptyInput,
                "cannot compute a threshold over zero samples");
  }
  const double m = median(std::vector<double>(pvalues.begin(), pvalues.end()));
  return m >= rule.lower && m <= rule.upper ? m : rule.fix;
}

std::vector<LabeledSample> assign_labels(const std::vector<MergedSample> &samples,
                                         double threshold) {
  std::vector<LabeledSample> out;
  out.reserve(samples.size());
  for (const MergedSample &s: samples) {
    LabeledSample l;
    static_cast<MergedSample &>(l) = s;
    l.label = s.pvalue >= threshold ? 1 : 0;
    l.threshold_used = threshold;
    out.push_back(std::move(l));
  }
  return out;
}

}  // namespace curator::curation
