#include <algorithm>
#include <map>

#include "curator/curation/curation.h"

namespace curator::curation {

std::vector<MergedSample> merge_measurements(std::vector<MergedSample> samples) {
  std::map<std::string, std::vector<MergedSample *>> groups;
  for (MergedSample &s: samples) {
    groups[s.input_key].push_back(&s);
  }

  std::vector<MergedSample> out;
  out.reserve(groups.size());
  for (auto &[key, members]: groups) {
    if (members.size() == 1) {
      out.push_back(std::move(*members.front()));
      continue;
    }
    std::sort(members.begin(), members.end(),
              [](const MergedSample *a, const MergedSample *b) {
                return a->first_activity_id < b->first_activity_id;
              });
    MergedSample merged = *members.front();
    double weighted_sum = 0;
    int n = 0;
    for (const MergedSample *m: members) {
      weighted_sum += m->pvalue * m->n_measurements;
      n += m->n_measurements;
      merged.assay_ids.insert(m->assay_ids.begin(), m->assay_ids.end());
    }
    merged.pvalue = weighted_sum / n;
    merged.n_measurements = n;
    out.push_back(std::move(merged));
  }
  return out;
}

}  // namespace curator::curation
