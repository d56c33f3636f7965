#ifndef CURATOR_PIPELINE_H_
#define CURATOR_PIPELINE_H_

#include "curator/config/config.h"
#include "curator/ingest/ingest.h"
#include "curator/split/split.h"

namespace curator {

// Opens cfg.source with its declared or inferred kind. Throws
// Error(kMissingFile) when the config names no source.
ingest::SourceHandle open_config_source(const config::CurationConfig &cfg);

// ingest -> filters -> offsets -> merge -> threshold -> labels -> domains
// -> OOD split -> ID split. Output does not depend on `jobs`. Throws
// Error(kEmptyDataset) when nothing survives filtering.
split::CuratedDataset curate(const config::CurationConfig &cfg,
                             const ingest::SourceHandle &source, int jobs = 1);

}  // namespace curator

#endif  // CURATOR_PIPELINE_H_
