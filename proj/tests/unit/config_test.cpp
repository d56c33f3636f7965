#include "curator/config/config.h"

#include <gtest/gtest.h>

#include <set>

#include "curator/error.h"
#include "test_support.h"

namespace curator::config {
namespace {

using curation::NoiseLevel;
using split::DomainKind;

Error parse_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const Error &e) {
    return e;
  }
  ADD_FAILURE() << "accepted: " << text;
  return Error(ErrorCode::kIo, "");
}

std::string reference_recipe() {
  return testing::read_file(testing::data_path("lbap_core_ec50_assay.json"));
}

std::string with_patch(const std::string &pointer, const nlohmann::json &value) {
  nlohmann::json j = nlohmann::json::parse(reference_recipe());
  j[nlohmann::json::json_pointer(pointer)] = value;
  return j.dump();
}

TEST(ParseConfigTest, ReferenceRecipe) {
  const CurationConfig cfg = parse_config(reference_recipe());
  EXPECT_EQ(cfg.task, Task::kLbap);
  EXPECT_EQ(cfg.source, std::filesystem::path("../chembl_29_sqlite/chembl_29.db"));
  EXPECT_EQ(cfg.save_dir, std::filesystem::path(".data/lbap/lbap_core_EC50_assay"));
  EXPECT_EQ(cfg.noise.measurement_types, (std::set<std::string> { "EC50" }));
  EXPECT_EQ(cfg.noise.allowed_units, (std::set<std::string> { "nM", "uM" }));
  EXPECT_EQ(cfg.noise.molecules_per_assay, (curation::MoleculeCountRange { 50, 3000 }));
  EXPECT_EQ(cfg.noise.min_confidence, 9);
  EXPECT_FALSE(cfg.noise.allowed_target_types.has_value());
  EXPECT_EQ(cfg.noise.allowed_relations, (std::set<std::string> { "=", "~" }));
  EXPECT_TRUE(cfg.noise.require_legal_smiles);
  EXPECT_TRUE(cfg.uncertainty.average_multiple);
  EXPECT_EQ(cfg.uncertainty.delta_map, curation::default_delta_map());
  EXPECT_EQ(cfg.threshold, (curation::ThresholdRule { 4, 6, 5 }));
  EXPECT_EQ(cfg.domain, split::DomainSpec::for_kind(DomainKind::kAssay));
  EXPECT_EQ(cfg.split.train_fraction_ood, 0.6);
  EXPECT_EQ(cfg.split.val_fraction_ood, 0.2);
  EXPECT_EQ(cfg.split.iid_train_fraction, 0.6);
  EXPECT_EQ(cfg.split.iid_val_fraction, 0.2);
  EXPECT_EQ(cfg.source_kind, std::nullopt);
  EXPECT_EQ(infer_source_kind(*cfg.source), ingest::SourceKind::kRelationalExport);
}

TEST(ParseConfigTest, UnknownKeyIsNamed) {
  const Error e = parse_error(with_patch("/split/fractions/fracton", 0.5));
  EXPECT_EQ(e.code(), ErrorCode::kUnknownKey);
  EXPECT_NE(std::string(e.what()).find("fracton"), std::string::npos) << e.what();
}

TEST(ParseConfigTest, ThresholdOrderingInvariant) {
  const Error e = parse_error(
      with_patch("/uncertainty/binary_threshold",
                 { { "lower_bound", 6 }, { "upper_bound", 4 }, { "fix_value", 5 } }));
  EXPECT_EQ(e.code(), ErrorCode::kInvariantViolation);
}

TEST(ParseConfigTest, SyntaxError) {
  EXPECT_EQ(parse_error("{\"task\": ").code(), ErrorCode::kConfigSyntax);
}

TEST(ParseConfigTest, MissingKeyIsNamed) {
  nlohmann::json j = nlohmann::json::parse(reference_recipe());
  j.erase("task");
  const Error e = parse_error(j.dump());
  EXPECT_EQ(e.code(), ErrorCode::kMissingKey);
  EXPECT_NE(std::string(e.what()).find("task"), std::string::npos);
}

TEST(ParseConfigTest, ProteinDomainNeedsSbap) {
  nlohmann::json j = nlohmann::json::parse(reference_recipe());
  j["split"]["domain"] = { { "domain_generate_field", "target_id" },
                           { "domain_name", "protein" } };
  EXPECT_EQ(parse_error(j.dump()).code(), ErrorCode::kIncompatibleCombination);
  j["task"] = "sbap";
  EXPECT_EQ(parse_config(j.dump()).domain.kind, DomainKind::kProtein);
}

TEST(ParseConfigTest, OtherInvariants) {
  nlohmann::json j = nlohmann::json::parse(reference_recipe());
  j["filter"]["sample_filter"]["value_relation"] = { "=", "~", "<=" };
  j["uncertainty"]["uncertainty_delta"] = { { "<", -1 }, { ">", 1 } };
  EXPECT_EQ(parse_error(j.dump()).code(), ErrorCode::kInvariantViolation);
  j["uncertainty"]["uncertainty_delta"] = { { "<=", -1 }, { "=", 0 } };
  EXPECT_EQ(parse_error(j.dump()).code(), ErrorCode::kInvariantViolation);
  EXPECT_EQ(parse_error(with_patch("/filter/sample_filter/value_relation",
                                   { "=", "!=" }))
                .code(),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(parse_error(with_patch("/filter/assay_filter/assay_value_units",
                                   { "nM", "mg" }))
                .code(),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(parse_error(with_patch("/split/fractions/val_fraction_ood", 0.5)).code(),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(parse_error(with_patch("/split/domain/domain_generate_field", "size"))
                .code(),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(parse_error(with_patch("/task", "xbap")).code(),
            ErrorCode::kInvariantViolation);
}

TEST(ParseConfigTest, PresetShortcut) {
  const CurationConfig cfg = parse_config(R"({
    "task": "lbap",
    "filter": {"preset": "refined", "measurement_type": "Ki"},
    "split": {"domain": {"domain_name": "scaffold"}}
  })");
  EXPECT_EQ(cfg.noise, curation::noise_preset(NoiseLevel::kRefined, "Ki"));
  EXPECT_EQ(cfg.domain.kind, DomainKind::kScaffold);
  EXPECT_EQ(cfg.dataset_name, "lbap-refined-ki-scaffold");
}

TEST(ConfigDigestTest, IgnoresLocationsOnly) {
  const CurationConfig a = parse_config(reference_recipe());
  CurationConfig b = a;
  b.source = "/elsewhere/chembl.db";
  b.save_dir = "/tmp/out";
  EXPECT_EQ(config_digest(a), config_digest(b));
  b.split.seed = 3;
  EXPECT_NE(config_digest(a), config_digest(b));
  EXPECT_EQ(config_digest(a).size(), 64u);
}

TEST(ConfigRoundTripTest, ReferenceRecipe) {
  const CurationConfig cfg = parse_config(reference_recipe());
  EXPECT_EQ(parse_config(serialize(cfg)), cfg);
}

TEST(ConfigRoundTripTest, EveryPreset) {
  for (const PresetId &id: all_presets()) {
    const CurationConfig cfg = resolve_preset(id);
    EXPECT_NO_THROW(validate(cfg));
    EXPECT_EQ(parse_config(serialize(cfg)), cfg) << preset_spec(id);
    EXPECT_EQ(serialize(parse_config(serialize(cfg))), serialize(cfg));
  }
}

TEST(PresetTest, CoreAssay) {
  const CurationConfig cfg =
      resolve_preset({ Task::kLbap, NoiseLevel::kCore, "IC50", DomainKind::kAssay });
  EXPECT_EQ(cfg.noise.molecules_per_assay, (curation::MoleculeCountRange { 50, 3000 }));
  EXPECT_EQ(cfg.noise.min_confidence, 9);
  EXPECT_EQ(cfg.noise.allowed_target_types, (std::set<std::string> { "SINGLE PROTEIN" }));
  EXPECT_EQ(cfg.noise.allowed_relations, (std::set<std::string> { "=", "~" }));
  EXPECT_EQ(cfg.noise.allowed_units, (std::set<std::string> { "nM", "uM" }));
  EXPECT_EQ(cfg.dataset_name, "lbap-core-ic50-assay");
}

TEST(PresetTest, GeneralProtein) {
  const CurationConfig cfg =
      resolve_preset({ Task::kSbap, NoiseLevel::kGeneral, "Ki", DomainKind::kProtein });
  EXPECT_EQ(cfg.noise.molecules_per_assay, (curation::MoleculeCountRange { 10, 5000 }));
  EXPECT_FALSE(cfg.noise.min_confidence.has_value());
  EXPECT_FALSE(cfg.noise.allowed_target_types.has_value());
  EXPECT_EQ(cfg.noise.allowed_relations.size(), 6u);
}

TEST(PresetTest, LbapProteinIsIncompatible) {
  try {
    resolve_preset({ Task::kLbap, NoiseLevel::kCore, "IC50", DomainKind::kProtein });
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompatibleCombination);
  }
}

TEST(PresetTest, EnumerationCountsAndNames) {
  const auto presets = all_presets();
  EXPECT_EQ(presets.size(), 96u);
  std::set<std::string> specs, names;
  int lbap = 0;
  for (const PresetId &id: presets) {
    specs.insert(preset_spec(id));
    names.insert(dataset_name(id));
    lbap += id.task == Task::kLbap;
    EXPECT_EQ(parse_preset(preset_spec(id)), id);
    EXPECT_EQ(parse_preset(dataset_name(id)), id);
  }
  EXPECT_EQ(lbap, 36);
  EXPECT_EQ(specs.size(), 96u);
  EXPECT_EQ(names.size(), 96u);
  EXPECT_TRUE(specs.count("sbap,general,Ki,protein_family"));
  EXPECT_TRUE(names.count("sbap-general-ki-protein-family"));
}

TEST(PresetTest, ParseIsCaseInsensitiveAndStrict) {
  // Syntactically fine; resolve_preset rejects the combination.
  EXPECT_EQ(parse_preset("lbap-core-ic50-protein").domain, DomainKind::kProtein);
  EXPECT_EQ(parse_preset("LBAP,Core,ic50,Assay"),
            (PresetId { Task::kLbap, NoiseLevel::kCore, "IC50", DomainKind::kAssay }));
  for (const char *bad: { "lbap,core,IC50", "lbap,ultra,IC50,assay",
                          "lbap,core,Kd,assay", "", "lbap-core-ic50" }) {
    EXPECT_THROW(parse_preset(bad), Error) << bad;
  }
}

TEST(SourceKindInferenceTest, Extensions) {
  EXPECT_EQ(infer_source_kind("x.db"), ingest::SourceKind::kRelationalExport);
  EXPECT_EQ(infer_source_kind("x.sqlite3"), ingest::SourceKind::kRelationalExport);
  EXPECT_EQ(infer_source_kind("x.jsonl"), ingest::SourceKind::kFlatDump);
}

}  // namespace
}  // namespace curator::config
