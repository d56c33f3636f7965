#include "curator/cli/cli.h"

#include <fstream>
#include <optional>

#include <CLI11.hpp>

#include "curator/config/config.h"
#include "curator/error.h"
#include "curator/ingest/synthetic.h"
#include "curator/pipeline.h"
#include "curator/report/report.h"

namespace curator::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
  case ErrorCode::kConfigSyntax:
  case ErrorCode::kUnknownKey:
  case ErrorCode::kMissingKey:
  case ErrorCode::kInvariantViolation:
  case ErrorCode::kIncompatibleCombination:
  case ErrorCode::kInvalidSpec:
    return kExitConfig;
  case ErrorCode::kMissingFile:
  case ErrorCode::kMalformedSchema:
    return kExitSource;
  case ErrorCode::kEmptyDataset:
    return kExitEmpty;
  default:
    return kExitFailure;
  }
}

struct CurateArgs {
  std::optional<std::string> config;
  std::optional<std::string> preset;
  std::optional<std::string> source;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool force = false;
  std::string format = "table-text";
};

int cmd_curate(const CurateArgs &a, std::ostream &out, std::ostream &err) {
  if (!a.config && !a.preset) {
    err << "error[config]: one of --config or --preset is required\n";
    return kExitConfig;
  }
  const auto format = report::parse_stats_format(a.format);
  if (!format) {
    err << "error[config]: unknown --format '" << a.format << "'\n";
    return kExitConfig;
  }
  config::CurationConfig cfg =
      a.config ? config::parse_config_file(*a.config)
               : config::resolve_preset(config::parse_preset(*a.preset));
  if (a.source) {
    cfg.source = *a.source;
    cfg.source_kind.reset();
  }
  if (a.out) {
    cfg.save_dir = *a.out;
  }
  if (a.seed) {
    cfg.split.seed = *a.seed;
  }
  const ingest::SourceHandle source = open_config_source(cfg);
  const split::CuratedDataset dataset = curate(cfg, source, a.jobs);
  for (const std::string &w: dataset.warnings) {
    err << "warning: " << dataset.dataset_name << ": " << w << "\n";
  }
  const fs::path dir = report::write_dataset(dataset, cfg.save_dir, a.force);
  err << "wrote " << dir.string() << " (" << dataset.total_samples()
      << " samples, threshold " << dataset.threshold << ")\n";
  out << report::render_stats(report::compute_stats(dataset), *format);
  return kExitOk;
}

int cmd_presets(std::ostream &out) {
  for (const config::PresetId &id: config::all_presets()) {
    out << config::preset_spec(id) << '\t' << config::dataset_name(id) << '\n';
  }
  return kExitOk;
}

int cmd_stats(const std::vector<std::string> &dirs, const std::string &fmt,
              std::ostream &out, std::ostream &err) {
  const auto format = report::parse_stats_format(fmt);
  if (!format) {
    err << "error[config]: unknown --format '" << fmt << "'\n";
    return kExitConfig;
  }
  if (dirs.size() > 1 && *format != report::StatsFormat::kTableText) {
    err << "error[config]: several --dir values need --format table-text\n";
    return kExitConfig;
  }
  std::vector<report::StatsReport> reports;
  for (const std::string &d: dirs) {
    const fs::path path = fs::path(d) / "stats.json";
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kMissingFile, "missing " + path.string());
    }
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    reports.push_back(report::parse_stats(text, report::StatsFormat::kJson));
  }
  if (*format == report::StatsFormat::kTableText) {
    out << report::render_stats_table(reports);
  } else {
    out << report::render_stats(reports.front(), *format);
  }
  return kExitOk;
}

int cmd_synth(const std::optional<std::string> &spec_path, std::uint64_t seed,
              const std::string &out_path, std::ostream &err) {
  ingest::SyntheticSpec spec;
  if (spec_path) {
    std::ifstream in(*spec_path, std::ios::binary);
    if (!in) {
      throw Error(ErrorCode::kInvalidSpec, "cannot read " + *spec_path);
    }
    try {
      spec = ingest::SyntheticSpec::from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(ErrorCode::kInvalidSpec, e.what());
    }
  }
  ingest::generate_synthetic_source(spec, seed, out_path);
  err << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_validate(const std::string &dir, std::ostream &out, std::ostream &err) {
  const report::ValidationReport r = report::validate_dataset_dir(dir);
  if (!r.ok()) {
    for (const std::string &f: r.failures) {
      err << "invariant violation: " << f << "\n";
    }
    return kExitInvariant;
  }
  out << "ok " << r.stats.dataset_name << " " << r.stats.total_samples
      << " samples\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err) {
  CLI::App app { "Build out-of-distribution bioactivity datasets", "curator" };
  app.require_subcommand(1);

  CurateArgs curate_args;
  CLI::App *curate = app.add_subcommand("curate", "Run a curation recipe");
  auto *config_opt =
      curate->add_option("--config", curate_args.config, "JSON recipe");
  auto *preset_opt = curate->add_option(
      "--preset", curate_args.preset,
      "task,noise,measurement,domain or a dataset name");
  config_opt->excludes(preset_opt);
  curate->add_option("--source", curate_args.source,
                     "ChEMBL SQLite export or flat dump");
  curate->add_option("--out", curate_args.out, "Output root directory");
  curate->add_option("--seed", curate_args.seed, "Split seed");
  curate->add_option("--jobs", curate_args.jobs, "Worker threads")
      ->check(CLI::PositiveNumber);
  curate->add_flag("--force", curate_args.force,
                   "Overwrite a dataset built from another config");
  curate->add_option("--format", curate_args.format,
                     "Stats output: table-text, json or csv");

  CLI::App *presets = app.add_subcommand("presets", "List built-in presets");

  std::vector<std::string> stats_dirs;
  std::string stats_format = "table-text";
  CLI::App *stats = app.add_subcommand("stats", "Render dataset statistics");
  stats->add_option("--dir", stats_dirs, "Dataset directory")->required();
  stats->add_option("--format", stats_format,
                    "table-text, json or csv");

  std::optional<std::string> synth_spec;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  CLI::App *synth = app.add_subcommand("synth", "Write a synthetic source");
  synth->add_option("--spec", synth_spec, "Generator knobs as JSON");
  synth->add_option("--seed", synth_seed, "Generator seed");
  synth->add_option("--out", synth_out, "Output flat dump")->required();

  std::string validate_dir;
  CLI::App *validate =
      app.add_subcommand("validate", "Re-check a written dataset");
  validate->add_option("--dir", validate_dir, "Dataset directory")->required();

  std::vector<const char *> argv = { "curator" };
  for (const std::string &a: args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error[usage]: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (curate->parsed()) {
      return cmd_curate(curate_args, out, err);
    }
    if (presets->parsed()) {
      return cmd_presets(out);
    }
    if (stats->parsed()) {
      return cmd_stats(stats_dirs, stats_format, out, err);
    }
    if (synth->parsed()) {
      return cmd_synth(synth_spec, synth_seed, synth_out, err);
    }
    return cmd_validate(validate_dir, out, err);
  } catch (const Error &e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace curator::cli
