#include "oml/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <optional>
#include <thread>

#include "oml/error.hpp"
#include "oml/measure.hpp"
#include "oml/report.hpp"
#include "oml/text.hpp"
#include "oml/verify.hpp"

namespace oml {

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = kExitPass;
  std::string message;
  std::optional<ExperimentReport> report;
  std::optional<MaximalField> field;
};

Outcome run_one(const Config& cfg, const std::string& id, bool sidecar) {
  Outcome o;
  const ExperimentInfo* info = find_experiment(id);
  try {
    const ExperimentConfig ecfg(cfg, id);
    o.report = info->run(ecfg);
    if (sidecar) o.field = sidecar_field(ecfg);
    o.code = o.report->passed ? kExitPass : kExitFail;
    o.message = id + ": " + (o.report->passed ? "pass" : "fail") + " empirical_C=" +
                format_sig12(o.report->empirical_C) + " drift=" + format_sig12(o.report->refinement_drift);
  } catch (const HypothesisError& e) {
    o.code = kExitHypothesis;
    o.report.reset();
    o.message = id + ": hypothesis error: " + e.what();
  } catch (const ParseError& e) {
    o.code = kExitInput;
    o.message = id + ": parse error at " + e.what();
  } catch (const ConfigError& e) {
    o.code = kExitInput;
    o.message = id + ": configuration error: " + e.what();
  } catch (const Error& e) {
    o.code = kExitFail;
    o.message = id + ": error: " + e.what();
  }
  return o;
}

std::vector<Outcome> dispatch(const Config& cfg, const std::vector<std::string>& ids, int jobs, bool sidecar) {
  std::vector<Outcome> outcomes(ids.size());
  const auto workers = static_cast<std::size_t>(std::max(1, std::min<int>(jobs, static_cast<int>(ids.size()))));
  if (workers == 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) outcomes[i] = run_one(cfg, ids[i], sidecar);
    return outcomes;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < ids.size(); i = next++) outcomes[i] = run_one(cfg, ids[i], sidecar);
    });
  for (auto& t : pool) t.join();
  return outcomes;
}

int cmd_list(bool verbose, const std::string& format, std::ostream& out) {
  const auto& reg = experiment_registry();
  if (format == "csv") {
    out << "id,summary" << (verbose ? ",statement" : "") << '\n';
    for (const auto& e : reg) {
      out << csv_field(std::string(e.id)) << ',' << csv_field(std::string(e.summary));
      if (verbose) out << ',' << csv_field(std::string(e.statement));
      out << '\n';
    }
    return kExitPass;
  }
  std::size_t width = 0;
  for (const auto& e : reg) width = std::max(width, e.id.size());
  for (const auto& e : reg) {
    out << e.id << std::string(width + 2 - e.id.size(), ' ') << e.summary << '\n';
    if (verbose) out << std::string(width + 2, ' ') << e.statement << '\n';
  }
  return kExitPass;
}

int cmd_run(const std::string& config_path, std::string out_dir, const std::optional<std::string>& seed,
            const std::optional<int>& jobs, const std::vector<std::string>& overrides, bool sidecar,
            std::ostream& out, std::ostream& err) {
  Config cfg;
  std::vector<std::string> ids;
  try {
    cfg = Config::load(config_path);
    for (const auto& o : overrides) cfg.apply_override(o);
    if (seed) cfg.set("seed", *seed);
    if (jobs) cfg.set("jobs", std::to_string(*jobs));
    cfg.seed();
    ids = cfg.experiments();
    if (ids.empty()) throw ConfigError("exp.id lists no experiments");
    for (const auto& id : ids)
      if (!find_experiment(id)) throw ConfigError("unknown experiment id '" + id + "'");
  } catch (const ParseError& e) {
    err << config_path << ": " << e.what() << '\n';
    return kExitInput;
  } catch (const Error& e) {
    err << config_path << ": " << e.what() << '\n';
    return kExitInput;
  }

  if (out_dir.empty()) {
    const char* env = std::getenv("OML_OUT");
    out_dir = env && *env ? env : "out";
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    err << "cannot create " << out_dir << ": " << ec.message() << '\n';
    return kExitInput;
  }

  int jobs_n = 1;
  try {
    jobs_n = cfg.jobs();
  } catch (const Error& e) {
    err << config_path << ": " << e.what() << '\n';
    return kExitInput;
  }

  const auto outcomes = dispatch(cfg, ids, jobs_n, sidecar);
  int code = kExitPass;
  for (const auto& o : outcomes) {
    code = std::max(code, o.code);
    (o.code == kExitPass || o.code == kExitFail ? out : err) << o.message << '\n';
    if (o.report) write_report_files(out_dir, *o.report);
    if (o.field) {
      std::ofstream argmax(fs::path(out_dir) / (o.report->id + "_argmax.csv"), std::ios::binary);
      write_argmax_csv(argmax, *o.field);
      std::ofstream atoms(fs::path(out_dir) / (o.report->id + "_field.csv"), std::ios::binary);
      write_atoms(atoms, o.field->values);
    }
  }
  return code;
}

int cmd_report(const std::string& dir, std::ostream& out, std::ostream& err) {
  try {
    const auto rows = collect_summaries(dir);
    std::ofstream csv(fs::path(dir) / "consolidated.csv", std::ios::binary);
    if (!csv) throw ConfigError("cannot write " + (fs::path(dir) / "consolidated.csv").string());
    write_consolidated(csv, out, rows);
    return kExitPass;
  } catch (const Error& e) {
    err << dir << ": " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orlicz maximal operator experiments", "oml"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the registered experiments");
  bool verbose = false;
  std::string format = "text";
  list->add_flag("--verbose", verbose, "Show the statement checked by each experiment");
  list->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  auto* run = app.add_subcommand("run", "Run the experiments named in a config file");
  std::string config_path;
  std::string out_dir;
  std::string seed_text;
  int jobs = 0;
  std::vector<std::string> overrides;
  bool sidecar = false;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory (default $OML_OUT or ./out)");
  auto* seed_opt = run->add_option("--seed", seed_text, "Seed (unsigned 64-bit)");
  auto* jobs_opt = run->add_option("--jobs", jobs, "Parallel experiments")->check(CLI::PositiveNumber);
  run->add_option("--override", overrides, "KEY=VALUE, or KEY=+DELTA for a relative change")->allow_extra_args(false);
  run->add_flag("--argmax", sidecar, "Also write the maximal field and its maximizing cubes");

  auto* report = app.add_subcommand("report", "Merge the summaries found below a directory");
  std::string report_dir;
  report->add_option("dir", report_dir, "Directory holding *_summary.csv files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitPass : kExitInput;
  }

  if (*list) return cmd_list(verbose, format, out);
  if (*run) {
    std::optional<std::string> seed;
    if (*seed_opt) seed = seed_text;
    std::optional<int> jobs_override;
    if (*jobs_opt) jobs_override = jobs;
    return cmd_run(config_path, out_dir, seed, jobs_override, overrides, sidecar, out, err);
  }
  return cmd_report(report_dir, out, err);
}

}  // namespace oml
