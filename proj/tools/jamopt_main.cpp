#include "jamopt/config.hpp"
#include "jamopt/errors.hpp"
#include "jamopt/mission.hpp"
#include "jamopt/report_io.hpp"
#include "jamopt/validation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> step;
  std::optional<int> multistart;
  bool quiet = false;
};

// Flags override the corresponding config fields.
void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config file (JSON)")
      ->required();
  cmd->add_option("--out", args.out_dir,
                  "Directory for trajectory.csv, comms.csv, summary.json")
      ->capture_default_str();
  cmd->add_option("--step", args.step, "Integrator step in seconds");
  cmd->add_option("--multistart", args.multistart,
                  "Cap on reposition solver starting points");
  cmd->add_flag("--quiet", args.quiet, "Suppress the stdout summary");
}

jamopt::ScenarioConfig effective_config(const RunArgs& args) {
  jamopt::ScenarioConfig cfg = jamopt::load_config(args.config_path);
  if (args.step) {
    cfg.step_s = *args.step;
  }
  if (args.multistart) {
    cfg.multistart = *args.multistart;
  }
  jamopt::validate(cfg);
  return cfg;
}

void print_run_summary(const jamopt::MissionReport& rep,
                       const std::string& out_dir) {
  if (!rep.stage1.trajectory.empty()) {
    std::printf("reposition: delta-v %.4f m/s, cost %.6f, %d newton iters, "
                "%d roots\n",
                rep.stage1.delta_v, rep.stage1.total_cost,
                rep.stage1.newton_iterations, rep.stage1.roots_found);
  }
  if (!rep.stage2.trajectory.empty()) {
    std::printf("cruise:     delta-v %.4f m/s, cost %.6f, terminal costate "
                "%.2e%s\n",
                rep.stage2.delta_v, rep.stage2.total_cost,
                rep.stage2.terminal_costate_norm,
                rep.stage2.used_multiple_shooting ? " (multiple shooting)"
                                                  : "");
  }
  std::printf("total delta-v %.4f m/s; window SINR min %.3f dB, max %.3f dB\n",
              rep.total_delta_v, rep.min_sinr_db_window,
              rep.max_sinr_db_window);
  std::printf("wrote %s/trajectory.csv, comms.csv, summary.json\n",
              out_dir.c_str());
}

int cmd_mission(const RunArgs& args) {
  const jamopt::ScenarioConfig cfg = effective_config(args);
  const jamopt::MissionReport rep = jamopt::run_mission(cfg);
  jamopt::write_output_bundle(args.out_dir, rep, cfg);
  if (!args.quiet) {
    print_run_summary(rep, args.out_dir);
  }
  return 0;
}

int cmd_stage(const std::string& which, const RunArgs& args) {
  const jamopt::ScenarioConfig cfg = effective_config(args);
  const jamopt::MissionReport rep = which == "reposition"
                                        ? jamopt::run_reposition_stage(cfg)
                                        : jamopt::run_cruise_stage(cfg);
  jamopt::write_output_bundle(args.out_dir, rep, cfg);
  if (!args.quiet) {
    print_run_summary(rep, args.out_dir);
  }
  return 0;
}

int cmd_validate(bool quiet) {
  const std::vector<jamopt::CheckResult> results =
      jamopt::run_validation_suite();
  int failures = 0;
  for (const jamopt::CheckResult& r : results) {
    if (!r.passed) {
      ++failures;
    }
    if (!quiet || !r.passed) {
      std::printf("%-38s %s  value %10.3e  bound %10.3e%s%s\n", r.name.c_str(),
                  r.passed ? "pass" : "FAIL", r.value, r.bound,
                  r.note.empty() ? "" : "  ", r.note.c_str());
    }
  }
  if (!quiet) {
    std::printf("%zu checks, %d failed\n", results.size(), failures);
  }
  return failures == 0 ? 0 : 1;
}

int emit_error(const std::string& type, const std::string& message, int code) {
  const nlohmann::json record = {
      {"error",
       {{"type", type}, {"message", message}, {"exit_code", code}}}};
  std::cerr << record.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuel-optimal uplink-interference maneuver planner"};
  app.require_subcommand(1);

  RunArgs mission_args;
  CLI::App* mission = app.add_subcommand(
      "mission", "Run both stages and write the output bundle");
  add_run_options(mission, mission_args);

  RunArgs stage_args;
  std::string stage_name;
  CLI::App* stage =
      app.add_subcommand("stage", "Run a single stage from a config");
  stage->add_option("name", stage_name, "Which stage: reposition or cruise")
      ->required()
      ->check(CLI::IsMember({"reposition", "cruise"}));
  add_run_options(stage, stage_args);

  bool validate_quiet = false;
  CLI::App* validate =
      app.add_subcommand("validate", "Run the built-in self-check suite");
  validate->add_flag("--quiet", validate_quiet,
                     "Print only failing checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) {
      return 0;  // --help and friends
    }
    return emit_error("usage", e.what(), 2);
  }

  try {
    if (mission->parsed()) {
      return cmd_mission(mission_args);
    }
    if (stage->parsed()) {
      return cmd_stage(stage_name, stage_args);
    }
    if (validate->parsed()) {
      return cmd_validate(validate_quiet);
    }
  } catch (const jamopt::ConfigError& e) {
    return emit_error("config", e.what(), 2);
  } catch (const jamopt::IoError& e) {
    return emit_error("io", e.what(), 4);
  } catch (const jamopt::SolverError& e) {
    return emit_error("solver", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
  return 1;
}
