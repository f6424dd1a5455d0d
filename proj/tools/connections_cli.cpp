#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "connections/dataset.hpp"
#include "connections/harness.hpp"
#include "connections/prompt_kit.hpp"

namespace {

using namespace connections;

void print_report(const RunReport& report) {
  for (const auto& m : report.per_approach) {
    std::cout << m.approach << ": " << m.games << " game(s), " << m.solved_pct
              << "% solved, " << m.perfect_pct << "% perfect, good:bad " << m.good_bad_ratio;
    if (m.aborted > 0) std::cout << ", " << m.aborted << " aborted";
    std::cout << "\n";
  }
  std::cout << "reports written to " << report.out.string() << "\n";
}

int cmd_run(const std::string& config_path, const std::optional<std::string>& out,
            const std::optional<uint64_t>& seed, const std::optional<int>& parallelism,
            const std::optional<std::string>& approach, const std::optional<std::string>& model,
            const std::optional<std::string>& prompts) {
  auto cfg = load_run_config(config_path);
  if (out) cfg.out = *out;
  if (seed) cfg.seed = *seed;
  if (parallelism) cfg.parallelism = *parallelism;
  if (approach) {
    auto id = approach_from_string(*approach);
    if (!id) throw ConfigError("unknown approach \"" + *approach + "\"");
    cfg.approach.approach = *id;
  }
  if (model) cfg.approach.model_id = *model;
  if (prompts) cfg.prompts_dir = *prompts;

  auto report = run_experiment(cfg);
  print_report(report);
  if (report.aborted > 0) {
    std::cerr << "warning: " << report.aborted << " game(s) aborted; see transcripts for details\n";
  }
  return 0;
}

int cmd_replay(const std::string& from, const std::string& dataset, const std::string& prompts,
               const std::string& out, int parallelism) {
  auto report = replay_experiment(dataset, prompts, from, out, parallelism);
  print_report(report);
  return 0;
}

int cmd_report(const std::string& transcripts_dir, const std::optional<std::string>& dataset_path,
               const std::optional<std::string>& out) {
  auto transcripts = load_transcript_dir(transcripts_dir);

  std::vector<Puzzle> dataset;
  if (dataset_path) {
    dataset = load_archive(*dataset_path);
  } else {
    // Transcript headers carry enough of the puzzle (id and difficulty) to
    // aggregate without the archive.
    std::vector<int> seen;
    for (const auto& t : transcripts) {
      if (std::find(seen.begin(), seen.end(), t.puzzle_id) != seen.end()) continue;
      seen.push_back(t.puzzle_id);
      RawPuzzleRecord record;
      record.id = t.puzzle_id;
      record.date = "1970-01-01";
      record.difficulty = t.puzzle_difficulty;
      for (auto color : kAllColors) {
        RawGroupRecord group;
        group.category = "unknown";
        group.color = std::string(to_string(color));
        for (int i = 0; i < 4; ++i) {
          group.words.push_back("PLACEHOLDER_" + std::string(to_string(color)) + "_" +
                                std::to_string(i));
        }
        record.groups.push_back(std::move(group));
      }
      dataset.push_back(validate_puzzle(record));
    }
  }

  auto report = write_reports(transcripts, dataset,
                              out ? std::filesystem::path(*out)
                                  : std::filesystem::path(transcripts_dir).parent_path());
  print_report(report);
  return 0;
}

int cmd_validate(const std::string& archive_path) {
  auto puzzles = load_archive(archive_path);
  std::cout << puzzles.size() << " puzzle" << (puzzles.size() == 1 ? "" : "s") << " OK\n";
  return 0;
}

int cmd_prompts(const std::string& dir, const std::optional<std::string>& dump_id) {
  auto catalog = PromptCatalog::load(dir);
  if (dump_id) {
    std::cout << catalog.get(*dump_id).body;
    return 0;
  }
  for (const auto& id : catalog.ids()) {
    std::cout << id << "  " << catalog.checksum(id) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plays Connections word puzzles through pluggable completion providers"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute an experiment from a config file");
  std::string run_config;
  std::optional<std::string> run_out, run_approach, run_model, run_prompts;
  std::optional<uint64_t> run_seed;
  std::optional<int> run_parallelism;
  run->add_option("--config", run_config, "Run config JSON")->required();
  run->add_option("--out", run_out, "Output directory override");
  run->add_option("--seed", run_seed, "Global seed override");
  run->add_option("--parallelism", run_parallelism, "Concurrent games override");
  run->add_option("--approach", run_approach, "Approach override");
  run->add_option("--model", run_model, "Model id override");
  run->add_option("--prompts", run_prompts, "Prompt catalog directory override");

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run games from recorded transcripts");
  std::string replay_from, replay_dataset, replay_out;
  std::string replay_prompts = "prompts";
  int replay_parallelism = 4;
  replay->add_option("--from", replay_from, "Directory of recorded transcripts")->required();
  replay->add_option("--dataset", replay_dataset, "Archive file the games were played on")->required();
  replay->add_option("--out", replay_out, "Output directory")->required();
  replay->add_option("--prompts", replay_prompts, "Prompt catalog directory");
  replay->add_option("--parallelism", replay_parallelism, "Concurrent games");

  // report
  auto* report = app.add_subcommand("report", "Compute metrics from a transcript directory");
  std::string report_dir;
  std::optional<std::string> report_dataset, report_out;
  report->add_option("transcripts", report_dir, "Transcript directory")->required();
  report->add_option("--dataset", report_dataset, "Archive file (for difficulty buckets)");
  report->add_option("--out", report_out, "Where to write report.json/report.csv");

  // validate
  auto* validate = app.add_subcommand("validate", "Check an archive file");
  std::string validate_path;
  validate->add_option("archive", validate_path, "Archive JSON file")->required();

  // prompts
  auto* prompts = app.add_subcommand("prompts", "List or dump the template catalog");
  std::string prompts_dir = "prompts";
  std::optional<std::string> prompts_dump;
  prompts->add_option("--dir", prompts_dir, "Catalog directory");
  prompts->add_option("--dump", prompts_dump, "Print one template body");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_config, run_out, run_seed, run_parallelism, run_approach, run_model,
                     run_prompts);
    }
    if (replay->parsed()) {
      return cmd_replay(replay_from, replay_dataset, replay_prompts, replay_out,
                        replay_parallelism);
    }
    if (report->parsed()) return cmd_report(report_dir, report_dataset, report_out);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (prompts->parsed()) return cmd_prompts(prompts_dir, prompts_dump);
  } catch (const connections::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
