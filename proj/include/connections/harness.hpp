#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "connections/approaches.hpp"
#include "connections/dataset.hpp"
#include "connections/provider.hpp"
#include "connections/transcript.hpp"

namespace connections {

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

class UnknownPuzzleIdError : public Error {
 public:
  explicit UnknownPuzzleIdError(int puzzle_id)
      : Error("transcript references puzzle " + std::to_string(puzzle_id) +
              " which is not in the dataset"),
        puzzle_id_(puzzle_id) {}
  int puzzle_id() const { return puzzle_id_; }

 private:
  int puzzle_id_;
};

struct ProviderSpec {
  enum class Kind { Oracle, OracleRedHerring, Script, Live, Replay };
  Kind kind = Kind::Oracle;
  std::filesystem::path path;  // script file or replay transcript directory
  std::string endpoint;        // live only
  std::chrono::seconds timeout{120};
  RetryPolicy retry;
};

struct RunConfig {
  std::filesystem::path dataset;
  ApproachConfig approach;
  ProviderSpec provider;
  int parallelism = 4;
  uint64_t seed = 0;
  std::filesystem::path out = "out";
  std::filesystem::path prompts_dir = "prompts";
};

RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Seed for one game, derived so that runs are reproducible per puzzle no
/// matter the execution order.
uint64_t per_game_seed(uint64_t global_seed, int puzzle_id);

struct BucketStats {
  int games = 0;
  int solved = 0;
  double solved_pct = 0.0;
};

struct ColorBreakdown {
  std::array<int, 4> counts{};  // indexed by GroupColor
  int partial_games = 0;
};

struct Metrics {
  std::string approach;
  int games = 0;
  int aborted = 0;
  int solved = 0;
  int perfect = 0;
  double solved_pct = 0.0;   // over non-aborted games
  double perfect_pct = 0.0;  // over non-aborted games
  long correct_total = 0;
  long incorrect_total = 0;
  std::string good_bad_ratio;  // reduced "correct:incorrect"
  std::array<BucketStats, 4> buckets{};  // indexed like kAllBuckets
  ColorBreakdown colors;
};

/// Aggregates one approach's transcripts. Every transcript's puzzle must be
/// present in the dataset.
Metrics compute_metrics(const std::vector<Transcript>& transcripts,
                        const std::vector<Puzzle>& dataset);

/// Colors of the correct groups across games that ended with one to three
/// correct groups (won games are excluded by construction).
ColorBreakdown color_breakdown(const std::vector<Transcript>& transcripts,
                               const std::vector<Puzzle>& dataset);

nlohmann::json metrics_to_json(const Metrics& metrics);
std::string report_csv(const std::vector<Metrics>& rows);

struct RunReport {
  std::vector<Metrics> per_approach;  // sorted by approach name
  int games = 0;
  int aborted = 0;
  std::filesystem::path out;
};

/// Runs one experiment: a transcript file per puzzle is written first, then
/// metrics are recomputed from the files on disk and written as report.json
/// and report.csv. Per-game failures become aborted transcripts.
RunReport run_experiment(const RunConfig& cfg);

/// Re-runs recorded games against replay providers built from their own
/// transcripts. Approach config and seed come from each recorded header.
RunReport replay_experiment(const std::filesystem::path& dataset,
                            const std::filesystem::path& prompts_dir,
                            const std::filesystem::path& from_dir,
                            const std::filesystem::path& out_dir, int parallelism = 4);

/// Loads every *.jsonl transcript under dir, sorted by file name.
std::vector<Transcript> load_transcript_dir(const std::filesystem::path& dir);

/// Builds per-approach metrics over a mixed transcript set and writes
/// report.json / report.csv into out.
RunReport write_reports(const std::vector<Transcript>& transcripts,
                        const std::vector<Puzzle>& dataset, const std::filesystem::path& out);

}  // namespace connections
