#include "connections/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "connections/http_provider.hpp"
#include "connections/oracle.hpp"

namespace connections {

namespace {

std::string transcript_file_name(std::string_view approach, int puzzle_id) {
  return std::string(approach) + "-" + std::to_string(puzzle_id) + ".jsonl";
}

std::string pct_string(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

ProviderSpec provider_spec_from_json(const nlohmann::json& j) {
  ProviderSpec spec;
  auto kind = j.value("kind", std::string("oracle"));
  if (kind == "oracle") {
    spec.kind = ProviderSpec::Kind::Oracle;
  } else if (kind == "oracle_red_herring") {
    spec.kind = ProviderSpec::Kind::OracleRedHerring;
  } else if (kind == "script") {
    spec.kind = ProviderSpec::Kind::Script;
    spec.path = j.at("path").get<std::string>();
  } else if (kind == "live") {
    spec.kind = ProviderSpec::Kind::Live;
    spec.endpoint = j.at("endpoint").get<std::string>();
    spec.timeout = std::chrono::seconds(j.value("timeout_s", 120));
    if (j.contains("retry")) {
      const auto& r = j["retry"];
      spec.retry.max_attempts = r.value("max_attempts", spec.retry.max_attempts);
      spec.retry.initial_delay =
          std::chrono::milliseconds(r.value("initial_delay_ms", 250));
      spec.retry.multiplier = r.value("multiplier", spec.retry.multiplier);
    }
  } else if (kind == "replay") {
    spec.kind = ProviderSpec::Kind::Replay;
    spec.path = j.at("path").get<std::string>();
  } else {
    throw ConfigError("unknown provider kind \"" + kind + "\"");
  }
  return spec;
}

/// Per-puzzle scripts: a JSON object mapping puzzle id to a completion list.
std::vector<std::string> script_for_puzzle(const std::filesystem::path& path, int puzzle_id) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script file: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad script file " + path.string() + ": " + e.what());
  }
  auto key = std::to_string(puzzle_id);
  if (!doc.contains(key)) {
    throw ConfigError("script file has no entry for puzzle " + key);
  }
  return doc[key].get<std::vector<std::string>>();
}

struct GameJob {
  Puzzle puzzle;
  ApproachConfig cfg;
  std::shared_ptr<CompletionProvider> provider;
};

Transcript synthetic_aborted(const Puzzle& puzzle, const ApproachConfig& cfg,
                             const std::string& reason) {
  Transcript t;
  t.game_id = std::string(to_string(cfg.approach)) + "-" + std::to_string(puzzle.id());
  t.puzzle_id = puzzle.id();
  t.puzzle_difficulty = puzzle.difficulty();
  t.approach = std::string(to_string(cfg.approach));
  t.model_id = cfg.model_id;
  t.config = approach_config_to_json(cfg);
  t.rng_seed = cfg.rng_seed;
  t.add(EventType::GameEnded, {{"score",
                                {{"solved", false}, {"perfect", false}, {"correct", 0}, {"incorrect", 0}}},
                               {"aborted", true},
                               {"abort_reason", reason}});
  return t;
}

/// Runs jobs across a small pool and writes one transcript file each.
void run_jobs(std::vector<GameJob>& jobs, const PromptCatalog& catalog,
              const std::filesystem::path& transcripts_dir, int parallelism) {
  std::atomic<size_t> next{0};
  std::vector<std::string> fatal;
  std::mutex fatal_mutex;

  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      auto& job = jobs[i];
      Transcript transcript;
      try {
        transcript = run_approach(job.puzzle, *job.provider, catalog, job.cfg);
      } catch (const Error& e) {
        transcript = synthetic_aborted(job.puzzle, job.cfg, std::string("runner_error: ") + e.what());
      } catch (const std::exception& e) {
        std::lock_guard lock(fatal_mutex);
        fatal.emplace_back(e.what());
        return;
      }
      try {
        write_jsonl_file(transcript,
                         transcripts_dir / transcript_file_name(transcript.approach,
                                                                transcript.puzzle_id));
      } catch (const std::exception& e) {
        std::lock_guard lock(fatal_mutex);
        fatal.emplace_back(e.what());
      }
    }
  };

  int n = std::max(1, std::min<int>(parallelism, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  if (!fatal.empty()) throw Error("experiment failed: " + fatal.front());
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  if (!j.contains("dataset")) throw ConfigError("config needs a \"dataset\" path");
  cfg.dataset = j["dataset"].get<std::string>();
  if (j.contains("approach")) cfg.approach = approach_config_from_json(j["approach"]);
  if (j.contains("provider")) cfg.provider = provider_spec_from_json(j["provider"]);
  cfg.parallelism = j.value("parallelism", cfg.parallelism);
  if (cfg.parallelism < 1) throw ConfigError("parallelism must be >= 1");
  cfg.seed = j.value("seed", cfg.seed);
  cfg.out = std::filesystem::path(j.value("out", cfg.out.string()));
  cfg.prompts_dir = std::filesystem::path(j.value("prompts_dir", cfg.prompts_dir.string()));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("bad config file " + path.string() + ": " + e.what());
  }
  return run_config_from_json(doc);
}

uint64_t per_game_seed(uint64_t global_seed, int puzzle_id) {
  return fnv1a64(std::to_string(global_seed) + ":" + std::to_string(puzzle_id));
}

ColorBreakdown color_breakdown(const std::vector<Transcript>& transcripts,
                               const std::vector<Puzzle>& dataset) {
  std::map<int, double> known;
  for (const auto& p : dataset) known[p.id()] = p.difficulty();

  ColorBreakdown breakdown;
  for (const auto& t : transcripts) {
    if (!known.count(t.puzzle_id)) throw UnknownPuzzleIdError(t.puzzle_id);
    auto score = t.final_score();
    if (score.correct_count < 1 || score.correct_count > 3) continue;
    ++breakdown.partial_games;
    for (const auto* e : t.all_of(EventType::OutcomeRecorded)) {
      if (e->data.value("result", "") != "correct") continue;
      auto color = color_from_string(e->data.value("color", ""));
      if (color) ++breakdown.counts[static_cast<size_t>(*color)];
    }
  }
  return breakdown;
}

Metrics compute_metrics(const std::vector<Transcript>& transcripts,
                        const std::vector<Puzzle>& dataset) {
  std::map<int, double> difficulty;
  for (const auto& p : dataset) difficulty[p.id()] = p.difficulty();

  Metrics m;
  if (!transcripts.empty()) m.approach = transcripts.front().approach;
  m.games = static_cast<int>(transcripts.size());

  int scored = 0;
  for (const auto& t : transcripts) {
    auto it = difficulty.find(t.puzzle_id);
    if (it == difficulty.end()) throw UnknownPuzzleIdError(t.puzzle_id);
    auto score = t.final_score();
    m.correct_total += score.correct_count;
    m.incorrect_total += score.incorrect_count;
    if (t.aborted()) {
      ++m.aborted;
      continue;
    }
    ++scored;
    auto bucket = static_cast<size_t>(difficulty_bucket(it->second));
    ++m.buckets[bucket].games;
    if (score.solved) {
      ++m.solved;
      ++m.buckets[bucket].solved;
    }
    if (score.perfect) ++m.perfect;
  }

  if (scored > 0) {
    m.solved_pct = 100.0 * m.solved / scored;
    m.perfect_pct = 100.0 * m.perfect / scored;
  }
  for (auto& bucket : m.buckets) {
    if (bucket.games > 0) bucket.solved_pct = 100.0 * bucket.solved / bucket.games;
  }

  long divisor = std::gcd(m.correct_total, m.incorrect_total);
  if (divisor == 0) divisor = 1;
  m.good_bad_ratio = std::to_string(m.correct_total / divisor) + ":" +
                     std::to_string(m.incorrect_total / divisor);
  m.colors = color_breakdown(transcripts, dataset);
  return m;
}

nlohmann::json metrics_to_json(const Metrics& m) {
  nlohmann::json buckets;
  for (size_t i = 0; i < kAllBuckets.size(); ++i) {
    buckets[std::string(to_string(kAllBuckets[i]))] = {{"games", m.buckets[i].games},
                                                       {"solved", m.buckets[i].solved},
                                                       {"solved_pct", m.buckets[i].solved_pct}};
  }
  nlohmann::json colors;
  for (auto color : kAllColors) {
    colors[std::string(to_string(color))] = m.colors.counts[static_cast<size_t>(color)];
  }
  colors["partial_games"] = m.colors.partial_games;
  return {{"approach", m.approach},
          {"games", m.games},
          {"aborted", m.aborted},
          {"solved", m.solved},
          {"perfect", m.perfect},
          {"solved_pct", m.solved_pct},
          {"perfect_pct", m.perfect_pct},
          {"correct_total", m.correct_total},
          {"incorrect_total", m.incorrect_total},
          {"good_bad_ratio", m.good_bad_ratio},
          {"buckets", std::move(buckets)},
          {"color_breakdown", std::move(colors)}};
}

std::string report_csv(const std::vector<Metrics>& rows) {
  std::string csv =
      "approach,puzzles,solved_pct,perfect_pct,correct_total,incorrect_total,"
      "solved_pct_below_2_5,solved_pct_2_5_to_3,solved_pct_3_to_3_5,solved_pct_above_3_5\n";
  for (const auto& m : rows) {
    csv += m.approach + "," + std::to_string(m.games) + "," + pct_string(m.solved_pct) + "," +
           pct_string(m.perfect_pct) + "," + std::to_string(m.correct_total) + "," +
           std::to_string(m.incorrect_total);
    for (const auto& bucket : m.buckets) csv += "," + pct_string(bucket.solved_pct);
    csv += "\n";
  }
  return csv;
}

std::vector<Transcript> load_transcript_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("transcript directory does not exist: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Transcript> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(read_jsonl_file(f));
  return out;
}

RunReport write_reports(const std::vector<Transcript>& transcripts,
                        const std::vector<Puzzle>& dataset, const std::filesystem::path& out) {
  std::map<std::string, std::vector<Transcript>> by_approach;
  for (const auto& t : transcripts) by_approach[t.approach].push_back(t);

  RunReport report;
  report.out = out;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [approach, group] : by_approach) {
    auto metrics = compute_metrics(group, dataset);
    report.games += metrics.games;
    report.aborted += metrics.aborted;
    rows.push_back(metrics_to_json(metrics));
    report.per_approach.push_back(std::move(metrics));
  }

  std::filesystem::create_directories(out);
  {
    std::ofstream json_out(out / "report.json", std::ios::binary);
    if (!json_out) throw Error("cannot write report.json under " + out.string());
    json_out << nlohmann::json{{"schema_version", 1}, {"approaches", rows}}.dump(2) << '\n';
  }
  {
    std::ofstream csv_out(out / "report.csv", std::ios::binary);
    if (!csv_out) throw Error("cannot write report.csv under " + out.string());
    csv_out << report_csv(report.per_approach);
  }
  return report;
}

RunReport run_experiment(const RunConfig& cfg) {
  auto catalog = PromptCatalog::load(cfg.prompts_dir);
  auto puzzles = load_archive(cfg.dataset);
  auto transcripts_dir = cfg.out / "transcripts";
  std::filesystem::create_directories(transcripts_dir);

  std::vector<GameJob> jobs;
  jobs.reserve(puzzles.size());
  for (const auto& puzzle : puzzles) {
    GameJob job{puzzle, cfg.approach, nullptr};
    job.cfg.rng_seed = per_game_seed(cfg.seed, puzzle.id());

    switch (cfg.provider.kind) {
      case ProviderSpec::Kind::Oracle:
        job.provider = std::make_shared<OracleProvider>(puzzle);
        break;
      case ProviderSpec::Kind::OracleRedHerring: {
        OracleOptions options;
        options.red_herring = OracleProvider::cross_group_herring(puzzle);
        options.naive_picks = true;
        job.provider = std::make_shared<OracleProvider>(puzzle, options);
        break;
      }
      case ProviderSpec::Kind::Script:
        job.provider =
            std::make_shared<ScriptedProvider>(script_for_puzzle(cfg.provider.path, puzzle.id()));
        break;
      case ProviderSpec::Kind::Live: {
        HttpProviderConfig http;
        http.endpoint = cfg.provider.endpoint;
        http.timeout = cfg.provider.timeout;
        job.provider = with_retries(std::make_shared<HttpChatProvider>(http), cfg.provider.retry);
        break;
      }
      case ProviderSpec::Kind::Replay: {
        auto recorded = read_jsonl_file(
            cfg.provider.path / transcript_file_name(to_string(cfg.approach.approach), puzzle.id()));
        job.cfg = approach_config_from_json(recorded.config);
        job.cfg.rng_seed = recorded.rng_seed;
        job.provider = std::make_shared<ReplayProvider>(recorded.recorded_calls());
        break;
      }
    }
    jobs.push_back(std::move(job));
  }

  run_jobs(jobs, catalog, transcripts_dir, cfg.parallelism);

  // Metrics always come from what actually landed on disk.
  auto transcripts = load_transcript_dir(transcripts_dir);
  return write_reports(transcripts, puzzles, cfg.out);
}

RunReport replay_experiment(const std::filesystem::path& dataset,
                            const std::filesystem::path& prompts_dir,
                            const std::filesystem::path& from_dir,
                            const std::filesystem::path& out_dir, int parallelism) {
  auto catalog = PromptCatalog::load(prompts_dir);
  auto puzzles = load_archive(dataset);
  std::map<int, const Puzzle*> by_id;
  for (const auto& p : puzzles) by_id[p.id()] = &p;

  auto recorded = load_transcript_dir(from_dir);
  std::vector<GameJob> jobs;
  jobs.reserve(recorded.size());
  for (const auto& r : recorded) {
    auto it = by_id.find(r.puzzle_id);
    if (it == by_id.end()) throw UnknownPuzzleIdError(r.puzzle_id);
    GameJob job{*it->second, approach_config_from_json(r.config), nullptr};
    job.cfg.rng_seed = r.rng_seed;
    job.provider = std::make_shared<ReplayProvider>(r.recorded_calls());
    jobs.push_back(std::move(job));
  }

  auto transcripts_dir = out_dir / "transcripts";
  std::filesystem::create_directories(transcripts_dir);
  run_jobs(jobs, catalog, transcripts_dir, parallelism);

  auto transcripts = load_transcript_dir(transcripts_dir);
  return write_reports(transcripts, puzzles, out_dir);
}

}  // namespace connections
