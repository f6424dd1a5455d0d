#include "connections/approaches.hpp"

#include <algorithm>
#include <cctype>

namespace connections {

namespace {

constexpr std::array<std::pair<ApproachId, std::string_view>, 8> kApproachNames = {{
    {ApproachId::Vanilla, "vanilla"},
    {ApproachId::CoT, "cot"},
    {ApproachId::CoTScripted, "cot_scripted"},
    {ApproachId::Actor, "actor"},
    {ApproachId::Actor2, "actor2"},
    {ApproachId::Oneshot, "oneshot"},
    {ApproachId::VanillaO1, "vanilla_o1"},
    {ApproachId::ActorO1, "actor_o1"},
}};

std::string_view make_guess_template(ApproachId id) {
  switch (id) {
    case ApproachId::CoT: return "cot.make_guess";
    case ApproachId::CoTScripted: return "cot_scripted.make_guess";
    case ApproachId::Vanilla:
    case ApproachId::VanillaO1:
    default: return "vanilla.make_guess";
  }
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> nonempty_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    auto raw = end == std::string_view::npos ? text.substr(start) : text.substr(start, end - start);
    auto line = trim_view(raw);
    if (!line.empty()) lines.push_back(line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

nlohmann::json words_json(const Guess& guess) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : guess.words()) out.push_back(w.text());
  return out;
}

nlohmann::json words_json(const std::vector<Word>& words) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& w : words) out.push_back(w.text());
  return out;
}

}  // namespace

std::string_view to_string(ApproachId id) {
  for (const auto& [a, name] : kApproachNames) {
    if (a == id) return name;
  }
  return "?";
}

std::optional<ApproachId> approach_from_string(std::string_view name) {
  for (const auto& [a, n] : kApproachNames) {
    if (n == name) return a;
  }
  return std::nullopt;
}

nlohmann::json approach_config_to_json(const ApproachConfig& cfg) {
  return {
      {"approach", std::string(to_string(cfg.approach))},
      {"model_id", cfg.model_id},
      {"stockpile_threshold", cfg.stockpile_threshold},
      {"reduced_threshold", cfg.reduced_threshold},
      {"restart_cap", cfg.restart_cap},
      {"mole_count", cfg.mole_count},
      {"triplet_min_processed", cfg.triplet_min_processed},
      {"pair_min_processed", cfg.pair_min_processed},
      {"diversity", std::string(to_string(cfg.diversity))},
      {"rng_seed", cfg.rng_seed},
  };
}

ApproachConfig approach_config_from_json(const nlohmann::json& j) {
  ApproachConfig cfg;
  if (j.contains("approach")) {
    auto id = approach_from_string(j["approach"].get<std::string>());
    if (!id) throw Error("unknown approach \"" + j["approach"].get<std::string>() + "\"");
    cfg.approach = *id;
  }
  cfg.model_id = j.value("model_id", cfg.model_id);
  cfg.stockpile_threshold = j.value("stockpile_threshold", cfg.stockpile_threshold);
  cfg.reduced_threshold = j.value("reduced_threshold", cfg.reduced_threshold);
  cfg.restart_cap = j.value("restart_cap", cfg.restart_cap);
  cfg.mole_count = j.value("mole_count", cfg.mole_count);
  cfg.triplet_min_processed = j.value("triplet_min_processed", cfg.triplet_min_processed);
  cfg.pair_min_processed = j.value("pair_min_processed", cfg.pair_min_processed);
  if (j.contains("diversity")) {
    auto policy = diversity_policy_from_string(j["diversity"].get<std::string>());
    if (!policy) throw Error("unknown diversity policy \"" + j["diversity"].get<std::string>() + "\"");
    cfg.diversity = *policy;
  }
  cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
  if (cfg.stockpile_threshold < 1 || cfg.reduced_threshold < 1 || cfg.restart_cap < 1) {
    throw Error("approach thresholds and restart_cap must be >= 1");
  }
  return cfg;
}

DecideSignal parse_decide_signal(std::string_view text) {
  auto lines = nonempty_lines(text);
  if (lines.empty()) return DecideSignal::Unparsable;
  std::string last(lines.back());
  std::erase_if(last, [](unsigned char c) { return c == '*' || c == '.' || c == '"'; });
  std::transform(last.begin(), last.end(), last.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  auto t = trim_view(last);
  if (t == "SUBMIT") return DecideSignal::SubmitNow;
  if (t == "CONTINUE") return DecideSignal::KeepBrainstorming;
  return DecideSignal::Unparsable;
}

std::optional<OneshotSolution> parse_oneshot_solution(std::string_view text, const Puzzle& puzzle,
                                                      std::string* error) {
  auto fail = [&](std::string why) -> std::optional<OneshotSolution> {
    if (error) *error = std::move(why);
    return std::nullopt;
  };

  auto lines = nonempty_lines(text);
  if (lines.size() < 4) return fail("expected four group lines, got " + std::to_string(lines.size()));

  OneshotSolution solution;
  std::vector<Word> all;
  for (int i = 0; i < 4; ++i) {
    auto line = lines[lines.size() - 4 + static_cast<size_t>(i)];
    auto parsed = parse_guess(std::string(line), puzzle.words());
    if (parsed.kind != ParsedGuess::Kind::Valid) {
      return fail("group line " + std::to_string(i + 1) + ": " + parsed.reason);
    }
    solution.groups[static_cast<size_t>(i)] = *parsed.guess;
    for (const auto& w : parsed.guess->words()) all.push_back(w);
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    return fail("proposed groups overlap");
  }
  if (all.size() != 16) return fail("proposed groups do not cover the sixteen words");
  return solution;
}

GameScore grade_oneshot(const Puzzle& puzzle, const OneshotSolution& solution) {
  GameScore score;
  for (const auto& g : solution.groups) {
    if (check_guess(puzzle, g).correct) {
      ++score.correct_count;
    } else {
      ++score.incorrect_count;
    }
  }
  score.solved = score.correct_count >= 3;
  score.perfect = score.correct_count == 4;
  return score;
}

namespace {

/// Sequential driver for one game: owns the state, the transcript, the call
/// counter and the seeded generator.
class GameRunner {
 public:
  GameRunner(const Puzzle& puzzle, CompletionProvider& provider, const PromptCatalog& catalog,
             const ApproachConfig& cfg)
      : provider_(provider),
        catalog_(catalog),
        cfg_(cfg),
        state_(puzzle),
        rng_(cfg.rng_seed) {
    transcript_.game_id = std::string(to_string(cfg.approach)) + "-" + std::to_string(puzzle.id());
    transcript_.puzzle_id = puzzle.id();
    transcript_.puzzle_difficulty = puzzle.difficulty();
    transcript_.approach = std::string(to_string(cfg.approach));
    transcript_.model_id = cfg.model_id;
    transcript_.config = approach_config_to_json(cfg);
    transcript_.rng_seed = cfg.rng_seed;
  }

  Transcript run() {
    try {
      switch (cfg_.approach) {
        case ApproachId::Vanilla:
        case ApproachId::CoT:
        case ApproachId::CoTScripted:
        case ApproachId::VanillaO1:
          loop_guess();
          break;
        case ApproachId::Oneshot:
          loop_oneshot();
          break;
        case ApproachId::Actor:
        case ApproachId::Actor2:
          loop_actor(cfg_.approach == ApproachId::Actor2);
          break;
        case ApproachId::ActorO1:
          loop_actor_o1();
          break;
      }
    } catch (const Error& e) {
      if (!transcript_.ended()) finalize_aborted(std::string("provider_error: ") + e.what());
    }
    return std::move(transcript_);
  }

 private:
  // ---- infrastructure ----------------------------------------------------

  std::string issue(std::string_view template_id, const PromptContext& ctx) {
    auto prompt = render(catalog_.get(template_id), ctx);
    CompletionRequest request{cfg_.model_id, prompt, {}, ++call_index_};
    transcript_.add(EventType::PromptIssued, {{"call_index", request.call_index},
                                              {"template", std::string(template_id)},
                                              {"prompt_hash", prompt_hash(prompt)},
                                              {"text", prompt}});
    auto response = provider_.complete(request);
    transcript_.add(EventType::CompletionReceived,
                    {{"call_index", request.call_index}, {"text", response.text}});
    return response.text;
  }

  void stage(std::string_view name, nlohmann::json extra = nlohmann::json::object()) {
    extra["stage"] = std::string(name);
    transcript_.add(EventType::StageEntered, std::move(extra));
  }

  void record_parse(std::string_view where, const ParsedGuess& parsed,
                    nlohmann::json extra = nlohmann::json::object()) {
    extra["stage"] = std::string(where);
    switch (parsed.kind) {
      case ParsedGuess::Kind::Valid:
        extra["kind"] = "valid";
        extra["words"] = words_json(*parsed.guess);
        break;
      case ParsedGuess::Kind::Abstain:
        extra["kind"] = "abstain";
        break;
      case ParsedGuess::Kind::Malformed:
        extra["kind"] = "malformed";
        extra["reason"] = parsed.reason;
        break;
    }
    transcript_.add(EventType::GuessParsed, std::move(extra));
  }

  /// Counts one failed attempt; true once the cap is spent.
  bool attempt_failed() { return ++attempts_ >= cfg_.restart_cap; }

  SubmissionResult submit(const Guess& guess, bool auto_submitted) {
    transcript_.add(EventType::GuessSubmitted,
                    {{"words", words_json(guess)}, {"auto", auto_submitted}});
    auto result = state_.submit_guess(guess);
    if (result.kind == SubmissionResult::Kind::Correct) {
      transcript_.add(EventType::OutcomeRecorded,
                      {{"result", "correct"},
                       {"category", result.group->category},
                       {"color", std::string(to_string(result.group->color))}});
    } else if (result.kind == SubmissionResult::Kind::Incorrect) {
      transcript_.add(EventType::OutcomeRecorded, {{"result", "incorrect"}});
    } else {
      // The submission was rejected before reaching the puzzle; undo the
      // GuessSubmitted event so the transcript only shows real submissions.
      transcript_.events.pop_back();
      transcript_.add(EventType::GuessParsed,
                      {{"stage", "submission"},
                       {"kind", "invalid"},
                       {"reason", std::string(to_string(*result.invalid))},
                       {"words", words_json(guess)}});
    }
    if (result.accepted()) attempts_ = 0;
    return result;
  }

  void try_auto_complete() {
    if (state_.correct().size() != 3 || !state_.in_progress()) return;
    auto remaining = state_.remaining();
    auto group = state_.auto_complete();
    transcript_.add(EventType::GuessSubmitted,
                    {{"words", words_json(remaining)}, {"auto", true}});
    transcript_.add(EventType::OutcomeRecorded,
                    {{"result", "correct"},
                     {"category", group->category},
                     {"color", std::string(to_string(group->color))}});
  }

  void finalize() {
    auto score = game_score(state_);
    transcript_.add(EventType::GameEnded, {{"score",
                                            {{"solved", score.solved},
                                             {"perfect", score.perfect},
                                             {"correct", score.correct_count},
                                             {"incorrect", score.incorrect_count}}},
                                           {"aborted", false}});
  }

  void finalize_aborted(const std::string& reason) {
    auto score = game_score(state_);
    score.solved = false;
    score.perfect = false;
    transcript_.add(EventType::GameEnded, {{"score",
                                            {{"solved", score.solved},
                                             {"perfect", score.perfect},
                                             {"correct", score.correct_count},
                                             {"incorrect", score.incorrect_count}}},
                                           {"aborted", true},
                                           {"abort_reason", reason}});
  }

  void finalize_oneshot(const GameScore& score) {
    transcript_.add(EventType::GameEnded, {{"score",
                                            {{"solved", score.solved},
                                             {"perfect", score.perfect},
                                             {"correct", score.correct_count},
                                             {"incorrect", score.incorrect_count}}},
                                           {"aborted", false}});
  }

  // ---- mole machinery ------------------------------------------------------

  void maybe_activate_moles() {
    if (moles_ || cfg_.mole_count <= 0) return;
    if (state_.incorrect().size() < 2 || state_.correct().empty()) return;
    std::vector<SolutionGroup> solved;
    for (const auto& [g, group] : state_.correct()) solved.push_back(group);
    moles_ = draw_moles(solved, cfg_.mole_count, rng_, cfg_.rng_seed);
    nlohmann::json mole_words = nlohmann::json::array();
    for (const auto& w : moles_->moles) mole_words.push_back(w.text());
    transcript_.add(EventType::MoleInjected, {{"moles", std::move(mole_words)}});
  }

  std::vector<Word> candidate_words() const {
    auto words = state_.remaining();
    if (moles_) words.insert(words.end(), moles_->moles.begin(), moles_->moles.end());
    return words;
  }

  /// Candidate list rendered into a brainstorm prompt: diversity-reduced
  /// first, then mole-augmented and shuffled.
  std::vector<Word> prompt_words(bool diversity, int round, const FinalGuessList& list,
                                 const std::vector<Guess>& pending) {
    auto words = state_.remaining();
    if (diversity) words = diversity_remove(words, list, pending, cfg_.diversity, round);
    if (moles_) words = mix_words(words, *moles_, rng_);
    return words;
  }

  /// Entries whose words left the board (or match a known-bad guess) can
  /// never be submitted again; drop them from the stockpile and final list.
  void prune(std::vector<Guess>& pending, FinalGuessList* list) {
    auto stale = [&](const Guess& g) {
      for (const auto& w : g.words()) {
        bool alive = state_.is_remaining(w) || (moles_ && moles_->contains(w));
        if (!alive) return true;
      }
      const auto& bad = state_.incorrect();
      return std::find(bad.begin(), bad.end(), g) != bad.end();
    };
    std::erase_if(pending, stale);
    if (list) {
      std::vector<Guess> dead;
      for (const auto& entry : list->entries()) {
        if (stale(entry.guess)) dead.push_back(entry.guess);
      }
      for (const auto& g : dead) list->remove(g);
    }
  }

  int effective_threshold() const {
    return state_.correct().size() >= 2 ? cfg_.reduced_threshold : cfg_.stockpile_threshold;
  }

  static std::string pending_notes(const std::vector<Guess>& pending) {
    std::string notes;
    for (const auto& g : pending) {
      if (!notes.empty()) notes += '\n';
      notes += g.to_line();
    }
    return notes;
  }

  // ---- the guess-at-a-time loop -------------------------------------------

  void loop_guess() {
    auto template_id = make_guess_template(cfg_.approach);
    while (state_.in_progress()) {
      stage("make_guess");
      PromptContext ctx{state_.remaining(), state_.incorrect(), std::nullopt, std::nullopt};
      auto thoughts = issue(template_id, ctx);

      auto candidates = state_.remaining();
      ParsedGuess parsed;
      if (parse_guess(thoughts, candidates).kind == ParsedGuess::Kind::Abstain) {
        // An abstention needs no formatting pass.
        parsed = ParsedGuess::abstain();
      } else {
        PromptContext format_ctx;
        format_ctx.notes = thoughts;
        parsed = parse_guess(issue("format_guess", format_ctx), candidates);
      }
      record_parse("make_guess", parsed);

      if (parsed.kind != ParsedGuess::Kind::Valid) {
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }
      auto result = submit(*parsed.guess, false);
      if (!result.accepted()) {
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }
      try_auto_complete();
    }
    finalize();
  }

  // ---- the whole-puzzle loop ----------------------------------------------

  void loop_oneshot() {
    const auto& puzzle = state_.puzzle();
    while (true) {
      stage("solve");
      PromptContext ctx;
      ctx.words = puzzle.words();
      auto thoughts = issue("oneshot", ctx);
      PromptContext format_ctx;
      format_ctx.notes = thoughts;
      auto formatted = issue("format_solution", format_ctx);

      std::string error;
      auto solution = parse_oneshot_solution(formatted, puzzle, &error);
      if (!solution) {
        transcript_.add(EventType::GuessParsed,
                        {{"stage", "solve"}, {"kind", "malformed"}, {"reason", error}});
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }

      for (const auto& g : solution->groups) {
        transcript_.add(EventType::GuessSubmitted, {{"words", words_json(g)}, {"auto", false}});
        auto outcome = check_guess(puzzle, g);
        if (outcome.correct) {
          transcript_.add(EventType::OutcomeRecorded,
                          {{"result", "correct"},
                           {"category", outcome.group->category},
                           {"color", std::string(to_string(outcome.group->color))}});
        } else {
          transcript_.add(EventType::OutcomeRecorded, {{"result", "incorrect"}});
        }
      }
      return finalize_oneshot(grade_oneshot(puzzle, *solution));
    }
  }

  // ---- the staged pipelines -------------------------------------------------

  void loop_actor(bool gated) {
    std::vector<Guess> pending;
    FinalGuessList final_list;
    int cursor = 0;
    int round = 0;

    while (state_.in_progress()) {
      if (gated) maybe_activate_moles();

      if (static_cast<int>(pending.size()) >= effective_threshold()) {
        actor_evaluate(gated, pending, final_list);
        continue;
      }

      ++round;
      stage("brainstorm", {{"round", round}});
      auto words = prompt_words(gated, round, final_list, pending);
      std::string notes;
      for (int i = 0; i < 5; ++i) {
        auto [tmpl, next] = catalog_.next_brainstorm(cursor);
        cursor = next;
        PromptContext ctx{words, state_.incorrect(), std::nullopt, tmpl};
        auto completion = issue("actor.brainstorm", ctx);
        if (!notes.empty()) notes += "\n\n";
        notes += completion;
      }

      stage("extract");
      PromptContext extract_ctx;
      extract_ctx.bad_guesses = state_.incorrect();
      extract_ctx.notes = notes;
      auto extracted = issue("actor.extract", extract_ctx);

      stage("discern");
      PromptContext discern_ctx;
      discern_ctx.bad_guesses = state_.incorrect();
      discern_ctx.notes = extracted;
      auto discerned = issue("actor.discern", discern_ctx);

      stage("decide");
      PromptContext decide_ctx;
      decide_ctx.bad_guesses = state_.incorrect();
      decide_ctx.notes = discerned;
      auto decided = issue("actor.decide", decide_ctx);
      PromptContext format_ctx;
      format_ctx.notes = decided;
      auto formatted = issue("format_decision", format_ctx);

      auto signal = parse_decide_signal(formatted);
      if (signal != DecideSignal::SubmitNow) {
        transcript_.add(EventType::GuessParsed,
                        {{"stage", "decide"},
                         {"kind", signal == DecideSignal::KeepBrainstorming ? "continue" : "malformed"}});
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }

      // The guess itself sits on the line above the SUBMIT verdict.
      auto body = std::string(formatted);
      if (auto cut = body.rfind('\n'); cut != std::string::npos) body.resize(cut);
      auto parsed = parse_guess(body, candidate_words());
      record_parse("decide", parsed);
      if (parsed.kind != ParsedGuess::Kind::Valid) {
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }
      pending.push_back(*parsed.guess);
    }
    finalize();
  }

  void actor_evaluate(bool gated, std::vector<Guess>& pending, FinalGuessList& final_list) {
    stage("evaluate", {{"pending", pending.size()}});
    PromptContext ctx;
    ctx.notes = pending_notes(pending);
    auto completion = issue(gated ? "actor2.evaluate" : "actor.evaluate", ctx);
    PromptContext format_ctx;
    format_ctx.notes = completion;
    auto formatted = issue("format_guess", format_ctx);

    auto parsed = parse_guess(formatted, candidate_words());

    if (parsed.kind != ParsedGuess::Kind::Valid ||
        std::find(pending.begin(), pending.end(), *parsed.guess) == pending.end()) {
      record_parse("evaluate", parsed, {{"in_stockpile", false}});
      if (attempt_failed()) {
        finalize_aborted("restart_cap_exceeded");
        return;
      }
      // Drop the oldest stockpiled guess so a stuck evaluation cannot loop
      // on an identical stockpile forever.
      if (!pending.empty()) pending.erase(pending.begin());
      return;
    }

    auto winner = *parsed.guess;
    std::erase(pending, winner);

    if (gated && moles_ && mole_reject(winner, *moles_)) {
      record_parse("evaluate", parsed, {{"mole_rejected", true}});
      if (attempt_failed()) finalize_aborted("restart_cap_exceeded");
      return;
    }
    record_parse("evaluate", parsed);

    if (!gated) {
      auto result = submit(winner, false);
      if (!result.accepted() && attempt_failed()) {
        finalize_aborted("restart_cap_exceeded");
        return;
      }
      try_auto_complete();
      prune(pending, nullptr);
      return;
    }

    final_list.append(winner);
    const auto& entry = *std::find_if(final_list.entries().begin(), final_list.entries().end(),
                                      [&](const auto& e) { return e.guess == winner; });
    transcript_.add(EventType::FinalListUpdated, {{"words", words_json(winner)},
                                                  {"count", entry.count},
                                                  {"processed_count", final_list.processed_count()}});

    auto decision = actor2_decide(final_list);
    if (decision.kind == SubmissionDecision::Kind::Submit) {
      submit_batch(decision.guesses, pending, final_list);
    }
  }

  void submit_batch(const std::vector<Guess>& batch, std::vector<Guess>& pending,
                    FinalGuessList& final_list) {
    for (const auto& g : batch) {
      if (!state_.in_progress()) break;
      final_list.remove(g);
      auto result = submit(g, false);
      if (!result.accepted() && attempt_failed()) {
        finalize_aborted("restart_cap_exceeded");
        return;
      }
      try_auto_complete();
      prune(pending, &final_list);
    }
  }

  void loop_actor_o1() {
    std::vector<Guess> pending;
    FinalGuessList final_list;

    while (state_.in_progress()) {
      maybe_activate_moles();

      if (static_cast<int>(pending.size()) >= effective_threshold()) {
        o1_evaluate(pending, final_list);
        continue;
      }

      stage("brainstorm");
      auto words = moles_ ? mix_words(state_.remaining(), *moles_, rng_) : state_.remaining();
      PromptContext ctx{words, state_.incorrect(), std::nullopt, std::nullopt};
      auto thoughts = issue("actor_o1.brainstorm", ctx);

      ParsedGuess parsed;
      if (parse_guess(thoughts, words).kind == ParsedGuess::Kind::Abstain) {
        parsed = ParsedGuess::abstain();
      } else {
        PromptContext format_ctx;
        format_ctx.notes = thoughts;
        parsed = parse_guess(issue("format_guess", format_ctx), candidate_words());
      }
      record_parse("brainstorm", parsed);

      if (parsed.kind != ParsedGuess::Kind::Valid) {
        if (attempt_failed()) return finalize_aborted("restart_cap_exceeded");
        continue;
      }
      pending.push_back(*parsed.guess);
    }
    finalize();
  }

  void o1_evaluate(std::vector<Guess>& pending, FinalGuessList& final_list) {
    stage("evaluate", {{"pending", pending.size()}});
    PromptContext ctx;
    ctx.notes = pending_notes(pending);
    auto completion = issue("actor_o1.evaluate", ctx);
    PromptContext format_ctx;
    format_ctx.notes = completion;
    auto formatted = issue("format_guess", format_ctx);

    auto parsed = parse_guess(formatted, candidate_words());
    if (parsed.kind != ParsedGuess::Kind::Valid ||
        std::find(pending.begin(), pending.end(), *parsed.guess) == pending.end()) {
      record_parse("evaluate", parsed, {{"in_stockpile", false}});
      if (attempt_failed()) {
        finalize_aborted("restart_cap_exceeded");
        return;
      }
      if (!pending.empty()) pending.erase(pending.begin());
      return;
    }

    auto winner = *parsed.guess;
    std::erase(pending, winner);

    if (moles_ && mole_reject(winner, *moles_)) {
      record_parse("evaluate", parsed, {{"mole_rejected", true}});
      if (attempt_failed()) finalize_aborted("restart_cap_exceeded");
      return;
    }
    record_parse("evaluate", parsed);

    final_list.append(winner);
    const auto& entry = *std::find_if(final_list.entries().begin(), final_list.entries().end(),
                                      [&](const auto& e) { return e.guess == winner; });
    transcript_.add(EventType::FinalListUpdated, {{"words", words_json(winner)},
                                                  {"count", entry.count},
                                                  {"processed_count", final_list.processed_count()}});

    auto decision =
        actor_o1_decide(final_list, {cfg_.triplet_min_processed, cfg_.pair_min_processed});
    if (decision.kind == SubmissionDecision::Kind::Submit) {
      submit_batch(decision.guesses, pending, final_list);
    }
  }

  CompletionProvider& provider_;
  const PromptCatalog& catalog_;
  ApproachConfig cfg_;
  GameState state_;
  Transcript transcript_;
  DeterministicRng rng_;
  std::optional<MoleSet> moles_;
  int call_index_ = 0;
  int attempts_ = 0;
};

Transcript run_with(const Puzzle& puzzle, CompletionProvider& provider,
                    const PromptCatalog& catalog, const ApproachConfig& cfg) {
  return GameRunner(puzzle, provider, catalog, cfg).run();
}

void require_approach(const ApproachConfig& cfg, std::initializer_list<ApproachId> allowed) {
  if (std::find(allowed.begin(), allowed.end(), cfg.approach) == allowed.end()) {
    throw Error("config approach \"" + std::string(to_string(cfg.approach)) +
                "\" does not match this entry point");
  }
}

}  // namespace

Transcript run_guess_loop(const Puzzle& puzzle, CompletionProvider& provider,
                          const PromptCatalog& catalog, const ApproachConfig& cfg) {
  require_approach(cfg, {ApproachId::Vanilla, ApproachId::CoT, ApproachId::CoTScripted,
                         ApproachId::VanillaO1});
  return run_with(puzzle, provider, catalog, cfg);
}

Transcript run_oneshot(const Puzzle& puzzle, CompletionProvider& provider,
                       const PromptCatalog& catalog, const ApproachConfig& cfg) {
  require_approach(cfg, {ApproachId::Oneshot});
  return run_with(puzzle, provider, catalog, cfg);
}

Transcript run_actor(const Puzzle& puzzle, CompletionProvider& provider,
                     const PromptCatalog& catalog, const ApproachConfig& cfg) {
  require_approach(cfg, {ApproachId::Actor});
  return run_with(puzzle, provider, catalog, cfg);
}

Transcript run_actor2(const Puzzle& puzzle, CompletionProvider& provider,
                      const PromptCatalog& catalog, const ApproachConfig& cfg) {
  require_approach(cfg, {ApproachId::Actor2});
  return run_with(puzzle, provider, catalog, cfg);
}

Transcript run_actor_o1(const Puzzle& puzzle, CompletionProvider& provider,
                        const PromptCatalog& catalog, const ApproachConfig& cfg) {
  require_approach(cfg, {ApproachId::ActorO1});
  return run_with(puzzle, provider, catalog, cfg);
}

Transcript run_approach(const Puzzle& puzzle, CompletionProvider& provider,
                        const PromptCatalog& catalog, const ApproachConfig& cfg) {
  return run_with(puzzle, provider, catalog, cfg);
}

}  // namespace connections
