#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "connections/guess_logic.hpp"
#include "connections/prompt_kit.hpp"
#include "connections/provider.hpp"
#include "connections/puzzle.hpp"
#include "connections/transcript.hpp"

namespace connections {

enum class ApproachId { Vanilla, CoT, CoTScripted, Actor, Actor2, Oneshot, VanillaO1, ActorO1 };

std::string_view to_string(ApproachId id);
std::optional<ApproachId> approach_from_string(std::string_view name);
constexpr std::array<ApproachId, 8> kAllApproaches = {
    ApproachId::Vanilla, ApproachId::CoT,     ApproachId::CoTScripted, ApproachId::Actor,
    ApproachId::Actor2,  ApproachId::Oneshot, ApproachId::VanillaO1,   ApproachId::ActorO1};

struct ApproachConfig {
  ApproachId approach = ApproachId::Vanilla;
  std::string model_id = "default";
  /// Actor family: evaluation starts once this many guesses are stockpiled...
  int stockpile_threshold = 5;
  /// ...or this many once two groups have been solved.
  int reduced_threshold = 3;
  /// Attempts allowed per needed submission before the game is aborted.
  int restart_cap = 20;
  /// Mole words slipped into candidate lists after two incorrect submissions.
  int mole_count = 2;
  /// Final-list release thresholds for the o1 pipeline.
  int triplet_min_processed = 13;
  int pair_min_processed = 15;
  DiversityPolicy diversity = DiversityPolicy::Alternate;
  uint64_t rng_seed = 0;
};

nlohmann::json approach_config_to_json(const ApproachConfig& cfg);
ApproachConfig approach_config_from_json(const nlohmann::json& j);

/// Decide-stage verdict extracted from the formatting call: its final line
/// must be SUBMIT or CONTINUE.
enum class DecideSignal { SubmitNow, KeepBrainstorming, Unparsable };
DecideSignal parse_decide_signal(std::string_view text);

/// A whole-puzzle answer: four groups that partition the sixteen words.
struct OneshotSolution {
  std::array<Guess, 4> groups;
};

/// Reads four labeled "CATEGORY: A, B, C, D" lines (the last four non-empty
/// lines of the text). Returns nothing and fills `error` when malformed.
std::optional<OneshotSolution> parse_oneshot_solution(std::string_view text, const Puzzle& puzzle,
                                                      std::string* error = nullptr);

/// Credit rule for whole-puzzle answers: three correct groups already solve
/// the puzzle, four solve it perfectly.
GameScore grade_oneshot(const Puzzle& puzzle, const OneshotSolution& solution);

/// One-guess-at-a-time loop (two calls per guess). Valid for Vanilla, CoT,
/// CoTScripted and VanillaO1 configs.
Transcript run_guess_loop(const Puzzle& puzzle, CompletionProvider& provider,
                          const PromptCatalog& catalog, const ApproachConfig& cfg);

Transcript run_oneshot(const Puzzle& puzzle, CompletionProvider& provider,
                       const PromptCatalog& catalog, const ApproachConfig& cfg);

Transcript run_actor(const Puzzle& puzzle, CompletionProvider& provider,
                     const PromptCatalog& catalog, const ApproachConfig& cfg);

Transcript run_actor2(const Puzzle& puzzle, CompletionProvider& provider,
                      const PromptCatalog& catalog, const ApproachConfig& cfg);

Transcript run_actor_o1(const Puzzle& puzzle, CompletionProvider& provider,
                        const PromptCatalog& catalog, const ApproachConfig& cfg);

/// Dispatches on cfg.approach.
Transcript run_approach(const Puzzle& puzzle, CompletionProvider& provider,
                        const PromptCatalog& catalog, const ApproachConfig& cfg);

}  // namespace connections
