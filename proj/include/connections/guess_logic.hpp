#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connections/puzzle.hpp"
#include "connections/words.hpp"

namespace connections {

/// Result of reading a guess out of free completion text.
struct ParsedGuess {
  enum class Kind { Valid, Abstain, Malformed };
  Kind kind = Kind::Malformed;
  std::optional<Guess> guess;  // set iff Valid
  std::string reason;          // set iff Malformed

  static ParsedGuess valid(Guess g) { return {Kind::Valid, std::move(g), {}}; }
  static ParsedGuess abstain() { return {Kind::Abstain, std::nullopt, {}}; }
  static ParsedGuess malformed(std::string why) { return {Kind::Malformed, std::nullopt, std::move(why)}; }
};

/// The sentence a model uses to decline a guess; detection is
/// case-insensitive and tolerates curly apostrophes.
inline constexpr std::string_view kAbstainSentence = "i can't identify a good guess to submit";

/// Abstain if the text contains the abstain sentence; otherwise the final
/// non-empty line must hold exactly four comma-separated tokens that each
/// canonicalize to a distinct member of `candidates`.
ParsedGuess parse_guess(std::string_view completion, const std::vector<Word>& candidates);

/// Ordered multiset of guesses awaiting deterministic submission gating.
class FinalGuessList {
 public:
  struct Entry {
    Guess guess;
    int count = 0;
    int first_index = 0;  // append order of the first occurrence
  };

  void append(const Guess& guess);
  /// Drops an entry entirely (after submission or pruning). No-op if absent.
  void remove(const Guess& guess);

  const std::vector<Entry>& entries() const { return entries_; }
  /// Total appends ever, duplicates included.
  int processed_count() const { return processed_; }
  bool empty() const { return entries_.empty(); }

  /// Earliest-appended guess seen at least three times.
  std::optional<Guess> thrice_repeated() const;

  /// k entries with pairwise-disjoint word sets, earliest by append order,
  /// found by exhaustive search over entry subsets.
  std::optional<std::vector<Guess>> find_disjoint(int k) const;

 private:
  std::vector<Entry> entries_;
  int processed_ = 0;
};

struct SubmissionDecision {
  enum class Kind { Submit, Wait };
  Kind kind = Kind::Wait;
  std::vector<Guess> guesses;

  static SubmissionDecision wait() { return {}; }
  static SubmissionDecision submit(std::vector<Guess> gs) { return {Kind::Submit, std::move(gs)}; }
};

/// Release rule: a unique pair submits both guesses; failing that, a guess
/// approved three times submits alone.
SubmissionDecision actor2_decide(const FinalGuessList& list);

struct ActorO1Thresholds {
  int triplet_min_processed = 13;  // triplets allowed at >= 13 processed guesses
  int pair_min_processed = 15;     // pairs allowed at > 15 processed guesses
};

/// Release rule: disjoint quadruplet always; triplet once enough guesses have
/// been processed; pair later still; then the thrice rule.
SubmissionDecision actor_o1_decide(const FinalGuessList& list, const ActorO1Thresholds& thresholds = {});

/// Deterministic RNG with a platform-independent sequence (std::shuffle and
/// the standard distributions are implementation-defined, so both are
/// hand-rolled here).
class DeterministicRng {
 public:
  explicit DeterministicRng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  uint64_t next();
  /// Uniform draw from [0, n).
  uint64_t below(uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& items) {
    if (items.empty()) return;
    for (size_t i = items.size() - 1; i > 0; --i) {
      std::swap(items[i], items[static_cast<size_t>(below(i + 1))]);
    }
  }

 private:
  uint64_t state_;
};

/// Wordlist spies: words from already-solved groups slipped back into the
/// candidate list. A guess touching one is a detected hallucination.
struct MoleSet {
  std::vector<Word> moles;  // sorted
  uint64_t rng_seed = 0;

  bool contains(const Word& w) const;
  bool empty() const { return moles.empty(); }
};

class NoSolvedGroupsError : public Error {
 public:
  NoSolvedGroupsError() : Error("mole words need at least one solved group to draw from") {}
};

class CountTooLargeError : public Error {
 public:
  CountTooLargeError(int count, int available)
      : Error("asked for " + std::to_string(count) + " mole words but only " +
              std::to_string(available) + " solved words exist") {}
};

/// Draws `count` moles uniformly without replacement from the solved groups.
MoleSet draw_moles(const std::vector<SolutionGroup>& solved, int count, DeterministicRng& rng,
                   uint64_t seed_label);

/// Shuffles remaining and moles together into one candidate list.
std::vector<Word> mix_words(const std::vector<Word>& remaining, const MoleSet& moles,
                            DeterministicRng& rng);

/// draw + mix in one step. count == 0 returns the input untouched.
std::pair<std::vector<Word>, MoleSet> inject_moles(const std::vector<Word>& remaining,
                                                   const std::vector<SolutionGroup>& solved,
                                                   int count, DeterministicRng& rng,
                                                   uint64_t seed_label = 0);

/// True iff the guess touches a mole word.
bool mole_reject(const Guess& guess, const MoleSet& moles);

enum class DiversityPolicy { Off, Alternate };
std::string_view to_string(DiversityPolicy policy);
std::optional<DiversityPolicy> diversity_policy_from_string(std::string_view name);

/// Keeps brainstorming from retreading old ground: on every second round the
/// words already sitting in the final list or the pending stockpile are
/// dropped from the candidate list, unless that would leave fewer than eight
/// words.
std::vector<Word> diversity_remove(const std::vector<Word>& remaining, const FinalGuessList& list,
                                   const std::vector<Guess>& pending, DiversityPolicy policy,
                                   int round);

}  // namespace connections
