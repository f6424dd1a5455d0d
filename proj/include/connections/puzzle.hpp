#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "connections/words.hpp"

namespace connections {

/// Group difficulty colors, ordered easiest to hardest.
enum class GroupColor { Yellow, Green, Blue, Purple };

std::string_view to_string(GroupColor color);
std::optional<GroupColor> color_from_string(std::string_view name);
constexpr std::array<GroupColor, 4> kAllColors = {GroupColor::Yellow, GroupColor::Green,
                                                  GroupColor::Blue, GroupColor::Purple};

struct SolutionGroup {
  std::string category;
  GroupColor color = GroupColor::Yellow;
  std::array<Word, 4> words{};  // sorted

  bool contains(const Word& w) const;
  Guess as_guess() const;
};

/// Raw puzzle record as it appears in an archive file, prior to validation.
struct RawGroupRecord {
  std::string category;
  std::string color;
  std::vector<std::string> words;
};

struct RawPuzzleRecord {
  int id = 0;
  std::string date;
  double difficulty = 0.0;
  std::vector<RawGroupRecord> groups;
};

class Puzzle {
 public:
  Puzzle(int id, std::string date, double difficulty, std::array<SolutionGroup, 4> groups);

  int id() const { return id_; }
  const std::string& date() const { return date_; }
  double difficulty() const { return difficulty_; }
  /// Groups in color order (yellow, green, blue, purple).
  const std::array<SolutionGroup, 4>& groups() const { return groups_; }
  const SolutionGroup& group(GroupColor color) const;
  /// All 16 words, flattened in group order.
  const std::vector<Word>& words() const { return words_; }
  bool has_word(const Word& w) const;

 private:
  int id_;
  std::string date_;
  double difficulty_;
  std::array<SolutionGroup, 4> groups_;
  std::vector<Word> words_;
};

/// Why a raw record failed validation.
enum class PuzzleDefect {
  DuplicateWord,
  WrongGroupCount,
  WrongGroupSize,
  MissingColor,
  DifficultyOutOfRange,
};

class PuzzleValidationError : public Error {
 public:
  PuzzleValidationError(PuzzleDefect defect, const std::string& field, const std::string& what)
      : Error(what), defect_(defect), field_(field) {}
  PuzzleDefect defect() const { return defect_; }
  const std::string& field() const { return field_; }

 private:
  PuzzleDefect defect_;
  std::string field_;
};

/// Canonicalizes a raw record into a Puzzle or throws PuzzleValidationError
/// naming the offending field.
Puzzle validate_puzzle(const RawPuzzleRecord& record);

enum class GameStatus { InProgress, Won, Lost };
std::string_view to_string(GameStatus status);

struct GuessOutcome {
  bool correct = false;
  std::optional<SolutionGroup> group;  // set iff correct
};

/// Pure check of one guess against the solution. The guess words must all be
/// puzzle words.
GuessOutcome check_guess(const Puzzle& puzzle, const Guess& guess);

enum class InvalidReason { NotInRemaining, RepeatedIncorrect };
std::string_view to_string(InvalidReason reason);

struct SubmissionResult {
  enum class Kind { Correct, Incorrect, Invalid };
  Kind kind = Kind::Invalid;
  std::optional<SolutionGroup> group;      // set iff Correct
  std::optional<InvalidReason> invalid;    // set iff Invalid

  bool accepted() const { return kind != Kind::Invalid; }
};

struct GameScore {
  bool solved = false;
  bool perfect = false;
  int correct_count = 0;
  int incorrect_count = 0;
};

/// The state machine for one game. Owned by a single game loop; all methods
/// are value-semantics mutations of this instance.
class GameState {
 public:
  explicit GameState(Puzzle puzzle);

  const Puzzle& puzzle() const { return puzzle_; }
  /// Unsolved words in original board order.
  const std::vector<Word>& remaining() const { return remaining_; }
  const std::vector<std::pair<Guess, SolutionGroup>>& correct() const { return correct_; }
  const std::vector<Guess>& incorrect() const { return incorrect_; }
  GameStatus status() const { return status_; }
  bool in_progress() const { return status_ == GameStatus::InProgress; }
  bool is_remaining(const Word& w) const;

  /// Applies one guess. Invalid guesses (words not all remaining, or a repeat
  /// of a known-incorrect set) leave the state untouched and do not count
  /// toward the loss limit. Throws GameOverError on a terminal state.
  SubmissionResult submit_guess(const Guess& guess);

  /// With three correct groups the last one is forced; submits it and returns
  /// the completed group. No-op (returns nothing) otherwise.
  std::optional<SolutionGroup> auto_complete();

 private:
  Puzzle puzzle_;
  std::vector<Word> remaining_;
  std::vector<std::pair<Guess, SolutionGroup>> correct_;
  std::vector<Guess> incorrect_;
  GameStatus status_ = GameStatus::InProgress;
};

GameScore game_score(const GameState& state);

}  // namespace connections
