#include "connections/puzzle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace connections {

std::string_view to_string(GroupColor color) {
  switch (color) {
    case GroupColor::Yellow: return "yellow";
    case GroupColor::Green: return "green";
    case GroupColor::Blue: return "blue";
    case GroupColor::Purple: return "purple";
  }
  return "?";
}

std::optional<GroupColor> color_from_string(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "yellow") return GroupColor::Yellow;
  if (lower == "green") return GroupColor::Green;
  if (lower == "blue") return GroupColor::Blue;
  if (lower == "purple") return GroupColor::Purple;
  return std::nullopt;
}

bool SolutionGroup::contains(const Word& w) const {
  return std::binary_search(words.begin(), words.end(), w);
}

Guess SolutionGroup::as_guess() const {
  return Guess::make(std::vector<Word>(words.begin(), words.end()));
}

Puzzle::Puzzle(int id, std::string date, double difficulty, std::array<SolutionGroup, 4> groups)
    : id_(id), date_(std::move(date)), difficulty_(difficulty), groups_(std::move(groups)) {
  words_.reserve(16);
  for (const auto& g : groups_) {
    words_.insert(words_.end(), g.words.begin(), g.words.end());
  }
}

const SolutionGroup& Puzzle::group(GroupColor color) const {
  return groups_[static_cast<size_t>(color)];
}

bool Puzzle::has_word(const Word& w) const {
  return std::find(words_.begin(), words_.end(), w) != words_.end();
}

Puzzle validate_puzzle(const RawPuzzleRecord& record) {
  if (record.groups.size() != 4) {
    throw PuzzleValidationError(PuzzleDefect::WrongGroupCount, "groups",
                                "puzzle " + std::to_string(record.id) + ": expected 4 groups, got " +
                                    std::to_string(record.groups.size()));
  }
  if (record.difficulty < 1.0 || record.difficulty > 5.0) {
    throw PuzzleValidationError(PuzzleDefect::DifficultyOutOfRange, "difficulty",
                                "puzzle " + std::to_string(record.id) + ": difficulty " +
                                    std::to_string(record.difficulty) + " outside [1.0, 5.0]");
  }

  std::array<std::optional<SolutionGroup>, 4> slots;
  std::set<Word> seen;
  for (const auto& raw : record.groups) {
    auto color = color_from_string(raw.color);
    if (!color) {
      throw PuzzleValidationError(PuzzleDefect::MissingColor, "groups[].color",
                                  "puzzle " + std::to_string(record.id) + ": unknown color \"" +
                                      raw.color + "\"");
    }
    auto& slot = slots[static_cast<size_t>(*color)];
    if (slot) {
      throw PuzzleValidationError(PuzzleDefect::MissingColor, "groups[].color",
                                  "puzzle " + std::to_string(record.id) + ": color \"" + raw.color +
                                      "\" appears twice, another color is missing");
    }
    if (raw.words.size() != 4) {
      throw PuzzleValidationError(PuzzleDefect::WrongGroupSize, "groups[].words",
                                  "puzzle " + std::to_string(record.id) + ": group \"" +
                                      raw.category + "\" has " + std::to_string(raw.words.size()) +
                                      " words, expected 4");
    }
    SolutionGroup group;
    group.category = raw.category;
    group.color = *color;
    std::vector<Word> words;
    for (const auto& text : raw.words) {
      Word w(text);
      if (!seen.insert(w).second) {
        throw PuzzleValidationError(PuzzleDefect::DuplicateWord, "groups[].words",
                                    "puzzle " + std::to_string(record.id) + ": word \"" +
                                        w.text() + "\" appears in more than one group");
      }
      words.push_back(std::move(w));
    }
    std::sort(words.begin(), words.end());
    if (std::adjacent_find(words.begin(), words.end()) != words.end()) {
      throw PuzzleValidationError(PuzzleDefect::DuplicateWord, "groups[].words",
                                  "puzzle " + std::to_string(record.id) + ": group \"" +
                                      raw.category + "\" repeats a word");
    }
    std::copy(words.begin(), words.end(), group.words.begin());
    slot = std::move(group);
  }

  for (auto color : kAllColors) {
    if (!slots[static_cast<size_t>(color)]) {
      throw PuzzleValidationError(PuzzleDefect::MissingColor, "groups[].color",
                                  "puzzle " + std::to_string(record.id) + ": no " +
                                      std::string(to_string(color)) + " group");
    }
  }

  std::array<SolutionGroup, 4> groups{*slots[0], *slots[1], *slots[2], *slots[3]};
  return Puzzle(record.id, record.date, record.difficulty, std::move(groups));
}

std::string_view to_string(GameStatus status) {
  switch (status) {
    case GameStatus::InProgress: return "in_progress";
    case GameStatus::Won: return "won";
    case GameStatus::Lost: return "lost";
  }
  return "?";
}

std::string_view to_string(InvalidReason reason) {
  switch (reason) {
    case InvalidReason::NotInRemaining: return "not_in_remaining";
    case InvalidReason::RepeatedIncorrect: return "repeated_incorrect";
  }
  return "?";
}

GuessOutcome check_guess(const Puzzle& puzzle, const Guess& guess) {
  for (const auto& w : guess.words()) {
    if (!puzzle.has_word(w)) throw WordNotInPuzzleError(w.text());
  }
  for (const auto& group : puzzle.groups()) {
    if (group.as_guess() == guess) return GuessOutcome{true, group};
  }
  return GuessOutcome{};
}

GameState::GameState(Puzzle puzzle) : puzzle_(std::move(puzzle)), remaining_(puzzle_.words()) {}

bool GameState::is_remaining(const Word& w) const {
  return std::find(remaining_.begin(), remaining_.end(), w) != remaining_.end();
}

SubmissionResult GameState::submit_guess(const Guess& guess) {
  if (!in_progress()) throw GameOverError();

  for (const auto& w : guess.words()) {
    if (!is_remaining(w)) {
      return SubmissionResult{SubmissionResult::Kind::Invalid, std::nullopt,
                              InvalidReason::NotInRemaining};
    }
  }
  if (std::find(incorrect_.begin(), incorrect_.end(), guess) != incorrect_.end()) {
    return SubmissionResult{SubmissionResult::Kind::Invalid, std::nullopt,
                            InvalidReason::RepeatedIncorrect};
  }

  auto outcome = check_guess(puzzle_, guess);
  if (outcome.correct) {
    std::erase_if(remaining_, [&](const Word& w) { return guess.contains(w); });
    correct_.emplace_back(guess, *outcome.group);
    if (correct_.size() == 4) status_ = GameStatus::Won;
    return SubmissionResult{SubmissionResult::Kind::Correct, outcome.group, std::nullopt};
  }
  incorrect_.push_back(guess);
  if (incorrect_.size() == 4) status_ = GameStatus::Lost;
  return SubmissionResult{SubmissionResult::Kind::Incorrect, std::nullopt, std::nullopt};
}

std::optional<SolutionGroup> GameState::auto_complete() {
  if (!in_progress() || correct_.size() != 3) return std::nullopt;
  auto guess = Guess::make(remaining_);
  auto result = submit_guess(guess);
  // The remaining four words are the missing group by elimination.
  return result.group;
}

GameScore game_score(const GameState& state) {
  GameScore score;
  score.correct_count = static_cast<int>(state.correct().size());
  score.incorrect_count = static_cast<int>(state.incorrect().size());
  score.solved = state.status() == GameStatus::Won;
  score.perfect = score.solved && score.incorrect_count == 0;
  return score;
}

}  // namespace connections
