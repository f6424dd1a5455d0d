#include <doctest.h>

#include <algorithm>

#include "connections/puzzle.hpp"
#include "fixtures.hpp"

using namespace connections;

namespace {

RawPuzzleRecord raw_430() {
  RawPuzzleRecord record;
  record.id = 430;
  record.date = "2024-08-14";
  record.difficulty = 3.0;
  record.groups = {
      {"BLUNDER", "yellow", {"BOO-BOO", "FLUB", "GAFFE", "GOOF"}},
      {"FLOWERS", "green", {"DAISY", "JASMINE", "PETUNIA", "POPPY"}},
      {"THINGS BEES DO", "blue", {"BUZZ", "DANCE", "POLLINATE", "STING"}},
      {"FIRST NAMES OF YANKEES LEGENDS", "purple", {"LOU", "BABE", "YOGI", "MICKEY"}},
  };
  return record;
}

/// All C(16,4) = 1820 four-word subsets of a puzzle.
std::vector<Guess> all_guesses(const Puzzle& puzzle) {
  const auto& words = puzzle.words();
  std::vector<Guess> out;
  for (size_t a = 0; a < 16; ++a)
    for (size_t b = a + 1; b < 16; ++b)
      for (size_t c = b + 1; c < 16; ++c)
        for (size_t d = c + 1; d < 16; ++d)
          out.push_back(Guess::make({words[a], words[b], words[c], words[d]}));
  return out;
}

}  // namespace

TEST_CASE("word canonicalization") {
  CHECK(canonical_word("  boo-boo ") == "BOO-BOO");
  CHECK(canonical_word("first   names") == "FIRST NAMES");
  CHECK(canonical_word("\tGoof\n") == "GOOF");
  CHECK(Word("daisy") == Word("DAISY"));
  CHECK_THROWS_AS(Word("   "), Error);
}

TEST_CASE("guess equality is set equality") {
  auto a = Guess::make({"LOU", "BABE", "YOGI", "MICKEY"});
  auto b = Guess::make({"MICKEY", "YOGI", "BABE", "LOU"});
  CHECK(a == b);
  CHECK(a.to_line() == "BABE, LOU, MICKEY, YOGI");
  CHECK(!Guess::try_make({Word("A"), Word("B"), Word("C")}));
  CHECK(!Guess::try_make({Word("A"), Word("B"), Word("C"), Word("A")}));
}

TEST_CASE("validate_puzzle accepts the #430 record") {
  auto puzzle = validate_puzzle(raw_430());
  CHECK(puzzle.id() == 430);
  CHECK(puzzle.group(GroupColor::Yellow).category == "BLUNDER");
  CHECK(puzzle.group(GroupColor::Green).category == "FLOWERS");
  CHECK(puzzle.group(GroupColor::Blue).category == "THINGS BEES DO");
  CHECK(puzzle.group(GroupColor::Purple).category == "FIRST NAMES OF YANKEES LEGENDS");
  CHECK(puzzle.words().size() == 16);
}

TEST_CASE("validate_puzzle rejects defective records") {
  SUBCASE("duplicate word across groups") {
    auto record = raw_430();
    record.groups[1].words[0] = "MICKEY";
    CHECK_THROWS_AS(validate_puzzle(record), PuzzleValidationError);
    try {
      validate_puzzle(record);
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::DuplicateWord);
      CHECK(std::string(e.what()).find("MICKEY") != std::string::npos);
    }
  }
  SUBCASE("wrong group count") {
    auto record = raw_430();
    record.groups.pop_back();
    try {
      validate_puzzle(record);
      FAIL("expected a validation error");
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::WrongGroupCount);
    }
  }
  SUBCASE("wrong group size") {
    auto record = raw_430();
    record.groups[2].words.push_back("EXTRA");
    try {
      validate_puzzle(record);
      FAIL("expected a validation error");
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::WrongGroupSize);
    }
  }
  SUBCASE("missing color") {
    auto record = raw_430();
    record.groups[3].color = "yellow";
    try {
      validate_puzzle(record);
      FAIL("expected a validation error");
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::MissingColor);
    }
  }
  SUBCASE("unknown color") {
    auto record = raw_430();
    record.groups[0].color = "red";
    try {
      validate_puzzle(record);
      FAIL("expected a validation error");
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::MissingColor);
    }
  }
  SUBCASE("difficulty out of range") {
    auto record = raw_430();
    record.difficulty = 5.4;
    try {
      validate_puzzle(record);
      FAIL("expected a validation error");
    } catch (const PuzzleValidationError& e) {
      CHECK(e.defect() == PuzzleDefect::DifficultyOutOfRange);
    }
  }
}

TEST_CASE("check_guess on the worked examples") {
  const auto& puzzle = testfix::puzzle_430();

  auto yellow = check_guess(puzzle, testfix::yellow_430());
  CHECK(yellow.correct);
  CHECK(yellow.group->color == GroupColor::Yellow);

  CHECK_FALSE(check_guess(puzzle, testfix::cartoon_herring()).correct);

  auto green = check_guess(puzzle, Guess::make({"POPPY", "PETUNIA", "JASMINE", "DAISY"}));
  CHECK(green.correct);
  CHECK(green.group->color == GroupColor::Green);

  CHECK_THROWS_AS(check_guess(puzzle, Guess::make({"NOPE", "FLUB", "GAFFE", "GOOF"})),
                  WordNotInPuzzleError);
}

TEST_CASE("check_guess finds exactly the four groups among all 1820 subsets") {
  const auto& puzzle = testfix::puzzle_430();
  auto guesses = all_guesses(puzzle);
  REQUIRE(guesses.size() == 1820);
  int correct = 0;
  for (const auto& g : guesses) {
    if (check_guess(puzzle, g).correct) ++correct;
  }
  CHECK(correct == 4);
}

TEST_CASE("submit_guess plays by the rules") {
  GameState state(testfix::puzzle_430());

  auto herring = Guess::make({"MICKEY", "DAISY", "BUZZ", "GOOF"});
  auto first = state.submit_guess(herring);
  CHECK(first.kind == SubmissionResult::Kind::Incorrect);
  CHECK(state.remaining().size() == 16);
  CHECK(state.incorrect().size() == 1);

  SUBCASE("repeat of a known-incorrect set is rejected, any order") {
    auto repeat = state.submit_guess(Guess::make({"GOOF", "BUZZ", "DAISY", "MICKEY"}));
    CHECK(repeat.kind == SubmissionResult::Kind::Invalid);
    CHECK(*repeat.invalid == InvalidReason::RepeatedIncorrect);
    CHECK(state.incorrect().size() == 1);
  }

  SUBCASE("solved words leave the board") {
    CHECK(state.submit_guess(testfix::yellow_430()).kind == SubmissionResult::Kind::Correct);
    CHECK(state.remaining().size() == 12);
    auto stale = state.submit_guess(Guess::make({"GOOF", "DAISY", "JASMINE", "POPPY"}));
    CHECK(stale.kind == SubmissionResult::Kind::Invalid);
    CHECK(*stale.invalid == InvalidReason::NotInRemaining);
  }
}

TEST_CASE("four incorrect guesses lose the game") {
  GameState state(testfix::puzzle_430());
  const auto& words = state.puzzle().words();
  int submitted = 0;
  for (size_t i = 0; i < 16 && submitted < 4; ++i) {
    // walk distinct cross-group word sets
    auto guess = Guess::make({words[i % 16], words[(i + 4) % 16], words[(i + 8) % 16],
                              words[(i + 12) % 16]});
    auto result = state.submit_guess(guess);
    if (result.kind == SubmissionResult::Kind::Incorrect) ++submitted;
  }
  CHECK(state.status() == GameStatus::Lost);
  CHECK_THROWS_AS(state.submit_guess(testfix::yellow_430()), GameOverError);
  auto score = game_score(state);
  CHECK_FALSE(score.solved);
  CHECK(score.incorrect_count == 4);
}

TEST_CASE("auto_complete submits the forced fourth group") {
  GameState state(testfix::puzzle_430());

  SUBCASE("fires only at three correct") {
    CHECK(state.submit_guess(testfix::yellow_430()).accepted());
    CHECK(state.submit_guess(testfix::green_430()).accepted());
    CHECK(!state.auto_complete());
    CHECK(state.submit_guess(testfix::blue_430()).accepted());
    auto group = state.auto_complete();
    REQUIRE(group.has_value());
    CHECK(group->color == GroupColor::Purple);
    CHECK(state.status() == GameStatus::Won);
    auto score = game_score(state);
    CHECK(score.solved);
    CHECK(score.perfect);
    // idempotent
    CHECK(!state.auto_complete());
  }

  SUBCASE("win after incorrect guesses is not perfect") {
    state.submit_guess(Guess::make({"MICKEY", "DAISY", "BUZZ", "GOOF"}));
    state.submit_guess(Guess::make({"BOO-BOO", "YOGI", "MICKEY", "DAISY"}));
    state.submit_guess(testfix::yellow_430());
    state.submit_guess(testfix::green_430());
    state.submit_guess(testfix::blue_430());
    CHECK(state.auto_complete());
    auto score = game_score(state);
    CHECK(score.solved);
    CHECK_FALSE(score.perfect);
    CHECK(score.correct_count == 4);
    CHECK(score.incorrect_count == 2);
  }
}

TEST_CASE("board arithmetic holds under random play") {
  // |remaining| + 4*|correct| == 16 after any submission sequence, and the
  // game terminates within 7 accepted submissions.
  const auto& puzzle = testfix::puzzle_430();
  auto guesses = all_guesses(puzzle);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    GameState state(puzzle);
    uint64_t x = seed;
    int accepted = 0;
    while (state.in_progress()) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      const auto& guess = guesses[x % guesses.size()];
      bool all_remaining = std::all_of(guess.words().begin(), guess.words().end(),
                                       [&](const Word& w) { return state.is_remaining(w); });
      auto before = state.remaining().size();
      auto result = state.submit_guess(guess);
      if (!all_remaining) {
        CHECK(result.kind == SubmissionResult::Kind::Invalid);
        CHECK(state.remaining().size() == before);
        continue;
      }
      if (result.accepted()) ++accepted;
      if (result.kind != SubmissionResult::Kind::Correct) {
        CHECK(state.remaining().size() == before);
      }
      CHECK(state.remaining().size() + 4 * state.correct().size() == 16);
      if (state.auto_complete()) ++accepted;
    }
    CHECK(accepted <= 7);
    CHECK((state.status() == GameStatus::Won || state.status() == GameStatus::Lost));
  }
}
