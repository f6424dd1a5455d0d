#include <doctest.h>

#include <algorithm>
#include <set>

#include "connections/guess_logic.hpp"
#include "fixtures.hpp"

using namespace connections;

namespace {

std::vector<Word> words_of(std::initializer_list<std::string_view> raw) {
  std::vector<Word> out;
  for (auto r : raw) out.emplace_back(r);
  return out;
}

/// Brute-force oracle for find_disjoint: scans all index subsets.
bool disjoint_exists(const std::vector<Guess>& entries, int k) {
  int n = static_cast<int>(entries.size());
  if (n < k) return false;
  std::vector<int> idx(static_cast<size_t>(k));
  std::function<bool(int, int)> rec = [&](int at, int from) {
    if (at == k) {
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if (entries[static_cast<size_t>(idx[static_cast<size_t>(a)])].overlaps(
                  entries[static_cast<size_t>(idx[static_cast<size_t>(b)])]))
            return false;
      return true;
    }
    for (int i = from; i < n; ++i) {
      idx[static_cast<size_t>(at)] = i;
      if (rec(at + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

}  // namespace

TEST_CASE("parse_guess") {
  auto remaining = testfix::puzzle_430().words();

  SUBCASE("labeled final line") {
    auto parsed = parse_guess("Reasoning about bees...\nFinal guess: BOO-BOO, FLUB, GAFFE, GOOF",
                              remaining);
    REQUIRE(parsed.kind == ParsedGuess::Kind::Valid);
    CHECK(*parsed.guess == testfix::yellow_430());
  }
  SUBCASE("abstain sentence anywhere, case-insensitive") {
    CHECK(parse_guess("I can't identify a good guess to submit.", remaining).kind ==
          ParsedGuess::Kind::Abstain);
    CHECK(parse_guess("Well...\ni CAN'T identify a good guess to submit!", remaining).kind ==
          ParsedGuess::Kind::Abstain);
    // curly apostrophe variant
    CHECK(parse_guess("I can’t identify a good guess to submit.", remaining).kind ==
          ParsedGuess::Kind::Abstain);
  }
  SUBCASE("wrong count is malformed") {
    auto parsed = parse_guess("LOU, BABE, YOGI", remaining);
    REQUIRE(parsed.kind == ParsedGuess::Kind::Malformed);
    CHECK(parsed.reason.find("3") != std::string::npos);
  }
  SUBCASE("unknown word is malformed and named") {
    auto parsed = parse_guess("LOU, BABE, YOGI, DEREK", remaining);
    REQUIRE(parsed.kind == ParsedGuess::Kind::Malformed);
    CHECK(parsed.reason.find("DEREK") != std::string::npos);
  }
  SUBCASE("case and markdown wrappers are tolerated") {
    auto parsed = parse_guess("**daisy**, jasmine, Petunia, POPPY", remaining);
    REQUIRE(parsed.kind == ParsedGuess::Kind::Valid);
    CHECK(*parsed.guess == testfix::green_430());
  }
  SUBCASE("duplicates are malformed") {
    CHECK(parse_guess("LOU, LOU, YOGI, BABE", remaining).kind == ParsedGuess::Kind::Malformed);
  }
  SUBCASE("only the final non-empty line counts") {
    auto parsed = parse_guess("LOU, BABE, YOGI, MICKEY\nBUZZ, DANCE, POLLINATE, STING\n\n",
                              remaining);
    REQUIRE(parsed.kind == ParsedGuess::Kind::Valid);
    CHECK(*parsed.guess == testfix::blue_430());
  }
}

TEST_CASE("final guess list bookkeeping") {
  FinalGuessList list;
  CHECK(list.processed_count() == 0);

  auto a = testfix::yellow_430();
  auto b = testfix::green_430();

  list.append(a);
  CHECK(list.entries().size() == 1);
  CHECK(list.entries()[0].count == 1);

  list.append(a);
  CHECK(list.entries().size() == 1);
  CHECK(list.entries()[0].count == 2);
  CHECK(list.processed_count() == 2);

  list.append(b);
  CHECK(list.entries().size() == 2);
  CHECK(list.processed_count() == 3);

  SUBCASE("thrice rule needs three appends") {
    CHECK(!list.thrice_repeated());
    list.append(a);
    auto thrice = list.thrice_repeated();
    REQUIRE(thrice.has_value());
    CHECK(*thrice == a);
  }
  SUBCASE("earliest-appended wins ties") {
    list.append(b);
    list.append(b);
    list.append(b);  // b count 4, but a reached nothing yet
    list.append(a);  // a count 3; a was appended first
    auto thrice = list.thrice_repeated();
    REQUIRE(thrice.has_value());
    CHECK(*thrice == a);
  }
  SUBCASE("remove drops whole entries") {
    list.remove(a);
    CHECK(list.entries().size() == 1);
    CHECK(list.entries()[0].guess == b);
    // processed count is history, not current size
    CHECK(list.processed_count() == 3);
  }
}

TEST_CASE("find_disjoint on the #430 worked examples") {
  FinalGuessList list;
  list.append(testfix::yellow_430());
  list.append(testfix::green_430());
  list.append(testfix::blue_430());
  list.append(testfix::purple_430());
  list.append(testfix::cartoon_herring());

  SUBCASE("the only disjoint quadruple is the solution partition") {
    auto quad = list.find_disjoint(4);
    REQUIRE(quad.has_value());
    std::set<Guess> expected = {testfix::yellow_430(), testfix::green_430(), testfix::blue_430(),
                                testfix::purple_430()};
    CHECK(std::set<Guess>(quad->begin(), quad->end()) == expected);
  }
  SUBCASE("herring overlaps block a pair") {
    FinalGuessList small;
    small.append(testfix::yellow_430());
    small.append(testfix::cartoon_herring());
    CHECK(!small.find_disjoint(2));
  }
  SUBCASE("two clean groups form a pair, earliest order") {
    FinalGuessList small;
    small.append(testfix::yellow_430());
    small.append(testfix::green_430());
    auto pair = small.find_disjoint(2);
    REQUIRE(pair.has_value());
    CHECK((*pair)[0] == testfix::yellow_430());
    CHECK((*pair)[1] == testfix::green_430());
  }
}

TEST_CASE("find_disjoint agrees with brute force on random lists") {
  const auto& words = testfix::puzzle_430().words();
  uint64_t x = 42;
  for (int trial = 0; trial < 200; ++trial) {
    FinalGuessList list;
    std::vector<Guess> entries;
    int n = 3 + static_cast<int>(x % 8);
    for (int i = 0; i < n; ++i) {
      std::set<size_t> pick;
      while (pick.size() < 4) {
        x = x * 6364136223846793005ULL + 1442695040888963407ULL;
        pick.insert(static_cast<size_t>(x % 16));
      }
      std::vector<Word> ws;
      for (auto p : pick) ws.push_back(words[p]);
      auto g = Guess::make(ws);
      if (std::find(entries.begin(), entries.end(), g) == entries.end()) {
        entries.push_back(g);
        list.append(g);
      }
    }
    for (int k = 2; k <= 4; ++k) {
      auto found = list.find_disjoint(k);
      CHECK(found.has_value() == disjoint_exists(entries, k));
      if (found) {
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            CHECK(!(*found)[static_cast<size_t>(a)].overlaps((*found)[static_cast<size_t>(b)]));
      }
    }
  }
}

TEST_CASE("actor2_decide") {
  SUBCASE("unique pair wins, append order preserved") {
    FinalGuessList list;
    list.append(testfix::yellow_430());
    list.append(testfix::green_430());
    auto decision = actor2_decide(list);
    REQUIRE(decision.kind == SubmissionDecision::Kind::Submit);
    REQUIRE(decision.guesses.size() == 2);
    CHECK(decision.guesses[0] == testfix::yellow_430());
    CHECK(decision.guesses[1] == testfix::green_430());
  }
  SUBCASE("thrice rule fires without a pair") {
    FinalGuessList list;
    list.append(testfix::cartoon_herring());
    list.append(testfix::cartoon_herring());
    list.append(testfix::cartoon_herring());
    auto decision = actor2_decide(list);
    REQUIRE(decision.kind == SubmissionDecision::Kind::Submit);
    REQUIRE(decision.guesses.size() == 1);
    CHECK(decision.guesses[0] == testfix::cartoon_herring());
  }
  SUBCASE("overlapping entries below three wait") {
    FinalGuessList list;
    list.append(testfix::yellow_430());
    list.append(testfix::cartoon_herring());
    list.append(testfix::cartoon_herring());
    CHECK(actor2_decide(list).kind == SubmissionDecision::Kind::Wait);
  }
  SUBCASE("pair rule is checked before thrice") {
    FinalGuessList list;
    list.append(testfix::purple_430());
    list.append(testfix::purple_430());
    list.append(testfix::purple_430());
    list.append(testfix::yellow_430());
    auto decision = actor2_decide(list);
    REQUIRE(decision.kind == SubmissionDecision::Kind::Submit);
    CHECK(decision.guesses.size() == 2);
  }
}

TEST_CASE("actor_o1_decide threshold arms") {
  auto yellow = testfix::yellow_430();
  auto green = testfix::green_430();
  auto blue = testfix::blue_430();
  auto purple = testfix::purple_430();
  auto herring = testfix::cartoon_herring();

  SUBCASE("quadruplet submits regardless of processed count") {
    FinalGuessList list;
    list.append(yellow);
    list.append(green);
    list.append(blue);
    list.append(purple);
    CHECK(list.processed_count() == 4);
    auto decision = actor_o1_decide(list);
    REQUIRE(decision.kind == SubmissionDecision::Kind::Submit);
    CHECK(decision.guesses.size() == 4);
  }

  SUBCASE("triplet needs processed >= 13") {
    // three disjoint groups plus herring churn to drive the counter
    FinalGuessList list;
    list.append(yellow);
    list.append(green);
    list.append(blue);
    for (int i = 0; i < 9; ++i) list.append(herring);  // processed 12, count capped at overlap
    CHECK(list.processed_count() == 12);
    // the herring overlaps all groups so no quadruplet exists; thrice would
    // fire on the herring, but the triplet arm must not fire below 13
    auto at12 = actor_o1_decide(list);
    REQUIRE(at12.kind == SubmissionDecision::Kind::Submit);
    CHECK(at12.guesses.size() == 1);  // thrice on the herring, not the triplet

    list.append(yellow);  // processed 13
    auto at13 = actor_o1_decide(list);
    REQUIRE(at13.kind == SubmissionDecision::Kind::Submit);
    CHECK(at13.guesses.size() == 3);
  }

  SUBCASE("pair needs processed > 15") {
    FinalGuessList list;
    list.append(yellow);
    list.append(green);
    // overlapping fillers: herring blocks quads/triples with yellow/green
    for (int i = 0; i < 13; ++i) list.append(herring);
    CHECK(list.processed_count() == 15);
    auto at15 = actor_o1_decide(list);
    // thrice fires on the herring before the pair arm is allowed
    REQUIRE(at15.kind == SubmissionDecision::Kind::Submit);
    CHECK(at15.guesses.size() == 1);

    list.append(yellow);  // processed 16
    auto at16 = actor_o1_decide(list);
    REQUIRE(at16.kind == SubmissionDecision::Kind::Submit);
    CHECK(at16.guesses.size() == 2);
    CHECK((at16.guesses[0] == yellow && at16.guesses[1] == green));
  }

  SUBCASE("thrice needs three, not two") {
    FinalGuessList list;
    list.append(herring);
    list.append(herring);
    CHECK(actor_o1_decide(list).kind == SubmissionDecision::Kind::Wait);
    list.append(herring);
    auto decision = actor_o1_decide(list);
    REQUIRE(decision.kind == SubmissionDecision::Kind::Submit);
    CHECK(decision.guesses.size() == 1);
  }

  SUBCASE("exactly one arm fires for any list") {
    FinalGuessList list;
    CHECK(actor_o1_decide(list).kind == SubmissionDecision::Kind::Wait);
  }
}

TEST_CASE("mole injection") {
  const auto& puzzle = testfix::puzzle_430();
  std::vector<SolutionGroup> solved = {puzzle.group(GroupColor::Yellow),
                                       puzzle.group(GroupColor::Green)};
  std::vector<Word> remaining;
  for (const auto& g : {GroupColor::Blue, GroupColor::Purple}) {
    const auto& group = puzzle.group(g);
    remaining.insert(remaining.end(), group.words.begin(), group.words.end());
  }

  SUBCASE("list of ten with both moles present") {
    DeterministicRng rng(7);
    auto [words, moles] = inject_moles(remaining, solved, 2, rng, 7);
    CHECK(words.size() == 10);
    CHECK(moles.moles.size() == 2);
    for (const auto& m : moles.moles) {
      CHECK(std::find(words.begin(), words.end(), m) != words.end());
      CHECK(std::find(remaining.begin(), remaining.end(), m) == remaining.end());
    }
  }
  SUBCASE("count zero is a no-op") {
    DeterministicRng rng(7);
    auto [words, moles] = inject_moles(remaining, solved, 0, rng, 7);
    CHECK(words == remaining);
    CHECK(moles.empty());
  }
  SUBCASE("same seed, same outcome") {
    DeterministicRng rng1(99), rng2(99);
    auto [words1, moles1] = inject_moles(remaining, solved, 2, rng1, 99);
    auto [words2, moles2] = inject_moles(remaining, solved, 2, rng2, 99);
    CHECK(words1 == words2);
    CHECK(moles1.moles == moles2.moles);
  }
  SUBCASE("errors") {
    DeterministicRng rng(1);
    CHECK_THROWS_AS(inject_moles(remaining, {}, 2, rng, 1), NoSolvedGroupsError);
    CHECK_THROWS_AS(inject_moles(remaining, solved, 9, rng, 1), CountTooLargeError);
  }
}

TEST_CASE("mole filter accepts exactly one third of random four-word picks") {
  // 8 real words + 2 moles; enumerate all C(10,4) = 210 subsets.
  const auto& puzzle = testfix::puzzle_430();
  std::vector<Word> pool;
  for (const auto& g : {GroupColor::Blue, GroupColor::Purple}) {
    const auto& group = puzzle.group(g);
    pool.insert(pool.end(), group.words.begin(), group.words.end());
  }
  MoleSet moles;
  moles.moles = {Word("FLUB"), Word("POPPY")};
  std::sort(moles.moles.begin(), moles.moles.end());
  pool.insert(pool.end(), moles.moles.begin(), moles.moles.end());
  REQUIRE(pool.size() == 10);

  int accepted = 0, rejected = 0, total = 0;
  for (size_t a = 0; a < 10; ++a)
    for (size_t b = a + 1; b < 10; ++b)
      for (size_t c = b + 1; c < 10; ++c)
        for (size_t d = c + 1; d < 10; ++d) {
          ++total;
          auto guess = Guess::make({pool[a], pool[b], pool[c], pool[d]});
          if (mole_reject(guess, moles)) {
            ++rejected;
          } else {
            ++accepted;
          }
        }
  CHECK(total == 210);
  CHECK(accepted == 70);  // C(8,4)
  CHECK(rejected == 140);
  CHECK(accepted * 3 == total);  // the 8/10 * 7/9 * 6/8 * 5/7 = 1/3 identity
}

TEST_CASE("diversity removal") {
  const auto& puzzle = testfix::puzzle_430();
  auto remaining = puzzle.words();

  FinalGuessList list;
  list.append(testfix::yellow_430());

  SUBCASE("even rounds drop words already under consideration") {
    auto out = diversity_remove(remaining, list, {}, DiversityPolicy::Alternate, 2);
    CHECK(out.size() == 12);
    for (const auto& w : testfix::yellow_430().words()) {
      CHECK(std::find(out.begin(), out.end(), w) == out.end());
    }
  }
  SUBCASE("odd rounds are untouched") {
    CHECK(diversity_remove(remaining, list, {}, DiversityPolicy::Alternate, 1) == remaining);
  }
  SUBCASE("floor guard keeps at least eight words") {
    std::vector<Guess> pending = {testfix::green_430(), testfix::blue_430()};
    // removing 12 of 16 would leave 4; the list must come back unchanged
    auto out = diversity_remove(remaining, list, pending, DiversityPolicy::Alternate, 2);
    CHECK(out == remaining);
  }
  SUBCASE("policy off is identity") {
    CHECK(diversity_remove(remaining, list, {}, DiversityPolicy::Off, 2) == remaining);
  }
}
