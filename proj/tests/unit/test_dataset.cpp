#include <doctest.h>

#include <sstream>

#include "connections/dataset.hpp"
#include "fixtures.hpp"

using namespace connections;

TEST_CASE("load_archive reads the #430 fixture") {
  auto puzzles = load_archive(testfix::source_dir() / "fixtures" / "archive.json");
  REQUIRE(puzzles.size() == 1);
  CHECK(puzzles[0].id() == 430);
  CHECK(puzzles[0].date() == "2024-08-14");
  CHECK(puzzles[0].difficulty() == doctest::Approx(3.0));
}

TEST_CASE("load_archive edge cases") {
  SUBCASE("empty array") {
    std::istringstream in("[]");
    CHECK(load_archive(in).empty());
  }
  SUBCASE("duplicate ids are rejected") {
    std::ifstream file(testfix::source_dir() / "fixtures" / "archive.json");
    std::stringstream buf;
    buf << file.rdbuf();
    auto one = buf.str();
    auto two = "[" + one.substr(one.find('{'), one.rfind('}') - one.find('{') + 1) + "," +
               one.substr(one.find('{'), one.rfind('}') - one.find('{') + 1) + "]";
    std::istringstream in(two);
    CHECK_THROWS_AS(load_archive(in), DuplicateIdError);
  }
  SUBCASE("parse errors carry a byte offset") {
    std::istringstream in("[{\"id\": 1,}]");
    try {
      load_archive(in);
      FAIL("expected a parse error");
    } catch (const ArchiveParseError& e) {
      CHECK(e.byte_offset() > 0);
    }
  }
  SUBCASE("validation errors carry the puzzle id") {
    std::istringstream in(R"([{"id": 7, "date": "2024-01-01", "difficulty": 2.0, "groups": []}])");
    try {
      load_archive(in);
      FAIL("expected a validation error");
    } catch (const ArchiveValidationError& e) {
      CHECK(e.puzzle_id() == 7);
    }
  }
  SUBCASE("output is ordered by id") {
    auto puzzles = testfix::trio();
    CHECK(puzzles.size() == 3);
    CHECK(puzzles[0].id() < puzzles[1].id());
    CHECK(puzzles[1].id() < puzzles[2].id());
  }
}

TEST_CASE("archive round-trips through serialization") {
  const auto& trio = testfix::trio();
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : trio) doc.push_back(puzzle_to_json(p));
  std::istringstream in(doc.dump());
  auto reloaded = load_archive(in);
  REQUIRE(reloaded.size() == trio.size());
  for (size_t i = 0; i < trio.size(); ++i) {
    CHECK(reloaded[i].id() == trio[i].id());
    CHECK(reloaded[i].difficulty() == trio[i].difficulty());
    CHECK(reloaded[i].words() == trio[i].words());
    for (auto color : kAllColors) {
      CHECK(reloaded[i].group(color).category == trio[i].group(color).category);
    }
  }
}

TEST_CASE("difficulty buckets") {
  CHECK(difficulty_bucket(1.6) == DifficultyBucket::Below2_5);
  CHECK(difficulty_bucket(4.2) == DifficultyBucket::Above3_5);
  // boundaries are half-open
  CHECK(difficulty_bucket(2.5) == DifficultyBucket::From2_5To3);
  CHECK(difficulty_bucket(3.0) == DifficultyBucket::From3To3_5);
  CHECK(difficulty_bucket(3.5) == DifficultyBucket::Above3_5);
  CHECK_THROWS_AS(difficulty_bucket(0.0), NonPositiveRatingError);
  CHECK_THROWS_AS(difficulty_bucket(-1.0), NonPositiveRatingError);
}

TEST_CASE("difficulty_bucket is monotone") {
  double prev = 0.1;
  auto prev_bucket = difficulty_bucket(prev);
  for (double r = 0.2; r < 6.0; r += 0.1) {
    auto bucket = difficulty_bucket(r);
    CHECK(static_cast<int>(bucket) >= static_cast<int>(prev_bucket));
    prev_bucket = bucket;
  }
}

TEST_CASE("dataset_summary counts per bucket") {
  CHECK(dataset_summary({}).total == 0);

  std::vector<Puzzle> puzzles;
  int id = 1;
  for (double rating : {1.6, 2.5, 3.0, 3.5}) {
    RawPuzzleRecord record;
    record.id = id++;
    record.date = "2024-01-01";
    record.difficulty = rating;
    const char* colors[] = {"yellow", "green", "blue", "purple"};
    for (int g = 0; g < 4; ++g) {
      RawGroupRecord group;
      group.category = "G" + std::to_string(g);
      group.color = colors[g];
      for (int w = 0; w < 4; ++w) {
        group.words.push_back("W" + std::to_string(record.id) + "_" + std::to_string(g * 4 + w));
      }
      record.groups.push_back(group);
    }
    puzzles.push_back(validate_puzzle(record));
  }

  auto summary = dataset_summary(puzzles);
  CHECK(summary.total == 4);
  for (int count : summary.bucket_counts) CHECK(count == 1);
}
