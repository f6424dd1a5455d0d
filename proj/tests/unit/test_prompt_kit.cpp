#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "connections/prompt_kit.hpp"
#include "fixtures.hpp"

using namespace connections;

namespace {

PromptContext full_context() {
  PromptContext ctx;
  ctx.words = testfix::puzzle_430().words();
  ctx.bad_guesses = {testfix::cartoon_herring()};
  ctx.notes = "some accumulated notes";
  ctx.brainstorm = testfix::catalog().brainstorm(1);
  return ctx;
}

}  // namespace

TEST_CASE("catalog loads with verified checksums") {
  const auto& catalog = testfix::catalog();
  auto ids = catalog.ids();
  CHECK(ids.size() >= 12 + 24);
  for (const auto& required :
       {"vanilla.make_guess", "cot.make_guess", "cot_scripted.make_guess", "actor.brainstorm",
        "actor.extract", "actor.discern", "actor.decide", "actor.evaluate", "actor2.evaluate",
        "oneshot", "actor_o1.brainstorm", "actor_o1.evaluate", "format_guess", "format_decision",
        "format_solution"}) {
    CHECK_NOTHROW(catalog.get(required));
  }
  CHECK_THROWS_AS(catalog.get("no_such_template"), UnknownTemplateError);
}

TEST_CASE("tampered template fails the checksum pin") {
  namespace fs = std::filesystem;
  auto tmp = fs::temp_directory_path() / "prompts_tampered";
  fs::remove_all(tmp);
  fs::copy(testfix::source_dir() / "prompts", tmp);
  {
    std::ofstream out(tmp / "oneshot", std::ios::app);
    out << "\nEDITED\n";
  }
  CHECK_THROWS_AS(PromptCatalog::load(tmp), CatalogError);
  fs::remove_all(tmp);
}

TEST_CASE("format_bad_guesses") {
  CHECK(format_bad_guesses({}) == "Incorrect guesses so far: none.");

  auto one = format_bad_guesses({Guess::make({"MICKEY", "DAISY", "BUZZ", "GOOF"})});
  CHECK(one == "Incorrect guesses so far:\nBUZZ, DAISY, GOOF, MICKEY");

  auto two = format_bad_guesses({Guess::make({"MICKEY", "DAISY", "BUZZ", "GOOF"}),
                                 Guess::make({"BOO-BOO", "YOGI", "MICKEY", "DAISY"})});
  CHECK(two ==
        "Incorrect guesses so far:\nBUZZ, DAISY, GOOF, MICKEY\nBOO-BOO, DAISY, MICKEY, YOGI");
}

TEST_CASE("render substitutes every placeholder") {
  const auto& catalog = testfix::catalog();

  SUBCASE("empty bad guesses render the explicit none line") {
    PromptContext ctx;
    ctx.words = testfix::puzzle_430().words();
    auto text = render(catalog.get("vanilla.make_guess"), ctx);
    CHECK(text.find("Incorrect guesses so far: none.") != std::string::npos);
    CHECK(text.find("BOO-BOO") != std::string::npos);
    CHECK(text.find("[[{") == std::string::npos);
  }

  SUBCASE("brainstorm prompt carries the selected pattern") {
    auto ctx = full_context();
    auto text = render(catalog.get("actor.brainstorm"), ctx);
    CHECK(text.find("Puzzle words that are all within the same category") != std::string::npos);
  }

  SUBCASE("missing notes are reported by placeholder name") {
    PromptContext ctx;
    ctx.words = testfix::puzzle_430().words();
    try {
      render(catalog.get("actor.extract"), ctx);
      FAIL("expected a missing-field error");
    } catch (const MissingContextFieldError& e) {
      CHECK(e.placeholder() == "notes");
    }
  }

  SUBCASE("missing brainstorm template is reported") {
    PromptContext ctx;
    ctx.words = testfix::puzzle_430().words();
    CHECK_THROWS_AS(render(catalog.get("actor.brainstorm"), ctx), MissingContextFieldError);
  }

  SUBCASE("no placeholder survives in any template") {
    auto ctx = full_context();
    for (const auto& id : catalog.ids()) {
      auto text = render(catalog.get(id), ctx);
      CHECK_MESSAGE(text.find("[[{") == std::string::npos, "template ", id);
    }
  }

  SUBCASE("rendering is pure") {
    auto ctx = full_context();
    CHECK(render(catalog.get("actor.decide"), ctx) == render(catalog.get("actor.decide"), ctx));
  }
}

TEST_CASE("brainstorm template cycling") {
  const auto& catalog = testfix::catalog();

  SUBCASE("cursor walks 1..24 then wraps") {
    auto [first, next] = catalog.next_brainstorm(0);
    CHECK(first.index == 1);
    CHECK(next == 1);
    auto [last, after_last] = catalog.next_brainstorm(23);
    CHECK(last.index == 24);
    CHECK(after_last == 24);
    auto [wrapped, _] = catalog.next_brainstorm(24);
    CHECK(wrapped.index == 1);
  }

  SUBCASE("48 rounds visit each template exactly twice") {
    std::array<int, 25> visits{};
    int cursor = 0;
    for (int i = 0; i < 48; ++i) {
      auto [tmpl, next] = catalog.next_brainstorm(cursor);
      cursor = next;
      ++visits[static_cast<size_t>(tmpl.index)];
    }
    for (int i = 1; i <= 24; ++i) CHECK(visits[static_cast<size_t>(i)] == 2);
  }

  SUBCASE("every pattern line is present and unique-ish") {
    for (int i = 1; i <= 24; ++i) {
      CHECK(catalog.brainstorm(i).pattern_line().starts_with("Pattern:"));
    }
    // templates 12 and 13 are deliberate duplicates in the catalog
    CHECK(catalog.brainstorm(12).body == catalog.brainstorm(13).body);
  }
}
