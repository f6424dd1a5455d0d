#pragma once

#include <filesystem>

#include "connections/dataset.hpp"
#include "connections/prompt_kit.hpp"
#include "connections/puzzle.hpp"

namespace testfix {

inline std::filesystem::path source_dir() { return CONNECTIONS_SOURCE_DIR; }

inline const connections::Puzzle& puzzle_430() {
  static auto puzzles = connections::load_archive(source_dir() / "fixtures" / "archive.json");
  return puzzles.front();
}

inline const std::vector<connections::Puzzle>& trio() {
  static auto puzzles = connections::load_archive(source_dir() / "fixtures" / "trio.json");
  return puzzles;
}

inline const connections::PromptCatalog& catalog() {
  static auto c = connections::PromptCatalog::load(source_dir() / "prompts");
  return c;
}

inline connections::Guess yellow_430() {
  return connections::Guess::make({"BOO-BOO", "FLUB", "GAFFE", "GOOF"});
}
inline connections::Guess green_430() {
  return connections::Guess::make({"DAISY", "JASMINE", "PETUNIA", "POPPY"});
}
inline connections::Guess blue_430() {
  return connections::Guess::make({"BUZZ", "DANCE", "POLLINATE", "STING"});
}
inline connections::Guess purple_430() {
  return connections::Guess::make({"LOU", "BABE", "YOGI", "MICKEY"});
}
/// The "cartoon characters" trap from puzzle #430.
inline connections::Guess cartoon_herring() {
  return connections::Guess::make({"BOO-BOO", "YOGI", "MICKEY", "DAISY"});
}

}  // namespace testfix
