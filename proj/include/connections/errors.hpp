#pragma once

#include <stdexcept>
#include <string>

namespace connections {

/// Root of every exception this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class GameOverError : public Error {
 public:
  GameOverError() : Error("game is already over") {}
};

class WordNotInPuzzleError : public Error {
 public:
  explicit WordNotInPuzzleError(const std::string& word)
      : Error("word not in puzzle: " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

}  // namespace connections
