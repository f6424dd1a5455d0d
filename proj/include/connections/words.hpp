#pragma once

#include <array>
#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "connections/errors.hpp"

namespace connections {

/// Canonical form: uppercase, trimmed, internal whitespace collapsed to a
/// single space. Hyphens are kept, so "boo-boo " round-trips to "BOO-BOO".
std::string canonical_word(std::string_view raw);

/// One puzzle word. Comparison is on the canonical text.
class Word {
 public:
  Word() = default;
  explicit Word(std::string_view raw);

  const std::string& text() const { return text_; }
  auto operator<=>(const Word&) const = default;

 private:
  std::string text_;
};

std::string join_words(std::span<const Word> words, std::string_view sep = ", ");

/// A set of exactly four distinct words. Equality is set equality; the words
/// are stored sorted so permutations compare equal.
class Guess {
 public:
  /// Returns nothing unless `words` holds exactly four distinct entries.
  static std::optional<Guess> try_make(std::vector<Word> words);
  /// Throwing variant for inputs that are known to be well-formed.
  static Guess make(std::vector<Word> words);
  static Guess make(std::initializer_list<std::string_view> raw);

  const std::array<Word, 4>& words() const { return words_; }
  bool contains(const Word& w) const;
  bool overlaps(const Guess& other) const;
  /// Words joined in sorted order, e.g. "BUZZ, DAISY, GOOF, MICKEY".
  std::string to_line() const;

  auto operator<=>(const Guess&) const = default;

 private:
  Guess() = default;
  std::array<Word, 4> words_{};
};

}  // namespace connections
