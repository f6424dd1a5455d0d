#include "connections/words.hpp"

#include <algorithm>
#include <cctype>

namespace connections {

std::string canonical_word(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

Word::Word(std::string_view raw) : text_(canonical_word(raw)) {
  if (text_.empty()) throw Error("word is empty after canonicalization");
}

std::string join_words(std::span<const Word> words, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += sep;
    out += words[i].text();
  }
  return out;
}

std::optional<Guess> Guess::try_make(std::vector<Word> words) {
  if (words.size() != 4) return std::nullopt;
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end()) return std::nullopt;
  Guess g;
  std::copy(words.begin(), words.end(), g.words_.begin());
  return g;
}

Guess Guess::make(std::vector<Word> words) {
  auto g = try_make(std::move(words));
  if (!g) throw Error("a guess needs exactly four distinct words");
  return *g;
}

Guess Guess::make(std::initializer_list<std::string_view> raw) {
  std::vector<Word> words;
  words.reserve(raw.size());
  for (auto r : raw) words.emplace_back(r);
  return make(std::move(words));
}

bool Guess::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

bool Guess::overlaps(const Guess& other) const {
  for (const auto& w : other.words_) {
    if (contains(w)) return true;
  }
  return false;
}

std::string Guess::to_line() const { return join_words(words_); }

}  // namespace connections
