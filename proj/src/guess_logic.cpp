#include "connections/guess_logic.hpp"

#include <algorithm>
#include <cctype>

namespace connections {

namespace {

std::string normalize_for_search(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+2019 right single quote -> '
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
        static_cast<unsigned char>(text[i + 2]) == 0x99) {
      out.push_back('\'');
      i += 2;
      continue;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Leading/trailing markdown emphasis, quotes (straight or curly), or a
// trailing period around a token.
std::string strip_token(std::string_view token) {
  auto t = trim(token);
  auto curly_quote = [](std::string_view s) {
    // U+2018/2019/201C/201D
    if (s.size() < 3 || static_cast<unsigned char>(s[0]) != 0xE2 ||
        static_cast<unsigned char>(s[1]) != 0x80) {
      return false;
    }
    unsigned char third = static_cast<unsigned char>(s[2]);
    return third == 0x98 || third == 0x99 || third == 0x9C || third == 0x9D;
  };
  auto wrapper_prefix = [&](std::string_view s) -> size_t {
    if (s.empty()) return 0;
    char c = s.front();
    if (c == '*' || c == '"' || c == '\'' || c == '.') return 1;
    return curly_quote(s) ? 3 : 0;
  };
  auto wrapper_suffix = [&](std::string_view s) -> size_t {
    if (s.empty()) return 0;
    char c = s.back();
    if (c == '*' || c == '"' || c == '\'' || c == '.') return 1;
    return s.size() >= 3 && curly_quote(s.substr(s.size() - 3)) ? 3 : 0;
  };
  while (size_t n = wrapper_prefix(t)) t.remove_prefix(n);
  while (size_t n = wrapper_suffix(t)) t.remove_suffix(n);
  return std::string(trim(t));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

ParsedGuess parse_guess(std::string_view completion, const std::vector<Word>& candidates) {
  if (normalize_for_search(completion).find(kAbstainSentence) != std::string::npos) {
    return ParsedGuess::abstain();
  }

  std::string_view line;
  for (auto candidate : split_lines(completion)) {
    if (!trim(candidate).empty()) line = trim(candidate);
  }
  if (line.empty()) return ParsedGuess::malformed("completion has no content");

  // Drop a leading label such as "Final guess:".
  if (auto colon = line.find(':'); colon != std::string_view::npos) {
    line = trim(line.substr(colon + 1));
  }

  std::vector<Word> words;
  size_t start = 0;
  int tokens = 0;
  while (start <= line.size()) {
    auto end = line.find(',', start);
    auto piece = end == std::string_view::npos ? line.substr(start) : line.substr(start, end - start);
    auto token = strip_token(piece);
    ++tokens;
    if (token.empty()) return ParsedGuess::malformed("empty token in guess line");
    auto canonical = canonical_word(token);
    auto hit = std::find_if(candidates.begin(), candidates.end(),
                            [&](const Word& w) { return w.text() == canonical; });
    if (hit == candidates.end()) {
      return ParsedGuess::malformed("\"" + std::string(token) + "\" is not one of the puzzle words");
    }
    words.push_back(*hit);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  if (tokens != 4) {
    return ParsedGuess::malformed("expected 4 words, got " + std::to_string(tokens));
  }
  auto guess = Guess::try_make(words);
  if (!guess) return ParsedGuess::malformed("guess repeats a word");
  return ParsedGuess::valid(*guess);
}

void FinalGuessList::append(const Guess& guess) {
  ++processed_;
  for (auto& entry : entries_) {
    if (entry.guess == guess) {
      ++entry.count;
      return;
    }
  }
  entries_.push_back(Entry{guess, 1, processed_});
}

void FinalGuessList::remove(const Guess& guess) {
  std::erase_if(entries_, [&](const Entry& e) { return e.guess == guess; });
}

std::optional<Guess> FinalGuessList::thrice_repeated() const {
  const Entry* best = nullptr;
  for (const auto& entry : entries_) {
    if (entry.count >= 3 && (!best || entry.first_index < best->first_index)) {
      best = &entry;
    }
  }
  if (!best) return std::nullopt;
  return best->guess;
}

std::optional<std::vector<Guess>> FinalGuessList::find_disjoint(int k) const {
  const int n = static_cast<int>(entries_.size());
  if (k < 1 || n < k) return std::nullopt;

  // Combinations in lexicographic index order; entries are stored in append
  // order so the first hit is the earliest.
  std::vector<int> pick(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;

  auto disjoint = [&]() {
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (entries_[static_cast<size_t>(pick[static_cast<size_t>(a)])].guess.overlaps(
                entries_[static_cast<size_t>(pick[static_cast<size_t>(b)])].guess)) {
          return false;
        }
      }
    }
    return true;
  };

  while (true) {
    if (disjoint()) {
      std::vector<Guess> out;
      out.reserve(static_cast<size_t>(k));
      for (int idx : pick) out.push_back(entries_[static_cast<size_t>(idx)].guess);
      return out;
    }
    int i = k - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return std::nullopt;
}

SubmissionDecision actor2_decide(const FinalGuessList& list) {
  if (auto pair = list.find_disjoint(2)) return SubmissionDecision::submit(std::move(*pair));
  if (auto thrice = list.thrice_repeated()) return SubmissionDecision::submit({*thrice});
  return SubmissionDecision::wait();
}

SubmissionDecision actor_o1_decide(const FinalGuessList& list,
                                   const ActorO1Thresholds& thresholds) {
  if (auto quad = list.find_disjoint(4)) return SubmissionDecision::submit(std::move(*quad));
  if (list.processed_count() >= thresholds.triplet_min_processed) {
    if (auto triple = list.find_disjoint(3)) return SubmissionDecision::submit(std::move(*triple));
  }
  if (list.processed_count() > thresholds.pair_min_processed) {
    if (auto pair = list.find_disjoint(2)) return SubmissionDecision::submit(std::move(*pair));
  }
  if (auto thrice = list.thrice_repeated()) return SubmissionDecision::submit({*thrice});
  return SubmissionDecision::wait();
}

uint64_t DeterministicRng::next() {
  // splitmix64
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t DeterministicRng::below(uint64_t n) {
  if (n <= 1) return 0;
  // rejection sampling avoids modulo bias
  uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

bool MoleSet::contains(const Word& w) const {
  return std::binary_search(moles.begin(), moles.end(), w);
}

MoleSet draw_moles(const std::vector<SolutionGroup>& solved, int count, DeterministicRng& rng,
                   uint64_t seed_label) {
  if (solved.empty()) throw NoSolvedGroupsError();
  std::vector<Word> pool;
  for (const auto& g : solved) pool.insert(pool.end(), g.words.begin(), g.words.end());
  if (count > static_cast<int>(pool.size())) {
    throw CountTooLargeError(count, static_cast<int>(pool.size()));
  }

  MoleSet set;
  set.rng_seed = seed_label;
  for (int i = 0; i < count; ++i) {
    auto idx = rng.below(pool.size());
    set.moles.push_back(pool[static_cast<size_t>(idx)]);
    pool.erase(pool.begin() + static_cast<long>(idx));
  }
  std::sort(set.moles.begin(), set.moles.end());
  return set;
}

std::vector<Word> mix_words(const std::vector<Word>& remaining, const MoleSet& moles,
                            DeterministicRng& rng) {
  std::vector<Word> out = remaining;
  out.insert(out.end(), moles.moles.begin(), moles.moles.end());
  rng.shuffle(out);
  return out;
}

std::pair<std::vector<Word>, MoleSet> inject_moles(const std::vector<Word>& remaining,
                                                   const std::vector<SolutionGroup>& solved,
                                                   int count, DeterministicRng& rng,
                                                   uint64_t seed_label) {
  if (count == 0) return {remaining, MoleSet{{}, seed_label}};
  auto moles = draw_moles(solved, count, rng, seed_label);
  return {mix_words(remaining, moles, rng), std::move(moles)};
}

bool mole_reject(const Guess& guess, const MoleSet& moles) {
  for (const auto& w : guess.words()) {
    if (moles.contains(w)) return true;
  }
  return false;
}

std::string_view to_string(DiversityPolicy policy) {
  switch (policy) {
    case DiversityPolicy::Off: return "off";
    case DiversityPolicy::Alternate: return "alternate";
  }
  return "?";
}

std::optional<DiversityPolicy> diversity_policy_from_string(std::string_view name) {
  if (name == "off") return DiversityPolicy::Off;
  if (name == "alternate") return DiversityPolicy::Alternate;
  return std::nullopt;
}

std::vector<Word> diversity_remove(const std::vector<Word>& remaining, const FinalGuessList& list,
                                   const std::vector<Guess>& pending, DiversityPolicy policy,
                                   int round) {
  if (policy != DiversityPolicy::Alternate || round % 2 != 0) return remaining;

  auto used = [&](const Word& w) {
    for (const auto& entry : list.entries()) {
      if (entry.guess.contains(w)) return true;
    }
    for (const auto& g : pending) {
      if (g.contains(w)) return true;
    }
    return false;
  };

  std::vector<Word> out;
  out.reserve(remaining.size());
  for (const auto& w : remaining) {
    if (!used(w)) out.push_back(w);
  }
  if (out.size() < 8) return remaining;  // never starve the guess space
  return out;
}

}  // namespace connections
