#include "connections/oracle.hpp"

#include <algorithm>

#include "connections/guess_logic.hpp"

namespace connections {

namespace {

// Distinctive slices of the catalog templates, used to recognize which stage
// issued a prompt.
constexpr std::string_view kFormatDecisionMark = "exactly SUBMIT if the solver decided";
constexpr std::string_view kFormatSolutionMark = "four groups as the final four lines";
constexpr std::string_view kFormatMark = "You are a formatting assistant";
constexpr std::string_view kExtractMark = "best damn notes editor";
constexpr std::string_view kDiscernMark = "settle on your top choice";
constexpr std::string_view kDecideMark = "strong enough that we should submit it now";
constexpr std::string_view kEvaluateMark = "Select your two top choices";
constexpr std::string_view kO1EvaluateMark = "determine which guess is strongest";
constexpr std::string_view kOneshotMark = "there are four groups of four words";
constexpr std::string_view kWordsLineMark = "The puzzle words are: ";
constexpr std::string_view kNotesMark = "Notes on possible guesses:";
constexpr std::string_view kBrainstormNotesMark = "brainstormers’ notes:";
constexpr std::string_view kBadGuessMark = "Incorrect guesses so far:";

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> lines_of(std::string_view text) {
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

OracleProvider::OracleProvider(Puzzle puzzle, OracleOptions options)
    : puzzle_(std::move(puzzle)), options_(std::move(options)) {}

Guess OracleProvider::cross_group_herring(const Puzzle& puzzle) {
  std::vector<Word> words;
  for (const auto& group : puzzle.groups()) words.push_back(group.words.front());
  return Guess::make(std::move(words));
}

CompletionResponse OracleProvider::complete(const CompletionRequest& request) {
  return CompletionResponse{answer(request.prompt), std::nullopt, std::chrono::milliseconds{0}};
}

std::string OracleProvider::answer(const std::string& prompt) {
  // Candidate words offered by the prompt, if any.
  std::vector<Word> available;
  for (auto line : lines_of(prompt)) {
    auto at = line.find(kWordsLineMark);
    if (at == std::string_view::npos) continue;
    auto rest = line.substr(at + kWordsLineMark.size());
    size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      auto piece = trim_view(comma == std::string_view::npos ? rest.substr(start)
                                                             : rest.substr(start, comma - start));
      if (!piece.empty()) available.emplace_back(piece);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    break;
  }

  // Guesses the prompt marks as known-incorrect.
  std::vector<Guess> banned;
  {
    auto at = prompt.find(kBadGuessMark);
    if (at != std::string::npos) {
      auto block = std::string_view(prompt).substr(at);
      bool first = true;
      for (auto line : lines_of(block)) {
        if (first) {
          first = false;
          continue;
        }
        auto t = trim_view(line);
        if (t.empty()) break;
        std::vector<Word> words;
        size_t start = 0;
        while (start <= t.size()) {
          auto comma = t.find(',', start);
          auto piece = trim_view(comma == std::string_view::npos ? t.substr(start)
                                                                 : t.substr(start, comma - start));
          if (!piece.empty()) words.emplace_back(piece);
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
        if (auto g = Guess::try_make(words)) banned.push_back(*g);
      }
    }
  }

  // Guess-shaped lines in the notes section (candidates under review).
  std::vector<Guess> noted;
  {
    auto at = prompt.rfind(kNotesMark);
    if (at == std::string::npos) at = prompt.rfind(kBrainstormNotesMark);
    if (at != std::string::npos) {
      for (auto line : lines_of(std::string_view(prompt).substr(at))) {
        auto t = trim_view(line);
        if (t.empty()) continue;
        std::vector<Word> words;
        size_t start = 0;
        bool ok = true;
        while (start <= t.size()) {
          auto comma = t.find(',', start);
          auto piece = trim_view(comma == std::string_view::npos ? t.substr(start)
                                                                 : t.substr(start, comma - start));
          if (piece.empty() || piece.find(' ') != std::string_view::npos) {
            ok = false;
            break;
          }
          words.emplace_back(piece);
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
        if (!ok) continue;
        if (auto g = Guess::try_make(words)) noted.push_back(*g);
      }
    }
  }

  auto pick_candidate = [&]() -> std::optional<Guess> {
    if (!options_.naive_picks) {
      for (const auto& g : noted) {
        if (check_guess(puzzle_, g).correct) return g;
      }
    }
    if (!noted.empty()) return noted.front();
    return std::nullopt;
  };

  // ---- formatting calls --------------------------------------------------
  if (prompt.find(kFormatDecisionMark) != std::string::npos) {
    // Echo the last guess-shaped line of the notes, then the verdict.
    std::string line;
    for (auto l : lines_of(prompt)) {
      auto t = trim_view(l);
      if (std::count(t.begin(), t.end(), ',') == 3) line = std::string(t);
    }
    return line + "\nSUBMIT";
  }
  if (prompt.find(kFormatSolutionMark) != std::string::npos) {
    auto all = lines_of(prompt);
    std::vector<std::string> tail;
    for (auto it = all.rbegin(); it != all.rend() && tail.size() < 4; ++it) {
      auto t = trim_view(*it);
      if (!t.empty()) tail.emplace_back(t);
    }
    std::reverse(tail.begin(), tail.end());
    std::string out;
    for (const auto& l : tail) {
      if (!out.empty()) out += '\n';
      out += l;
    }
    return out;
  }
  if (prompt.find(kFormatMark) != std::string::npos) {
    // Generic guess formatting: echo the final non-empty line.
    std::string last;
    for (auto l : lines_of(prompt)) {
      auto t = trim_view(l);
      if (!t.empty()) last = std::string(t);
    }
    return last;
  }

  // ---- pipeline stages ----------------------------------------------------
  if (prompt.find(kExtractMark) != std::string::npos) {
    std::string out = "Possible solutions found in the notes:";
    for (const auto& g : noted) out += "\n" + g.to_line();
    return out;
  }
  if (prompt.find(kDiscernMark) != std::string::npos || prompt.find(kDecideMark) != std::string::npos ||
      prompt.find(kEvaluateMark) != std::string::npos ||
      prompt.find(kO1EvaluateMark) != std::string::npos) {
    auto choice = pick_candidate();
    if (!choice) return "None of these candidates holds up.";
    return "After weighing the options, the strongest connection is:\n" + choice->to_line();
  }
  if (prompt.find(kOneshotMark) != std::string::npos) {
    std::string out = "The four groups are:";
    for (const auto& group : puzzle_.groups()) {
      out += "\n" + group.category + ": " + join_words(group.words);
    }
    return out;
  }

  // Make-a-guess and brainstorm prompts: propose the next plausible set.
  std::vector<Guess> candidates;
  if (options_.red_herring && proposals_made_ == 0) {
    bool usable = std::all_of(options_.red_herring->words().begin(),
                              options_.red_herring->words().end(), [&](const Word& w) {
                                return std::find(available.begin(), available.end(), w) !=
                                       available.end();
                              });
    if (usable &&
        std::find(banned.begin(), banned.end(), *options_.red_herring) == banned.end()) {
      candidates.push_back(*options_.red_herring);
    }
  }
  for (const auto& group : puzzle_.groups()) {
    auto g = group.as_guess();
    bool usable = std::all_of(g.words().begin(), g.words().end(), [&](const Word& w) {
      return std::find(available.begin(), available.end(), w) != available.end();
    });
    if (usable && std::find(banned.begin(), banned.end(), g) == banned.end()) {
      candidates.push_back(g);
    }
  }
  if (candidates.empty()) {
    ++proposals_made_;
    return "I can't identify a good guess to submit.";
  }
  const auto& proposal = candidates[static_cast<size_t>(proposals_made_) % candidates.size()];
  ++proposals_made_;
  return "These four have a connection I trust.\n" + proposal.to_line();
}

}  // namespace connections
