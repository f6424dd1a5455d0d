#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "connections/words.hpp"

namespace connections {

constexpr int kBrainstormTemplateCount = 24;

struct PromptTemplate {
  std::string id;
  std::string body;
  std::vector<std::string> placeholders;  // names used by body, deduplicated

  bool uses(std::string_view placeholder) const;
};

struct BrainstormTemplate {
  int index = 0;  // 1..24
  std::string body;

  /// First line of the body, e.g. "Pattern: Puzzle words that are all within
  /// the same category".
  std::string pattern_line() const;
};

/// Everything a template may splice in. `words` is the candidate list shown
/// to the model (possibly mole-augmented or diversity-reduced).
struct PromptContext {
  std::vector<Word> words;
  std::vector<Guess> bad_guesses;
  std::optional<std::string> notes;
  std::optional<BrainstormTemplate> brainstorm;
};

class MissingContextFieldError : public Error {
 public:
  explicit MissingContextFieldError(const std::string& placeholder)
      : Error("prompt context is missing \"" + placeholder + "\""), placeholder_(placeholder) {}
  const std::string& placeholder() const { return placeholder_; }

 private:
  std::string placeholder_;
};

class UnknownTemplateError : public Error {
 public:
  explicit UnknownTemplateError(const std::string& id)
      : Error("unknown prompt template \"" + id + "\"") {}
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& what) : Error(what) {}
};

/// Deterministic rendering of the known-incorrect guesses block.
/// Empty list renders an explicit "none" line so the prompt shape is stable.
std::string format_bad_guesses(const std::vector<Guess>& guesses);

/// Substitutes every placeholder in the template. Pure; throws
/// MissingContextFieldError if the context lacks a field the body uses.
std::string render(const PromptTemplate& tmpl, const PromptContext& ctx);

/// Immutable template store backed by one file per template id plus a
/// manifest of pinned checksums. Loading verifies every checksum.
class PromptCatalog {
 public:
  static PromptCatalog load(const std::filesystem::path& dir);

  const PromptTemplate& get(std::string_view id) const;
  const BrainstormTemplate& brainstorm(int index) const;  // 1..24
  /// Template for the given cursor plus the advanced cursor; cycles through
  /// all 24 templates.
  std::pair<const BrainstormTemplate&, int> next_brainstorm(int cursor) const;
  std::vector<std::string> ids() const;
  const std::string& checksum(std::string_view id) const;

 private:
  std::map<std::string, PromptTemplate, std::less<>> templates_;
  std::vector<BrainstormTemplate> brainstorms_;
  std::map<std::string, std::string, std::less<>> checksums_;
};

}  // namespace connections
