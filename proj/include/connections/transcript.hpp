#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "connections/provider.hpp"
#include "connections/puzzle.hpp"

namespace connections {

enum class EventType {
  StageEntered,
  PromptIssued,
  CompletionReceived,
  GuessParsed,
  MoleInjected,
  FinalListUpdated,
  GuessSubmitted,
  OutcomeRecorded,
  GameEnded,
};

std::string_view to_string(EventType type);
std::optional<EventType> event_type_from_string(std::string_view name);

struct TranscriptEvent {
  EventType type = EventType::StageEntered;
  nlohmann::json data;
};

class TranscriptError : public Error {
 public:
  explicit TranscriptError(const std::string& what) : Error(what) {}
};

/// Append-only record of one game. Deliberately carries no wall-clock
/// timestamps so a replayed run is byte-identical to the original.
struct Transcript {
  int schema_version = 1;
  std::string game_id;
  int puzzle_id = 0;
  double puzzle_difficulty = 0.0;
  std::string approach;
  std::string model_id;
  nlohmann::json config;  // approach config snapshot
  uint64_t rng_seed = 0;
  std::vector<TranscriptEvent> events;

  void add(EventType type, nlohmann::json data);

  const TranscriptEvent* last_of(EventType type) const;
  std::vector<const TranscriptEvent*> all_of(EventType type) const;

  bool ended() const;
  bool aborted() const;
  GameScore final_score() const;  // throws if not ended

  /// Reconstructs the provider calls for replay from the PromptIssued /
  /// CompletionReceived event pairs.
  std::vector<RecordedCall> recorded_calls() const;
};

/// One JSON object per line: a header line, then the events in order.
void write_jsonl(const Transcript& transcript, std::ostream& out);
void write_jsonl_file(const Transcript& transcript, const std::filesystem::path& path);
Transcript read_jsonl(std::istream& in);
Transcript read_jsonl_file(const std::filesystem::path& path);

/// Event-ordering invariants: exactly one terminal GameEnded, and every
/// GuessSubmitted is followed by an OutcomeRecorded before the next
/// submission. Throws TranscriptError on violation.
void validate_events(const Transcript& transcript);

}  // namespace connections
