#include "connections/transcript.hpp"

#include <array>
#include <fstream>

namespace connections {

namespace {

constexpr std::array<std::pair<EventType, std::string_view>, 9> kEventNames = {{
    {EventType::StageEntered, "StageEntered"},
    {EventType::PromptIssued, "PromptIssued"},
    {EventType::CompletionReceived, "CompletionReceived"},
    {EventType::GuessParsed, "GuessParsed"},
    {EventType::MoleInjected, "MoleInjected"},
    {EventType::FinalListUpdated, "FinalListUpdated"},
    {EventType::GuessSubmitted, "GuessSubmitted"},
    {EventType::OutcomeRecorded, "OutcomeRecorded"},
    {EventType::GameEnded, "GameEnded"},
}};

}  // namespace

std::string_view to_string(EventType type) {
  for (const auto& [t, name] : kEventNames) {
    if (t == type) return name;
  }
  return "?";
}

std::optional<EventType> event_type_from_string(std::string_view name) {
  for (const auto& [t, n] : kEventNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

void Transcript::add(EventType type, nlohmann::json data) {
  events.push_back(TranscriptEvent{type, std::move(data)});
}

const TranscriptEvent* Transcript::last_of(EventType type) const {
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->type == type) return &*it;
  }
  return nullptr;
}

std::vector<const TranscriptEvent*> Transcript::all_of(EventType type) const {
  std::vector<const TranscriptEvent*> out;
  for (const auto& e : events) {
    if (e.type == type) out.push_back(&e);
  }
  return out;
}

bool Transcript::ended() const {
  return !events.empty() && events.back().type == EventType::GameEnded;
}

bool Transcript::aborted() const {
  const auto* end = last_of(EventType::GameEnded);
  return end && end->data.value("aborted", false);
}

GameScore Transcript::final_score() const {
  const auto* end = last_of(EventType::GameEnded);
  if (!end) throw TranscriptError("transcript " + game_id + " has no GameEnded event");
  const auto& score = end->data.at("score");
  GameScore out;
  out.solved = score.at("solved").get<bool>();
  out.perfect = score.at("perfect").get<bool>();
  out.correct_count = score.at("correct").get<int>();
  out.incorrect_count = score.at("incorrect").get<int>();
  return out;
}

std::vector<RecordedCall> Transcript::recorded_calls() const {
  std::vector<RecordedCall> calls;
  std::optional<RecordedCall> open;
  for (const auto& e : events) {
    if (e.type == EventType::PromptIssued) {
      open = RecordedCall{e.data.at("call_index").get<int>(),
                          e.data.at("prompt_hash").get<std::string>(),
                          e.data.value("text", std::string{}), {}};
    } else if (e.type == EventType::CompletionReceived) {
      if (!open || open->call_index != e.data.at("call_index").get<int>()) {
        throw TranscriptError("transcript " + game_id +
                              ": CompletionReceived without matching PromptIssued");
      }
      open->completion = e.data.at("text").get<std::string>();
      calls.push_back(std::move(*open));
      open.reset();
    }
  }
  return calls;
}

void write_jsonl(const Transcript& transcript, std::ostream& out) {
  nlohmann::json header = {
      {"kind", "header"},
      {"schema_version", transcript.schema_version},
      {"game_id", transcript.game_id},
      {"puzzle_id", transcript.puzzle_id},
      {"puzzle_difficulty", transcript.puzzle_difficulty},
      {"approach", transcript.approach},
      {"model_id", transcript.model_id},
      {"config", transcript.config},
      {"rng_seed", transcript.rng_seed},
  };
  out << header.dump() << '\n';
  for (const auto& e : transcript.events) {
    nlohmann::json line = e.data;
    line["kind"] = "event";
    line["type"] = std::string(to_string(e.type));
    out << line.dump() << '\n';
  }
}

void write_jsonl_file(const Transcript& transcript, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TranscriptError("cannot write transcript file: " + path.string());
  write_jsonl(transcript, out);
}

Transcript read_jsonl(std::istream& in) {
  Transcript transcript;
  std::string line;
  bool have_header = false;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw TranscriptError("transcript line " + std::to_string(line_no) +
                            " does not parse: " + e.what());
    }
    auto kind = doc.value("kind", std::string{});
    if (kind == "header") {
      transcript.schema_version = doc.at("schema_version").get<int>();
      transcript.game_id = doc.at("game_id").get<std::string>();
      transcript.puzzle_id = doc.at("puzzle_id").get<int>();
      transcript.puzzle_difficulty = doc.value("puzzle_difficulty", 0.0);
      transcript.approach = doc.at("approach").get<std::string>();
      transcript.model_id = doc.at("model_id").get<std::string>();
      transcript.config = doc.value("config", nlohmann::json::object());
      transcript.rng_seed = doc.at("rng_seed").get<uint64_t>();
      have_header = true;
    } else if (kind == "event") {
      auto type = event_type_from_string(doc.at("type").get<std::string>());
      if (!type) {
        throw TranscriptError("transcript line " + std::to_string(line_no) +
                              ": unknown event type " + doc["type"].dump());
      }
      doc.erase("kind");
      doc.erase("type");
      transcript.events.push_back(TranscriptEvent{*type, std::move(doc)});
    } else {
      throw TranscriptError("transcript line " + std::to_string(line_no) +
                            ": unknown line kind " + doc.value("kind", "<missing>"));
    }
  }
  if (!have_header) throw TranscriptError("transcript has no header line");
  validate_events(transcript);
  return transcript;
}

Transcript read_jsonl_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TranscriptError("cannot open transcript file: " + path.string());
  try {
    return read_jsonl(in);
  } catch (const TranscriptError& e) {
    throw TranscriptError(path.string() + ": " + e.what());
  }
}

void validate_events(const Transcript& transcript) {
  int ended = 0;
  bool awaiting_outcome = false;
  for (const auto& e : transcript.events) {
    if (ended > 0) {
      throw TranscriptError("transcript " + transcript.game_id + ": events after GameEnded");
    }
    switch (e.type) {
      case EventType::GuessSubmitted:
        if (awaiting_outcome) {
          throw TranscriptError("transcript " + transcript.game_id +
                                ": GuessSubmitted before previous outcome was recorded");
        }
        awaiting_outcome = true;
        break;
      case EventType::OutcomeRecorded:
        if (!awaiting_outcome) {
          throw TranscriptError("transcript " + transcript.game_id +
                                ": OutcomeRecorded without a submission");
        }
        awaiting_outcome = false;
        break;
      case EventType::GameEnded:
        ++ended;
        break;
      default:
        break;
    }
  }
  if (ended != 1) {
    throw TranscriptError("transcript " + transcript.game_id + ": expected exactly one GameEnded, got " +
                          std::to_string(ended));
  }
  if (awaiting_outcome) {
    throw TranscriptError("transcript " + transcript.game_id +
                          ": trailing submission without an outcome");
  }
}

}  // namespace connections
