#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "connections/errors.hpp"

namespace connections {

/// FNV-1a, 64 bit. Stable across runs and platforms; used for prompt hashes
/// and per-game seed derivation.
uint64_t fnv1a64(std::string_view data);
/// 16-hex-digit rendering of fnv1a64.
std::string prompt_hash(std::string_view prompt);

struct SamplingParams {
  std::optional<double> temperature;
  std::optional<int> max_output_tokens;
};

struct CompletionRequest {
  std::string model_id;
  std::string prompt;
  SamplingParams sampling;
  int call_index = 0;  // strictly increasing within one game
};

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct CompletionResponse {
  std::string text;
  std::optional<TokenUsage> usage;
  std::chrono::milliseconds latency{0};
};

class ProviderError : public Error {
 public:
  enum class Kind { Transient, Permanent };
  ProviderError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  bool transient() const { return kind_ == Kind::Transient; }

 private:
  Kind kind_;
};

class ScriptExhaustedError : public Error {
 public:
  explicit ScriptExhaustedError(size_t calls)
      : Error("scripted provider exhausted after " + std::to_string(calls) + " calls") {}
};

class ReplayMismatchError : public Error {
 public:
  ReplayMismatchError(int call_index, const std::string& what)
      : Error(what), call_index_(call_index) {}
  int call_index() const { return call_index_; }

 private:
  int call_index_;
};

class ExhaustedRetriesError : public Error {
 public:
  ExhaustedRetriesError(int attempts, const std::string& last)
      : Error("gave up after " + std::to_string(attempts) + " attempts; last error: " + last),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class SinkError : public Error {
 public:
  explicit SinkError(const std::string& what) : Error(what) {}
};

/// Contract for text completion: live HTTP, scripted oracle, or replay.
/// Implementations must tolerate concurrent complete() calls unless noted.
class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

/// Deterministic provider that plays back a fixed list of completions.
/// Per-game use only; not safe to share across concurrent games.
class ScriptedProvider : public CompletionProvider {
 public:
  explicit ScriptedProvider(std::vector<std::string> script) : script_(std::move(script)) {}

  CompletionResponse complete(const CompletionRequest& request) override;
  size_t calls() const { return next_; }

 private:
  std::vector<std::string> script_;
  size_t next_ = 0;
};

struct RecordedCall {
  int call_index = 0;
  std::string prompt_hash;
  std::string prompt;
  std::string completion;
};

class CallSink {
 public:
  virtual ~CallSink() = default;
  virtual void append(const RecordedCall& call) = 0;
};

class VectorCallSink : public CallSink {
 public:
  void append(const RecordedCall& call) override;
  std::vector<RecordedCall> calls() const;

 private:
  mutable std::mutex mutex_;
  std::vector<RecordedCall> calls_;
};

/// Passthrough provider that logs every successful call to a sink.
std::shared_ptr<CompletionProvider> record(std::shared_ptr<CompletionProvider> inner,
                                           CallSink& sink);

/// Provider that serves recorded completions. Lookup is by call_index; a
/// prompt-hash mismatch means the pipeline drifted and raises
/// ReplayMismatchError instead of silently answering.
class ReplayProvider : public CompletionProvider {
 public:
  explicit ReplayProvider(std::vector<RecordedCall> calls);

  CompletionResponse complete(const CompletionRequest& request) override;

 private:
  std::vector<RecordedCall> calls_;  // sorted by call_index
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_delay{250};
  double multiplier = 2.0;
};

/// Retries transient errors with exponential backoff; permanent errors and
/// everything else surface immediately.
std::shared_ptr<CompletionProvider> with_retries(std::shared_ptr<CompletionProvider> inner,
                                                 RetryPolicy policy);

}  // namespace connections
