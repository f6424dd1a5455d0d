#include "connections/provider.hpp"

#include <algorithm>
#include <thread>

namespace connections {

uint64_t fnv1a64(std::string_view data) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string prompt_hash(std::string_view prompt) {
  static const char* digits = "0123456789abcdef";
  uint64_t h = fnv1a64(prompt);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

CompletionResponse ScriptedProvider::complete(const CompletionRequest&) {
  if (next_ >= script_.size()) throw ScriptExhaustedError(next_);
  return CompletionResponse{script_[next_++], std::nullopt, std::chrono::milliseconds{0}};
}

void VectorCallSink::append(const RecordedCall& call) {
  std::lock_guard lock(mutex_);
  calls_.push_back(call);
}

std::vector<RecordedCall> VectorCallSink::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

namespace {

class RecordingProvider : public CompletionProvider {
 public:
  RecordingProvider(std::shared_ptr<CompletionProvider> inner, CallSink& sink)
      : inner_(std::move(inner)), sink_(sink) {}

  CompletionResponse complete(const CompletionRequest& request) override {
    auto response = inner_->complete(request);
    sink_.append(RecordedCall{request.call_index, prompt_hash(request.prompt), request.prompt,
                              response.text});
    return response;
  }

 private:
  std::shared_ptr<CompletionProvider> inner_;
  CallSink& sink_;
};

class RetryingProvider : public CompletionProvider {
 public:
  RetryingProvider(std::shared_ptr<CompletionProvider> inner, RetryPolicy policy)
      : inner_(std::move(inner)), policy_(policy) {}

  CompletionResponse complete(const CompletionRequest& request) override {
    auto delay = policy_.initial_delay;
    std::string last_error;
    for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
      try {
        return inner_->complete(request);
      } catch (const ProviderError& e) {
        if (!e.transient()) throw;
        last_error = e.what();
      }
      if (attempt < policy_.max_attempts && delay.count() > 0) {
        std::this_thread::sleep_for(delay);
        delay = std::chrono::milliseconds(
            static_cast<long long>(static_cast<double>(delay.count()) * policy_.multiplier));
      }
    }
    throw ExhaustedRetriesError(policy_.max_attempts, last_error);
  }

 private:
  std::shared_ptr<CompletionProvider> inner_;
  RetryPolicy policy_;
};

}  // namespace

std::shared_ptr<CompletionProvider> record(std::shared_ptr<CompletionProvider> inner,
                                           CallSink& sink) {
  return std::make_shared<RecordingProvider>(std::move(inner), sink);
}

ReplayProvider::ReplayProvider(std::vector<RecordedCall> calls) : calls_(std::move(calls)) {
  std::sort(calls_.begin(), calls_.end(),
            [](const RecordedCall& a, const RecordedCall& b) { return a.call_index < b.call_index; });
}

CompletionResponse ReplayProvider::complete(const CompletionRequest& request) {
  auto it = std::lower_bound(
      calls_.begin(), calls_.end(), request.call_index,
      [](const RecordedCall& call, int index) { return call.call_index < index; });
  if (it == calls_.end() || it->call_index != request.call_index) {
    throw ReplayMismatchError(request.call_index,
                              "no recorded completion for call_index " +
                                  std::to_string(request.call_index));
  }
  if (it->prompt_hash != prompt_hash(request.prompt)) {
    throw ReplayMismatchError(request.call_index,
                              "prompt hash mismatch at call_index " +
                                  std::to_string(request.call_index) + ": recorded " +
                                  it->prompt_hash + ", got " + prompt_hash(request.prompt));
  }
  return CompletionResponse{it->completion, std::nullopt, std::chrono::milliseconds{0}};
}

std::shared_ptr<CompletionProvider> with_retries(std::shared_ptr<CompletionProvider> inner,
                                                 RetryPolicy policy) {
  if (policy.max_attempts < 1) throw Error("retry policy needs max_attempts >= 1");
  return std::make_shared<RetryingProvider>(std::move(inner), policy);
}

}  // namespace connections
