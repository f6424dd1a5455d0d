#include <doctest.h>

#include "connections/provider.hpp"

using namespace connections;

namespace {

/// Fails with the configured error a fixed number of times, then succeeds.
class FlakyProvider : public CompletionProvider {
 public:
  FlakyProvider(int failures, ProviderError::Kind kind) : failures_(failures), kind_(kind) {}

  CompletionResponse complete(const CompletionRequest&) override {
    ++calls;
    if (calls <= failures_) throw ProviderError(kind_, "synthetic failure");
    return CompletionResponse{"ok", std::nullopt, std::chrono::milliseconds{0}};
  }

  int calls = 0;

 private:
  int failures_;
  ProviderError::Kind kind_;
};

CompletionRequest request_for(std::string prompt, int index = 1) {
  return CompletionRequest{"test-model", std::move(prompt), {}, index};
}

}  // namespace

TEST_CASE("prompt hashing is stable") {
  // frozen reference value for FNV-1a 64
  CHECK(prompt_hash("hello") == "a430d84680aabd0b");
  CHECK(prompt_hash("hello") == prompt_hash("hello"));
  CHECK(prompt_hash("hello") != prompt_hash("hello "));
}

TEST_CASE("scripted provider plays its script then exhausts") {
  ScriptedProvider provider({"A", "B"});
  CHECK(provider.complete(request_for("p1", 1)).text == "A");
  CHECK(provider.complete(request_for("p2", 2)).text == "B");
  CHECK_THROWS_AS(provider.complete(request_for("p3", 3)), ScriptExhaustedError);
}

TEST_CASE("recording provider logs successful calls only") {
  VectorCallSink sink;

  SUBCASE("one call, one entry") {
    auto provider = record(std::make_shared<ScriptedProvider>(std::vector<std::string>{"X"}), sink);
    provider->complete(request_for("the prompt", 1));
    auto calls = sink.calls();
    REQUIRE(calls.size() == 1);
    CHECK(calls[0].call_index == 1);
    CHECK(calls[0].prompt == "the prompt");
    CHECK(calls[0].completion == "X");
    CHECK(calls[0].prompt_hash == prompt_hash("the prompt"));
  }
  SUBCASE("zero calls, empty sink") { CHECK(sink.calls().empty()); }
  SUBCASE("inner errors leave nothing behind") {
    auto provider = record(std::make_shared<ScriptedProvider>(std::vector<std::string>{}), sink);
    CHECK_THROWS_AS(provider->complete(request_for("p", 1)), ScriptExhaustedError);
    CHECK(sink.calls().empty());
  }
}

TEST_CASE("replay provider serves recorded completions by call index") {
  std::vector<RecordedCall> calls = {
      {1, prompt_hash("first"), "first", "one"},
      {2, prompt_hash("second"), "second", "two"},
      {3, prompt_hash("third"), "third", "three"},
  };
  ReplayProvider provider(calls);

  CHECK(provider.complete(request_for("second", 2)).text == "two");
  CHECK(provider.complete(request_for("third", 3)).text == "three");

  SUBCASE("hash mismatch names the index") {
    try {
      provider.complete(request_for("tampered", 3));
      FAIL("expected a mismatch");
    } catch (const ReplayMismatchError& e) {
      CHECK(e.call_index() == 3);
    }
  }
  SUBCASE("unknown index") {
    CHECK_THROWS_AS(provider.complete(request_for("fourth", 4)), ReplayMismatchError);
  }
}

TEST_CASE("retry policy") {
  RetryPolicy fast{3, std::chrono::milliseconds{0}, 2.0};

  SUBCASE("transient failures are retried up to the cap") {
    auto flaky = std::make_shared<FlakyProvider>(2, ProviderError::Kind::Transient);
    auto provider = with_retries(flaky, fast);
    CHECK(provider->complete(request_for("p")).text == "ok");
    CHECK(flaky->calls == 3);
  }
  SUBCASE("permanent failures surface immediately") {
    auto flaky = std::make_shared<FlakyProvider>(5, ProviderError::Kind::Permanent);
    auto provider = with_retries(flaky, fast);
    CHECK_THROWS_AS(provider->complete(request_for("p")), ProviderError);
    CHECK(flaky->calls == 1);
  }
  SUBCASE("exhaustion wraps the last transient error") {
    auto flaky = std::make_shared<FlakyProvider>(5, ProviderError::Kind::Transient);
    auto provider = with_retries(flaky, fast);
    try {
      provider->complete(request_for("p"));
      FAIL("expected exhaustion");
    } catch (const ExhaustedRetriesError& e) {
      CHECK(e.attempts() == 3);
    }
    CHECK(flaky->calls == 3);
  }
}
