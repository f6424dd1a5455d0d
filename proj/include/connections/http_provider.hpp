#pragma once

#include <chrono>
#include <string>

#include "connections/provider.hpp"

namespace connections {

struct HttpProviderConfig {
  /// Full URL of a chat-completion endpoint,
  /// e.g. "https://api.openai.com/v1/chat/completions".
  std::string endpoint;
  /// Environment variable holding the bearer token. The key itself is never
  /// stored in transcripts or logs.
  std::string api_key_env = "LLM_API_KEY";
  std::chrono::seconds timeout{120};
};

/// Live provider speaking the chat-completion convention: the prompt is sent
/// as a single user message; the generated text is read back from
/// choices[0].message.content.
class HttpChatProvider : public CompletionProvider {
 public:
  explicit HttpChatProvider(HttpProviderConfig config);

  CompletionResponse complete(const CompletionRequest& request) override;

 private:
  HttpProviderConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;
};

}  // namespace connections
