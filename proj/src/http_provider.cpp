#include "connections/http_provider.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace connections {

namespace {

ProviderError::Kind classify_status(int status) {
  if (status == 408 || status == 429 || status >= 500) return ProviderError::Kind::Transient;
  return ProviderError::Kind::Permanent;
}

}  // namespace

HttpChatProvider::HttpChatProvider(HttpProviderConfig config) : config_(std::move(config)) {
  const auto& url = config_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error("endpoint must be a full URL, got: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    base_ = url;
    path_ = "/";
  } else {
    base_ = url.substr(0, path_start);
    path_ = url.substr(path_start);
  }
}

CompletionResponse HttpChatProvider::complete(const CompletionRequest& request) {
  nlohmann::json body = {
      {"model", request.model_id},
      {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})},
  };
  if (request.sampling.temperature) body["temperature"] = *request.sampling.temperature;
  if (request.sampling.max_output_tokens) body["max_tokens"] = *request.sampling.max_output_tokens;

  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout.count(), 0);
  client.set_read_timeout(config_.timeout.count(), 0);
  client.set_write_timeout(config_.timeout.count(), 0);

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  auto started = std::chrono::steady_clock::now();
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);

  if (!res) {
    throw ProviderError(ProviderError::Kind::Transient,
                        "http error: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ProviderError(classify_status(res->status),
                        "endpoint returned status " + std::to_string(res->status));
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::parse_error& e) {
    throw ProviderError(ProviderError::Kind::Permanent,
                        std::string("unparseable endpoint response: ") + e.what());
  }

  CompletionResponse response;
  response.latency = latency;
  try {
    response.text = doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw ProviderError(ProviderError::Kind::Permanent,
                        "endpoint response missing choices[0].message.content");
  }
  if (doc.contains("usage")) {
    TokenUsage usage;
    usage.prompt_tokens = doc["usage"].value("prompt_tokens", 0);
    usage.completion_tokens = doc["usage"].value("completion_tokens", 0);
    response.usage = usage;
  }
  return response;
}

}  // namespace connections
