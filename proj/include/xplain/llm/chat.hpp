#pragma once

#include <chrono>
#include <cstdlib>
#include <functional>
#include <memory>
#include <thread>

#include "httplib.h"
#include "xplain/core/util.hpp"

namespace xplain {

struct ChatMessage {
  std::string role;  // "system" | "user" | "assistant"
  std::string content;
};

struct ChatResult {
  std::string text;
  double latency_ms = 0.0;
};

/// Stable digest of a conversation, used to key mock fixtures.
inline std::string conversation_hash(const std::vector<ChatMessage>& messages) {
  std::string buf;
  for (const ChatMessage& m : messages) {
    buf += m.role;
    buf += '\n';
    buf += m.content;
    buf += '\x1e';
  }
  return hex64(fnv1a64(buf));
}

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatResult complete(const std::vector<ChatMessage>& messages) = 0;
};

/// Replays canned replies keyed by conversation hash. A miss is a hard error:
/// fixtures are regenerated rather than silently approximated.
class MockFixtureClient : public ChatClient {
 public:
  explicit MockFixtureClient(json fixtures) : fixtures_(std::move(fixtures)) {}

  static MockFixtureClient from_file(const std::string& path) {
    return MockFixtureClient(json::parse(read_file(path)));
  }

  ChatResult complete(const std::vector<ChatMessage>& messages) override {
    std::string key = conversation_hash(messages);
    auto it = fixtures_.find(key);
    if (it == fixtures_.end()) {
      throw std::runtime_error("fixture miss: no canned reply for conversation " + key);
    }
    return {it->get<std::string>(), 0.0};
  }

 private:
  json fixtures_;
};

/// Wraps an arbitrary callable. Used by tests and by fixture generation.
class CallableClient : public ChatClient {
 public:
  using Fn = std::function<std::string(const std::vector<ChatMessage>&)>;
  explicit CallableClient(Fn fn) : fn_(std::move(fn)) {}

  ChatResult complete(const std::vector<ChatMessage>& messages) override {
    return {fn_(messages), 0.0};
  }

 private:
  Fn fn_;
};

/// Wraps another client and records every exchange keyed by conversation
/// hash, producing the fixture object that MockFixtureClient replays.
class RecordingClient : public ChatClient {
 public:
  explicit RecordingClient(ChatClient& inner) : inner_(inner) {}

  ChatResult complete(const std::vector<ChatMessage>& messages) override {
    ChatResult r = inner_.complete(messages);
    recorded_[conversation_hash(messages)] = r.text;
    return r;
  }

  const json& recorded() const { return recorded_; }

 private:
  ChatClient& inner_;
  json recorded_ = json::object();
};

struct ModelConfig {
  std::string mode = "mock";  // "mock" | "http"
  std::string model = "gpt-4o";
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  double temperature = 0.0;
  int max_tokens = 1024;
  int max_retries = 3;
  double backoff_initial_s = 0.5;
  int timeout_s = 60;
  std::string fixtures_path;  // mock mode

  static ModelConfig from_json(const json& j) {
    ModelConfig c;
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("base_url")) c.base_url = j.at("base_url").get<std::string>();
    if (j.contains("path")) c.path = j.at("path").get<std::string>();
    if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
    if (j.contains("max_tokens")) c.max_tokens = j.at("max_tokens").get<int>();
    if (j.contains("max_retries")) c.max_retries = j.at("max_retries").get<int>();
    if (j.contains("timeout_s")) c.timeout_s = j.at("timeout_s").get<int>();
    if (j.contains("fixtures_path")) c.fixtures_path = j.at("fixtures_path").get<std::string>();
    return c;
  }
};

/// OpenAI-style chat completion over HTTP with exponential backoff on 429 and
/// 5xx. The key comes from the EXPLAINER_API_KEY environment variable only.
class HttpChatClient : public ChatClient {
 public:
  explicit HttpChatClient(ModelConfig config) : config_(std::move(config)) {
    const char* key = std::getenv("EXPLAINER_API_KEY");
    if (key == nullptr || *key == '\0') {
      throw std::runtime_error("EXPLAINER_API_KEY is not set; use mock mode for offline runs");
    }
    api_key_ = key;
  }

  ChatResult complete(const std::vector<ChatMessage>& messages) override;

 private:
  ModelConfig config_;
  std::string api_key_;
};

inline std::unique_ptr<ChatClient> make_client(const ModelConfig& config) {
  if (config.mode == "mock") {
    if (config.fixtures_path.empty()) {
      throw std::runtime_error("mock mode requires fixtures_path");
    }
    return std::make_unique<MockFixtureClient>(MockFixtureClient::from_file(config.fixtures_path));
  }
  if (config.mode == "http" || config.mode == "live") {
    return std::make_unique<HttpChatClient>(config);
  }
  throw std::runtime_error("unknown model mode: " + config.mode);
}

inline ChatResult HttpChatClient::complete(const std::vector<ChatMessage>& messages) {
  json body;
  body["model"] = config_.model;
  body["messages"] = json::array();
  for (const ChatMessage& m : messages) {
    body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  }
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_tokens;
  std::string payload = body.dump();

  double backoff = config_.backoff_initial_s;
  std::string last_error = "no attempt made";
  auto t0 = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    httplib::Client http(config_.base_url);
    http.set_connection_timeout(config_.timeout_s);
    http.set_read_timeout(config_.timeout_s);
    httplib::Headers headers = {{"Authorization", "Bearer " + api_key_}};
    auto res = http.Post(config_.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw std::runtime_error("chat endpoint returned HTTP " + std::to_string(res->status) +
                               ": " + res->body);
    }
    json reply = json::parse(res->body);
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return {reply.at("choices").at(0).at("message").at("content").get<std::string>(), ms};
  }
  throw std::runtime_error("chat endpoint unreachable after " +
                           std::to_string(config_.max_retries + 1) + " attempts (" + last_error +
                           ")");
}

}  // namespace xplain
