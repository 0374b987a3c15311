#pragma once

#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uavrl::llm {

struct ChatMessage {
  std::string role;  // system | user | assistant
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct ChatRequest {
  std::string model = "gpt-4o";
  std::vector<ChatMessage> messages;
  double temperature = 0.7;
  int max_tokens = 1024;

  /// Throws std::invalid_argument on an empty message list, unknown roles, or
  /// negative temperature.
  void validate() const;

  /// Wire body of the chat-completion POST: {model, messages, temperature, max_tokens}.
  std::string to_json() const;
  static ChatRequest from_json(std::string_view json);

  /// SHA-256 of to_json(); keys fixtures.
  std::string digest() const;
};

enum class CompletionStatus {
  kOk,
  kTimeout,
  kTransportError,
  kHttpError,
  kEmptyContent,
  kMissingFixture,
  kScriptExhausted,
};

std::string_view to_string(CompletionStatus status);

struct ChatResponse {
  CompletionStatus status = CompletionStatus::kOk;
  std::string content;
  int attempts = 0;
  int http_status = 0;
  std::string error;

  bool ok() const { return status == CompletionStatus::kOk; }

  static ChatResponse success(std::string content) {
    ChatResponse r;
    r.content = std::move(content);
    r.attempts = 1;
    return r;
  }
  static ChatResponse failure(CompletionStatus status, std::string error) {
    ChatResponse r;
    r.status = status;
    r.error = std::move(error);
    r.attempts = 1;
    return r;
  }
};

/// Blocking chat-completion client.
class Provider {
 public:
  virtual ~Provider() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
};

/// Thread-safe. Returns queued responses in order; reports kScriptExhausted once the queue is empty.
/// A single-entry script with `repeat_last` replays that entry forever.
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(std::vector<ChatResponse> script, bool repeat_last = false);
  /// Convenience: every entry is a successful completion with that text.
  static ScriptedProvider from_texts(const std::vector<std::string>& texts, bool repeat_last = false);

  ChatResponse complete(const ChatRequest& request) override;

  std::vector<ChatRequest> requests() const;
  std::size_t remaining() const;

 private:
  mutable std::mutex mutex_;
  std::deque<ChatResponse> script_;
  bool repeat_last_;
  std::optional<ChatResponse> last_;
  std::vector<ChatRequest> requests_;
};

/// Thrown when recording a fixture whose digest already maps to different content.
class FixtureCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory of recorded completions, one `<digest>.json` per request holding
/// {request, response, timestamp}.
class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path directory);

  std::optional<std::string> lookup(const ChatRequest& request) const;

  /// Persists `content` for `request`. Re-recording identical content is a no-op;
  /// different content under the same digest throws FixtureCollision.
  void record(const ChatRequest& request, const std::string& content);

  std::filesystem::path path_for(const ChatRequest& request) const;
  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

/// Replays fixtures; in capture mode (an upstream provider is given) misses are
/// forwarded upstream and successful completions recorded. Replay mode never writes.
class FixtureProvider final : public Provider {
 public:
  explicit FixtureProvider(std::filesystem::path directory, std::shared_ptr<Provider> upstream = nullptr);

  ChatResponse complete(const ChatRequest& request) override;
  bool capturing() const { return upstream_ != nullptr; }

 private:
  std::mutex mutex_;
  FixtureStore store_;
  std::shared_ptr<Provider> upstream_;
};

struct ProviderConfig {
  std::string endpoint_url = "https://api.openai.com/v1/chat/completions";
  std::string api_key;  // never logged or persisted
  double timeout_seconds = 60.0;
  int max_retries = 3;
  double backoff_seconds = 1.0;

  void validate() const;
};

/// Name of the environment variable holding the live API key.
inline constexpr const char* kApiKeyEnvVar = "UAVRL_LLM_API_KEY";

/// OpenAI-compatible chat-completion client over HTTP(S).
///
/// Transport failures and 5xx responses are retried up to max_retries times with
/// exponential backoff starting at backoff_seconds; 4xx responses are not retried.
class HttpProvider final : public Provider {
 public:
  explicit HttpProvider(ProviderConfig config);
  ChatResponse complete(const ChatRequest& request) override;

 private:
  ProviderConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

/// Extracts choices[0].message.content from a chat-completion response body.
std::optional<std::string> extract_completion_content(std::string_view body);

}  // namespace uavrl::llm
