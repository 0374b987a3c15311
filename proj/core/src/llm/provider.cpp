#include "uavrl/llm/provider.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "uavrl/common/digest.hpp"

using nlohmann::json;

namespace uavrl::llm {

namespace {

json request_json(const ChatRequest& r) {
  json messages = json::array();
  for (const auto& m : r.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", r.model},
          {"messages", std::move(messages)},
          {"temperature", r.temperature},
          {"max_tokens", r.max_tokens}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void ChatRequest::validate() const {
  if (messages.empty()) throw std::invalid_argument("chat request has no messages");
  for (const auto& m : messages) {
    if (m.role != "system" && m.role != "user" && m.role != "assistant") {
      throw std::invalid_argument("unknown chat role '" + m.role + "'");
    }
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be finite and >= 0");
  }
  if (max_tokens <= 0) throw std::invalid_argument("max_tokens must be positive");
}

std::string ChatRequest::to_json() const { return request_json(*this).dump(); }

ChatRequest ChatRequest::from_json(std::string_view text) {
  const json j = json::parse(text);
  ChatRequest r;
  r.model = j.at("model").get<std::string>();
  r.temperature = j.at("temperature").get<double>();
  r.max_tokens = j.at("max_tokens").get<int>();
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  }
  return r;
}

std::string ChatRequest::digest() const { return sha256_hex(to_json()); }

std::string_view to_string(CompletionStatus status) {
  switch (status) {
    case CompletionStatus::kOk: return "ok";
    case CompletionStatus::kTimeout: return "timeout";
    case CompletionStatus::kTransportError: return "transport_error";
    case CompletionStatus::kHttpError: return "http_error";
    case CompletionStatus::kEmptyContent: return "empty_content";
    case CompletionStatus::kMissingFixture: return "missing_fixture";
    case CompletionStatus::kScriptExhausted: return "script_exhausted";
  }
  return "unknown";
}

// ---- scripted ----

ScriptedProvider::ScriptedProvider(std::vector<ChatResponse> script, bool repeat_last)
    : script_(script.begin(), script.end()), repeat_last_(repeat_last) {}

ScriptedProvider ScriptedProvider::from_texts(const std::vector<std::string>& texts, bool repeat_last) {
  std::vector<ChatResponse> script;
  script.reserve(texts.size());
  for (const auto& t : texts) script.push_back(ChatResponse::success(t));
  return ScriptedProvider(std::move(script), repeat_last);
}

std::vector<ChatRequest> ScriptedProvider::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::size_t ScriptedProvider::remaining() const {
  std::lock_guard lock(mutex_);
  return script_.size();
}

ChatResponse ScriptedProvider::complete(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  requests_.push_back(request);
  if (!script_.empty()) {
    last_ = script_.front();
    script_.pop_front();
    return *last_;
  }
  if (repeat_last_ && last_) return *last_;
  return ChatResponse::failure(CompletionStatus::kScriptExhausted, "scripted provider has no responses left");
}

// ---- fixtures ----

FixtureStore::FixtureStore(std::filesystem::path directory) : dir_(std::move(directory)) {}

std::filesystem::path FixtureStore::path_for(const ChatRequest& request) const {
  return dir_ / (request.digest() + ".json");
}

std::optional<std::string> FixtureStore::lookup(const ChatRequest& request) const {
  const auto path = path_for(request);
  if (!std::filesystem::exists(path)) return std::nullopt;
  const json j = json::parse(read_file(path));
  return j.at("response").get<std::string>();
}

void FixtureStore::record(const ChatRequest& request, const std::string& content) {
  const auto path = path_for(request);
  if (std::filesystem::exists(path)) {
    const json existing = json::parse(read_file(path));
    if (existing.at("response").get<std::string>() == content) return;
    throw FixtureCollision("fixture " + path.filename().string() + " already holds a different response");
  }
  std::filesystem::create_directories(dir_);
  const json j = {{"request", request_json(request)}, {"response", content}, {"timestamp", utc_timestamp()}};
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

FixtureProvider::FixtureProvider(std::filesystem::path directory, std::shared_ptr<Provider> upstream)
    : store_(std::move(directory)), upstream_(std::move(upstream)) {}

ChatResponse FixtureProvider::complete(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  if (auto hit = store_.lookup(request)) return ChatResponse::success(std::move(*hit));
  if (!upstream_) {
    return ChatResponse::failure(CompletionStatus::kMissingFixture,
                                 "no fixture for request digest " + request.digest() + " in " +
                                     store_.directory().string());
  }
  ChatResponse response = upstream_->complete(request);
  if (response.ok()) store_.record(request, response.content);
  return response;
}

// ---- helpers ----

std::optional<std::string> extract_completion_content(std::string_view body) {
  const json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  try {
    const auto& content = j.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) return std::nullopt;
    return content.get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

void ProviderConfig::validate() const {
  if (endpoint_url.rfind("http://", 0) != 0 && endpoint_url.rfind("https://", 0) != 0) {
    throw std::invalid_argument("endpoint_url must start with http:// or https://");
  }
  if (!(timeout_seconds > 0.0)) throw std::invalid_argument("timeout_seconds must be positive");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
  if (!(backoff_seconds >= 0.0)) throw std::invalid_argument("backoff_seconds must be >= 0");
}

}  // namespace uavrl::llm
