#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "uavrl/llm/provider.hpp"

namespace uavrl::llm {

namespace {

bool is_timeout(httplib::Error e) {
  return e == httplib::Error::ConnectionTimeout || e == httplib::Error::Read;
}

}  // namespace

HttpProvider::HttpProvider(ProviderConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto& url = config_.endpoint_url;
  const auto scheme_end = url.find("://") + 3;
  const auto path_begin = url.find('/', scheme_end);
  if (path_begin == std::string::npos) {
    scheme_host_port_ = url;
    path_ = "/";
  } else {
    scheme_host_port_ = url.substr(0, path_begin);
    path_ = url.substr(path_begin);
  }
}

ChatResponse HttpProvider::complete(const ChatRequest& request) {
  request.validate();
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.timeout_seconds));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
  const std::string body = request.to_json();

  ChatResponse last;
  const int attempts = config_.max_retries + 1;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1 && config_.backoff_seconds > 0.0) {
      std::this_thread::sleep_for(
          std::chrono::duration<double>(config_.backoff_seconds * std::pow(2.0, attempt - 2)));
    }
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      const auto err = res.error();
      last = ChatResponse::failure(is_timeout(err) ? CompletionStatus::kTimeout : CompletionStatus::kTransportError,
                                   "request failed: " + httplib::to_string(err));
      last.attempts = attempt;
      continue;
    }
    if (res->status >= 500) {
      last = ChatResponse::failure(CompletionStatus::kHttpError, "server returned HTTP " + std::to_string(res->status));
      last.http_status = res->status;
      last.attempts = attempt;
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last = ChatResponse::failure(CompletionStatus::kHttpError, "server returned HTTP " + std::to_string(res->status));
      last.http_status = res->status;
      last.attempts = attempt;
      return last;
    }
    auto content = extract_completion_content(res->body);
    if (!content || content->empty()) {
      last = ChatResponse::failure(CompletionStatus::kEmptyContent, "completion carried no message content");
      last.http_status = res->status;
      last.attempts = attempt;
      return last;
    }
    last = ChatResponse::success(std::move(*content));
    last.http_status = res->status;
    last.attempts = attempt;
    return last;
  }
  return last;
}

}  // namespace uavrl::llm
