#include "gridbench/client.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace gridbench {

using nlohmann::json;

std::string_view to_string(RequestStatus s) { return s == RequestStatus::ok ? "ok" : "failed"; }

RequestStatus request_status_from_string(std::string_view s) {
  if (s == "ok") return RequestStatus::ok;
  if (s == "failed") return RequestStatus::failed;
  throw std::invalid_argument("unknown request status: " + std::string(s));
}

namespace {

constexpr char kBase64Chars[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kBase64Chars[(v >> 18) & 63];
    out += kBase64Chars[(v >> 12) & 63];
    out += kBase64Chars[(v >> 6) & 63];
    out += kBase64Chars[v & 63];
  }
  if (i + 1 == bytes.size()) {
    std::uint32_t v = bytes[i] << 16;
    out += kBase64Chars[(v >> 18) & 63];
    out += kBase64Chars[(v >> 12) & 63];
    out += "==";
  } else if (i + 2 == bytes.size()) {
    std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kBase64Chars[(v >> 18) & 63];
    out += kBase64Chars[(v >> 12) & 63];
    out += kBase64Chars[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

void validate_request(const InferenceRequest& req) {
  if (req.condition == Condition::visual && req.image_png.empty())
    throw std::invalid_argument("visual request must carry exactly one image: " +
                                req.instance_id);
  if (req.condition == Condition::text && !req.image_png.empty())
    throw std::invalid_argument("text request must carry no image: " + req.instance_id);
}

}  // namespace

std::string wire_request_body(const InferenceRequest& req, const EndpointConfig& config) {
  validate_request(req);
  json message{{"role", "user"}};
  if (req.condition == Condition::text) {
    message["content"] =
        req.instruction + "\n\n" + req.payload_text + "\n\n" + req.answer_format_note;
  } else {
    json parts = json::array();
    parts.push_back(json{{"type", "text"}, {"text", req.instruction}});
    parts.push_back(json{
        {"type", "image_url"},
        {"image_url",
         {{"url", "data:image/png;base64," + base64_encode(req.image_png)}}}});
    parts.push_back(json{{"type", "text"}, {"text", req.answer_format_note}});
    message["content"] = parts;
  }
  json body{{"model", config.model},
            {"temperature", config.temperature},
            {"max_tokens", config.max_tokens},
            {"user", req.instance_id},
            {"messages", json::array({message})}};
  return body.dump();
}

namespace {

struct AttemptResult {
  bool ok = false;
  bool retryable = false;
  std::string response;
  std::string error;
};

AttemptResult attempt_once(httplib::Client& client, const std::string& path,
                           const std::string& body, const httplib::Headers& headers) {
  auto res = client.Post(path, headers, body, "application/json");
  if (!res) {
    return {false, true, "", "transport: " + httplib::to_string(res.error())};
  }
  if (res->status >= 500) {
    return {false, true, "", "http " + std::to_string(res->status)};
  }
  if (res->status != 200) {
    return {false, false, "", "protocol: http " + std::to_string(res->status) +
                                  (res->body.empty() ? "" : " " + res->body)};
  }
  try {
    json parsed = json::parse(res->body);
    std::string content =
        parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    if (content.empty()) return {false, false, "", "protocol: empty completion"};
    return {true, false, std::move(content), ""};
  } catch (const std::exception& e) {
    return {false, false, "", std::string("protocol: bad response body: ") + e.what()};
  }
}

}  // namespace

InferenceRecord submit(const InferenceRequest& req, const EndpointConfig& config) {
  validate_request(req);
  InferenceRecord rec;
  rec.instance_id = req.instance_id;
  rec.condition = req.condition;

  httplib::Client client(config.base_url);
  client.set_connection_timeout(0, config.timeout_ms * 1000LL);
  client.set_read_timeout(config.timeout_ms / 1000, (config.timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  if (!config.api_key_env.empty()) {
    if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const std::string body = wire_request_body(req, config);
  auto start = std::chrono::steady_clock::now();
  double backoff_ms = config.backoff_initial_ms;
  int max_attempts = std::max(1, config.max_retries);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    rec.attempt_count = attempt;
    AttemptResult result = attempt_once(client, config.chat_path, body, headers);
    if (result.ok) {
      rec.status = RequestStatus::ok;
      rec.raw_response = std::move(result.response);
      rec.error.clear();
      break;
    }
    rec.status = RequestStatus::failed;
    rec.error = std::move(result.error);
    if (!result.retryable) break;
    if (attempt < max_attempts) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(std::int64_t(backoff_ms)));
      backoff_ms *= config.backoff_factor;
    }
  }
  rec.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rec;
}

namespace {

json record_json(const InferenceRecord& rec) {
  return json{{"instance_id", rec.instance_id},
              {"condition", to_string(rec.condition)},
              {"status", to_string(rec.status)},
              {"raw_response", rec.raw_response},
              {"latency_ms", rec.latency_ms},
              {"attempt_count", rec.attempt_count},
              {"error", rec.error.empty() ? json(nullptr) : json(rec.error)}};
}

InferenceRecord record_from_json(const json& j) {
  InferenceRecord rec;
  rec.instance_id = j.at("instance_id").get<std::string>();
  rec.condition = condition_from_string(j.at("condition").get<std::string>());
  rec.status = request_status_from_string(j.at("status").get<std::string>());
  rec.raw_response = j.at("raw_response").get<std::string>();
  rec.latency_ms = j.at("latency_ms").get<std::int64_t>();
  rec.attempt_count = j.at("attempt_count").get<int>();
  if (!j.at("error").is_null()) rec.error = j.at("error").get<std::string>();
  return rec;
}

}  // namespace

std::vector<InferenceRecord> run_batch(std::span<const InferenceRequest> requests,
                                       const EndpointConfig& config, int parallelism,
                                       const std::filesystem::path& checkpoint_path) {
  if (parallelism < 1) throw std::invalid_argument("run_batch: parallelism must be >= 1");

  // Ok records from a previous run are reused; anything else is resubmitted.
  std::map<std::pair<std::string, Condition>, InferenceRecord> done;
  if (std::filesystem::exists(checkpoint_path)) {
    for (auto& rec : read_inference_records(checkpoint_path)) {
      if (rec.status == RequestStatus::ok)
        done.insert_or_assign({rec.instance_id, rec.condition}, std::move(rec));
    }
  }

  std::vector<InferenceRecord> results(requests.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    auto it = done.find({requests[i].instance_id, requests[i].condition});
    if (it != done.end())
      results[i] = it->second;
    else
      pending.push_back(i);
  }

  if (checkpoint_path.has_parent_path())
    std::filesystem::create_directories(checkpoint_path.parent_path());
  std::ofstream checkpoint(checkpoint_path, std::ios::binary | std::ios::app);
  if (!checkpoint)
    throw std::runtime_error("cannot open checkpoint file: " + checkpoint_path.string());
  std::mutex checkpoint_mutex;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t slot = next.fetch_add(1);
      if (slot >= pending.size()) return;
      std::size_t i = pending[slot];
      InferenceRecord rec = submit(requests[i], config);
      {
        std::lock_guard lock(checkpoint_mutex);
        checkpoint << record_json(rec).dump() << '\n';
        checkpoint.flush();
      }
      results[i] = std::move(rec);
    }
  };

  int workers = int(std::min<std::size_t>(std::size_t(parallelism), pending.size()));
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  if (!checkpoint)
    throw std::runtime_error("failed writing checkpoint file: " + checkpoint_path.string());
  return results;
}

void write_inference_records(const std::filesystem::path& path,
                             std::span<const InferenceRecord> records) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write inference records: " + path.string());
  for (const auto& rec : records) out << record_json(rec).dump() << '\n';
  if (!out) throw std::runtime_error("failed writing inference records: " + path.string());
}

std::vector<InferenceRecord> read_inference_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open inference records: " + path.string());
  std::vector<InferenceRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace gridbench
