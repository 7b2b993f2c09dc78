#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gridbench/types.hpp"

namespace gridbench {

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8080";
  std::string chat_path = "/v1/chat/completions";
  std::string model = "default";
  /// Name of the environment variable holding the bearer token; empty value
  /// or unset variable sends no Authorization header.
  std::string api_key_env = "GRIDBENCH_API_KEY";
  int max_retries = 3;  // total attempts per request
  int backoff_initial_ms = 250;
  double backoff_factor = 2.0;
  int timeout_ms = 120000;
  double temperature = 0.0;
  int max_tokens = 8192;
  int parallelism = 4;
};

struct InferenceRequest {
  std::string instance_id;
  Condition condition = Condition::text;
  std::string instruction;
  std::string payload_text;             // text condition only
  std::vector<std::uint8_t> image_png;  // visual condition only
  std::string answer_format_note;
};

enum class RequestStatus { ok, failed };

std::string_view to_string(RequestStatus s);
RequestStatus request_status_from_string(std::string_view s);

struct InferenceRecord {
  std::string instance_id;
  Condition condition = Condition::text;
  std::string raw_response;
  std::int64_t latency_ms = 0;
  int attempt_count = 0;
  RequestStatus status = RequestStatus::failed;
  std::string error;  // last error when failed
};

/// Chat-completions request body; the instance id travels in the "user"
/// field so stub endpoints can key on it.
std::string wire_request_body(const InferenceRequest& req, const EndpointConfig& config);

/// One request with up to max_retries attempts. Transport errors and 5xx
/// responses back off exponentially and retry; other HTTP errors fail
/// immediately as protocol errors.
InferenceRecord submit(const InferenceRequest& req, const EndpointConfig& config);

/// Bounded-parallelism batch. Results come back in input order. Every
/// completed record is appended to the checkpoint file as it lands; on rerun,
/// requests whose (instance_id, condition) already has an ok record are
/// served from the checkpoint without touching the network. Failed records
/// are retried.
std::vector<InferenceRecord> run_batch(std::span<const InferenceRequest> requests,
                                       const EndpointConfig& config, int parallelism,
                                       const std::filesystem::path& checkpoint_path);

void write_inference_records(const std::filesystem::path& path,
                             std::span<const InferenceRecord> records);
std::vector<InferenceRecord> read_inference_records(const std::filesystem::path& path);

}  // namespace gridbench
