#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include <json.hpp>

#include "gridbench/client.hpp"
#include "support/stub_server.hpp"
#include "support/tmpdir.hpp"

using namespace gridbench;
using nlohmann::json;

namespace {

EndpointConfig fast_config(const testing::StubServer& server) {
  EndpointConfig cfg;
  cfg.base_url = server.base_url();
  cfg.max_retries = 3;
  cfg.backoff_initial_ms = 1;
  cfg.api_key_env.clear();
  return cfg;
}

InferenceRequest text_request(const std::string& id, const std::string& payload) {
  InferenceRequest req;
  req.instance_id = id;
  req.condition = Condition::text;
  req.instruction = "instruction";
  req.payload_text = payload;
  req.answer_format_note = "note";
  return req;
}

}  // namespace

TEST_CASE("wire body shape: text carries a string, visual carries one image") {
  EndpointConfig cfg;
  auto text_body = json::parse(wire_request_body(text_request("id-1", "1 2"), cfg));
  CHECK(text_body.at("user") == "id-1");
  CHECK(text_body.at("messages").at(0).at("content").is_string());
  CHECK(text_body.at("temperature") == 0.0);

  InferenceRequest visual;
  visual.instance_id = "id-2";
  visual.condition = Condition::visual;
  visual.instruction = "instruction";
  visual.answer_format_note = "note";
  visual.image_png = {1, 2, 3};
  auto visual_body = json::parse(wire_request_body(visual, cfg));
  const auto& parts = visual_body.at("messages").at(0).at("content");
  REQUIRE(parts.is_array());
  int images = 0;
  for (const auto& part : parts)
    if (part.at("type") == "image_url") images++;
  CHECK(images == 1);
  CHECK(parts.at(1).at("image_url").at("url").get<std::string>().starts_with(
      "data:image/png;base64,"));
}

TEST_CASE("wire body validation rejects condition/image mismatches") {
  EndpointConfig cfg;
  InferenceRequest text_with_image = text_request("x", "1");
  text_with_image.image_png = {1};
  CHECK_THROWS_AS(wire_request_body(text_with_image, cfg), std::invalid_argument);

  InferenceRequest visual_without;
  visual_without.instance_id = "y";
  visual_without.condition = Condition::visual;
  CHECK_THROWS_AS(wire_request_body(visual_without, cfg), std::invalid_argument);
}

TEST_CASE("submit captures a healthy response verbatim") {
  testing::StubServer server;
  server.set_responder([](const json&) { return "4 5\n6 7"; });
  auto rec = submit(text_request("a", "payload"), fast_config(server));
  CHECK(rec.status == RequestStatus::ok);
  CHECK(rec.raw_response == "4 5\n6 7");
  CHECK(rec.attempt_count == 1);
  CHECK(rec.error.empty());
}

TEST_CASE("submit retries 5xx up to max_retries then fails") {
  testing::StubServer server;
  server.fail_next(1000);
  auto rec = submit(text_request("a", "p"), fast_config(server));
  CHECK(rec.status == RequestStatus::failed);
  CHECK(rec.attempt_count == 3);
  CHECK(rec.error.find("500") != std::string::npos);
  CHECK(server.request_count() == 3);
}

TEST_CASE("submit recovers when a retry succeeds") {
  testing::StubServer server;
  server.set_responder([](const json&) { return "ok"; });
  server.fail_next(1);
  auto rec = submit(text_request("a", "p"), fast_config(server));
  CHECK(rec.status == RequestStatus::ok);
  CHECK(rec.attempt_count == 2);
}

TEST_CASE("image request against a text-only stub is a protocol error, not retried") {
  testing::StubServer server;
  server.set_reject_images(true);
  InferenceRequest req;
  req.instance_id = "v";
  req.condition = Condition::visual;
  req.instruction = "i";
  req.answer_format_note = "n";
  req.image_png = {9, 9, 9};
  auto rec = submit(req, fast_config(server));
  CHECK(rec.status == RequestStatus::failed);
  CHECK(rec.attempt_count == 1);
  CHECK(rec.error.find("protocol") != std::string::npos);
  CHECK(server.request_count() == 1);
}

TEST_CASE("bearer token comes from the configured environment variable") {
  testing::StubServer server;
  server.set_responder([](const json&) { return "ok"; });
  EndpointConfig cfg = fast_config(server);
  cfg.api_key_env = "GRIDBENCH_TEST_KEY";
  setenv("GRIDBENCH_TEST_KEY", "secret", 1);
  submit(text_request("a", "p"), cfg);
  CHECK(server.saw_auth_header());
  unsetenv("GRIDBENCH_TEST_KEY");
}

TEST_CASE("run_batch preserves input order") {
  testing::StubServer server;
  server.set_responder(
      [](const json& body) { return "echo:" + body.at("user").get<std::string>(); });
  testing::TempDir tmp("batch");
  std::vector<InferenceRequest> requests;
  for (int i = 0; i < 100; ++i)
    requests.push_back(text_request("req-" + std::to_string(i), "p"));
  auto records = run_batch(requests, fast_config(server), 8, tmp / "checkpoint.jsonl");
  REQUIRE(records.size() == 100);
  for (int i = 0; i < 100; ++i) {
    CHECK(records[i].instance_id == "req-" + std::to_string(i));
    CHECK(records[i].raw_response == "echo:req-" + std::to_string(i));
  }
}

TEST_CASE("run_batch resumes from the checkpoint") {
  testing::StubServer server;
  server.set_responder(
      [](const json& body) { return "r:" + body.at("user").get<std::string>(); });
  testing::TempDir tmp("resume");
  auto checkpoint = tmp / "checkpoint.jsonl";

  std::vector<InferenceRequest> all;
  for (int i = 0; i < 100; ++i) all.push_back(text_request("req-" + std::to_string(i), "p"));

  // First half only, as if the run was interrupted at 50.
  std::vector<InferenceRequest> first(all.begin(), all.begin() + 50);
  run_batch(first, fast_config(server), 4, checkpoint);
  CHECK(server.request_count() == 50);

  auto records = run_batch(all, fast_config(server), 4, checkpoint);
  CHECK(server.request_count() == 100);  // only the remaining 50 hit the network
  REQUIRE(records.size() == 100);
  for (int i = 0; i < 100; ++i) CHECK(records[i].raw_response == "r:req-" + std::to_string(i));

  // A completed batch never touches the network again.
  run_batch(all, fast_config(server), 4, checkpoint);
  CHECK(server.request_count() == 100);
}

TEST_CASE("failed checkpoint entries are resubmitted on rerun") {
  testing::StubServer server;
  server.set_responder([](const json&) { return "fine"; });
  testing::TempDir tmp("retry");
  auto checkpoint = tmp / "checkpoint.jsonl";
  std::vector<InferenceRequest> requests{text_request("only", "p")};

  EndpointConfig cfg = fast_config(server);
  cfg.max_retries = 1;
  server.fail_next(1);
  auto first = run_batch(requests, cfg, 1, checkpoint);
  CHECK(first[0].status == RequestStatus::failed);

  auto second = run_batch(requests, cfg, 1, checkpoint);
  CHECK(second[0].status == RequestStatus::ok);
  CHECK(second[0].raw_response == "fine");
}

TEST_CASE("parallelism 1 matches parallel results") {
  testing::StubServer server;
  server.set_responder(
      [](const json& body) { return "v:" + body.at("user").get<std::string>(); });
  testing::TempDir tmp("par");
  std::vector<InferenceRequest> requests;
  for (int i = 0; i < 24; ++i) requests.push_back(text_request("q" + std::to_string(i), "p"));
  auto sequential = run_batch(requests, fast_config(server), 1, tmp / "seq.jsonl");
  auto parallel = run_batch(requests, fast_config(server), 8, tmp / "par.jsonl");
  REQUIRE(sequential.size() == parallel.size());
  for (std::size_t i = 0; i < sequential.size(); ++i) {
    CHECK(sequential[i].instance_id == parallel[i].instance_id);
    CHECK(sequential[i].raw_response == parallel[i].raw_response);
    CHECK(sequential[i].status == parallel[i].status);
  }
}

TEST_CASE("in-flight requests never exceed the configured parallelism") {
  testing::StubServer server;
  server.set_responder([](const json&) { return "ok"; });
  server.set_handler_delay_ms(15);
  testing::TempDir tmp("bound");
  std::vector<InferenceRequest> requests;
  for (int i = 0; i < 16; ++i) requests.push_back(text_request("b" + std::to_string(i), "p"));
  run_batch(requests, fast_config(server), 4, tmp / "cp.jsonl");
  CHECK(server.max_concurrent() <= 4);
  CHECK(server.max_concurrent() >= 2);  // sanity: it actually ran in parallel
}

TEST_CASE("inference records round-trip through the jsonl log") {
  testing::TempDir tmp("records");
  std::vector<InferenceRecord> records(2);
  records[0].instance_id = "a";
  records[0].condition = Condition::text;
  records[0].status = RequestStatus::ok;
  records[0].raw_response = "body\nwith newline";
  records[0].latency_ms = 12;
  records[0].attempt_count = 1;
  records[1].instance_id = "b";
  records[1].condition = Condition::visual;
  records[1].status = RequestStatus::failed;
  records[1].error = "http 500";
  records[1].attempt_count = 3;
  auto path = tmp / "log.jsonl";
  write_inference_records(path, records);
  auto back = read_inference_records(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].raw_response == records[0].raw_response);
  CHECK(back[1].status == RequestStatus::failed);
  CHECK(back[1].error == "http 500");
  CHECK(back[1].condition == Condition::visual);
}
