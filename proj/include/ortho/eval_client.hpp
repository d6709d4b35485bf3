#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ortho/qa.hpp"

namespace ortho {

struct EndpointConfig {
    std::string base_url;            // e.g. http://host:port
    std::string path = "/v1/chat/completions";
    std::string model;
    std::string auth_env_var;        // environment variable holding the token
    int timeout_seconds = 60;
    int max_retries = 3;
    int max_concurrent = 4;
    double temperature = 0.0;
    int max_output_tokens = 2048;

    void validate() const;
};

enum class PromptMode { ImageOnly, ThreeViewDesc, IclThreeView };

std::optional<PromptMode> prompt_mode_from_name(const std::string& name);
const std::string& prompt_mode_name(PromptMode mode);

// Item view handed to prompt construction; gold answer fields are stripped
// at the type level so they can never leak into a request body.
struct RedactedItem {
    std::string id;
    Task task = Task::BlockCount;
    std::string question;
    std::string views;
    std::string image_ref;  // rendered asset path or URL; may be empty

    static RedactedItem from(const QAItem& item, std::string image_ref = "");
};

// Chat-completions request body for the given mode. Throws when the mode's
// required asset (image or view description) is missing.
std::string build_prompt(const RedactedItem& item, PromptMode mode,
                         const EndpointConfig& cfg);

struct PredictionRecord {
    std::string id;
    std::string output;
    int attempts = 0;
    std::string status;  // "ok" or "failed:<reason>"
    std::int64_t request_ms = 0;   // zero in replay mode
    std::int64_t response_ms = 0;

    bool ok() const { return status == "ok"; }
};

struct ReplayResponse {
    int status = 200;
    std::string output;
};

// id -> canned response sequence; entry k answers the (k+1)-th attempt, the
// last entry repeating if attempts continue past the sequence.
using ReplayFixture = std::map<std::string, std::vector<ReplayResponse>>;

// Fixture JSONL: {"id":..., "output":...} for a single 200 response or
// {"id":..., "responses":[{"status":429},{"status":200,"output":...}]}.
ReplayFixture parse_fixture(const std::string& jsonl_text);
std::string serialize_fixture(const ReplayFixture& fixture);

// Bounded-parallel evaluation over a live endpoint; records returned in
// manifest order. The auth token is read from cfg.auth_env_var.
std::vector<PredictionRecord> run_eval(const EndpointConfig& cfg,
                                       const DatasetManifest& manifest, PromptMode mode,
                                       const std::map<std::string, std::string>& image_refs = {});

// Offline evaluation against canned responses; byte-deterministic.
std::vector<PredictionRecord> run_eval_replay(const EndpointConfig& cfg,
                                              const DatasetManifest& manifest, PromptMode mode,
                                              const ReplayFixture& fixture,
                                              const std::map<std::string, std::string>& image_refs = {});

std::string serialize_records(const std::vector<PredictionRecord>& records);

}  // namespace ortho
