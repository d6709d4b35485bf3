#include "ortho/eval_client.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ortho/prompts.hpp"

namespace ortho {

using json = nlohmann::json;

namespace {

const std::array<std::string, 3> kModeNames = {"image-only", "three-view-desc",
                                               "icl-three-view"};

struct TransportResult {
    int status = 0;  // 0 = transport failure
    std::string body;
};

bool retryable(int status) {
    return status == 0 || status == 429 || (status >= 500 && status < 600);
}

std::string extract_content(const std::string& body) {
    // Chat-completions response shape; fall back to the raw body for plain
    // text fixtures.
    try {
        const json j = json::parse(body);
        if (j.contains("choices"))
            return j["choices"].at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception&) {
    }
    return body;
}

std::int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

// Shared driver: bounded-parallel execution with retry/backoff; the
// transport decides how a single attempt is answered.
std::vector<PredictionRecord> drive(
    const EndpointConfig& cfg, const DatasetManifest& manifest, PromptMode mode,
    const std::map<std::string, std::string>& image_refs, bool live,
    const std::function<TransportResult(const QAItem&, const std::string&, int)>& transport) {
    cfg.validate();
    const std::size_t n = manifest.items.size();
    std::vector<PredictionRecord> records(n);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            const QAItem& item = manifest.items[i];
            PredictionRecord& record = records[i];
            record.id = item.id;

            std::string body;
            try {
                std::string image_ref;
                const auto it = image_refs.find(item.id);
                if (it != image_refs.end()) image_ref = it->second;
                body = build_prompt(RedactedItem::from(item, image_ref), mode, cfg);
            } catch (const std::exception& e) {
                record.status = std::string("failed:prompt:") + e.what();
                done.fetch_add(1);
                continue;
            }

            if (live) record.request_ms = now_ms();
            int backoff_ms = 250;
            for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
                record.attempts = attempt + 1;
                const TransportResult result = transport(item, body, attempt);
                if (result.status == 200) {
                    record.output = extract_content(result.body);
                    record.status = "ok";
                    break;
                }
                record.status = "failed:http-" + std::to_string(result.status);
                if (!retryable(result.status) || attempt == cfg.max_retries) break;
                if (live) {
                    std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
                    backoff_ms *= 2;
                }
            }
            if (live) record.response_ms = now_ms();
            done.fetch_add(1);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.max_concurrent), std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace

void EndpointConfig::validate() const {
    if (max_concurrent < 1)
        throw std::invalid_argument("endpoint: max_concurrent must be >= 1");
    if (max_retries < 0) throw std::invalid_argument("endpoint: max_retries must be >= 0");
}

std::optional<PromptMode> prompt_mode_from_name(const std::string& name) {
    for (int i = 0; i < 3; ++i)
        if (kModeNames[static_cast<std::size_t>(i)] == name)
            return static_cast<PromptMode>(i);
    return std::nullopt;
}

const std::string& prompt_mode_name(PromptMode mode) {
    return kModeNames[static_cast<std::size_t>(mode)];
}

RedactedItem RedactedItem::from(const QAItem& item, std::string image_ref) {
    RedactedItem r;
    r.id = item.id;
    r.task = item.task;
    r.question = item.question;
    r.views = item.views;
    r.image_ref = std::move(image_ref);
    return r;
}

std::string build_prompt(const RedactedItem& item, PromptMode mode,
                         const EndpointConfig& cfg) {
    json messages = json::array();
    switch (mode) {
        case PromptMode::ImageOnly: {
            if (item.image_ref.empty())
                throw std::invalid_argument("build_prompt: image-only mode needs a rendered asset");
            json content = json::array();
            content.push_back({{"type", "text"}, {"text", item.question}});
            content.push_back(
                {{"type", "image_url"}, {"image_url", {{"url", item.image_ref}}}});
            messages.push_back({{"role", "user"}, {"content", std::move(content)}});
            break;
        }
        case PromptMode::ThreeViewDesc: {
            if (item.views.empty())
                throw std::invalid_argument("build_prompt: three-view mode needs a description");
            json content = json::array();
            content.push_back(
                {{"type", "text"},
                 {"text", item.question + "\n\nThree views:\n" + item.views}});
            if (!item.image_ref.empty())
                content.push_back(
                    {{"type", "image_url"}, {"image_url", {{"url", item.image_ref}}}});
            messages.push_back({{"role", "user"}, {"content", std::move(content)}});
            break;
        }
        case PromptMode::IclThreeView: {
            if (item.views.empty())
                throw std::invalid_argument("build_prompt: three-view mode needs a description");
            messages.push_back(
                {{"role", "system"}, {"content", std::string(prompts::kThreeViewInstruction)}});
            const std::string user =
                std::string(prompts::demonstration_for(item.task)) + "\n\n" + item.question +
                "\n\nThree views:\n" + item.views;
            messages.push_back({{"role", "user"}, {"content", user}});
            break;
        }
    }
    json j;
    j["max_tokens"] = cfg.max_output_tokens;
    j["messages"] = std::move(messages);
    j["model"] = cfg.model;
    j["temperature"] = cfg.temperature;
    return j.dump();
}

ReplayFixture parse_fixture(const std::string& jsonl_text) {
    ReplayFixture fixture;
    std::istringstream in(jsonl_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        const std::string id = j.at("id").get<std::string>();
        std::vector<ReplayResponse>& seq = fixture[id];
        if (j.contains("responses")) {
            for (const auto& r : j.at("responses")) {
                ReplayResponse response;
                response.status = r.value("status", 200);
                response.output = r.value("output", "");
                seq.push_back(std::move(response));
            }
        } else {
            seq.push_back({200, j.at("output").get<std::string>()});
        }
    }
    return fixture;
}

std::string serialize_fixture(const ReplayFixture& fixture) {
    std::string out;
    for (const auto& [id, seq] : fixture) {
        json j;
        j["id"] = id;
        if (seq.size() == 1 && seq[0].status == 200) {
            j["output"] = seq[0].output;
        } else {
            json responses = json::array();
            for (const auto& r : seq)
                responses.push_back({{"output", r.output}, {"status", r.status}});
            j["responses"] = std::move(responses);
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<PredictionRecord> run_eval(const EndpointConfig& cfg,
                                       const DatasetManifest& manifest, PromptMode mode,
                                       const std::map<std::string, std::string>& image_refs) {
    std::string token;
    if (!cfg.auth_env_var.empty()) {
        if (const char* value = std::getenv(cfg.auth_env_var.c_str())) token = value;
    }
    auto transport = [&cfg, token](const QAItem&, const std::string& body,
                                   int) -> TransportResult {
        httplib::Client client(cfg.base_url);
        client.set_read_timeout(cfg.timeout_seconds, 0);
        client.set_connection_timeout(cfg.timeout_seconds, 0);
        httplib::Headers headers;
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
        auto result = client.Post(cfg.path, headers, body, "application/json");
        if (!result) return {0, ""};
        return {result->status, result->body};
    };
    return drive(cfg, manifest, mode, image_refs, /*live=*/true, transport);
}

std::vector<PredictionRecord> run_eval_replay(
    const EndpointConfig& cfg, const DatasetManifest& manifest, PromptMode mode,
    const ReplayFixture& fixture, const std::map<std::string, std::string>& image_refs) {
    auto transport = [&fixture](const QAItem& item, const std::string&,
                                int attempt) -> TransportResult {
        const auto it = fixture.find(item.id);
        if (it == fixture.end() || it->second.empty()) return {0, ""};
        const auto& seq = it->second;
        const std::size_t k =
            std::min(static_cast<std::size_t>(attempt), seq.size() - 1);
        return {seq[k].status, seq[k].output};
    };
    return drive(cfg, manifest, mode, image_refs, /*live=*/false, transport);
}

std::string serialize_records(const std::vector<PredictionRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        json j;
        j["attempts"] = r.attempts;
        j["id"] = r.id;
        j["output"] = r.output;
        j["request_ms"] = r.request_ms;
        j["response_ms"] = r.response_ms;
        j["status"] = r.status;
        out += j.dump();
        out += '\n';
    }
    return out;
}

}  // namespace ortho
