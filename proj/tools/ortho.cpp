// Command-line entry point: generate / solve / describe / render / score /
// eval / sweep subcommands over the ortho library. Settings merge with
// file < environment < flags precedence; every output embeds the config
// fingerprint and seed so identical inputs reproduce identical bytes.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ortho/eval_client.hpp"
#include "ortho/hash.hpp"
#include "ortho/qa.hpp"
#include "ortho/render.hpp"
#include "ortho/scoring.hpp"
#include "ortho/synthesis.hpp"
#include "ortho/uniqueness.hpp"
#include "ortho/view_description.hpp"
#include "ortho/voxel_core.hpp"

namespace {

using json = nlohmann::json;
using namespace ortho;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void emit(const std::optional<std::string>& path, const std::string& content) {
    if (path) write_file(*path, content);
    else std::cout << content;
}

// --- configuration loading: file < environment < flags ---

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_file(const std::string& path) {
    KeyValues kv;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        const std::size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const std::size_t b = s.find_first_not_of(" \t\r");
            const std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

const char* const kSynthesisKeys[] = {
    "grid_width",  "grid_depth",    "max_height",     "min_blocks",
    "max_blocks",  "min_objects",   "max_objects",    "arena_extent",
    "min_separation", "margin_degrees", "distinct_attributes", "max_attempts",
};

void apply_key(SynthesisConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "grid_width") cfg.grid_width = std::stoi(value);
        else if (key == "grid_depth") cfg.grid_depth = std::stoi(value);
        else if (key == "max_height") cfg.max_height = std::stoi(value);
        else if (key == "min_blocks") cfg.min_blocks = std::stoi(value);
        else if (key == "max_blocks") cfg.max_blocks = std::stoi(value);
        else if (key == "min_objects") cfg.min_objects = std::stoi(value);
        else if (key == "max_objects") cfg.max_objects = std::stoi(value);
        else if (key == "arena_extent") cfg.arena_extent = std::stod(value);
        else if (key == "min_separation") cfg.min_separation = std::stod(value);
        else if (key == "margin_degrees") cfg.margin_degrees = std::stod(value);
        else if (key == "distinct_attributes")
            cfg.distinct_attributes = (value == "true" || value == "1");
        else if (key == "max_attempts") cfg.max_attempts = std::stoi(value);
        else throw UsageError("unknown configuration key: " + key);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("bad value for " + key + ": " + value);
    }
}

// Flags already parsed by CLI11 are applied by the caller on top of this.
SynthesisConfig load_synthesis_config(const std::optional<std::string>& config_path) {
    SynthesisConfig cfg;
    if (config_path)
        for (const auto& [key, value] : parse_config_file(*config_path))
            apply_key(cfg, key, value);
    for (const char* key : kSynthesisKeys) {
        std::string env = "ORTHO_";
        for (const char* p = key; *p; ++p)
            env += static_cast<char>(std::toupper(static_cast<unsigned char>(*p)));
        if (const char* value = std::getenv(env.c_str())) apply_key(cfg, key, value);
    }
    return cfg;
}

std::string stamp_comment(const std::string& fingerprint, std::uint64_t seed) {
    return "# fingerprint: " + fingerprint + " seed: " + std::to_string(seed) + "\n";
}

DatasetManifest load_manifest(const std::string& dataset_path,
                              const std::optional<std::string>& summary_path) {
    const std::string jsonl = read_file(dataset_path);
    if (summary_path) return parse_dataset(jsonl, read_file(*summary_path));
    // Without a summary, rebuild the header fields from the items.
    DatasetManifest manifest;
    std::istringstream in(jsonl);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        manifest.items.push_back(parse_item(line));
    }
    for (const auto& item : manifest.items) ++manifest.per_task_counts[item.task];
    return manifest;
}

// --- subcommand state ---

struct CommonOpts {
    std::optional<std::string> config_path;
    std::uint64_t seed = 0;
    KeyValues overrides;  // --set key=value flags
};

SynthesisConfig merged_config(const CommonOpts& opts) {
    SynthesisConfig cfg = load_synthesis_config(opts.config_path);
    for (const auto& [key, value] : opts.overrides) apply_key(cfg, key, value);
    cfg.seed = opts.seed;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& opts, std::vector<std::string>& sets) {
    cmd->add_option("--config", [&opts](const std::vector<std::string>& v) {
        opts.config_path = v.back();
        return true;
    }, "key=value configuration file");
    cmd->add_option("--seed", opts.seed, "master seed")->capture_default_str();
    cmd->add_option("--set", sets, "override a configuration key (key=value), repeatable");
}

void finish_common(CommonOpts& opts, const std::vector<std::string>& sets) {
    for (const auto& entry : sets) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value: " + entry);
        opts.overrides[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
}

// --- subcommands ---

int cmd_generate(const CommonOpts& opts, const std::string& profile,
                 const std::vector<std::string>& task_counts, const std::string& out,
                 const std::string& summary_out) {
    DatasetConfig cfg;
    if (profile == "eval") {
        cfg = DatasetConfig::eval_profile();
    } else if (!profile.empty()) {
        throw UsageError("unknown profile: " + profile);
    }
    cfg.synthesis = merged_config(opts);
    for (const auto& entry : task_counts) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) throw UsageError("--task expects name=count: " + entry);
        const auto task = task_from_name(entry.substr(0, eq));
        if (!task) throw UsageError("unknown task: " + entry.substr(0, eq));
        cfg.per_task_counts[*task] = std::stoi(entry.substr(eq + 1));
    }
    if (cfg.per_task_counts.empty())
        throw UsageError("generate: no tasks requested (use --task or --profile eval)");

    const DatasetManifest manifest = build_dataset(cfg, opts.seed);
    write_file(out, serialize_dataset(manifest));
    write_file(summary_out, serialize_manifest_summary(manifest) + "\n");
    std::cerr << "wrote " << manifest.items.size() << " items to " << out << "\n";
    return 0;
}

int cmd_solve(const CommonOpts& opts, const std::string& views_path,
              const std::optional<std::string>& out) {
    const SynthesisConfig cfg = merged_config(opts);
    const std::string views_text = read_file(views_path);
    const OrthoViews views = parse_views(views_text);
    const ReconstructionResult r = reconstruct(views, cfg.max_height);

    json j;
    j["config_fingerprint"] = cfg.fingerprint();
    j["input_hash"] = content_hash(views_text);
    j["seed"] = opts.seed;
    switch (r.status) {
        case ReconstructionStatus::Unique: j["status"] = "unique"; break;
        case ReconstructionStatus::Ambiguous: j["status"] = "ambiguous"; break;
        case ReconstructionStatus::Infeasible: j["status"] = "infeasible"; break;
    }
    j["solution_count"] = r.solution_count;
    j["count_saturated"] = r.count_saturated;
    if (r.solution_count > 0) {
        j["count_min"] = r.count_min;
        j["count_max"] = r.count_max;
    }
    if (r.unique_config) {
        json heights = json::array();
        for (int x = 0; x < r.unique_config->width(); ++x) {
            json row = json::array();
            for (int y = 0; y < r.unique_config->depth(); ++y)
                row.push_back(r.unique_config->at(x, y));
            heights.push_back(std::move(row));
        }
        j["heights"] = std::move(heights);
    }
    emit(out, j.dump() + "\n");
    return r.status == ReconstructionStatus::Infeasible ? 1 : 0;
}

int cmd_describe(const CommonOpts& opts, const std::string& scene_path,
                 const std::optional<std::string>& out) {
    const SynthesisConfig cfg = merged_config(opts);
    const std::string text = read_file(scene_path);
    const json j = json::parse(text);
    ViewDescription vd;
    if (j.contains("heights")) vd = describe_block_views(parse_scene(text));
    else vd = describe_object_views(parse_object_scene(text));
    emit(out, stamp_comment(cfg.fingerprint(), opts.seed) + serialize_description(vd));
    return 0;
}

int cmd_render(const CommonOpts& opts, const std::optional<std::string>& scene_path,
               const std::optional<std::string>& manifest_path,
               const std::optional<std::string>& out,
               const std::optional<std::string>& out_dir, double scale, int width,
               int height) {
    const SynthesisConfig cfg = merged_config(opts);
    CameraSpec cam;
    cam.scale = scale;
    cam.canvas_width = width;
    cam.canvas_height = height;
    const std::string stamp =
        "<!-- fingerprint: " + cfg.fingerprint() + " seed: " + std::to_string(opts.seed) +
        " -->\n";

    auto render_item = [&](const QAItem& item) {
        if (item.block_scene) return render_block_svg(*item.block_scene, cam);
        return render_object_svg(*item.object_scene, cam);
    };

    if (scene_path) {
        const std::string text = read_file(*scene_path);
        const json j = json::parse(text);
        const std::string svg = j.contains("heights")
                                    ? render_block_svg(parse_scene(text), cam)
                                    : render_object_svg(parse_object_scene(text), cam);
        emit(out, stamp + svg);
        return 0;
    }
    if (!manifest_path) throw UsageError("render: need --scene or --manifest");
    if (!out_dir) throw UsageError("render: --manifest requires --out-dir");
    std::filesystem::create_directories(*out_dir);
    const DatasetManifest manifest = load_manifest(*manifest_path, std::nullopt);
    for (const auto& item : manifest.items)
        write_file(*out_dir + "/" + item.id + ".svg", stamp + render_item(item));
    std::cerr << "rendered " << manifest.items.size() << " files to " << *out_dir << "\n";
    return 0;
}

int cmd_score(const CommonOpts& opts, const std::string& predictions_path,
              const std::string& manifest_path, const std::optional<std::string>& summary_path,
              const std::string& mode_name, const std::optional<std::string>& out) {
    ScoreMode mode;
    if (mode_name == "strict") mode = ScoreMode::Strict;
    else if (mode_name == "slack") mode = ScoreMode::Slack;
    else throw UsageError("score: mode must be strict or slack");

    const DatasetManifest manifest = load_manifest(manifest_path, summary_path);
    const auto predictions = parse_predictions(read_file(predictions_path));
    const EvalReport report = score_file(predictions, manifest, mode);

    json j = json::parse(serialize_report(report));
    j["config_fingerprint"] = manifest.config_fingerprint;
    j["seed"] = opts.seed;
    emit(out, j.dump() + "\n");
    std::cerr << format_report_table(report);
    for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";
    return 0;
}

int cmd_eval(const CommonOpts& opts, const std::string& manifest_path,
             const std::optional<std::string>& summary_path, const std::string& endpoint,
             const std::string& model, const std::string& mode_name,
             const std::optional<std::string>& replay_path, const std::string& auth_env,
             int max_concurrent, int retries, const std::string& out) {
    const auto mode = prompt_mode_from_name(mode_name);
    if (!mode) throw UsageError("eval: unknown mode " + mode_name);
    if (!replay_path && endpoint.empty())
        throw UsageError("eval: need --endpoint or --replay");

    const DatasetManifest manifest = load_manifest(manifest_path, summary_path);
    EndpointConfig cfg;
    cfg.base_url = endpoint;
    cfg.model = model;
    cfg.auth_env_var = auth_env;
    cfg.max_concurrent = max_concurrent;
    cfg.max_retries = retries;

    std::vector<PredictionRecord> records;
    if (replay_path) {
        const ReplayFixture fixture = parse_fixture(read_file(*replay_path));
        records = run_eval_replay(cfg, manifest, *mode, fixture);
    } else {
        records = run_eval(cfg, manifest, *mode);
    }
    write_file(out, serialize_records(records));

    int failed = 0;
    for (const auto& r : records)
        if (!r.ok()) ++failed;
    std::cerr << records.size() - failed << "/" << records.size() << " requests succeeded\n";
    return failed == 0 ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opts, int max_cells, int max_height,
              const std::optional<std::string>& out) {
    if (max_cells < 1 || max_height < 1)
        throw UsageError("sweep: max-cells and max-height must be positive");
    const SweepReport report = sweep_uniqueness(max_cells, max_height);
    json j = json::parse(serialize_sweep_report(report));
    j["config_fingerprint"] =
        content_hash("sweep/" + std::to_string(max_cells) + "/" + std::to_string(max_height));
    j["seed"] = opts.seed;
    emit(out, j.dump() + "\n");
    std::cerr << "maps: " << report.total_maps
              << ", sufficiency violations: " << report.sufficiency_violations.size()
              << ", necessity counterexamples: " << report.necessity_counterexamples.size()
              << "\n";
    return report.sufficiency_violations.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthographic-view spatial-reasoning toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> sets;

    // generate
    auto* generate = app.add_subcommand("generate", "Build a QA dataset (JSONL + summary)");
    add_common(generate, opts, sets);
    std::string profile;
    std::vector<std::string> task_counts;
    std::string gen_out = "dataset.jsonl";
    std::string gen_summary = "manifest.json";
    generate->add_option("--profile", profile, "named count profile (eval)");
    generate->add_option("--task", task_counts, "per-task item count (name=count), repeatable");
    generate->add_option("--out", gen_out, "dataset JSONL path")->capture_default_str();
    generate->add_option("--summary", gen_summary, "manifest summary path")
        ->capture_default_str();

    // solve
    auto* solve = app.add_subcommand("solve", "Reconstruct a height map from a views file");
    add_common(solve, opts, sets);
    std::string views_path;
    std::optional<std::string> solve_out;
    solve->add_option("--views", views_path, "views JSON file")->required();
    solve->add_option("--out", [&solve_out](const std::vector<std::string>& v) {
        solve_out = v.back();
        return true;
    }, "output path (default stdout)");

    // describe
    auto* describe = app.add_subcommand("describe", "Emit the three-view description");
    add_common(describe, opts, sets);
    std::string scene_path;
    std::optional<std::string> describe_out;
    describe->add_option("--scene", scene_path, "scene JSON file")->required();
    describe->add_option("--out", [&describe_out](const std::vector<std::string>& v) {
        describe_out = v.back();
        return true;
    }, "output path (default stdout)");

    // render
    auto* render = app.add_subcommand("render", "Render scenes to SVG");
    add_common(render, opts, sets);
    std::optional<std::string> render_scene, render_manifest, render_out, render_out_dir;
    double render_scale = 32.0;
    int render_width = 640, render_height = 480;
    render->add_option("--scene", [&render_scene](const std::vector<std::string>& v) {
        render_scene = v.back();
        return true;
    }, "single scene JSON file");
    render->add_option("--manifest", [&render_manifest](const std::vector<std::string>& v) {
        render_manifest = v.back();
        return true;
    }, "dataset JSONL; renders every item");
    render->add_option("--out", [&render_out](const std::vector<std::string>& v) {
        render_out = v.back();
        return true;
    }, "output path for --scene (default stdout)");
    render->add_option("--out-dir", [&render_out_dir](const std::vector<std::string>& v) {
        render_out_dir = v.back();
        return true;
    }, "output directory for --manifest (<item-id>.svg)");
    render->add_option("--scale", render_scale, "pixels per unit")->capture_default_str();
    render->add_option("--width", render_width, "canvas width")->capture_default_str();
    render->add_option("--height", render_height, "canvas height")->capture_default_str();

    // score
    auto* score = app.add_subcommand("score", "Score a prediction file against a manifest");
    add_common(score, opts, sets);
    std::string predictions_path, score_manifest, score_mode = "strict";
    std::optional<std::string> score_summary, score_out;
    score->add_option("--predictions", predictions_path, "predictions JSONL")->required();
    score->add_option("--manifest", score_manifest, "dataset JSONL")->required();
    score->add_option("--summary", [&score_summary](const std::vector<std::string>& v) {
        score_summary = v.back();
        return true;
    }, "manifest summary JSON");
    score->add_option("--mode", score_mode, "strict or slack")->capture_default_str();
    score->add_option("--out", [&score_out](const std::vector<std::string>& v) {
        score_out = v.back();
        return true;
    }, "report path (default stdout)");

    // eval
    auto* eval = app.add_subcommand("eval", "Query a model endpoint (or a replay fixture)");
    add_common(eval, opts, sets);
    std::string eval_manifest, eval_endpoint, eval_model, eval_mode = "three-view-desc";
    std::string eval_auth_env, eval_out = "preds.jsonl";
    std::optional<std::string> eval_summary, eval_replay;
    int eval_concurrent = 4, eval_retries = 3;
    eval->add_option("--manifest", eval_manifest, "dataset JSONL")->required();
    eval->add_option("--summary", [&eval_summary](const std::vector<std::string>& v) {
        eval_summary = v.back();
        return true;
    }, "manifest summary JSON");
    eval->add_option("--endpoint", eval_endpoint, "base URL of a chat-completions service");
    eval->add_option("--model", eval_model, "model name sent in requests");
    eval->add_option("--mode", eval_mode,
                     "image-only, three-view-desc, or icl-three-view")
        ->capture_default_str();
    eval->add_option("--replay", [&eval_replay](const std::vector<std::string>& v) {
        eval_replay = v.back();
        return true;
    }, "replay fixture JSONL instead of a live endpoint");
    eval->add_option("--auth-env", eval_auth_env,
                     "environment variable holding the bearer token");
    eval->add_option("--max-concurrent", eval_concurrent, "parallel requests")
        ->capture_default_str();
    eval->add_option("--retries", eval_retries, "retries per item")->capture_default_str();
    eval->add_option("--out", eval_out, "predictions output path")->capture_default_str();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Exhaustive uniqueness-condition audit");
    add_common(sweep, opts, sets);
    int sweep_cells = 6, sweep_height = 3;
    std::optional<std::string> sweep_out;
    sweep->add_option("--max-cells", sweep_cells, "maximum W*L")->capture_default_str();
    sweep->add_option("--max-height", sweep_height, "maximum stack height")
        ->capture_default_str();
    sweep->add_option("--out", [&sweep_out](const std::vector<std::string>& v) {
        sweep_out = v.back();
        return true;
    }, "report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // --help exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    try {
        finish_common(opts, sets);
        if (*generate)
            return cmd_generate(opts, profile, task_counts, gen_out, gen_summary);
        if (*solve) return cmd_solve(opts, views_path, solve_out);
        if (*describe) return cmd_describe(opts, scene_path, describe_out);
        if (*render)
            return cmd_render(opts, render_scene, render_manifest, render_out, render_out_dir,
                              render_scale, render_width, render_height);
        if (*score)
            return cmd_score(opts, predictions_path, score_manifest, score_summary, score_mode,
                             score_out);
        if (*eval)
            return cmd_eval(opts, eval_manifest, eval_summary, eval_endpoint, eval_model,
                            eval_mode, eval_replay, eval_auth_env, eval_concurrent,
                            eval_retries, eval_out);
        if (*sweep) return cmd_sweep(opts, sweep_cells, sweep_height, sweep_out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
