#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ortho/synthesis.hpp"
#include "ortho/view_description.hpp"
#include "ortho/voxel_core.hpp"

namespace ortho {

enum class Task {
    BlockCount,
    BlockCountAttr,
    ObjectCount,
    ObjectPosition,
    ObjectCountAttr,
    ObjectPositionAttr,
};

inline constexpr Task kAllTasks[] = {Task::BlockCount,      Task::BlockCountAttr,
                                     Task::ObjectCount,     Task::ObjectPosition,
                                     Task::ObjectCountAttr, Task::ObjectPositionAttr};

const std::string& task_name(Task t);
std::optional<Task> task_from_name(const std::string& name);
bool task_uses_block_scene(Task t);
bool task_is_attribute_conditioned(Task t);

enum class AnswerType { Count, Direction };

// Attribute condition on a question, e.g. {color, "red"} or
// {shape, "cylinder"}.
struct Attribute {
    std::string kind;   // "color", "shape", "size"
    std::string value;

    bool operator==(const Attribute& other) const = default;
};

struct QAItem {
    std::string id;  // stable content hash
    Task task = Task::BlockCount;
    std::optional<BlockScene> block_scene;
    std::optional<ObjectScene> object_scene;
    std::string question;
    AnswerType answer_type = AnswerType::Count;
    int count_answer = 0;
    DirectionLabelSet direction_answer;
    std::optional<Attribute> attribute;
    std::string views;  // serialized ViewDescription
    std::uint64_t seed = 0;
    std::string grid;   // "WxL" for block scenes, arena extent for object scenes
    bool occluded_attr = false;
    std::string scene_hash;

    bool operator==(const QAItem& other) const = default;
};

struct ItemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds one QA item for a block scene. Attribute must be present iff the
// task is attribute-conditioned; throws ItemError when no entity matches
// the attribute (callers resample).
QAItem generate_item(const BlockScene& scene, Task task,
                     const std::optional<Attribute>& attribute, std::uint64_t seed);
QAItem generate_item(const ObjectScene& scene, Task task,
                     const std::optional<Attribute>& attribute, std::uint64_t seed,
                     double margin_degrees);

struct DatasetConfig {
    SynthesisConfig synthesis;
    std::map<Task, int> per_task_counts;
    std::string split = "id-eval";

    // Table of per-task item counts for the in-domain evaluation profile.
    static DatasetConfig eval_profile();
    std::string fingerprint() const;
};

struct DatasetManifest {
    std::string split;
    std::map<Task, int> per_task_counts;
    std::vector<QAItem> items;
    std::string config_fingerprint;
    std::uint64_t seed = 0;
};

// Generates exactly the requested per-task counts, de-duplicating scenes by
// canonical-form hash across the whole manifest. Deterministic per
// (cfg, seed).
DatasetManifest build_dataset(const DatasetConfig& cfg, std::uint64_t seed);

std::string serialize_item(const QAItem& item);
QAItem parse_item(const std::string& text);

// Dataset file: JSONL, one item per line, LF endings. The manifest summary
// (counts + fingerprint) is a separate document.
std::string serialize_dataset(const DatasetManifest& manifest);
std::string serialize_manifest_summary(const DatasetManifest& manifest);
DatasetManifest parse_dataset(const std::string& jsonl_text, const std::string& summary_text);

}  // namespace ortho
