#include "ortho/qa.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ortho/hash.hpp"
#include "ortho/rng.hpp"

namespace ortho {

using json = nlohmann::json;

namespace {

constexpr const char* kBoxedInstruction = "Return your final response within \\boxed{}.";

const std::array<std::string, 6> kTaskNames = {
    "block-count", "block-count-attr", "object-count",
    "object-position", "object-count-attr", "object-position-attr"};

std::string direction_set_canonical(const DirectionLabelSet& d) {
    std::string out = direction_name(d.primary);
    for (Direction v : d.valid) {
        out += '|';
        out += direction_name(v);
    }
    return out;
}

std::string make_id(Task task, const std::string& scene_text, const std::string& question,
                    const std::string& answer_canonical, const std::string& views) {
    return content_hash(task_name(task) + "\n" + scene_text + "\n" + question + "\n" +
                        answer_canonical + "\n" + views);
}

// "the small red sphere" style reference, qualified by one attribute kind.
std::string object_reference(const ObjectInstance& inst, const std::string& attr_kind) {
    if (attr_kind == "color") return color_name(inst.color) + " " + shape_name(inst.shape);
    if (attr_kind == "size") return size_name(inst.size) + " " + shape_name(inst.shape);
    return shape_name(inst.shape);
}

std::string attribute_value(const ObjectInstance& inst, const std::string& kind) {
    if (kind == "color") return color_name(inst.color);
    if (kind == "shape") return shape_name(inst.shape);
    if (kind == "size") return size_name(inst.size);
    throw std::invalid_argument("unknown attribute kind: " + kind);
}

constexpr const char* kDirectionChoices =
    "Answer the question from the choices: [\"front\", \"back\", \"right\", \"left\", "
    "\"front left\", \"front right\", \"back left\", \"back right\"] ";

}  // namespace

const std::string& task_name(Task t) {
    return kTaskNames[static_cast<std::size_t>(t)];
}

std::optional<Task> task_from_name(const std::string& name) {
    for (Task t : kAllTasks)
        if (task_name(t) == name) return t;
    return std::nullopt;
}

bool task_uses_block_scene(Task t) {
    return t == Task::BlockCount || t == Task::BlockCountAttr;
}

bool task_is_attribute_conditioned(Task t) {
    return t == Task::BlockCountAttr || t == Task::ObjectCountAttr ||
           t == Task::ObjectPositionAttr;
}

QAItem generate_item(const BlockScene& scene, Task task,
                     const std::optional<Attribute>& attribute, std::uint64_t seed) {
    if (!task_uses_block_scene(task))
        throw std::invalid_argument("generate_item: task requires an object scene");
    if (task_is_attribute_conditioned(task) != attribute.has_value())
        throw std::invalid_argument("generate_item: attribute presence mismatch");

    QAItem item;
    item.task = task;
    item.block_scene = scene;
    item.answer_type = AnswerType::Count;
    item.seed = seed;
    item.grid = std::to_string(scene.width()) + "x" + std::to_string(scene.depth());
    item.views = serialize_description(describe_block_views(scene));
    const std::string scene_text = serialize_scene(scene);
    item.scene_hash = content_hash(scene_text);

    if (task == Task::BlockCount) {
        item.count_answer = total_count(scene);
        item.question = std::string("How many blocks are there in the scene? ") +
                        kBoxedInstruction;
    } else {
        if (attribute->kind != "color")
            throw std::invalid_argument("generate_item: block attribute must be a color");
        const auto color = color_from_name(attribute->value);
        if (!color) throw std::invalid_argument("generate_item: unknown color");
        item.attribute = attribute;

        // Ground truth counts all matching voxels, hidden or not; the
        // occluded_attr flag marks items where some matching voxel is
        // invisible in all three views.
        const auto front = visible_voxels(scene, View::Front);
        const auto left = visible_voxels(scene, View::Left);
        const auto top = visible_voxels(scene, View::Top);
        auto visible_in = [](const std::vector<VoxelRecord>& records, int x, int y, int z) {
            for (const auto& r : records)
                if (r.x == x && r.y == y && r.z == z) return r.visible;
            return false;
        };
        int matches = 0;
        for (const auto& r : front) {
            if (r.color != *color) continue;
            ++matches;
            if (!r.visible && !visible_in(left, r.x, r.y, r.z) &&
                !visible_in(top, r.x, r.y, r.z))
                item.occluded_attr = true;
        }
        if (matches == 0) throw ItemError("generate_item: no voxel matches the attribute");
        item.count_answer = matches;
        item.question = "How many " + attribute->value + " blocks are there in the scene? " +
                        kBoxedInstruction;
    }
    item.id = make_id(task, scene_text, item.question, std::to_string(item.count_answer),
                      item.views);
    return item;
}

QAItem generate_item(const ObjectScene& scene, Task task,
                     const std::optional<Attribute>& attribute, std::uint64_t seed,
                     double margin_degrees) {
    if (task_uses_block_scene(task))
        throw std::invalid_argument("generate_item: task requires a block scene");
    if (task_is_attribute_conditioned(task) != attribute.has_value())
        throw std::invalid_argument("generate_item: attribute presence mismatch");
    if (scene.instances.size() < 1)
        throw std::invalid_argument("generate_item: empty object scene");

    QAItem item;
    item.task = task;
    item.object_scene = scene;
    item.seed = seed;
    std::ostringstream arena;
    arena << "arena:" << scene.arena_extent;
    item.grid = arena.str();
    item.views = serialize_description(describe_object_views(scene));
    const std::string scene_text = serialize_object_scene(scene);
    item.scene_hash = content_hash(scene_text);

    std::string answer_canonical;
    switch (task) {
        case Task::ObjectCount:
            item.answer_type = AnswerType::Count;
            item.count_answer = static_cast<int>(scene.instances.size());
            item.question = std::string("How many objects are there in this image? ") +
                            kBoxedInstruction;
            answer_canonical = std::to_string(item.count_answer);
            break;
        case Task::ObjectCountAttr: {
            item.answer_type = AnswerType::Count;
            item.attribute = attribute;
            int matches = 0;
            for (const auto& inst : scene.instances)
                if (attribute_value(inst, attribute->kind) == attribute->value) ++matches;
            if (matches == 0) throw ItemError("generate_item: no object matches the attribute");
            item.count_answer = matches;
            item.question = "How many " + attribute->value +
                            " objects are there in this image? " + kBoxedInstruction;
            answer_canonical = std::to_string(item.count_answer);
            break;
        }
        case Task::ObjectPosition:
        case Task::ObjectPositionAttr: {
            if (scene.instances.size() < 2)
                throw ItemError("generate_item: position task needs two objects");
            Rng rng(seed, "qa-pair");
            const std::size_t ia =
                static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(scene.instances.size()) - 1));
            std::size_t ib =
                static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(scene.instances.size()) - 2));
            if (ib >= ia) ++ib;  // distinct pair, never self-referential
            const ObjectInstance& a = scene.instances[ia];
            const ObjectInstance& b = scene.instances[ib];

            const std::string qualifier =
                task == Task::ObjectPositionAttr ? attribute->kind : "";
            const std::string ref_a = object_reference(a, qualifier);
            const std::string ref_b = object_reference(b, qualifier);
            // The reference phrase must pick out exactly one object.
            for (const auto& inst : scene.instances) {
                const std::string ref = object_reference(inst, qualifier);
                if (ref == ref_a && !(inst == a))
                    throw ItemError("generate_item: ambiguous object reference");
                if (ref == ref_b && !(inst == b))
                    throw ItemError("generate_item: ambiguous object reference");
            }
            if (task == Task::ObjectPositionAttr) {
                item.attribute = Attribute{attribute->kind, attribute_value(a, attribute->kind)};
            }
            item.answer_type = AnswerType::Direction;
            item.direction_answer = direction_labels(a.x, a.y, b.x, b.y, margin_degrees);
            item.question = "In which direction is the " + ref_a + " relative to the " +
                            ref_b + "? " + kDirectionChoices + kBoxedInstruction;
            answer_canonical = direction_set_canonical(item.direction_answer);
            break;
        }
        default:
            throw std::invalid_argument("generate_item: unsupported task");
    }
    item.id = make_id(task, scene_text, item.question, answer_canonical, item.views);
    return item;
}

DatasetConfig DatasetConfig::eval_profile() {
    DatasetConfig cfg;
    cfg.split = "id-eval";
    cfg.per_task_counts = {
        {Task::BlockCount, 500},      {Task::BlockCountAttr, 2202},
        {Task::ObjectCount, 300},     {Task::ObjectPosition, 300},
        {Task::ObjectCountAttr, 500}, {Task::ObjectPositionAttr, 500},
    };
    return cfg;
}

std::string DatasetConfig::fingerprint() const {
    json j;
    j["split"] = split;
    j["synthesis"] = json::parse(synthesis.canonical());
    json counts;
    for (const auto& [task, n] : per_task_counts) counts[task_name(task)] = n;
    j["per_task_counts"] = std::move(counts);
    return content_hash(j.dump());
}

DatasetManifest build_dataset(const DatasetConfig& cfg, std::uint64_t seed) {
    cfg.synthesis.validate();
    DatasetManifest manifest;
    manifest.split = cfg.split;
    manifest.config_fingerprint = cfg.fingerprint();
    manifest.seed = seed;

    std::set<std::string> scene_hashes;
    std::set<std::string> item_ids;

    for (Task task : kAllTasks) {
        const auto it = cfg.per_task_counts.find(task);
        if (it == cfg.per_task_counts.end() || it->second <= 0) continue;
        const int wanted = it->second;
        manifest.per_task_counts[task] = wanted;
        const std::string stream = "item/" + task_name(task);
        for (int i = 0; i < wanted; ++i) {
            bool emitted = false;
            for (int k = 0; k < cfg.synthesis.max_attempts && !emitted; ++k) {
                const std::uint64_t item_seed =
                    Rng(seed, stream,
                        static_cast<std::uint64_t>(i) * 100'000u + static_cast<std::uint64_t>(k))
                        .next_u64();
                try {
                    QAItem item;
                    if (task_uses_block_scene(task)) {
                        const BlockScene scene = gen_block_scene(cfg.synthesis, item_seed);
                        std::optional<Attribute> attr;
                        if (task == Task::BlockCountAttr) {
                            // Sample the color of a random voxel so the
                            // attribute always has at least one match.
                            Rng arng(item_seed, "attr-pick");
                            const auto& colors = scene.colors();
                            attr = Attribute{
                                "color",
                                color_name(colors[static_cast<std::size_t>(arng.uniform_int(
                                    0, static_cast<int>(colors.size()) - 1))])};
                        }
                        item = generate_item(scene, task, attr, item_seed);
                    } else {
                        const ObjectScene scene = gen_object_scene(cfg.synthesis, item_seed);
                        std::optional<Attribute> attr;
                        Rng arng(item_seed, "attr-pick");
                        if (task == Task::ObjectCountAttr) {
                            static const std::array<std::string, 3> kinds = {"color", "shape",
                                                                             "size"};
                            const std::string kind =
                                kinds[static_cast<std::size_t>(arng.uniform_int(0, 2))];
                            const auto& inst = scene.instances[static_cast<std::size_t>(
                                arng.uniform_int(0, static_cast<int>(scene.instances.size()) - 1))];
                            attr = Attribute{kind, attribute_value(inst, kind)};
                        } else if (task == Task::ObjectPositionAttr) {
                            attr = Attribute{arng.uniform_int(0, 1) == 0 ? "color" : "size", ""};
                        }
                        item = generate_item(scene, task, attr, item_seed,
                                             cfg.synthesis.margin_degrees);
                    }
                    if (scene_hashes.count(item.scene_hash) || item_ids.count(item.id))
                        continue;  // de-duplicate against everything emitted so far
                    scene_hashes.insert(item.scene_hash);
                    item_ids.insert(item.id);
                    manifest.items.push_back(std::move(item));
                    emitted = true;
                } catch (const ItemError&) {
                    // resample with the next attempt seed
                } catch (const SynthesisError&) {
                }
            }
            if (!emitted)
                throw SynthesisError("build_dataset: attempt budget exhausted for task " +
                                     task_name(task));
        }
    }
    return manifest;
}

std::string serialize_item(const QAItem& item) {
    json j;
    if (item.answer_type == AnswerType::Count) {
        j["answer"] = item.count_answer;
        j["answer_type"] = "count";
    } else {
        json valid = json::array();
        for (Direction d : item.direction_answer.valid) valid.push_back(direction_name(d));
        j["answer"] = {{"primary", direction_name(item.direction_answer.primary)},
                       {"valid", std::move(valid)}};
        j["answer_type"] = "direction";
    }
    if (item.attribute)
        j["attribute"] = {{"kind", item.attribute->kind}, {"value", item.attribute->value}};
    else
        j["attribute"] = nullptr;
    j["id"] = item.id;
    j["metadata"] = {{"grid", item.grid},
                     {"occluded_attr", item.occluded_attr},
                     {"scene_hash", item.scene_hash},
                     {"seed", item.seed}};
    j["question"] = item.question;
    if (item.block_scene)
        j["scene"] = json::parse(serialize_scene(*item.block_scene));
    else
        j["scene"] = json::parse(serialize_object_scene(*item.object_scene));
    j["task"] = task_name(item.task);
    j["views"] = item.views;
    return j.dump();
}

QAItem parse_item(const std::string& text) {
    const json j = json::parse(text);
    QAItem item;
    const auto task = task_from_name(j.at("task").get<std::string>());
    if (!task) throw std::invalid_argument("item: unknown task");
    item.task = *task;
    item.id = j.at("id").get<std::string>();
    item.question = j.at("question").get<std::string>();
    item.views = j.at("views").get<std::string>();
    const std::string answer_type = j.at("answer_type").get<std::string>();
    if (answer_type == "count") {
        item.answer_type = AnswerType::Count;
        item.count_answer = j.at("answer").get<int>();
    } else {
        item.answer_type = AnswerType::Direction;
        const auto& answer = j.at("answer");
        const auto primary = direction_from_name(answer.at("primary").get<std::string>());
        if (!primary) throw std::invalid_argument("item: unknown direction");
        item.direction_answer.primary = *primary;
        item.direction_answer.valid.clear();
        for (const auto& v : answer.at("valid")) {
            const auto d = direction_from_name(v.get<std::string>());
            if (!d) throw std::invalid_argument("item: unknown direction");
            item.direction_answer.valid.push_back(*d);
        }
    }
    if (!j.at("attribute").is_null())
        item.attribute = Attribute{j.at("attribute").at("kind").get<std::string>(),
                                   j.at("attribute").at("value").get<std::string>()};
    const auto& meta = j.at("metadata");
    item.grid = meta.at("grid").get<std::string>();
    item.occluded_attr = meta.at("occluded_attr").get<bool>();
    item.scene_hash = meta.at("scene_hash").get<std::string>();
    item.seed = meta.at("seed").get<std::uint64_t>();
    if (task_uses_block_scene(item.task))
        item.block_scene = parse_scene(j.at("scene").dump());
    else
        item.object_scene = parse_object_scene(j.at("scene").dump());
    return item;
}

std::string serialize_dataset(const DatasetManifest& manifest) {
    std::string out;
    for (const auto& item : manifest.items) {
        out += serialize_item(item);
        out += '\n';
    }
    return out;
}

std::string serialize_manifest_summary(const DatasetManifest& manifest) {
    json j;
    j["config_fingerprint"] = manifest.config_fingerprint;
    json counts;
    for (const auto& [task, n] : manifest.per_task_counts) counts[task_name(task)] = n;
    j["per_task_counts"] = std::move(counts);
    j["seed"] = manifest.seed;
    j["split"] = manifest.split;
    j["total_items"] = manifest.items.size();
    return j.dump();
}

DatasetManifest parse_dataset(const std::string& jsonl_text, const std::string& summary_text) {
    DatasetManifest manifest;
    std::istringstream in(jsonl_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        manifest.items.push_back(parse_item(line));
    }
    const json summary = json::parse(summary_text);
    manifest.config_fingerprint = summary.at("config_fingerprint").get<std::string>();
    manifest.seed = summary.at("seed").get<std::uint64_t>();
    manifest.split = summary.at("split").get<std::string>();
    for (const auto& [name, n] : summary.at("per_task_counts").items()) {
        const auto task = task_from_name(name);
        if (!task) throw std::invalid_argument("manifest: unknown task");
        manifest.per_task_counts[*task] = n.get<int>();
    }
    return manifest;
}

}  // namespace ortho
