#include "ortho/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ortho {

using json = nlohmann::json;

namespace {

std::optional<std::string> last_boxed_span(const std::string& text) {
    static const std::string kMarker = "\\boxed{";
    const std::size_t pos = text.rfind(kMarker);
    if (pos == std::string::npos) return std::nullopt;
    std::size_t i = pos + kMarker.size();
    int depth = 1;
    std::string span;
    for (; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        else if (text[i] == '}') {
            if (--depth == 0) return span;
        }
        span += text[i];
    }
    return std::nullopt;  // unbalanced
}

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    std::size_t end = s.find_last_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<int> parse_count(const std::string& raw) {
    std::string s = lower(trim(raw));
    while (!s.empty() && s.back() == '.') s.pop_back();
    if (s.empty()) return std::nullopt;
    if (std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
        try {
            return std::stoi(s);
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    static const std::map<std::string, int> words = {
        {"zero", 0},     {"one", 1},       {"two", 2},      {"three", 3},  {"four", 4},
        {"five", 5},     {"six", 6},       {"seven", 7},    {"eight", 8},  {"nine", 9},
        {"ten", 10},     {"eleven", 11},   {"twelve", 12},  {"thirteen", 13},
        {"fourteen", 14}, {"fifteen", 15}, {"sixteen", 16}, {"seventeen", 17},
        {"eighteen", 18}, {"nineteen", 19}, {"twenty", 20}};
    const auto it = words.find(s);
    if (it == words.end()) return std::nullopt;
    return it->second;
}

std::optional<Direction> parse_direction(const std::string& raw) {
    std::string s = lower(trim(raw));
    for (char& c : s)
        if (c == '-' || c == '_') c = ' ';
    std::istringstream tokens(s);
    std::string token;
    std::optional<std::string> fb;  // front/back component
    std::optional<std::string> lr;  // left/right component
    while (tokens >> token) {
        if (token == "front" || token == "back") {
            if (fb && *fb != token) return std::nullopt;
            fb = token;
        } else if (token == "left" || token == "right") {
            if (lr && *lr != token) return std::nullopt;
            lr = token;
        } else {
            return std::nullopt;
        }
    }
    std::string canonical;
    if (fb) canonical = *fb;
    if (lr) canonical += (canonical.empty() ? "" : "-") + *lr;
    if (canonical.empty()) return std::nullopt;
    return direction_from_name(canonical);
}

// front/back and left/right components of a tag; empty when absent.
std::pair<std::string, std::string> axis_components(Direction d) {
    const std::string& name = direction_name(d);
    std::string fb, lr;
    std::istringstream parts(name);
    std::string part;
    while (std::getline(parts, part, '-')) {
        if (part == "front" || part == "back") fb = part;
        else lr = part;
    }
    return {fb, lr};
}

}  // namespace

ParsedAnswer extract_answer(const std::string& text, AnswerType expected) {
    ParsedAnswer out;
    const auto span = last_boxed_span(text);
    if (!span) return out;
    out.raw = *span;
    if (expected == AnswerType::Count) {
        const auto count = parse_count(*span);
        if (!count || *count < 0) return out;
        out.kind = ParseKind::Count;
        out.count = *count;
    } else {
        const auto dir = parse_direction(*span);
        if (!dir) return out;
        out.kind = ParseKind::Direction;
        out.direction = *dir;
    }
    return out;
}

double reward_strict(const ParsedAnswer& pred, int gold_count) {
    return pred.kind == ParseKind::Count && pred.count == gold_count ? 1.0 : 0.0;
}

double reward_strict(const ParsedAnswer& pred, const DirectionLabelSet& gold) {
    return pred.kind == ParseKind::Direction && gold.contains(pred.direction) ? 1.0 : 0.0;
}

double reward_count_slack(int pred_count, int gold_count) {
    return std::max(0.0, 1.0 - 0.2 * std::abs(pred_count - gold_count));
}

double reward_direction(Direction pred, const DirectionLabelSet& gold) {
    if (gold.contains(pred)) return 1.0;
    const auto [pred_fb, pred_lr] = axis_components(pred);
    const auto [gold_fb, gold_lr] = axis_components(gold.primary);
    if ((!pred_fb.empty() && pred_fb == gold_fb) || (!pred_lr.empty() && pred_lr == gold_lr))
        return 0.5;
    return 0.0;
}

std::vector<double> grpo_advantages(const GrpoBatch& batch) {
    const std::size_t g = batch.rewards.size();
    if (g < 2) throw std::invalid_argument("grpo_advantages: group size must be >= 2");
    if (batch.delta <= 0.0) throw std::invalid_argument("grpo_advantages: delta must be > 0");
    double mean = 0.0;
    for (double r : batch.rewards) mean += r;
    mean /= static_cast<double>(g);
    double var = 0.0;
    for (double r : batch.rewards) var += (r - mean) * (r - mean);
    var /= static_cast<double>(g);  // population variance
    const double denom = std::sqrt(var) + batch.delta;
    std::vector<double> advantages;
    advantages.reserve(g);
    for (double r : batch.rewards) advantages.push_back((r - mean) / denom);
    return advantages;
}

double clipped_objective(const GrpoBatch& batch) {
    const std::vector<double> advantages =
        batch.advantages.empty() ? grpo_advantages(batch) : batch.advantages;
    if (batch.ratios.size() != advantages.size())
        throw std::invalid_argument("clipped_objective: ratio/advantage length mismatch");
    if (batch.epsilon <= 0.0)
        throw std::invalid_argument("clipped_objective: epsilon must be > 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < batch.ratios.size(); ++i) {
        const double r = batch.ratios[i];
        const double a = advantages[i];
        const double clipped = std::clamp(r, 1.0 - batch.epsilon, 1.0 + batch.epsilon);
        sum += std::min(r * a, clipped * a);
    }
    double objective = sum / static_cast<double>(batch.ratios.size());
    if (!batch.kl_values.empty()) {
        double kl = 0.0;
        for (double v : batch.kl_values) kl += v;
        objective -= batch.beta * (kl / static_cast<double>(batch.kl_values.size()));
    }
    return objective;
}

EvalReport score_file(const std::vector<Prediction>& predictions,
                      const DatasetManifest& manifest, ScoreMode mode) {
    EvalReport report;
    report.mode = mode;

    std::map<std::string, const QAItem*> by_id;
    for (const auto& item : manifest.items) by_id[item.id] = &item;

    std::map<std::string, std::string> outputs;  // id -> raw model output
    for (const auto& pred : predictions) {
        if (!by_id.count(pred.id))
            throw std::invalid_argument("score_file: unknown prediction id " + pred.id);
        if (outputs.count(pred.id))
            report.warnings.push_back("duplicate prediction for id " + pred.id +
                                      "; keeping the last one");
        outputs[pred.id] = pred.output;  // last wins
    }

    for (const auto& item : manifest.items) {
        ItemScore score;
        score.id = item.id;
        score.task = task_name(item.task);
        const auto out = outputs.find(item.id);
        if (out == outputs.end()) {
            score.missing = true;
            score.parsed = "<missing>";
        } else {
            const ParsedAnswer parsed = extract_answer(out->second, item.answer_type);
            if (item.answer_type == AnswerType::Count) {
                score.gold = std::to_string(item.count_answer);
                score.strict_correct = reward_strict(parsed, item.count_answer) == 1.0;
                if (parsed.kind == ParseKind::Count) {
                    score.parsed = std::to_string(parsed.count);
                    score.reward = mode == ScoreMode::Strict
                                       ? (score.strict_correct ? 1.0 : 0.0)
                                       : reward_count_slack(parsed.count, item.count_answer);
                } else {
                    score.parsed = "<parse-failure>";
                }
            } else {
                score.gold = direction_name(item.direction_answer.primary);
                score.strict_correct = reward_strict(parsed, item.direction_answer) == 1.0;
                if (parsed.kind == ParseKind::Direction) {
                    score.parsed = direction_name(parsed.direction);
                    score.reward = mode == ScoreMode::Strict
                                       ? (score.strict_correct ? 1.0 : 0.0)
                                       : reward_direction(parsed.direction,
                                                          item.direction_answer);
                } else {
                    score.parsed = "<parse-failure>";
                }
            }
        }
        if (item.answer_type == AnswerType::Count && score.gold.empty())
            score.gold = std::to_string(item.count_answer);
        if (item.answer_type == AnswerType::Direction && score.gold.empty())
            score.gold = direction_name(item.direction_answer.primary);
        auto& task_stats = report.per_task[score.task];
        ++task_stats.items;
        ++report.totals.items;
        if (score.strict_correct) {
            ++task_stats.correct;
            ++report.totals.correct;
        }
        task_stats.reward_sum += score.reward;
        report.totals.reward_sum += score.reward;
        report.items.push_back(std::move(score));
    }
    return report;
}

std::string serialize_predictions(const std::vector<Prediction>& predictions) {
    std::string out;
    for (const auto& pred : predictions) {
        json j;
        j["id"] = pred.id;
        j["output"] = pred.output;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<Prediction> parse_predictions(const std::string& jsonl_text) {
    std::vector<Prediction> out;
    std::istringstream in(jsonl_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        out.push_back({j.at("id").get<std::string>(), j.at("output").get<std::string>()});
    }
    return out;
}

std::string serialize_report(const EvalReport& report) {
    json j;
    j["mode"] = report.mode == ScoreMode::Strict ? "strict" : "slack";
    json items = json::array();
    for (const auto& s : report.items) {
        items.push_back({{"gold", s.gold},
                         {"id", s.id},
                         {"missing", s.missing},
                         {"parsed", s.parsed},
                         {"reward", s.reward},
                         {"strict_correct", s.strict_correct},
                         {"task", s.task}});
    }
    j["items"] = std::move(items);
    json per_task;
    for (const auto& [task, stats] : report.per_task) {
        per_task[task] = {{"accuracy", stats.accuracy()},
                          {"items", stats.items},
                          {"mean_reward", stats.mean_reward()}};
    }
    j["per_task"] = std::move(per_task);
    j["totals"] = {{"accuracy", report.totals.accuracy()},
                   {"items", report.totals.items},
                   {"mean_reward", report.totals.mean_reward()}};
    j["warnings"] = report.warnings;
    return j.dump();
}

std::string format_report_table(const EvalReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(24) << "task" << std::right << std::setw(8) << "items"
        << std::setw(12) << "accuracy" << std::setw(14) << "mean_reward" << "\n";
    auto row = [&](const std::string& name, const TaskStats& stats) {
        out << std::left << std::setw(24) << name << std::right << std::setw(8) << stats.items
            << std::setw(11) << std::fixed << std::setprecision(1) << stats.accuracy() << "%"
            << std::setw(14) << std::setprecision(3) << stats.mean_reward() << "\n";
    };
    for (const auto& [task, stats] : report.per_task) row(task, stats);
    row("total", report.totals);
    return out.str();
}

}  // namespace ortho
