#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ortho/qa.hpp"
#include "ortho/synthesis.hpp"

namespace ortho {

enum class ParseKind { Count, Direction, ParseFailure };

struct ParsedAnswer {
    ParseKind kind = ParseKind::ParseFailure;
    int count = 0;
    Direction direction = Direction::Front;
    std::string raw;  // extracted boxed span, verbatim
};

// Takes the LAST \boxed{...} span in the text. Counts parse from digit
// strings or the number words zero..twenty; directions normalize
// separators and component order ("front left" -> front-left). Anything
// else is a parse failure, which downstream scoring treats as reward 0.
ParsedAnswer extract_answer(const std::string& text, AnswerType expected);

// R_strict = 1 iff normalized equality; a direction prediction matching any
// member of the gold valid set counts as equal.
double reward_strict(const ParsedAnswer& pred, int gold_count);
double reward_strict(const ParsedAnswer& pred, const DirectionLabelSet& gold);

// max{0, 1 - 0.2 * |pred - gold|}.
double reward_count_slack(int pred_count, int gold_count);

// 1 on a valid-set match, 0.5 when the prediction shares a front/back or
// left/right axis component with the gold primary, else 0.
double reward_direction(Direction pred, const DirectionLabelSet& gold);

struct GrpoBatch {
    std::vector<double> rewards;
    double delta = 1e-6;          // stabilizer added to sigma
    double epsilon = 0.2;         // clip range
    double beta = 0.0;            // KL weight
    std::vector<double> ratios;
    std::vector<double> advantages;  // optional; derived from rewards when empty
    std::vector<double> kl_values;   // optional per-sample KL estimates
};

// A_i = (R_i - mean) / (population stddev + delta). Requires >= 2 rewards.
std::vector<double> grpo_advantages(const GrpoBatch& batch);

// (1/G) sum_i min(r_i A_i, clip(r_i, 1-eps, 1+eps) A_i) - beta * mean(KL).
double clipped_objective(const GrpoBatch& batch);

enum class ScoreMode { Strict, Slack };

struct Prediction {
    std::string id;
    std::string output;
};

struct ItemScore {
    std::string id;
    std::string task;
    std::string gold;
    std::string parsed;
    double reward = 0.0;
    bool strict_correct = false;
    bool missing = false;
};

struct TaskStats {
    int items = 0;
    int correct = 0;
    double reward_sum = 0.0;

    double accuracy() const { return items == 0 ? 0.0 : 100.0 * correct / items; }
    double mean_reward() const { return items == 0 ? 0.0 : reward_sum / items; }
};

struct EvalReport {
    ScoreMode mode = ScoreMode::Strict;
    std::vector<ItemScore> items;  // manifest order
    std::map<std::string, TaskStats> per_task;
    TaskStats totals;
    std::vector<std::string> warnings;  // duplicate predictions etc.
};

// Scores predictions against a gold manifest. Items without a prediction
// score 0 and are flagged; duplicate prediction ids keep the last entry and
// emit a warning; an unknown prediction id is an error.
EvalReport score_file(const std::vector<Prediction>& predictions,
                      const DatasetManifest& manifest, ScoreMode mode);

std::string serialize_predictions(const std::vector<Prediction>& predictions);
std::vector<Prediction> parse_predictions(const std::string& jsonl_text);

std::string serialize_report(const EvalReport& report);
std::string format_report_table(const EvalReport& report);

}  // namespace ortho
