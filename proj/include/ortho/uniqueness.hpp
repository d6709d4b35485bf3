#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ortho/voxel_core.hpp"

namespace ortho {

// Per-cell context for the uniqueness condition: the cell height, the
// global column/row maxima, and the maxima excluding the cell itself.
// Maxima over an empty set are 0.
struct CellContext {
    int x = 0;
    int y = 0;
    int height = 0;
    int column_max = 0;       // M^c_x
    int row_max = 0;          // M^r_y
    int other_column_max = 0; // O^c_{x,y}
    int other_row_max = 0;    // O^r_{x,y}
};

enum class UniquenessCase { BaseLevelDominance, MultiLevelOcclusion, None };

struct CellCheck {
    CellContext context;
    UniquenessCase satisfied_case = UniquenessCase::None;
    bool satisfied = false;
};

struct UniquenessReport {
    bool unique_by_condition = true;
    std::vector<CellCheck> cells;           // occupied cells, (x, y) order
    std::optional<CellContext> first_violation;
};

// The per-cell condition: every occupied cell satisfies
//   [H = 1 and (M^c = 1 or M^r = 1)]  or  [H > 1 and (H > O^c or H > O^r)].
// When it holds, the three views determine the configuration.
UniquenessReport check_uniqueness(const HeightMap& hm);

struct EnumerationResult {
    std::vector<HeightMap> solutions;  // lexicographic order of the flat height vector
    bool saturated = false;            // hit the solution limit; list is a prefix
};

inline constexpr int kDefaultEnumerationLimit = 10'000;

// Brute-force oracle: every height map H' with project_views(H') == views,
// found by backtracking with the bound H'_{x,y} <= min(M^c_x, M^r_y) and
// zero where the top view is empty. Throws std::invalid_argument on shape
// mismatch between the profiles and the occupancy grid.
EnumerationResult enumerate_consistent(const OrthoViews& views, int max_height,
                                       int limit = kDefaultEnumerationLimit);

enum class ReconstructionStatus { Unique, Ambiguous, Infeasible };

struct ReconstructionResult {
    ReconstructionStatus status = ReconstructionStatus::Infeasible;
    std::optional<HeightMap> unique_config;
    int solution_count = 0;
    bool count_saturated = false;
    int count_min = 0;  // over enumerated solutions, defined when >= 1 solution
    int count_max = 0;
};

ReconstructionResult reconstruct(const OrthoViews& views, int max_height,
                                 int limit = kDefaultEnumerationLimit);

// --- exhaustive audit over all small height maps ---

struct SweepCounterexample {
    HeightMap map;
    int solution_count = 0;
};

// Exhaustive audit of the condition over every W x L shape with
// W*L <= max_cells and per-cell heights in 0..max_height.
//   - sufficiency_violations: condition-true maps whose views admit != 1 map
//     (the condition guarantees there are none).
//   - necessity_counterexamples: condition-false maps that are nonetheless
//     uniquely reconstructible (reported, not treated as an error).
struct SweepReport {
    int max_cells = 0;
    int max_height = 0;
    long long total_maps = 0;
    long long condition_true = 0;
    long long condition_false = 0;
    long long condition_false_ambiguous = 0;
    std::vector<SweepCounterexample> sufficiency_violations;
    std::vector<SweepCounterexample> necessity_counterexamples;
};

SweepReport sweep_uniqueness(int max_cells, int max_height);

std::string serialize_sweep_report(const SweepReport& report);

}  // namespace ortho
