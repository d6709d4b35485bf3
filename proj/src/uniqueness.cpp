#include "ortho/uniqueness.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ortho {

using json = nlohmann::json;

UniquenessReport check_uniqueness(const HeightMap& hm) {
    const int W = hm.width();
    const int L = hm.depth();
    UniquenessReport report;
    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < L; ++y) {
            const int h = hm.at(x, y);
            if (h == 0) continue;
            CellContext ctx;
            ctx.x = x;
            ctx.y = y;
            ctx.height = h;
            for (int y2 = 0; y2 < L; ++y2) {
                ctx.column_max = std::max(ctx.column_max, hm.at(x, y2));
                if (y2 != y) ctx.other_column_max = std::max(ctx.other_column_max, hm.at(x, y2));
            }
            for (int x2 = 0; x2 < W; ++x2) {
                ctx.row_max = std::max(ctx.row_max, hm.at(x2, y));
                if (x2 != x) ctx.other_row_max = std::max(ctx.other_row_max, hm.at(x2, y));
            }
            CellCheck check;
            check.context = ctx;
            if (h == 1 && (ctx.column_max == 1 || ctx.row_max == 1)) {
                check.satisfied = true;
                check.satisfied_case = UniquenessCase::BaseLevelDominance;
            } else if (h > 1 && (h > ctx.other_column_max || h > ctx.other_row_max)) {
                check.satisfied = true;
                check.satisfied_case = UniquenessCase::MultiLevelOcclusion;
            }
            if (!check.satisfied && !report.first_violation) {
                report.first_violation = ctx;
                report.unique_by_condition = false;
            }
            report.cells.push_back(check);
        }
    }
    return report;
}

namespace {

struct SearchState {
    int width = 0;
    int depth = 0;
    std::vector<int> front;
    std::vector<int> side;
    std::vector<std::pair<int, int>> cells;  // occupied cells, x-major order
    std::vector<int> remaining_in_col;       // cells not yet assigned
    std::vector<int> remaining_in_row;
    std::vector<int> achieved_col;
    std::vector<int> achieved_row;
    HeightMap current{1, 1};
    int limit = 0;
    EnumerationResult result;

    void search(std::size_t i) {
        if (result.saturated) return;
        if (i == cells.size()) {
            if (static_cast<int>(result.solutions.size()) >= limit) {
                result.saturated = true;
                return;
            }
            result.solutions.push_back(current);
            return;
        }
        const auto [x, y] = cells[i];
        const int bound = std::min(front[static_cast<std::size_t>(x)],
                                   side[static_cast<std::size_t>(y)]);
        --remaining_in_col[static_cast<std::size_t>(x)];
        --remaining_in_row[static_cast<std::size_t>(y)];
        const int prev_col = achieved_col[static_cast<std::size_t>(x)];
        const int prev_row = achieved_row[static_cast<std::size_t>(y)];
        for (int h = 1; h <= bound; ++h) {
            achieved_col[static_cast<std::size_t>(x)] = std::max(prev_col, h);
            achieved_row[static_cast<std::size_t>(y)] = std::max(prev_row, h);
            // A line's profile maximum must be hit by the time its last
            // occupied cell is assigned.
            if (remaining_in_col[static_cast<std::size_t>(x)] == 0 &&
                achieved_col[static_cast<std::size_t>(x)] != front[static_cast<std::size_t>(x)])
                continue;
            if (remaining_in_row[static_cast<std::size_t>(y)] == 0 &&
                achieved_row[static_cast<std::size_t>(y)] != side[static_cast<std::size_t>(y)])
                continue;
            current.set(x, y, h);
            search(i + 1);
            if (result.saturated) break;
        }
        current.set(x, y, 0);
        achieved_col[static_cast<std::size_t>(x)] = prev_col;
        achieved_row[static_cast<std::size_t>(y)] = prev_row;
        ++remaining_in_col[static_cast<std::size_t>(x)];
        ++remaining_in_row[static_cast<std::size_t>(y)];
    }
};

}  // namespace

EnumerationResult enumerate_consistent(const OrthoViews& views, int max_height, int limit) {
    if (limit < 1) throw std::invalid_argument("enumerate_consistent: limit must be >= 1");
    const int W = views.width;
    const int L = views.depth;
    if (W <= 0 || L <= 0 ||
        views.front.size() != static_cast<std::size_t>(W) ||
        views.side.size() != static_cast<std::size_t>(L) ||
        views.top.size() != static_cast<std::size_t>(W) * static_cast<std::size_t>(L))
        throw std::invalid_argument("enumerate_consistent: view shape mismatch");

    SearchState st;
    st.width = W;
    st.depth = L;
    st.limit = limit;
    st.front.assign(views.front.begin(), views.front.end());
    st.side.assign(views.side.begin(), views.side.end());
    for (int& f : st.front) f = std::min(f, max_height);
    for (int& s : st.side) s = std::min(s, max_height);
    st.remaining_in_col.assign(static_cast<std::size_t>(W), 0);
    st.remaining_in_row.assign(static_cast<std::size_t>(L), 0);
    st.achieved_col.assign(static_cast<std::size_t>(W), 0);
    st.achieved_row.assign(static_cast<std::size_t>(L), 0);
    st.current = HeightMap(W, L);

    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < L; ++y) {
            if (!views.top_at(x, y)) continue;
            st.cells.emplace_back(x, y);
            ++st.remaining_in_col[static_cast<std::size_t>(x)];
            ++st.remaining_in_row[static_cast<std::size_t>(y)];
        }
    }
    // A positive profile with no occupied cell in its line (or vice versa)
    // admits no solutions.
    for (int x = 0; x < W; ++x) {
        const bool has = st.remaining_in_col[static_cast<std::size_t>(x)] > 0;
        if (has != (views.front[static_cast<std::size_t>(x)] > 0)) return {};
        if (views.front[static_cast<std::size_t>(x)] > max_height) return {};
    }
    for (int y = 0; y < L; ++y) {
        const bool has = st.remaining_in_row[static_cast<std::size_t>(y)] > 0;
        if (has != (views.side[static_cast<std::size_t>(y)] > 0)) return {};
        if (views.side[static_cast<std::size_t>(y)] > max_height) return {};
    }

    st.search(0);
    return std::move(st.result);
}

ReconstructionResult reconstruct(const OrthoViews& views, int max_height, int limit) {
    const EnumerationResult enumerated = enumerate_consistent(views, max_height, limit);
    ReconstructionResult r;
    r.solution_count = static_cast<int>(enumerated.solutions.size());
    r.count_saturated = enumerated.saturated;
    if (enumerated.solutions.empty()) {
        r.status = ReconstructionStatus::Infeasible;
        return r;
    }
    r.count_min = enumerated.solutions.front().total_blocks();
    r.count_max = r.count_min;
    for (const HeightMap& sol : enumerated.solutions) {
        const int total = sol.total_blocks();
        r.count_min = std::min(r.count_min, total);
        r.count_max = std::max(r.count_max, total);
    }
    if (enumerated.solutions.size() == 1 && !enumerated.saturated) {
        r.status = ReconstructionStatus::Unique;
        r.unique_config = enumerated.solutions.front();
    } else {
        r.status = ReconstructionStatus::Ambiguous;
    }
    return r;
}

SweepReport sweep_uniqueness(int max_cells, int max_height) {
    SweepReport report;
    report.max_cells = max_cells;
    report.max_height = max_height;
    for (int W = 1; W <= max_cells; ++W) {
        for (int L = 1; W * L <= max_cells; ++L) {
            const int cells = W * L;
            std::vector<int> heights(static_cast<std::size_t>(cells), 0);
            while (true) {
                ++report.total_maps;
                HeightMap hm(W, L, heights);
                const bool unique_cond = check_uniqueness(hm).unique_by_condition;
                const EnumerationResult enumerated =
                    enumerate_consistent(project_views(hm), max_height);
                const int n = static_cast<int>(enumerated.solutions.size());
                if (unique_cond) {
                    ++report.condition_true;
                    if (n != 1)
                        report.sufficiency_violations.push_back({hm, n});
                } else {
                    ++report.condition_false;
                    if (n >= 2)
                        ++report.condition_false_ambiguous;
                    else
                        report.necessity_counterexamples.push_back({hm, n});
                }
                // Odometer over per-cell heights.
                int i = 0;
                while (i < cells && heights[static_cast<std::size_t>(i)] == max_height) {
                    heights[static_cast<std::size_t>(i)] = 0;
                    ++i;
                }
                if (i == cells) break;
                ++heights[static_cast<std::size_t>(i)];
            }
        }
    }
    return report;
}

std::string serialize_sweep_report(const SweepReport& r) {
    auto map_json = [](const HeightMap& hm) {
        json rows = json::array();
        for (int x = 0; x < hm.width(); ++x) {
            json row = json::array();
            for (int y = 0; y < hm.depth(); ++y) row.push_back(hm.at(x, y));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    json j;
    j["max_cells"] = r.max_cells;
    j["max_height"] = r.max_height;
    j["total_maps"] = r.total_maps;
    j["condition_true"] = r.condition_true;
    j["condition_false"] = r.condition_false;
    j["condition_false_ambiguous"] = r.condition_false_ambiguous;
    json viol = json::array();
    for (const auto& v : r.sufficiency_violations)
        viol.push_back({{"heights", map_json(v.map)}, {"solutions", v.solution_count}});
    j["sufficiency_violations"] = std::move(viol);
    json cex = json::array();
    for (const auto& c : r.necessity_counterexamples)
        cex.push_back({{"heights", map_json(c.map)}, {"solutions", c.solution_count}});
    j["necessity_counterexamples"] = std::move(cex);
    return j.dump();
}

}  // namespace ortho
