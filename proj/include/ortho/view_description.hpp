#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ortho/synthesis.hpp"
#include "ortho/voxel_core.hpp"

namespace ortho {

enum class DescriptionFormat { BlockList, OrderedScan };

// An ordered id sequence with its scan axis.
struct ScanSequence {
    std::string axis;  // "from-left-to-right" or "from-back-to-front"
    std::vector<std::string> ids;

    bool operator==(const ScanSequence& other) const = default;
};

// Structured three-view representation: per-view voxel lists with
// visibility flags (block scenes) or ordered scans (object scenes).
struct ViewDescription {
    DescriptionFormat format = DescriptionFormat::BlockList;

    // block-list payloads
    std::vector<VoxelRecord> front_blocks;
    std::vector<VoxelRecord> left_blocks;
    std::vector<VoxelRecord> top_blocks;

    // ordered-scan payloads
    std::vector<ScanSequence> front_scans;
    std::vector<ScanSequence> left_scans;
    std::vector<ScanSequence> top_scans;
    std::map<std::string, std::pair<int, int>> top_cells;  // id -> quantized grid cell

    bool operator==(const ViewDescription& other) const = default;
};

// Block-list description: every occupied voxel appears in each view with
// its visibility flag; order is view-depth descending, then x, y, z
// ascending.
ViewDescription describe_block_views(const BlockScene& scene);

// Ordered-scan description. Front view scans left-to-right (descending x,
// ties by ascending y then id); left view scans back-to-front (ascending y,
// ties by descending x then id); top view carries both orderings plus a
// unit-grid cell per id.
ViewDescription describe_object_views(const ObjectScene& scene);

// Canonical byte-deterministic text form using {x,y,z,color,visible}
// entries; parse_description inverts it exactly.
std::string serialize_description(const ViewDescription& vd);
ViewDescription parse_description(const std::string& text);

}  // namespace ortho
