#include "ortho/view_description.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ortho {

namespace {

std::vector<VoxelRecord> sorted_records(const BlockScene& scene, View view) {
    std::vector<VoxelRecord> records = visible_voxels(scene, view);
    auto key = [view](const VoxelRecord& r) {
        int depth = 0;
        switch (view) {
            case View::Front: depth = r.y; break;
            case View::Left: depth = r.x; break;
            case View::Top: depth = r.z; break;
        }
        return std::make_tuple(-depth, r.x, r.y, r.z);
    };
    std::stable_sort(records.begin(), records.end(),
                     [&](const VoxelRecord& a, const VoxelRecord& b) { return key(a) < key(b); });
    return records;
}

ScanSequence scan_left_to_right(const ObjectScene& scene) {
    std::vector<const ObjectInstance*> order;
    for (const auto& inst : scene.instances) order.push_back(&inst);
    // Larger x is further left, so left-to-right is descending x.
    std::sort(order.begin(), order.end(), [](const ObjectInstance* a, const ObjectInstance* b) {
        return std::make_tuple(-a->x, a->y, a->id) < std::make_tuple(-b->x, b->y, b->id);
    });
    ScanSequence s;
    s.axis = "from-left-to-right";
    for (const auto* inst : order) s.ids.push_back(inst->id);
    return s;
}

ScanSequence scan_back_to_front(const ObjectScene& scene) {
    std::vector<const ObjectInstance*> order;
    for (const auto& inst : scene.instances) order.push_back(&inst);
    std::sort(order.begin(), order.end(), [](const ObjectInstance* a, const ObjectInstance* b) {
        return std::make_tuple(a->y, -a->x, a->id) < std::make_tuple(b->y, -b->x, b->id);
    });
    ScanSequence s;
    s.axis = "from-back-to-front";
    for (const auto* inst : order) s.ids.push_back(inst->id);
    return s;
}

void write_records(std::ostringstream& out, const std::string& view,
                   const std::vector<VoxelRecord>& records) {
    out << "== " << view << " view ==\n";
    for (const auto& r : records) {
        out << "{x:" << r.x << ",y:" << r.y << ",z:" << r.z
            << ",color:" << color_name(r.color)
            << ",visible:" << (r.visible ? "true" : "false") << "}\n";
    }
}

void write_scans(std::ostringstream& out, const std::string& view,
                 const std::vector<ScanSequence>& scans) {
    out << "== " << view << " view ==\n";
    for (const auto& s : scans) {
        out << s.axis << ":";
        for (std::size_t i = 0; i < s.ids.size(); ++i)
            out << (i == 0 ? " " : ", ") << s.ids[i];
        out << "\n";
    }
}

VoxelRecord parse_record(const std::string& line) {
    if (line.size() < 2 || line.front() != '{' || line.back() != '}')
        throw std::invalid_argument("description: malformed voxel entry: " + line);
    VoxelRecord r;
    std::istringstream fields(line.substr(1, line.size() - 2));
    std::string field;
    std::set<std::string> seen;
    while (std::getline(fields, field, ',')) {
        const std::size_t colon = field.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("description: malformed field: " + field);
        const std::string key = field.substr(0, colon);
        const std::string value = field.substr(colon + 1);
        if (key == "x") r.x = std::stoi(value);
        else if (key == "y") r.y = std::stoi(value);
        else if (key == "z") r.z = std::stoi(value);
        else if (key == "color") {
            const auto c = color_from_name(value);
            if (!c) throw std::invalid_argument("description: unknown color: " + value);
            r.color = *c;
        } else if (key == "visible") {
            if (value != "true" && value != "false")
                throw std::invalid_argument("description: malformed visibility: " + value);
            r.visible = (value == "true");
        } else throw std::invalid_argument("description: unknown field: " + key);
        seen.insert(key);
    }
    if (seen.size() != 5)
        throw std::invalid_argument("description: incomplete voxel entry: " + line);
    return r;
}

ScanSequence parse_scan(const std::string& line) {
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("description: malformed scan line: " + line);
    ScanSequence s;
    s.axis = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    std::istringstream ids(rest);
    std::string id;
    while (std::getline(ids, id, ',')) {
        const std::size_t begin = id.find_first_not_of(' ');
        if (begin == std::string::npos) continue;
        s.ids.push_back(id.substr(begin));
    }
    return s;
}

}  // namespace

ViewDescription describe_block_views(const BlockScene& scene) {
    ViewDescription vd;
    vd.format = DescriptionFormat::BlockList;
    vd.front_blocks = sorted_records(scene, View::Front);
    vd.left_blocks = sorted_records(scene, View::Left);
    vd.top_blocks = sorted_records(scene, View::Top);
    return vd;
}

ViewDescription describe_object_views(const ObjectScene& scene) {
    ViewDescription vd;
    vd.format = DescriptionFormat::OrderedScan;
    vd.front_scans = {scan_left_to_right(scene)};
    vd.left_scans = {scan_back_to_front(scene)};
    vd.top_scans = {scan_left_to_right(scene), scan_back_to_front(scene)};
    for (const auto& inst : scene.instances)
        vd.top_cells[inst.id] = {static_cast<int>(std::floor(inst.x)),
                                 static_cast<int>(std::floor(inst.y))};
    return vd;
}

std::string serialize_description(const ViewDescription& vd) {
    std::ostringstream out;
    if (vd.format == DescriptionFormat::BlockList) {
        out << "format: block-list\n";
        write_records(out, "front", vd.front_blocks);
        write_records(out, "left", vd.left_blocks);
        write_records(out, "top", vd.top_blocks);
    } else {
        out << "format: ordered-scan\n";
        write_scans(out, "front", vd.front_scans);
        write_scans(out, "left", vd.left_scans);
        write_scans(out, "top", vd.top_scans);
        for (const auto& [id, cell] : vd.top_cells)
            out << "cell: " << id << " (" << cell.first << "," << cell.second << ")\n";
    }
    return out.str();
}

ViewDescription parse_description(const std::string& text) {
    ViewDescription vd;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line) && (line.empty() || line.front() == '#')) {
    }
    if (line.rfind("format: ", 0) != 0)
        throw std::invalid_argument("description: missing format line");
    const std::string format = line.substr(8);
    if (format == "block-list") vd.format = DescriptionFormat::BlockList;
    else if (format == "ordered-scan") vd.format = DescriptionFormat::OrderedScan;
    else throw std::invalid_argument("description: unknown format: " + format);

    std::string view;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;  // comment lines
        if (line.rfind("== ", 0) == 0) {
            const std::size_t end = line.find(" view ==");
            if (end == std::string::npos)
                throw std::invalid_argument("description: malformed view header: " + line);
            view = line.substr(3, end - 3);
            continue;
        }
        if (vd.format == DescriptionFormat::BlockList) {
            const VoxelRecord r = parse_record(line);
            if (view == "front") vd.front_blocks.push_back(r);
            else if (view == "left") vd.left_blocks.push_back(r);
            else if (view == "top") vd.top_blocks.push_back(r);
            else throw std::invalid_argument("description: entry outside a view section");
        } else if (line.rfind("cell: ", 0) == 0) {
            const std::string rest = line.substr(6);
            const std::size_t space = rest.find(' ');
            const std::size_t open = rest.find('(', space);
            const std::size_t comma = rest.find(',', open);
            const std::size_t close = rest.find(')', comma);
            if (space == std::string::npos || open == std::string::npos ||
                comma == std::string::npos || close == std::string::npos)
                throw std::invalid_argument("description: malformed cell line: " + line);
            vd.top_cells[rest.substr(0, space)] = {
                std::stoi(rest.substr(open + 1, comma - open - 1)),
                std::stoi(rest.substr(comma + 1, close - comma - 1))};
        } else {
            const ScanSequence s = parse_scan(line);
            if (view == "front") vd.front_scans.push_back(s);
            else if (view == "left") vd.left_scans.push_back(s);
            else if (view == "top") vd.top_scans.push_back(s);
            else throw std::invalid_argument("description: scan outside a view section");
        }
    }
    return vd;
}

}  // namespace ortho
