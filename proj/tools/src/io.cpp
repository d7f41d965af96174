#include "sos_cli/io.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "sos/error.hpp"

namespace sos::cli {

CsvWriter::CsvWriter(std::ostream& os, const ExperimentConfig& config, std::vector<std::string> columns)
    : os_(os), width_(columns.size()) {
    for (const auto& [k, v] : config.entries()) os_ << "#config: " << k << " = " << v << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) os_ << (i ? "," : "") << columns[i];
    os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
    ++rows_;
}

void CsvWriter::note(const std::string& key, const std::string& value) { os_ << "# " << key << ": " << value << '\n'; }

std::string cell(double v) { return format_double(v); }
std::string cell(long long v) { return std::to_string(v); }

HeightField parse_height_grid(std::istream& in, int bc, Site origin) {
    std::vector<std::vector<int>> rows;
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        std::vector<int> row;
        std::size_t pos = 0;
        int column = 0;
        while (true) {
            ++column;
            const auto comma = line.find(',', pos);
            const std::string item = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
            if (b == std::string::npos) throw ParseError("empty cell", line_no, column);
            const std::string t = item.substr(b, e - b + 1);
            try {
                std::size_t used = 0;
                const long v = std::stol(t, &used);
                if (used != t.size() || v < -1000000 || v > 1000000) throw std::invalid_argument(t);
                row.push_back(static_cast<int>(v));
            } catch (const std::exception&) {
                throw ParseError("not an integer height: '" + t + "'", line_no, column);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("row has " + std::to_string(row.size()) + " cells, expected " +
                                 std::to_string(rows.front().size()),
                             line_no, static_cast<int>(std::min(row.size(), rows.front().size())) + 1);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty height grid", line_no + 1, 1);
    const Box box(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), origin);
    HeightField f(box, bc);
    for (int r = 0; r < box.height; ++r)
        for (int c = 0; c < box.width; ++c) f[{origin.x + c, origin.y + r}] = rows[r][c];
    return f;
}

HeightField read_height_grid(const std::string& path, int bc, Site origin) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open height grid: " + path);
    return parse_height_grid(in, bc, origin);
}

void write_height_grid(std::ostream& os, const HeightField& f) {
    const Box& b = f.box();
    for (int r = 0; r < b.height; ++r) {
        for (int c = 0; c < b.width; ++c) os << (c ? "," : "") << f[{b.origin.x + c, b.origin.y + r}];
        os << '\n';
    }
}

nlohmann::json config_json(const ExperimentConfig& c) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : c.entries()) j[k] = v;
    return j;
}

nlohmann::json cylinders_json(const CylinderCollection& c) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& cyl : c) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : cyl.contour.geometry.edges()) {
            const Site u = e.upper();
            edges.push_back({{e.lower.x, e.lower.y}, {u.x, u.y}});
        }
        out.push_back({{"sign", cyl.contour.sign},
                       {"intensity", cyl.intensity},
                       {"length", cyl.contour.geometry.length()},
                       {"interior_size", cyl.contour.geometry.interior().size()},
                       {"edges", edges}});
    }
    return out;
}

nlohmann::json coarse_map_json(const std::vector<CoarseCylinder>& coarse, const CellClassification& cells) {
    const Box& b = cells.box;
    const int L = cells.L;
    const Site first = block_of(b.origin, L);
    const Site last = block_of({b.origin.x + b.width - 1, b.origin.y + b.height - 1}, L);
    std::map<Site, int> traces;
    for (const auto& c : coarse)
        for (Site z : c.trace()) ++traces[z];
    nlohmann::json grid = nlohmann::json::array(), good = nlohmann::json::array();
    for (int y = first.y; y <= last.y; ++y) {
        nlohmann::json row = nlohmann::json::array();
        for (int x = first.x; x <= last.x; ++x) {
            const auto it = traces.find({x, y});
            row.push_back(it == traces.end() ? 0 : it->second);
        }
        grid.push_back(row);
    }
    for (Site y : cells.good_cells) good.push_back({y.x, y.y});
    nlohmann::json cyl = nlohmann::json::array();
    for (const auto& c : coarse) {
        nlohmann::json trace = nlohmann::json::array(), inside = nlohmann::json::array();
        for (Site z : c.iota.trace) trace.push_back({z.x, z.y});
        for (Site z : c.iota.inside) inside.push_back({z.x, z.y});
        cyl.push_back({{"q", c.q}, {"trace", trace}, {"inside", inside}});
    }
    return {{"L", L},
            {"M", cells.M},
            {"first_block", {first.x, first.y}},
            {"trace_count", grid},
            {"good_cells", good},
            {"bad_sites", cells.bad_count},
            {"trace_mass", cells.trace_mass},
            {"low_density", cells.low_density},
            {"coarse_cylinders", cyl}};
}

}  // namespace sos::cli
