#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "sos/coarse.hpp"
#include "sos/contour.hpp"
#include "sos_cli/config.hpp"

namespace sos::cli {

// Comma-separated, '.' decimal, '#'-prefixed metadata, one header row.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const ExperimentConfig& config, std::vector<std::string> columns);

    void row(const std::vector<std::string>& cells);
    void note(const std::string& key, const std::string& value);
    std::size_t rows() const { return rows_; }

private:
    std::ostream& os_;
    std::size_t width_;
    std::size_t rows_ = 0;
};

std::string cell(double v);
std::string cell(long long v);
inline std::string cell(int v) { return cell(static_cast<long long>(v)); }
inline std::string cell(std::size_t v) { return cell(static_cast<long long>(v)); }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }

// Integer grid, one box row per line; line r is y = origin.y + r. Blank lines and
// lines starting with '#' are skipped.
HeightField parse_height_grid(std::istream& in, int bc, Site origin = {1, 1});
HeightField read_height_grid(const std::string& path, int bc, Site origin = {1, 1});
void write_height_grid(std::ostream& os, const HeightField& f);

nlohmann::json config_json(const ExperimentConfig& c);
// Edges as pairs of primal sites (the two sites the dual edge separates).
nlohmann::json cylinders_json(const CylinderCollection& c);
nlohmann::json coarse_map_json(const std::vector<CoarseCylinder>& coarse, const CellClassification& cells);

}  // namespace sos::cli
