#include "polymetric/csv.hpp"

#include <fstream>

#include <fmt/format.h>

#include "polymetric/error.hpp"

namespace polymetric {

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> fields)
{
    if (fields.size() != header_.size()) {
        throw ValidationError("csv: row has " + std::to_string(fields.size()) +
                              " fields, header has " + std::to_string(header_.size()));
    }
    rows_.push_back(std::move(fields));
}

std::string CsvTable::str() const
{
    std::string out;
    auto append = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += fields[i];
        }
        out += '\n';
    };
    append(header_);
    for (const auto& row : rows_) {
        append(row);
    }
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << str();
}

std::vector<std::string> coordinate_columns(const std::string& prefix, std::size_t dimension)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < dimension; ++i) {
        names.push_back(prefix + std::to_string(i));
    }
    return names;
}

std::vector<std::string> format_point(PointView p)
{
    std::vector<std::string> out;
    for (double c : p) {
        out.push_back(format_real(c));
    }
    return out;
}

} // namespace polymetric
