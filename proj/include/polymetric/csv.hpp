#ifndef POLYMETRIC_CSV_HPP
#define POLYMETRIC_CSV_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "polymetric/point.hpp"

namespace polymetric {

/// `value` printed with 17 significant digits (%.17g), which round-trips doubles.
std::string format_real(double value);

/// Header row plus string records; written as UTF-8 with LF line endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    /// Throws ValidationError when the field count differs from the header.
    void add_row(std::vector<std::string> fields);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Column names "<prefix>0", "<prefix>1", ... for a point of `dimension` coordinates.
std::vector<std::string> coordinate_columns(const std::string& prefix, std::size_t dimension);

/// Each coordinate through format_real.
std::vector<std::string> format_point(PointView p);

} // namespace polymetric

#endif
