#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "ifalab/stats.hpp"

namespace ifalab {

/// Shortest text that reads back to the same double; "nan" for NaN.
std::string format_double(double value);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

enum class IngestFormat { automatic, plain, dated };

IngestFormat parse_ingest_format(std::string_view text);

/// One return per line, or `date,return` rows; an optional header line is
/// skipped. Bad rows raise a non_numeric error naming every offending line.
ReturnSeries parse_returns(std::string_view text, IngestFormat format = IngestFormat::automatic);
ReturnSeries ingest_returns(const std::filesystem::path& path, IngestFormat format = IngestFormat::automatic);

/// Minimal CSV builder; fields are written verbatim.
class CsvWriter {
public:
    CsvWriter() = default;
    explicit CsvWriter(std::initializer_list<std::string_view> header);

    CsvWriter& field(std::string_view text);
    CsvWriter& field(double value);
    CsvWriter& field(std::int64_t value);
    CsvWriter& field(std::uint64_t value);
    CsvWriter& field(int value) { return field(static_cast<std::int64_t>(value)); }
    CsvWriter& field(unsigned value) { return field(static_cast<std::uint64_t>(value)); }
    CsvWriter& field(bool value) { return field(std::string_view(value ? "true" : "false")); }
    CsvWriter& end_row();

    const std::string& str() const noexcept { return text_; }

private:
    std::string text_;
    bool row_open_ = false;
};

}  // namespace ifalab
