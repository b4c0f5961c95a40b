#include "ifalab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ifalab/error.hpp"

namespace ifalab {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return {buffer, end};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto temp = path;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::unreadable_file, "cannot write " + temp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error(ErrorCode::unreadable_file, "write failed for " + temp.string());
    }
    std::filesystem::rename(temp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::unreadable_file, "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

IngestFormat parse_ingest_format(std::string_view text) {
    if (text == "auto") return IngestFormat::automatic;
    if (text == "plain") return IngestFormat::plain;
    if (text == "dated") return IngestFormat::dated;
    throw Error(ErrorCode::usage, "format must be auto, plain or dated");
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_real(std::string_view text, double& value) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end && !text.empty() && std::isfinite(value);
}

}  // namespace

ReturnSeries parse_returns(std::string_view text, IngestFormat format) {
    ReturnSeries series;
    series.source = "ingested";
    std::vector<std::size_t> bad_lines;
    bool seen_content = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty()) continue;

        const auto comma = line.find(',');
        const bool dated = format == IngestFormat::dated ||
                           (format == IngestFormat::automatic && comma != std::string_view::npos);
        std::string_view cell = line;
        if (dated) {
            if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
                if (seen_content) bad_lines.push_back(line_no);
                seen_content = true;
                continue;
            }
            cell = line.substr(comma + 1);
        }
        double value = 0;
        if (parse_real(cell, value)) {
            series.returns.push_back(value);
        } else if (!seen_content) {
            // Header row.
        } else {
            bad_lines.push_back(line_no);
        }
        seen_content = true;
    }
    if (!bad_lines.empty()) {
        std::string lines;
        for (auto n : bad_lines) lines += (lines.empty() ? "" : ",") + std::to_string(n);
        throw Error(ErrorCode::non_numeric, "non-numeric return on line(s) " + lines);
    }
    if (series.returns.empty()) throw Error(ErrorCode::no_valid_rows, "no valid return rows");
    return series;
}

ReturnSeries ingest_returns(const std::filesystem::path& path, IngestFormat format) {
    return parse_returns(read_file(path), format);
}

CsvWriter::CsvWriter(std::initializer_list<std::string_view> header) {
    for (auto h : header) field(h);
    end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
    if (row_open_) text_ += ',';
    text_ += text;
    row_open_ = true;
    return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_double(value))); }
CsvWriter& CsvWriter::field(std::int64_t value) { return field(std::string_view(std::to_string(value))); }
CsvWriter& CsvWriter::field(std::uint64_t value) { return field(std::string_view(std::to_string(value))); }

CsvWriter& CsvWriter::end_row() {
    text_ += '\n';
    row_open_ = false;
    return *this;
}

}  // namespace ifalab
