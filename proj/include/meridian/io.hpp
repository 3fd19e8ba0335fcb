/// @file io.hpp
/// CSV and manifest emission.  Floats are always serialized with 17
/// significant digits so round-tripping is exact; every CSV has one header
/// row and a newline-terminated final line.
#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace meridian {

std::string format_g17(double v);

class CsvWriter {
  public:
    /// Opens the file, writes an optional '#'-prefixed comment line, then the
    /// header row.  Throws std::runtime_error when the file cannot be opened.
    CsvWriter(const std::filesystem::path& file,
              const std::vector<std::string>& header,
              const std::string& comment = "");

    void cell(double v);
    void cell(int v);
    void cell(long long v);
    void cell(const std::string& v);
    void cell(const char* v);
    void endrow();

    template <class... Ts>
    void row(const Ts&... cells_) {
        (cell(cells_), ...);
        endrow();
    }

  private:
    std::ofstream out_;
    std::size_t ncols_;
    std::size_t col_ = 0;
};

/// Writes one JSON-lines record (sorted keys, compact) to dir/manifest.jsonl,
/// creating the directory first.
void write_manifest(const std::filesystem::path& dir, const nlohmann::json& rec);

/// Appends one JSON-lines record to an arbitrary file.
void append_jsonl(const std::filesystem::path& file, const nlohmann::json& rec);

} // namespace meridian
