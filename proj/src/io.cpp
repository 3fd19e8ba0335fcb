#include "meridian/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace meridian {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& file,
                     const std::vector<std::string>& header,
                     const std::string& comment)
    : ncols_(header.size()) {
    out_.open(file, std::ios::binary | std::ios::trunc);
    if (!out_) {
        throw std::runtime_error("CsvWriter: cannot open " + file.string());
    }
    if (!comment.empty()) out_ << "# " << comment << "\n";
    for (std::size_t k = 0; k < header.size(); ++k) {
        if (k) out_ << ",";
        out_ << header[k];
    }
    out_ << "\n";
}

void CsvWriter::cell(double v) { cell(format_g17(v)); }
void CsvWriter::cell(int v) { cell(std::to_string(v)); }
void CsvWriter::cell(long long v) { cell(std::to_string(v)); }
void CsvWriter::cell(const char* v) { cell(std::string(v)); }

void CsvWriter::cell(const std::string& v) {
    if (col_ >= ncols_) {
        throw std::logic_error("CsvWriter: row wider than header");
    }
    if (col_) out_ << ",";
    out_ << v;
    ++col_;
}

void CsvWriter::endrow() {
    if (col_ != ncols_) {
        throw std::logic_error("CsvWriter: row narrower than header");
    }
    out_ << "\n";
    col_ = 0;
}

void write_manifest(const std::filesystem::path& dir,
                    const nlohmann::json& rec) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "manifest.jsonl", std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("write_manifest: cannot open manifest in " +
                                 dir.string());
    }
    out << rec.dump() << "\n";
}

void append_jsonl(const std::filesystem::path& file, const nlohmann::json& rec) {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    if (!out) {
        throw std::runtime_error("append_jsonl: cannot open " + file.string());
    }
    out << rec.dump() << "\n";
}

} // namespace meridian
