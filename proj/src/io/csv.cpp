#include "pulselab/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pulselab::io {

std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : columns_(header.size()), header_(std::move(header)) {
    if (columns_ == 0) throw std::invalid_argument("CsvWriter: empty header");
}

void CsvWriter::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column-count mismatch");
    rows_.push_back(std::move(cells));
    dirty_ = true;
}

const std::string& CsvWriter::str() {
    if (dirty_) {
        buf_.clear();
        auto emit = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) buf_ += ',';
                buf_ += cells[i];
            }
            buf_ += '\n';
        };
        emit(header_);
        for (const auto& r : rows_) emit(r);
        dirty_ = false;
    }
    return buf_;
}

void CsvWriter::write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("CsvWriter: cannot open " + path);
    out << str();
}

}  // namespace pulselab::io
