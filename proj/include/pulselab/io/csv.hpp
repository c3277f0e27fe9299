#pragma once

#include <string>
#include <vector>

namespace pulselab::io {

/// Full-precision scientific formatting (17 significant digits), locale
/// independent; round-trips doubles exactly.
std::string fmt_sci(double v);

/// Comma-separated table with a mandatory header row and LF line endings.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    const std::string& str();
    void write(const std::string& path);

  private:
    std::size_t columns_;
    std::string buf_;
    bool dirty_ = true;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::string> header_;
};

}  // namespace pulselab::io
