#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace wg4 {

// RFC-4180 writer: mandatory header row, CRLF line endings, quoting only
// when a field contains a comma, quote, or newline.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
        write_row(header);
    }

    void write_row(const std::vector<std::string>& fields) {
        if (fields.size() != columns_)
            throw std::invalid_argument("CsvWriter: expected " + std::to_string(columns_) +
                                        " fields, got " + std::to_string(fields.size()));
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << escape(fields[i]);
        }
        out_ << "\r\n";
    }

    std::string str() const { return out_.str(); }

  private:
    static std::string escape(const std::string& f) {
        if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
        std::string q = "\"";
        for (char c : f) {
            if (c == '"') q += "\"\"";
            else q += c;
        }
        q += '"';
        return q;
    }

    std::size_t columns_;
    std::ostringstream out_;
};

}  // namespace wg4
