#ifndef LOGDECAY_IO_HPP
#define LOGDECAY_IO_HPP

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "logdecay/errors.hpp"

namespace logdecay::io {

/// Fixed %.17g formatting: round-trip exact and byte-stable across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with a leading '#' metadata block recording the full configuration.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw ConstructionError("cannot open output file: " + path);
    }

    void comment(const std::string& key, const std::string& value) {
        out_ << "# " << key << " = " << value << "\n";
    }
    void comments(const std::map<std::string, std::string>& kv) {
        for (const auto& [k, v] : kv) comment(k, v);
    }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i)
            out_ << (i ? "," : "") << format_double(vals[i]);
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return (int)i;
        throw ConstructionError("missing CSV column: " + name);
    }
};

/// Read a CSV produced by CsvWriter ('#' comments skipped).
CsvTable read_csv(const std::string& path);

} // namespace logdecay::io

#endif
