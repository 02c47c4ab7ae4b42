#include "logdecay/io.hpp"

#include <sstream>

namespace logdecay::io {

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConstructionError("cannot open input file: " + path);
    CsvTable table;
    std::string line;
    bool have_header = false;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ss(line);
        std::string tok;
        if (!have_header) {
            while (std::getline(ss, tok, ',')) table.columns.push_back(tok);
            have_header = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, tok, ',')) {
            try {
                row.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ConstructionError("line " + std::to_string(lineno) +
                                        ": bad numeric field '" + tok + "'");
            }
        }
        if (row.size() != table.columns.size())
            throw ConstructionError("line " + std::to_string(lineno) +
                                    ": column count mismatch");
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw ConstructionError("empty CSV: " + path);
    return table;
}

} // namespace logdecay::io
