#include "eipld/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace eipld {

Dataset::Dataset(std::vector<double> values, std::string label) : label_(std::move(label)) {
    if (values.empty()) throw std::invalid_argument("Dataset: needs at least one value");
    for (double v : values) {
        if (!(v > 0.0)) {
            throw std::invalid_argument("Dataset: nonpositive value " + std::to_string(v));
        }
    }
    std::sort(values.begin(), values.end());
    values_ = Eigen::Map<const Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

namespace {

bool parse_double(const std::string& text, double& out) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    out = std::strtod(begin, &end);
    if (end == begin || errno == ERANGE) return false;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    return *end == '\0';
}

}  // namespace

Dataset ingest(const std::string& path_or_builtin) {
    if (path_or_builtin == "builtin:repair-times") return builtin_repair_times();

    std::ifstream in(path_or_builtin);
    if (!in) throw std::runtime_error("ingest: cannot open '" + path_or_builtin + "'");

    std::vector<double> values;
    std::string line;
    long line_no = 0;
    bool saw_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;  // blank line
        double v;
        if (!parse_double(line.substr(first), v)) {
            if (!saw_content && line_no == 1) continue;  // header auto-detect
            throw std::runtime_error("ingest: parse error at line " + std::to_string(line_no) +
                                     " of '" + path_or_builtin + "'");
        }
        saw_content = true;
        if (!std::isfinite(v) || !(v > 0.0)) {
            throw std::runtime_error("ingest: nonpositive or non-finite value " +
                                     std::to_string(v) + " at line " + std::to_string(line_no));
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::runtime_error("ingest: no data in '" + path_or_builtin + "'");
    return Dataset(std::move(values), path_or_builtin);
}

const Dataset& builtin_repair_times() {
    static const Dataset data(
        {0.50, 0.60, 0.60,  0.70, 0.70, 0.70, 0.80, 0.80, 1.00, 1.00,
         1.00, 1.00, 1.10,  1.30, 1.50, 1.50, 1.50, 1.50, 2.00, 2.00,
         2.20, 2.50, 2.70,  3.00, 3.00, 3.30, 4.00, 4.00, 4.50, 4.70,
         5.00, 5.40, 5.40,  7.00, 7.50, 8.80, 9.00, 10.20, 22.00, 24.50},
        "builtin:repair-times");
    return data;
}

}  // namespace eipld
