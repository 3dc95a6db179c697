#include "hamjac/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hamjac/errors.hpp"

namespace hamjac::report {

const Check& Report::add(const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, std::fabs(value) <= tol, true});
    return checks.back();
}

const Check& Report::add_info(const std::string& name, double value) {
    checks.push_back({name, value, 0.0, true, false});
    return checks.back();
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (c.hard && !c.pass) return false;
    return true;
}

std::string Report::to_json() const {
    std::ostringstream os;
    os << "{\"checks\":[";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const Check& c = checks[i];
        os << (i ? "," : "") << "{\"name\":" << nlohmann::json(c.name).dump()
           << ",\"value\":" << format_g17(c.value) << ",\"tol\":"
           << (c.hard ? format_g17(c.tol) : std::string("null"))
           << ",\"pass\":" << (c.pass ? "true" : "false") << "}";
    }
    os << "],\"config_digest\":" << nlohmann::json(config_digest).dump()
       << ",\"version\":\"" << kVersion << "\"}";
    return os.str();
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("output: cannot write file '" + path + "'");
    out << content;
    if (!out) throw ConfigError("output: write failed for '" + path + "'");
}

std::string table_csv(const Table& t) {
    std::ostringstream os;
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_g17(row[c]);
        os << "\n";
    }
    return os.str();
}

std::string table_json(const Table& t) {
    std::ostringstream os;
    os << "{\"columns\":[";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << nlohmann::json(t.columns[c]).dump();
    os << "],\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        os << (r ? "," : "") << "[";
        for (std::size_t c = 0; c < t.rows[r].size(); ++c)
            os << (c ? "," : "") << format_g17(t.rows[r][c]);
        os << "]";
    }
    os << "]}\n";
    return os.str();
}

}  // namespace hamjac::report
