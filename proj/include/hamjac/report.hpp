#pragma once

#include <string>
#include <vector>

namespace hamjac::report {

inline constexpr const char* kVersion = "0.1.0";

// One named measurement with its tolerance. Informational rows (hard ==
// false) are recorded with a null tolerance and never fail a run.
struct Check {
    std::string name;
    double value = 0.0;
    double tol = 0.0;
    bool pass = true;
    bool hard = true;
};

struct Report {
    std::vector<Check> checks;
    std::string config_digest;

    // pass = |value| <= tol for the hard rows; returns the row just added
    const Check& add(const std::string& name, double value, double tol);
    const Check& add_info(const std::string& name, double value);

    bool all_pass() const;
    std::string to_json() const;  // {"checks":[...],"config_digest":.. ,"version":..}
};

// Shortest-width %.17g rendering used for every number the tool writes, so
// outputs are byte-stable across runs.
std::string format_g17(double v);

void write_text_file(const std::string& path, const std::string& content);

// Column-oriented table renderable as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

std::string table_csv(const Table& t);
std::string table_json(const Table& t);

}  // namespace hamjac::report
