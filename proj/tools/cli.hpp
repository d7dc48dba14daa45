#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace ewspa::cli {

enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kExpectationMismatch = 2,
    kNotConverged = 3,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct ReproduceRow {
    std::string group;
    std::string quantity;
    nlohmann::ordered_json reference;
    nlohmann::ordered_json computed;
    /// |computed - reference| for numeric rows, null otherwise.
    nlohmann::ordered_json delta;
    double tolerance = 0.0;
    bool pass = false;
};

/// Every reference number the toolkit reproduces. `filter` keeps the rows whose
/// group contains it.
std::vector<ReproduceRow> reproduce_rows(const std::string& filter = {});

nlohmann::ordered_json to_json(const ReproduceRow& row);

}  // namespace ewspa::cli
