#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "mvc/hypothesis_test.hpp"

namespace mvc {

// Entry point behind the mvctest binary.  Exit codes: 0 on success, 2 when
// the concentration design is singular, 3 on malformed input or usage.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// TestReport <-> JSON.  NaN fields and an absent decision serialize to null.
nlohmann::json report_to_json(const TestReport& report, const std::string& hypothesis_name);
TestReport report_from_json(const nlohmann::json& j);

}  // namespace mvc
