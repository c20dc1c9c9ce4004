#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mvc/concentration.hpp"
#include "mvc/step_cdf.hpp"

namespace mvc {

// Observations with their concentration rows, as loaded from CSV.  Expected
// layout: a header row naming the columns (conventionally x,p1,...,pM),
// then one numeric row per observation.  Component names are taken from the
// header.
struct DataSet {
  Sample x;
  ConcentrationMatrix p;
  std::vector<std::string> component_names;
};

DataSet load_csv(std::istream& in, bool renormalize = false);
DataSet load_csv_file(const std::string& path, bool renormalize = false);

}  // namespace mvc
