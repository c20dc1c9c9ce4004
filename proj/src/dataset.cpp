#include "mvc/dataset.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "mvc/errors.hpp"

namespace mvc {
namespace {

std::string trim(const std::string& s) {
  const std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_cell(const std::string& field, int line_no, int col) {
  double v = 0.0;
  std::size_t pos = 0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw InputFormatError("csv row " + std::to_string(line_no) + ", column " +
                           std::to_string(col + 1) + ": not a number: '" + field + "'");
  }
  if (pos != field.size())
    throw InputFormatError("csv row " + std::to_string(line_no) + ", column " +
                           std::to_string(col + 1) + ": not a number: '" + field + "'");
  if (!std::isfinite(v))
    throw InputFormatError("csv row " + std::to_string(line_no) + ", column " +
                           std::to_string(col + 1) + ": non-finite value");
  return v;
}

}  // namespace

DataSet load_csv(std::istream& in, bool renormalize) {
  std::string line;
  if (!std::getline(in, line)) throw InputFormatError("csv: empty input");
  const std::vector<std::string> header = split_row(line);
  if (header.size() < 2)
    throw InputFormatError("csv: header must name an observation column and at least one "
                           "concentration column");
  const int m_count = static_cast<int>(header.size()) - 1;

  std::vector<double> xs;
  std::vector<double> ps;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> row = split_row(line);
    if (static_cast<int>(row.size()) != m_count + 1)
      throw InputFormatError("csv row " + std::to_string(line_no) + ": expected " +
                             std::to_string(m_count + 1) + " fields, got " +
                             std::to_string(row.size()));
    xs.push_back(parse_cell(row[0], line_no, 0));
    for (int m = 0; m < m_count; ++m) ps.push_back(parse_cell(row[m + 1], line_no, m + 1));
  }
  if (xs.empty()) throw InputFormatError("csv: no data rows");

  const int n = static_cast<int>(xs.size());
  DataSet data;
  data.x = Eigen::Map<Eigen::VectorXd>(xs.data(), n);
  Eigen::MatrixXd p(n, m_count);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m < m_count; ++m) p(j, m) = ps[static_cast<std::size_t>(j) * m_count + m];
  }
  data.p = ConcentrationMatrix::checked(std::move(p), renormalize);
  data.component_names.assign(header.begin() + 1, header.end());
  return data;
}

DataSet load_csv_file(const std::string& path, bool renormalize) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("csv: cannot open '" + path + "'");
  return load_csv(in, renormalize);
}

}  // namespace mvc
