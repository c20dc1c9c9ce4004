#include "mvc/hypotheses.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "mvc/errors.hpp"

namespace mvc {
namespace {

void check_component(int i, int component_count, const char* who) {
  if (i < 0 || i >= component_count)
    throw DimensionMismatchError(std::string(who) + ": component index out of range");
}

Hypothesis linear_hypothesis(MomentModel model, Eigen::MatrixXd l, std::string name) {
  Hypothesis h;
  h.model = std::move(model);
  h.df = static_cast<int>(l.rows());
  h.name = std::move(name);
  h.transform = [l](const Eigen::VectorXd& y) -> Eigen::VectorXd { return l * y; };
  h.jacobian = [l](const Eigen::VectorXd&) -> Eigen::MatrixXd { return l; };
  return h;
}

}  // namespace

Hypothesis mean_homogeneity(int component_count) {
  if (component_count < 2)
    throw DimensionMismatchError("mean_homogeneity: needs at least two components");
  MomentModel model;
  for (int m = 0; m < component_count; ++m) {
    model.funcs.push_back(MomentFunction::identity());
    model.component_of.push_back(m);
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(component_count - 1, component_count);
  for (int t = 1; t < component_count; ++t) {
    l(t - 1, 0) = -1.0;
    l(t - 1, t) = 1.0;
  }
  return linear_hypothesis(std::move(model), std::move(l), "means-all");
}

Hypothesis mean_equality_pair(int i, int k, int component_count) {
  check_component(i, component_count, "mean_equality_pair");
  check_component(k, component_count, "mean_equality_pair");
  if (i == k) throw DimensionMismatchError("mean_equality_pair: components must differ");
  MomentModel model;
  model.funcs = {MomentFunction::identity(), MomentFunction::identity()};
  model.component_of = {i, k};
  Eigen::MatrixXd l(1, 2);
  l << 1.0, -1.0;
  std::ostringstream name;
  name << "means " << i + 1 << " " << k + 1;
  return linear_hypothesis(std::move(model), std::move(l), name.str());
}

Hypothesis mean_zero(int i, int component_count) {
  check_component(i, component_count, "mean_zero");
  MomentModel model;
  model.funcs = {MomentFunction::identity()};
  model.component_of = {i};
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(1, 1);
  std::ostringstream name;
  name << "mean-zero " << i + 1;
  return linear_hypothesis(std::move(model), std::move(l), name.str());
}

Hypothesis variance_homogeneity_all(int component_count) {
  if (component_count < 2)
    throw DimensionMismatchError("variance_homogeneity_all: needs at least two components");
  Hypothesis h;
  for (int m = 0; m < component_count; ++m) {
    h.model.funcs.push_back(MomentFunction::first_two_powers());
    h.model.component_of.push_back(m);
  }
  h.df = component_count - 1;
  h.name = "vars-all";
  const int m_count = component_count;
  h.transform = [m_count](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd t(m_count - 1);
    const double v0 = y(1) - y(0) * y(0);
    for (int m = 1; m < m_count; ++m) t(m - 1) = (y(2 * m + 1) - y(2 * m) * y(2 * m)) - v0;
    return t;
  };
  h.jacobian = [m_count](const Eigen::VectorXd& y) -> Eigen::MatrixXd {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m_count - 1, 2 * m_count);
    for (int m = 1; m < m_count; ++m) {
      j(m - 1, 0) = 2.0 * y(0);
      j(m - 1, 1) = -1.0;
      j(m - 1, 2 * m) = -2.0 * y(2 * m);
      j(m - 1, 2 * m + 1) = 1.0;
    }
    return j;
  };
  return h;
}

Hypothesis variance_equality_pair(int i, int k, int component_count) {
  check_component(i, component_count, "variance_equality_pair");
  check_component(k, component_count, "variance_equality_pair");
  if (i == k) throw DimensionMismatchError("variance_equality_pair: components must differ");
  Hypothesis h;
  h.model.funcs = {MomentFunction::first_two_powers(), MomentFunction::first_two_powers()};
  h.model.component_of = {i, k};
  h.df = 1;
  std::ostringstream name;
  name << "vars " << i + 1 << " " << k + 1;
  h.name = name.str();
  h.transform = [](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd t(1);
    t(0) = (y(1) - y(0) * y(0)) - (y(3) - y(2) * y(2));
    return t;
  };
  h.jacobian = [](const Eigen::VectorXd& y) -> Eigen::MatrixXd {
    Eigen::MatrixXd j(1, 4);
    j << -2.0 * y(0), 1.0, 2.0 * y(2), -1.0;
    return j;
  };
  return h;
}

Hypothesis distribution_homogeneity_grouped(int i, int k, std::vector<double> cells,
                                            int component_count) {
  check_component(i, component_count, "distribution_homogeneity_grouped");
  check_component(k, component_count, "distribution_homogeneity_grouped");
  if (i == k)
    throw DimensionMismatchError("distribution_homogeneity_grouped: components must differ");
  if (cells.size() < 3)
    throw DimensionMismatchError(
        "distribution_homogeneity_grouped: needs at least three breakpoints");
  for (std::size_t t = 0; t < cells.size(); ++t) {
    if (!std::isfinite(cells[t]))
      throw InputFormatError("distribution_homogeneity_grouped: breakpoints must be finite");
    if (t > 0 && !(cells[t] > cells[t - 1]))
      throw InputFormatError("distribution_homogeneity_grouped: breakpoints must increase");
  }
  // One indicator per cell except the last, whose probability is implied, so
  // the constraint dimension is the cell count minus one.
  const int q = static_cast<int>(cells.size()) - 2;
  std::ostringstream name;
  name << "dist " << i + 1 << " " << k + 1 << " cells=";
  for (std::size_t t = 0; t < cells.size(); ++t) {
    if (t > 0) name << ",";
    name << cells[t];
  }
  MomentModel model;
  model.funcs = {MomentFunction::cell_indicators(cells), MomentFunction::cell_indicators(cells)};
  model.component_of = {i, k};
  Eigen::MatrixXd l(q, 2 * q);
  l << Eigen::MatrixXd::Identity(q, q), -Eigen::MatrixXd::Identity(q, q);
  return linear_hypothesis(std::move(model), std::move(l), name.str());
}

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_component_label(const std::string& tok) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw InputFormatError("hypothesis: expected a component label, got '" + tok + "'");
  }
  if (pos != tok.size() || value < 1)
    throw InputFormatError("hypothesis: expected a positive component label, got '" + tok + "'");
  return value;
}

std::vector<double> parse_cells(const std::string& tok) {
  const std::string prefix = "cells=";
  if (tok.rfind(prefix, 0) != 0)
    throw InputFormatError("hypothesis: expected cells=..., got '" + tok + "'");
  std::vector<double> cells;
  std::string body = tok.substr(prefix.size());
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw InputFormatError("hypothesis: bad cell breakpoint '" + item + "'");
    }
    if (pos != item.size())
      throw InputFormatError("hypothesis: bad cell breakpoint '" + item + "'");
    cells.push_back(v);
  }
  if (cells.size() < 2)
    throw InputFormatError("hypothesis: cells= needs at least two breakpoints");
  return cells;
}

}  // namespace

HypothesisSpec HypothesisSpec::parse(std::string_view text) {
  const std::vector<std::string> toks = tokenize(text);
  if (toks.empty()) throw InputFormatError("hypothesis: empty specification");

  HypothesisSpec spec;
  const std::string& head = toks.front();
  if (head == "means-all" || head == "vars-all") {
    if (toks.size() != 1)
      throw InputFormatError("hypothesis: '" + head + "' takes no arguments");
    spec.kind = head == "means-all" ? HypothesisKind::means_all : HypothesisKind::vars_all;
    return spec;
  }
  if (head == "mean-zero") {
    if (toks.size() != 2)
      throw InputFormatError("hypothesis: 'mean-zero' takes one component label");
    spec.kind = HypothesisKind::mean_zero;
    spec.i = parse_component_label(toks[1]);
    return spec;
  }
  if (head == "means" || head == "vars") {
    if (toks.size() != 3)
      throw InputFormatError("hypothesis: '" + head + "' takes two component labels");
    spec.kind = head == "means" ? HypothesisKind::means_pair : HypothesisKind::vars_pair;
    spec.i = parse_component_label(toks[1]);
    spec.k = parse_component_label(toks[2]);
    return spec;
  }
  if (head == "dist") {
    if (toks.size() != 4)
      throw InputFormatError("hypothesis: 'dist' takes two component labels and cells=...");
    spec.kind = HypothesisKind::dist_pair;
    spec.i = parse_component_label(toks[1]);
    spec.k = parse_component_label(toks[2]);
    spec.cells = parse_cells(toks[3]);
    return spec;
  }
  throw InputFormatError("hypothesis: unknown kind '" + head + "'");
}

std::string HypothesisSpec::to_string() const {
  std::ostringstream out;
  switch (kind) {
    case HypothesisKind::means_all: out << "means-all"; break;
    case HypothesisKind::vars_all: out << "vars-all"; break;
    case HypothesisKind::mean_zero: out << "mean-zero " << i; break;
    case HypothesisKind::means_pair: out << "means " << i << " " << k; break;
    case HypothesisKind::vars_pair: out << "vars " << i << " " << k; break;
    case HypothesisKind::dist_pair:
      out << "dist " << i << " " << k << " cells=";
      for (std::size_t t = 0; t < cells.size(); ++t) {
        if (t > 0) out << ",";
        out << cells[t];
      }
      break;
  }
  return out.str();
}

Hypothesis make_hypothesis(const HypothesisSpec& spec, int component_count) {
  switch (spec.kind) {
    case HypothesisKind::means_all: return mean_homogeneity(component_count);
    case HypothesisKind::vars_all: return variance_homogeneity_all(component_count);
    case HypothesisKind::mean_zero: return mean_zero(spec.i - 1, component_count);
    case HypothesisKind::means_pair:
      return mean_equality_pair(spec.i - 1, spec.k - 1, component_count);
    case HypothesisKind::vars_pair:
      return variance_equality_pair(spec.i - 1, spec.k - 1, component_count);
    case HypothesisKind::dist_pair:
      return distribution_homogeneity_grouped(spec.i - 1, spec.k - 1, spec.cells,
                                              component_count);
  }
  throw InputFormatError("hypothesis: unknown kind");
}

}  // namespace mvc
