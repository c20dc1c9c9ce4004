#include "mvc/moments.hpp"

#include <string>
#include <utility>

namespace mvc {

MomentFunction MomentFunction::identity() {
  return {1, [](double x, Eigen::Ref<Eigen::VectorXd> out) { out(0) = x; }};
}

MomentFunction MomentFunction::first_two_powers() {
  return {2, [](double x, Eigen::Ref<Eigen::VectorXd> out) {
            out(0) = x;
            out(1) = x * x;
          }};
}

MomentFunction MomentFunction::cell_indicators(std::vector<double> breakpoints) {
  const int cells = static_cast<int>(breakpoints.size()) - 1;
  if (cells < 2) {
    throw DimensionMismatchError("cell grouping needs at least 2 cells");
  }
  // Indicators of the first cells-1 half-open intervals [c_t, c_{t+1});
  // the last cell is omitted (its probability is implied).
  return {cells - 1, [bp = std::move(breakpoints), cells](double x, Eigen::Ref<Eigen::VectorXd> out) {
            for (int t = 0; t + 1 < cells; ++t) {
              out(t) = (x >= bp[t] && x < bp[t + 1]) ? 1.0 : 0.0;
            }
          }};
}

int MomentModel::total_dim() const {
  int d = 0;
  for (const auto& f : funcs) d += f.dim;
  return d;
}

int MomentModel::offset_of(int k) const {
  int off = 0;
  for (int i = 0; i < k; ++i) off += funcs[i].dim;
  return off;
}

std::vector<Eigen::MatrixXd> evaluate_moment_basis(const MomentModel& model, const Sample& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::MatrixXd> basis;
  basis.reserve(model.funcs.size());
  for (const auto& g : model.funcs) {
    Eigen::MatrixXd vals(g.dim, n);
    for (int j = 0; j < n; ++j) g.eval(x(j), vals.col(j));
    basis.push_back(std::move(vals));
  }
  return basis;
}

Eigen::VectorXd simple_moment(const Sample& x, const WeightArray& w, const MomentFunction& g) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd vals(g.dim, n);
  for (int j = 0; j < n; ++j) g.eval(x(j), vals.col(j));
  return weighted_moment(vals, w);
}

Eigen::VectorXd improved_moment(const Sample& x, const WeightArray& b, const MomentFunction& g) {
  return simple_moment(x, b, g);
}

}  // namespace mvc
