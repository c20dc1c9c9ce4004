#include "mvc/concentration.hpp"

#include <cmath>
#include <string>

namespace mvc {

ConcentrationMatrix ConcentrationMatrix::checked(Eigen::MatrixXd p, bool renormalize) {
  const auto n = p.rows();
  const auto m = p.cols();
  if (m < 1 || n < m) {
    throw DimensionMismatchError("concentration matrix requires N >= M >= 1, got N=" +
                                 std::to_string(n) + " M=" + std::to_string(m));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < m; ++c) {
      const double v = p(j, c);
      if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw InputFormatError("concentration out of [0,1] at row " + std::to_string(j + 1));
      }
      sum += v;
    }
    if (renormalize) {
      if (sum <= 0.0) {
        throw InputFormatError("concentration row " + std::to_string(j + 1) +
                               " sums to zero, cannot renormalize");
      }
      p.row(j) /= sum;
    } else if (std::abs(sum - 1.0) > row_sum_tol) {
      throw InputFormatError("concentration row " + std::to_string(j + 1) + " sums to " +
                             std::to_string(sum) + ", expected 1");
    }
  }
  return ConcentrationMatrix{std::move(p)};
}

GramMatrix gram_matrix(const ConcentrationMatrix& p) {
  const double n = static_cast<double>(p.obs_count());
  GramMatrix g;
  g.gamma = (p.P.transpose() * p.P) / n;
  g.gamma = 0.5 * (g.gamma + g.gamma.transpose().eval());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.gamma);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  g.rcond = (hi > 0.0) ? lo / hi : 0.0;
  if (!(g.rcond >= GramMatrix::singular_rcond)) {
    throw SingularDesignError("concentration design is numerically singular (rcond=" +
                              std::to_string(g.rcond) + ")");
  }
  g.factor = g.gamma.ldlt();
  g.gamma_inv = g.factor.solve(Eigen::MatrixXd::Identity(g.gamma.rows(), g.gamma.cols()));
  return g;
}

WeightArray minimax_weights(const ConcentrationMatrix& p, const GramMatrix& g, int component) {
  const int m_count = p.component_count();
  if (component < 0 || component >= m_count) {
    throw DimensionMismatchError("component index out of range");
  }
  Eigen::VectorXd e = Eigen::VectorXd::Zero(m_count);
  e(component) = 1.0;
  WeightArray a;
  a.w = p.P * g.factor.solve(e);
  a.component = component;
  a.kind = WeightKind::simple;
  return a;
}

}  // namespace mvc
