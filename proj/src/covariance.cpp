#include "mvc/covariance.hpp"

#include <cmath>

#include "mvc/errors.hpp"

namespace mvc {

CovarianceCoefficients coefficient_matrices(const ConcentrationMatrix& p,
                                            const std::vector<WeightArray>& a,
                                            const MomentModel& model) {
  const int n = p.obs_count();
  const int m_count = p.component_count();
  const int k_count = model.func_count();
  if (static_cast<int>(a.size()) != m_count)
    throw DimensionMismatchError("coefficient_matrices: one weight array per component required");

  Eigen::MatrixXd b(n, k_count);
  for (int k = 0; k < k_count; ++k) {
    const WeightArray& w = a[model.component_of[k]];
    if (w.w.size() != n)
      throw DimensionMismatchError("coefficient_matrices: weight length mismatch");
    b.col(k) = w.w;
  }

  CovarianceCoefficients coef;
  coef.alpha.assign(m_count, std::vector<Eigen::MatrixXd>(m_count));
  coef.beta.assign(m_count, Eigen::MatrixXd());
  for (int r = 0; r < m_count; ++r) {
    coef.beta[r] = b.transpose() * p.P.col(r).asDiagonal() * b / n;
    for (int s = 0; s < m_count; ++s) {
      Eigen::VectorXd prs = p.P.col(r).cwiseProduct(p.P.col(s));
      coef.alpha[r][s] = b.transpose() * prs.asDiagonal() * b / n;
    }
  }
  return coef;
}

MomentEstimates estimate_moments(const std::vector<Eigen::MatrixXd>& basis,
                                 const std::vector<WeightArray>& weights,
                                 const MomentModel& model) {
  const int m_count = static_cast<int>(weights.size());
  const int k_count = model.func_count();
  if (static_cast<int>(basis.size()) != k_count)
    throw DimensionMismatchError("estimate_moments: one basis matrix per moment function required");

  MomentEstimates est;
  est.kind = weights.empty() ? WeightKind::simple : weights.front().kind;

  est.first.assign(m_count, Eigen::VectorXd(model.total_dim()));
  for (int r = 0; r < m_count; ++r) {
    const double n = static_cast<double>(weights[r].w.size());
    for (int k = 0; k < k_count; ++k) {
      est.first[r].segment(model.offset_of(k), model.funcs[k].dim) = basis[k] * weights[r].w / n;
    }
  }

  est.g_hat.resize(model.total_dim());
  for (int k = 0; k < k_count; ++k) {
    const int off = model.offset_of(k);
    const int dim = model.funcs[k].dim;
    est.g_hat.segment(off, dim) = est.first[model.component_of[k]].segment(off, dim);
  }

  est.second.assign(
      m_count, std::vector<std::vector<Eigen::MatrixXd>>(k_count, std::vector<Eigen::MatrixXd>(k_count)));
  for (int m = 0; m < m_count; ++m) {
    const double n = static_cast<double>(weights[m].w.size());
    for (int k = 0; k < k_count; ++k) {
      Eigen::MatrixXd gk_w = basis[k] * weights[m].w.asDiagonal();
      for (int l = k; l < k_count; ++l) {
        est.second[m][k][l] = gk_w * basis[l].transpose() / n;
        if (l != k) est.second[m][l][k] = est.second[m][k][l].transpose();
      }
    }
  }
  return est;
}

SigmaMatrix sigma_matrix(const CovarianceCoefficients& coef, const MomentEstimates& est,
                         const MomentModel& model) {
  const int m_count = static_cast<int>(coef.beta.size());
  const int k_count = model.func_count();
  const int d = model.total_dim();

  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < k_count; ++k) {
    const int ko = model.offset_of(k);
    const int kd = model.funcs[k].dim;
    for (int l = 0; l < k_count; ++l) {
      const int lo = model.offset_of(l);
      const int ld = model.funcs[l].dim;
      Eigen::MatrixXd block = Eigen::MatrixXd::Zero(kd, ld);
      for (int m = 0; m < m_count; ++m) {
        block += coef.beta[m](k, l) * est.second[m][k][l];
      }
      for (int r = 0; r < m_count; ++r) {
        for (int s = 0; s < m_count; ++s) {
          block -= coef.alpha[r][s](k, l) * est.first[r].segment(ko, kd) *
                   est.first[s].segment(lo, ld).transpose();
        }
      }
      sigma.block(ko, lo, kd, ld) = block;
    }
  }

  SigmaMatrix out;
  out.value = 0.5 * (sigma + sigma.transpose());
  for (int i = 0; i < d; ++i) {
    if (out.value(i, i) < 0.0) out.negative_diagonal = true;
  }
  return out;
}

SymmetricFactor SymmetricFactor::compute(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  SymmetricFactor f;
  f.L = Eigen::MatrixXd::Identity(n, n);
  f.d = Eigen::VectorXd::Zero(n);
  f.positive_definite = n > 0;

  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(a(i, i)));
  const double tol = pivot_tol * max_diag;

  for (int j = 0; j < n; ++j) {
    double dj = a(j, j);
    for (int k = 0; k < j; ++k) dj -= f.L(j, k) * f.L(j, k) * f.d(k);
    f.d(j) = dj;
    if (!(dj > tol)) {
      f.positive_definite = false;
      return f;
    }
    for (int i = j + 1; i < n; ++i) {
      double lij = a(i, j);
      for (int k = 0; k < j; ++k) lij -= f.L(i, k) * f.L(j, k) * f.d(k);
      f.L(i, j) = lij / dj;
    }
  }
  return f;
}

Eigen::VectorXd SymmetricFactor::solve(const Eigen::VectorXd& b) const {
  Eigen::VectorXd y = L.triangularView<Eigen::Lower>().solve(b);
  y = y.cwiseQuotient(d);
  return L.transpose().triangularView<Eigen::Upper>().solve(y);
}

TestCovariance test_covariance(const Eigen::MatrixXd& jacobian, const Eigen::MatrixXd& sigma) {
  TestCovariance tc;
  Eigen::MatrixXd d = jacobian * sigma * jacobian.transpose();
  tc.D = 0.5 * (d + d.transpose());
  tc.factor = SymmetricFactor::compute(tc.D);
  return tc;
}

}  // namespace mvc
