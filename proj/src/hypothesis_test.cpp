#include "mvc/hypothesis_test.hpp"

#include <cmath>
#include <limits>

#include "mvc/chi2.hpp"
#include "mvc/errors.hpp"
#include "mvc/step_cdf.hpp"

namespace mvc {

const char* to_string(Modification mod) {
  switch (mod) {
    case Modification::ss: return "ss";
    case Modification::si: return "si";
    case Modification::ii: return "ii";
  }
  return "?";
}

std::optional<Modification> modification_from_string(std::string_view text) {
  if (text == "ss") return Modification::ss;
  if (text == "si") return Modification::si;
  if (text == "ii") return Modification::ii;
  return std::nullopt;
}

Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& t,
                                 const Eigen::VectorXd& y0) {
  const Eigen::VectorXd t0 = t(y0);
  const int q = static_cast<int>(t0.size());
  const int d = static_cast<int>(y0.size());
  Eigen::MatrixXd j(q, d);
  Eigen::VectorXd y = y0;
  for (int i = 0; i < d; ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(y0(i)));
    y(i) = y0(i) + h;
    Eigen::VectorXd up = t(y);
    y(i) = y0(i) - h;
    Eigen::VectorXd down = t(y);
    y(i) = y0(i);
    j.col(i) = (up - down) / (2.0 * h);
  }
  return j;
}

namespace {

bool needs_improved(const std::vector<Modification>& mods) {
  for (Modification m : mods) {
    if (m != Modification::ss) return true;
  }
  return false;
}

TestReport evaluate_one(const Hypothesis& h, Modification mod, double alpha, int n,
                        const CovarianceCoefficients& coef, const MomentEstimates& simple,
                        const MomentEstimates* improved) {
  const MomentEstimates& stat_est = (mod == Modification::ii) ? *improved : simple;
  const MomentEstimates& cov_est = (mod == Modification::ss) ? simple : *improved;

  TestReport rep;
  rep.df = h.df;
  rep.alpha = alpha;
  rep.modification = mod;

  rep.T_hat = h.transform(stat_est.g_hat);
  if (static_cast<int>(rep.T_hat.size()) != h.df)
    throw DimensionMismatchError("run_test: transform output size disagrees with df");

  Eigen::MatrixXd j = h.jacobian ? h.jacobian(cov_est.g_hat)
                                 : numeric_jacobian(h.transform, cov_est.g_hat);
  if (j.rows() != h.df || j.cols() != cov_est.g_hat.size())
    throw DimensionMismatchError("run_test: jacobian shape disagrees with hypothesis");

  SigmaMatrix sigma = sigma_matrix(coef, cov_est, h.model);
  TestCovariance tc = test_covariance(j, sigma.value);
  rep.D_hat = tc.D;
  // The whole plug-in covariance must be a valid covariance matrix, not just
  // its projection onto the constraint: a non positive definite Sigma marks
  // the replication as an incorrect covariance estimate even when D happens
  // to be invertible.
  rep.covariance_ok = tc.factor.positive_definite &&
                      SymmetricFactor::compute(sigma.value).positive_definite;

  if (!rep.covariance_ok) {
    rep.statistic = std::numeric_limits<double>::quiet_NaN();
    rep.p_value = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  rep.statistic = n * rep.T_hat.dot(tc.factor.solve(rep.T_hat));
  rep.p_value = 1.0 - chi2_cdf(rep.statistic, h.df);
  rep.decision = rep.p_value < alpha ? Decision::reject : Decision::retain;
  return rep;
}

}  // namespace

std::vector<TestReport> run_test_multi(const Sample& x, const ConcentrationMatrix& p,
                                       const Hypothesis& h, const std::vector<Modification>& mods,
                                       double alpha) {
  const int n = p.obs_count();
  if (static_cast<int>(x.size()) != n)
    throw DimensionMismatchError("run_test: sample and concentration sizes disagree");
  if (h.df < 1) throw DimensionMismatchError("run_test: hypothesis df must be at least 1");
  for (int k = 0; k < h.model.func_count(); ++k) {
    if (h.model.component_of[k] < 0 || h.model.component_of[k] >= p.component_count())
      throw DimensionMismatchError("run_test: moment function attached to unknown component");
  }

  const GramMatrix gram = gram_matrix(p);
  const int m_count = p.component_count();

  std::vector<WeightArray> a;
  a.reserve(m_count);
  for (int m = 0; m < m_count; ++m) a.push_back(minimax_weights(p, gram, m));

  const std::vector<Eigen::MatrixXd> basis = evaluate_moment_basis(h.model, x);
  const CovarianceCoefficients coef = coefficient_matrices(p, a, h.model);
  const MomentEstimates simple = estimate_moments(basis, a, h.model);

  MomentEstimates improved;
  if (needs_improved(mods)) {
    improved = estimate_moments(basis, improved_weight_set(x, a), h.model);
  }

  std::vector<TestReport> reports;
  reports.reserve(mods.size());
  for (Modification mod : mods) {
    reports.push_back(evaluate_one(h, mod, alpha, n, coef, simple,
                                   needs_improved(mods) ? &improved : nullptr));
  }
  return reports;
}

TestReport run_test(const Sample& x, const ConcentrationMatrix& p, const Hypothesis& h,
                    Modification mod, double alpha) {
  return run_test_multi(x, p, h, {mod}, alpha).front();
}

}  // namespace mvc
