#pragma once

#include <vector>

#include <Eigen/Dense>

#include "mvc/concentration.hpp"
#include "mvc/moments.hpp"

namespace mvc {

// Averages of weight products against concentration columns:
//   alpha[r][s](k,l) = <A_k A_l p^r p^s>_N,  beta[m](k,l) = <A_k A_l p^m>_N,
// where A_k is the minimax weight array attached to the component of the k-th
// moment function.  Always built from simple weights.
struct CovarianceCoefficients {
  std::vector<std::vector<Eigen::MatrixXd>> alpha;
  std::vector<Eigen::MatrixXd> beta;
};

CovarianceCoefficients coefficient_matrices(const ConcentrationMatrix& p,
                                            const std::vector<WeightArray>& a,
                                            const MomentModel& model);

// Plug-in moment estimates for one weighting scheme.  first[r] stacks the
// estimates of every moment function under component r; g_hat picks the block
// of first[.] matching each function's attached component.  second[m][k][l]
// holds the d_k x d_l cross-moment estimate of g_k g_l^T under component m.
struct MomentEstimates {
  Eigen::VectorXd g_hat;
  std::vector<Eigen::VectorXd> first;
  std::vector<std::vector<std::vector<Eigen::MatrixXd>>> second;
  WeightKind kind = WeightKind::simple;
};

MomentEstimates estimate_moments(const std::vector<Eigen::MatrixXd>& basis,
                                 const std::vector<WeightArray>& weights,
                                 const MomentModel& model);

// Plug-in asymptotic covariance of sqrt(N) (g_hat - g).  Blocks are assembled
// from the coefficient matrices and moment estimates, then symmetrized.
struct SigmaMatrix {
  Eigen::MatrixXd value;
  bool negative_diagonal = false;
};

SigmaMatrix sigma_matrix(const CovarianceCoefficients& coef, const MomentEstimates& est,
                         const MomentModel& model);

// Unpivoted LDL^T factorization of a symmetric matrix.  positive_definite
// requires every pivot to exceed pivot_tol times the largest diagonal entry
// of the input.  solve() is only meaningful when positive_definite holds.
struct SymmetricFactor {
  Eigen::MatrixXd L;
  Eigen::VectorXd d;
  bool positive_definite = false;

  static constexpr double pivot_tol = 1e-12;

  static SymmetricFactor compute(const Eigen::MatrixXd& a);
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
};

// D = J Sigma J^T, symmetrized, with its factorization.
struct TestCovariance {
  Eigen::MatrixXd D;
  SymmetricFactor factor;
};

TestCovariance test_covariance(const Eigen::MatrixXd& jacobian, const Eigen::MatrixXd& sigma);

}  // namespace mvc
