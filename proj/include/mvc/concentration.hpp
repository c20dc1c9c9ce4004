#pragma once

#include <Eigen/Dense>

#include "mvc/errors.hpp"

namespace mvc {

// Known mixing probabilities of an M-component mixture: row j holds the
// probabilities that observation j was drawn from each component.
struct ConcentrationMatrix {
  Eigen::MatrixXd P;  // N x M, entries in [0,1], rows sum to 1

  int obs_count() const { return static_cast<int>(P.rows()); }
  int component_count() const { return static_cast<int>(P.cols()); }

  // Validating constructor. Row sums must be 1 within row_sum_tol unless
  // renormalize is set, in which case rows are rescaled on ingestion.
  static ConcentrationMatrix checked(Eigen::MatrixXd p, bool renormalize = false);

  static constexpr double row_sum_tol = 1e-9;
};

// Gram matrix of the concentration design and its inverse.
struct GramMatrix {
  Eigen::MatrixXd gamma;      // (1/N) P^T P, M x M
  Eigen::MatrixXd gamma_inv;  // explicit inverse, kept for reporting
  double rcond = 0.0;         // reciprocal condition estimate (eigenvalue ratio)

  Eigen::LDLT<Eigen::MatrixXd> factor;  // used for all solves

  static constexpr double singular_rcond = 1e-10;
};

enum class WeightKind { simple, improved_upper, improved_lower, improved_central };

// Per-observation weights attached to one mixture component. Simple weights
// are the deterministic minimax ones; improved kinds are data-dependent jump
// weights extracted from a monotonized CDF estimate.
struct WeightArray {
  Eigen::VectorXd w;
  int component = 0;
  WeightKind kind = WeightKind::simple;
  bool mass_deficit = false;  // improved kinds only: clipping removed mass

  double mass() const { return w.sum() / static_cast<double>(w.size()); }
};

// Throws SingularDesignError when the reciprocal condition estimate falls
// below GramMatrix::singular_rcond.
GramMatrix gram_matrix(const ConcentrationMatrix& p);

// w = P Gamma^{-1} e_m. Satisfies <w p^i>_N = 1{i == m} for every i.
WeightArray minimax_weights(const ConcentrationMatrix& p, const GramMatrix& g, int component);

}  // namespace mvc
