#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mvc/concentration.hpp"

namespace mvc {

using Sample = Eigen::VectorXd;

// Sort order of a sample together with its tie structure. Computed once and
// shared when several estimators are built from the same observations.
struct SortedSample {
  std::vector<int> order;         // observation indices sorted by value
  std::vector<int> group_offset;  // size distinct+1, offsets into order
  std::vector<double> distinct;   // sorted distinct values

  int distinct_count() const { return static_cast<int>(distinct.size()); }
};

SortedSample sort_sample(const Sample& x);

// Piecewise-constant weighted empirical CDF. The function follows the
// strict-inequality convention F(x) = (1/N) sum_j w_j 1{x_j < x}, so it is 0
// on (-inf, knots[0]] and equals values[i] on (knots[i], knots[i+1]].
// values stores the right-limits; jumps are first differences of values.
struct StepCdf {
  std::vector<double> knots;   // distinct sorted observation values
  std::vector<double> values;  // cumulative mass just right of each knot
  WeightKind kind = WeightKind::simple;
  int component = 0;

  double operator()(double x) const;
  double total_mass() const { return values.empty() ? 0.0 : values.back(); }
  double jump(int i) const { return i == 0 ? values[0] : values[i] - values[i - 1]; }
};

// Raw weighted ECDF. Not monotone in general: negative weights produce
// decreasing steps and values outside [0,1].
StepCdf weighted_ecdf(const Sample& x, const WeightArray& w);
StepCdf weighted_ecdf(const SortedSample& sorted, const WeightArray& w);

// Upward improvement: running supremum over y < x, then clipped at 1.
StepCdf improve_upward(const StepCdf& f);

// Downward improvement: infimum over y >= x, then clipped at 0.
StepCdf improve_downward(const StepCdf& f);

// Two-sided improvement: upward branch while it stays <= 1/2, downward branch
// once it reaches >= 1/2, and 1/2 on the crossing region in between.
StepCdf improve_two_sided(const StepCdf& f);

// Jump weights b with F(x) = (1/N) sum_j b_j 1{x_j < x} exactly at every
// knot. Tied observations share the jump at their common value equally.
// Sets mass_deficit when clipping removed mass (total mass < 1).
WeightArray improved_weights(const Sample& x, const StepCdf& f);
WeightArray improved_weights(const SortedSample& sorted, const StepCdf& f);

// (1/N) sum_j w_j g(x_j) for a vector-valued g given as a matrix of values
// g_cols(:, j) = g(x_j).
Eigen::VectorXd weighted_moment(const Eigen::MatrixXd& g_cols, const WeightArray& w);

// Improved weights for every weight array in a, sharing one sort of x.  Each
// array's ECDF is monotonized two-sided before the jump weights are read off.
std::vector<WeightArray> improved_weight_set(const Sample& x, const std::vector<WeightArray>& a);

}  // namespace mvc
