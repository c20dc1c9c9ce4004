#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "mvc/step_cdf.hpp"

namespace mvc {

// A vector-valued moment function g: R -> R^dim.
struct MomentFunction {
  int dim = 1;
  std::function<void(double, Eigen::Ref<Eigen::VectorXd>)> eval;

  Eigen::VectorXd operator()(double x) const {
    Eigen::VectorXd out(dim);
    eval(x, out);
    return out;
  }

  static MomentFunction identity();                               // g(x) = x
  static MomentFunction first_two_powers();                       // g(x) = (x, x^2)
  static MomentFunction cell_indicators(std::vector<double> breakpoints);
};

// The moment functions under test and the component each one attaches to.
struct MomentModel {
  std::vector<MomentFunction> funcs;  // K entries
  std::vector<int> component_of;      // K entries, 0-based component index

  int func_count() const { return static_cast<int>(funcs.size()); }
  int total_dim() const;
  int offset_of(int k) const;  // start of block k in the stacked vector
};

// d_k x N matrix of g_k evaluated at every observation, one per function.
std::vector<Eigen::MatrixXd> evaluate_moment_basis(const MomentModel& model, const Sample& x);

// (1/N) sum_j w_j g(x_j) with the minimax weights of g's component.
Eigen::VectorXd simple_moment(const Sample& x, const WeightArray& w, const MomentFunction& g);

// Same sum with improved jump weights b.
Eigen::VectorXd improved_moment(const Sample& x, const WeightArray& b, const MomentFunction& g);

}  // namespace mvc
