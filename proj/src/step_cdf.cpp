#include "mvc/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace mvc {

SortedSample sort_sample(const Sample& x) {
  const int n = static_cast<int>(x.size());
  SortedSample s;
  s.order.resize(n);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::sort(s.order.begin(), s.order.end(), [&](int a, int b) { return x(a) < x(b); });
  s.group_offset.push_back(0);
  for (int i = 0; i < n; ++i) {
    const double v = x(s.order[i]);
    if (s.distinct.empty() || v != s.distinct.back()) {
      if (!s.distinct.empty()) s.group_offset.push_back(i);
      s.distinct.push_back(v);
    }
  }
  s.group_offset.push_back(n);
  return s;
}

double StepCdf::operator()(double x) const {
  // Largest knot strictly below x carries the value.
  auto it = std::lower_bound(knots.begin(), knots.end(), x);
  const auto idx = it - knots.begin();
  return idx == 0 ? 0.0 : values[idx - 1];
}

StepCdf weighted_ecdf(const Sample& x, const WeightArray& w) {
  if (x.size() != w.w.size()) {
    throw DimensionMismatchError("sample and weight lengths differ");
  }
  return weighted_ecdf(sort_sample(x), w);
}

StepCdf weighted_ecdf(const SortedSample& sorted, const WeightArray& w) {
  const int n = static_cast<int>(w.w.size());
  if (sorted.order.size() != static_cast<size_t>(n)) {
    throw DimensionMismatchError("sample and weight lengths differ");
  }
  StepCdf f;
  f.kind = w.kind;
  f.component = w.component;
  f.knots = sorted.distinct;
  f.values.resize(f.knots.size());
  double acc = 0.0;
  for (int g = 0; g < sorted.distinct_count(); ++g) {
    for (int i = sorted.group_offset[g]; i < sorted.group_offset[g + 1]; ++i) {
      acc += w.w(sorted.order[i]);
    }
    f.values[g] = acc / n;
  }
  return f;
}

StepCdf improve_upward(const StepCdf& f) {
  StepCdf out = f;
  out.kind = WeightKind::improved_upper;
  double run = 0.0;  // sup over the empty left tail is 0
  for (size_t i = 0; i < f.values.size(); ++i) {
    run = std::max(run, f.values[i]);
    out.values[i] = std::min(1.0, run);
  }
  return out;
}

StepCdf improve_downward(const StepCdf& f) {
  StepCdf out = f;
  out.kind = WeightKind::improved_lower;
  double run = std::numeric_limits<double>::infinity();
  for (size_t i = f.values.size(); i-- > 0;) {
    run = std::min(run, f.values[i]);
    out.values[i] = std::max(0.0, run);
  }
  return out;
}

StepCdf improve_two_sided(const StepCdf& f) {
  const StepCdf up = improve_upward(f);
  const StepCdf down = improve_downward(f);
  StepCdf out = f;
  out.kind = WeightKind::improved_central;
  for (size_t i = 0; i < f.values.size(); ++i) {
    if (up.values[i] <= 0.5) {
      out.values[i] = up.values[i];
    } else if (down.values[i] >= 0.5) {
      out.values[i] = down.values[i];
    } else {
      out.values[i] = 0.5;
    }
  }
  return out;
}

WeightArray improved_weights(const Sample& x, const StepCdf& f) {
  return improved_weights(sort_sample(x), f);
}

WeightArray improved_weights(const SortedSample& sorted, const StepCdf& f) {
  const int n = sorted.group_offset.back();
  if (f.knots.size() != sorted.distinct.size()) {
    throw DimensionMismatchError("CDF knots do not match the sample's distinct values");
  }
  WeightArray b;
  b.w.resize(n);
  b.component = f.component;
  b.kind = f.kind;
  for (int g = 0; g < sorted.distinct_count(); ++g) {
    const int lo = sorted.group_offset[g];
    const int hi = sorted.group_offset[g + 1];
    const double share = static_cast<double>(n) * f.jump(g) / (hi - lo);
    for (int i = lo; i < hi; ++i) b.w(sorted.order[i]) = share;
  }
  b.mass_deficit = f.total_mass() < 1.0 - 1e-12;
  return b;
}

Eigen::VectorXd weighted_moment(const Eigen::MatrixXd& g_cols, const WeightArray& w) {
  if (g_cols.cols() != w.w.size()) {
    throw DimensionMismatchError("moment function values and weights differ in length");
  }
  return g_cols * w.w / static_cast<double>(w.w.size());
}

std::vector<WeightArray> improved_weight_set(const Sample& x, const std::vector<WeightArray>& a) {
  const SortedSample sorted = sort_sample(x);
  std::vector<WeightArray> b;
  b.reserve(a.size());
  for (const WeightArray& w : a) {
    b.push_back(improved_weights(sorted, improve_two_sided(weighted_ecdf(sorted, w))));
  }
  return b;
}

}  // namespace mvc
