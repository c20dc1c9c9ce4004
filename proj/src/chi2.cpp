#include "mvc/chi2.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvc {
namespace {

// Series expansion: P(a,x) = x^a e^-x / Gamma(a) * sum_k x^k / (a(a+1)...(a+k)).
// Converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) = 1 - P(a,x), modified Lentz method.
// Converges quickly for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double lower_regularized_gamma(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("lower_regularized_gamma: a must be positive");
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi2_cdf(double x, int df) {
  if (df < 1) throw std::domain_error("chi2_cdf: df must be at least 1");
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  if (x <= 0.0) return 0.0;
  return lower_regularized_gamma(0.5 * df, 0.5 * x);
}

double chi2_quantile(double q, int df) {
  if (df < 1) throw std::domain_error("chi2_quantile: df must be at least 1");
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("chi2_quantile: q must lie in (0,1)");
  double lo = 0.0;
  double hi = df + 40.0 * std::sqrt(static_cast<double>(df)) + 100.0;
  while (chi2_cdf(hi, df) < q) hi *= 2.0;
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, df) < q) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mvc
