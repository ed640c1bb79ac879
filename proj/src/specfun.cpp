#include "nongauss/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nongauss/errors.hpp"

namespace nongauss {

void SeriesControl::validate() const {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw DomainError("series tolerance must be a positive finite number");
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

namespace specfun {
namespace {

std::optional<unsigned long> nonpositive_integer(double v) {
  if (v <= 0.0 && v == std::floor(v) && v > -1e15)
    return static_cast<unsigned long>(-v);
  return std::nullopt;
}

}  // namespace

double pochhammer(double a, unsigned n) {
  double result = 1.0;
  for (unsigned k = 0; k < n; ++k) result *= a + k;
  return result;
}

Estimate gauss_2f1_estimate(double a, double b, double c, double z,
                            const SeriesControl& ctl) {
  ctl.validate();
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(z))
    throw DomainError("2F1 arguments must be finite");

  std::optional<unsigned long> degree;
  for (double p : {a, b}) {
    if (auto d = nonpositive_integer(p)) degree = degree ? std::min(*degree, *d) : *d;
  }
  if (auto cpole = nonpositive_integer(c); cpole && (!degree || *degree > *cpole))
    throw DomainError("2F1 lower parameter c = " + std::to_string(c) +
                      " is a pole of the series");

  if (degree) {
    if (*degree >= ctl.max_terms)
      throw ConvergenceError("terminating 2F1 exceeds max_terms");
    double term = 1.0;
    double sum = 1.0;
    for (unsigned long n = 0; n < *degree; ++n) {
      term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
      sum += term;
    }
    return {sum, 0.0};
  }

  if (!(std::abs(z) < 1.0))
    throw DomainError("2F1 series requires |z| < 1, got z = " + std::to_string(z));

  // Past this index every factor a+n, b+n, c+n is positive, and the ratio
  // t_{n+1}/t_n = z * [(a+n)/(n+1)] * [(b+n)/(c+n)] is a product of two
  // monotone factors, each bounded on [n, inf) by max(value at n, 1).
  const double positive_from = std::max({0.0, -a, -b, -c}) + 1.0;

  double term = 1.0;
  double sum = 1.0;
  for (std::size_t n = 0; n < ctl.max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double ratio_a = (a + dn) / (dn + 1.0);
    const double ratio_b = (b + dn) / (c + dn);
    if (dn >= positive_from && std::abs(term) < ctl.tol) {
      const double q = std::abs(z) * std::max(ratio_a, 1.0) * std::max(ratio_b, 1.0);
      if (q < 1.0) return {sum, std::abs(term) * q / (1.0 - q)};
    }
    term *= ratio_a * ratio_b * z;
    sum += term;
  }
  throw ConvergenceError("2F1 series did not reach tolerance within max_terms");
}

double gauss_2f1(double a, double b, double c, double z, const SeriesControl& ctl) {
  return gauss_2f1_estimate(a, b, c, z, ctl).value;
}

double gauss_2f1_via_transform(double a, double b, double c, double z,
                               const SeriesControl& ctl) {
  if (!(z < 1.0)) throw DomainError("linear transformation requires z < 1");
  return std::pow(1.0 - z, -b) * gauss_2f1(c - a, b, c, z / (z - 1.0), ctl);
}

double legendre_p(unsigned degree, double z) {
  if (!(z >= 1.0))
    throw DomainError("legendre_p is validated for z >= 1 only, got z = " +
                      std::to_string(z));
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = z;
  for (unsigned n = 1; n < degree; ++n) {
    const double next = ((2.0 * n + 1.0) * z * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace specfun
}  // namespace nongauss
