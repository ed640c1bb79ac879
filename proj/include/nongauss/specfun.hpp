#pragma once

#include "nongauss/series.hpp"

namespace nongauss::specfun {

/// Rising factorial (a)_n = a(a+1)...(a+n-1) by iterated product; (a)_0 = 1.
double pochhammer(double a, unsigned n);

/// Gauss hypergeometric series 2F1(a, b; c; z) summed to a certified
/// geometric tail bound, returned in Estimate::err.
///
/// A numerator parameter that is a non-positive integer makes the series a
/// polynomial; it is then summed exactly and |z| < 1 is not required.
/// Otherwise |z| >= 1 raises DomainError. A non-positive integer c is only
/// accepted when the series terminates before (c)_n vanishes.
///
/// Summation stops after term t_n once |t_n| < tol and the supremum q of the
/// remaining term ratios satisfies q < 1; the tail is then at most
/// |t_n| q / (1 - q). Throws ConvergenceError past ctl.max_terms.
Estimate gauss_2f1_estimate(double a, double b, double c, double z,
                            const SeriesControl& ctl = {});

double gauss_2f1(double a, double b, double c, double z,
                 const SeriesControl& ctl = {});

/// Evaluates 2F1(a, b; c; z) through the linear transformation
/// (1 - z)^(-b) 2F1(c - a, b; c; z / (z - 1)). Requires z < 1.
double gauss_2f1_via_transform(double a, double b, double c, double z,
                               const SeriesControl& ctl = {});

/// Legendre polynomial P_degree(z) for z >= 1 by upward three-term
/// recurrence (P_n is the dominant solution there).
double legendre_p(unsigned degree, double z);

}  // namespace nongauss::specfun
