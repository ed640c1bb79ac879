#pragma once

#include <cstddef>

namespace nongauss {

/// Controls truncation of every infinite series in the library.
struct SeriesControl {
  double tol = 1e-12;            ///< absolute tail tolerance
  std::size_t max_terms = 100000;

  /// Throws DomainError unless tol > 0 and max_terms >= 1.
  void validate() const;
};

/// A value together with a certified bound on its absolute truncation error.
struct Estimate {
  double value = 0.0;
  double err = 0.0;
};

}  // namespace nongauss
