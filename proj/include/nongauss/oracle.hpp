#pragma once

#include <cstddef>

namespace nongauss::oracle {

/// Reference values for the M-photon-added thermal state from an
/// independent evaluation route.
struct PatsReference {
  double delta_hs = 0.0;
  double delta_re = 0.0;
  double delta_f = 0.0;
  std::size_t terms = 0;
};

/// Sums the defining series in extended precision over twice the truncation
/// length that `tol` would give the production path. Eigenvalues come from
/// log-gamma binomials rather than the ratio recurrence, reference
/// probabilities from the closed thermal law with the analytic mean, and the
/// relative entropy from the two-sided sum of p ln p - s ln s.
PatsReference photon_added_reference(unsigned m, double nbar, double tol = 1e-15);

}  // namespace nongauss::oracle
