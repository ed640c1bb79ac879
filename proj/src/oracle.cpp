#include "nongauss/oracle.hpp"

#include <cmath>

#include "nongauss/states.hpp"

namespace nongauss::oracle {

PatsReference photon_added_reference(unsigned m, double nbar, double tol) {
  using real = long double;
  SeriesControl ctl;
  ctl.tol = tol;
  ctl.max_terms = 10'000'000;
  const std::size_t terms = 2 * pats_probabilities(m, nbar, ctl).size();

  const real nb = nbar;
  const real x = nb / (nb + 1);
  const real mean = nb * (m + 1) + m;
  const real log_x = std::log(x);
  const real log_1mx = std::log1p(-x);
  const real log_mean1 = std::log(mean + 1);
  const real log_sigma = std::log(mean) - log_mean1;
  const real log_mfact = std::lgamma(static_cast<real>(m) + 1);

  real p_sq = 0, dist = 0, rel = 0, fid = 0;
  for (std::size_t l = 0; l < terms; ++l) {
    const real dl = static_cast<real>(l);
    real p = 0, log_p = 0;
    if (l >= m) {
      if (x == 0) {
        p = l == m ? 1 : 0;
      } else {
        log_p = std::lgamma(dl + 1) - log_mfact - std::lgamma(dl - m + 1) +
                (m + 1) * log_1mx + (dl - m) * log_x;
        p = std::exp(log_p);
      }
    }
    real s = 0, log_s = 0;
    if (mean == 0) {
      s = l == 0 ? 1 : 0;
    } else {
      log_s = dl * log_sigma - log_mean1;
      s = std::exp(log_s);
    }
    p_sq += p * p;
    dist += (p - s) * (p - s);
    if (p > 0) rel += p * (x == 0 ? std::log(p) : log_p);
    if (s > 0) rel -= s * log_s;
    fid += std::sqrt(p * s);
  }
  return {static_cast<double>(dist / (2 * p_sq)), static_cast<double>(rel),
          static_cast<double>(1 - fid), terms};
}

}  // namespace nongauss::oracle
