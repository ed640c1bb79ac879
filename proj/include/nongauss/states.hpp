#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "nongauss/series.hpp"

namespace nongauss {

/// Supported one-mode state families.
namespace state {

struct Thermal {
  double nbar = 0.0;
};

struct Fock {
  unsigned m = 0;
};

/// M-photon-added thermal state built on a thermal state of mean nbar.
struct PhotonAdded {
  unsigned m = 0;
  double nbar = 0.0;
};

/// Explicit Fock-diagonal state given by its photon-number probabilities.
struct CustomDiagonal {
  std::vector<double> probs;
};

/// Pure state given by its Fock-basis amplitudes.
struct PureFock {
  std::vector<std::complex<double>> coeffs;
};

}  // namespace state

using StateSpec = std::variant<state::Thermal, state::Fock, state::PhotonAdded,
                               state::CustomDiagonal, state::PureFock>;

/// Thermal ratio x = nbar / (nbar + 1).
double thermal_ratio(double nbar);
/// Inverse of thermal_ratio; requires 0 <= x < 1.
double nbar_from_ratio(double x);

/// Truncated photon-number law of a Fock-diagonal state.
///
/// Holds p_0..p_L. Beyond L the law is dominated by the geometric majorant
/// p_{L+1+k} <= next_prob() * tail_ratio()^k, which certifies the tail bounds
/// used by every series in the library.
class PhotonNumberDistribution {
 public:
  PhotonNumberDistribution(std::vector<double> probs, double next_prob,
                           double tail_ratio, StateSpec source);

  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t l) const { return probs_[l]; }

  /// 1 - sum(probs), clamped at zero.
  double tail_mass() const { return tail_mass_; }
  /// Certified upper bound on the truncated mass sum_{l>L} p_l.
  double tail_bound() const;
  double next_prob() const { return next_prob_; }
  double tail_ratio() const { return tail_ratio_; }
  const StateSpec& source() const { return source_; }

 private:
  std::vector<double> probs_;
  double next_prob_;
  double tail_ratio_;
  double tail_mass_;
  StateSpec source_;
};

/// Thermal state matched to a given mean occupancy.
class ThermalReference {
 public:
  explicit ThermalReference(double mean_n);

  double mean_n() const { return mean_n_; }
  double sigma() const { return sigma_; }

  /// s_l = sigma^l / (mean_n + 1), with 0^0 = 1.
  double prob(std::size_t l) const;
  /// sum_{l > last} s_l = sigma^(last + 1), exactly.
  double tail_after(std::size_t last) const;
  double purity() const { return 1.0 / (2.0 * mean_n_ + 1.0); }
  /// von Neumann entropy (N+1) ln(N+1) - N ln N.
  double entropy() const;

 private:
  double mean_n_;
  double sigma_;
};

/// Quadrature covariance data of a pure state; vacuum has V = identity / 2.
struct CovarianceSummary {
  std::complex<double> mean_alpha;
  double mean_n = 0.0;
  std::complex<double> mean_a2;
  double delta = 0.0;  ///< det V
};

/// Photon-number law of the M-photon-added thermal state, truncated at the
/// smallest L >= M where both sum_{l>L} l p_l and sigma^(L+1) are below
/// ctl.tol (sigma belongs to the matching thermal reference).
PhotonNumberDistribution pats_probabilities(unsigned m, double nbar,
                                            const SeriesControl& ctl = {});

/// Builds the distribution of any Fock-diagonal spec. PureFock specs raise
/// UnsupportedError, invalid custom laws raise NormalizationError.
PhotonNumberDistribution make_distribution(const StateSpec& spec,
                                           const SeriesControl& ctl = {});

/// sum l p_l with a certified bound on the truncated part.
Estimate mean_occupancy(const PhotonNumberDistribution& d);

/// Thermal state with the same mean occupancy. Thermal, Fock and
/// photon-added sources use their exact mean; custom laws use the series.
ThermalReference reference_thermal(const PhotonNumberDistribution& d);

/// Closed-form generating function sum p_l y^l for Thermal, Fock and
/// photon-added specs.
double generating_function(const StateSpec& spec, double y);
/// The same generating function summed over a truncated distribution.
Estimate generating_function_series(const PhotonNumberDistribution& d, double y);

/// Purity of the photon-added thermal state through the Legendre form.
double purity_closed(unsigned m, double nbar);
/// sum p_l^2; the tail is bounded by tail_bound()^2.
Estimate purity_series(const PhotonNumberDistribution& d);

/// Hilbert-Schmidt product sum p_l s_l.
Estimate hs_overlap(const PhotonNumberDistribution& d, const ThermalReference& ref);
/// Closed form N^M / (N + nbar + 1)^(M+1) for the photon-added thermal state.
double hs_overlap_closed(unsigned m, double nbar);

/// First and second moments of a pure state from its Fock amplitudes.
/// Throws NormalizationError if the norm differs from 1 by more than 1e-9.
CovarianceSummary moments_from_pure(std::span<const std::complex<double>> coeffs);

}  // namespace nongauss
