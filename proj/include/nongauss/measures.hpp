#pragma once

#include <optional>
#include <string_view>

#include "nongauss/series.hpp"
#include "nongauss/states.hpp"

namespace nongauss {

enum class Measure { hilbert_schmidt, relative_entropy, fidelity };

std::string_view measure_name(Measure m);

/// Which components of a MeasureTriple to evaluate.
struct MeasureSet {
  bool hs = true;
  bool re = true;
  bool f = true;

  bool contains(Measure m) const;
};

/// The three degrees of non-Gaussianity. Each component carries its
/// certified truncation error; an empty component was either not requested
/// or is not available for the state.
struct MeasureTriple {
  std::optional<Estimate> delta_hs;
  std::optional<Estimate> delta_re;
  std::optional<Estimate> delta_f;

  const std::optional<Estimate>& get(Measure m) const;
};

// Fock-diagonal states against their thermal reference. `ref` must be
// reference_thermal(d).

/// Bures degree 1 - sum sqrt(p_l s_l). Exactly zero for a thermal source.
Estimate delta_f_diag(const PhotonNumberDistribution& d, const ThermalReference& ref);

/// Relative-entropy degree sum p_l ln p_l + S(thermal reference).
Estimate delta_re_diag(const PhotonNumberDistribution& d, const ThermalReference& ref);

/// Hilbert-Schmidt degree through the purity and the generating function
/// evaluated at sigma (closed form for known families, series otherwise).
/// Throws DegenerateError if the purity underflows.
Estimate delta_hs_diag(const PhotonNumberDistribution& d, const ThermalReference& ref);

/// Hilbert-Schmidt degree straight from sum (p_l - s_l)^2 / (2 sum p_l^2).
Estimate delta_hs_raw(const PhotonNumberDistribution& d, const ThermalReference& ref);

/// Closed-form Hilbert-Schmidt degree of the M-photon-added thermal state.
double delta_hs_pats_closed(unsigned m, double nbar);

/// Fock state |M> against the thermal state of mean M.
double delta_f_fock(unsigned m);
double delta_hs_fock(unsigned m);

/// Relative-entropy degree of a pure state as a function of det V.
/// Throws DomainError for delta < 1/4.
double delta_re_pure(double delta);

/// Evaluates one measure, throwing UnsupportedError when the state family
/// does not admit it (delta_hs and delta_f of non-Fock pure states).
Estimate measure(const StateSpec& spec, Measure which, const SeriesControl& ctl = {});

/// Evaluates the requested measures. Closed forms are used for Fock states
/// and for delta_hs of photon-added thermal states, series otherwise.
/// Unavailable components are left empty.
MeasureTriple measure_all(const StateSpec& spec, const SeriesControl& ctl = {},
                          MeasureSet which = {});

}  // namespace nongauss
