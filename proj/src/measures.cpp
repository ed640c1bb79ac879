#include "nongauss/measures.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "compensated_sum.hpp"
#include "nongauss/errors.hpp"
#include "nongauss/specfun.hpp"

namespace nongauss {
namespace {

constexpr double kPureFockTol = 1e-12;

// Round-off can push an analytically nonnegative degree slightly below zero.
Estimate clamp_nonnegative(double value, double err) {
  if (value < 0.0) return {0.0, std::max(err, -value)};
  return {value, err};
}

bool has_closed_generating_function(const StateSpec& s) {
  return std::holds_alternative<state::Thermal>(s) ||
         std::holds_alternative<state::Fock>(s) ||
         std::holds_alternative<state::PhotonAdded>(s);
}

// Bound on -sum_{k>=0} t_k ln t_k for t_k <= m q^k with m < 1/e, where
// -t ln t is increasing.
double entropy_tail_bound(double m, double q) {
  if (m == 0.0) return 0.0;
  if (!(m < std::exp(-1.0)) || !(q < 1.0)) return std::numeric_limits<double>::infinity();
  const double one_minus_q = 1.0 - q;
  double bound = m * -std::log(m) / one_minus_q;
  if (q > 0.0) bound += m * q * -std::log(q) / (one_minus_q * one_minus_q);
  return bound;
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::hilbert_schmidt: return "hs";
    case Measure::relative_entropy: return "re";
    case Measure::fidelity: return "fid";
  }
  return "?";
}

bool MeasureSet::contains(Measure m) const {
  switch (m) {
    case Measure::hilbert_schmidt: return hs;
    case Measure::relative_entropy: return re;
    case Measure::fidelity: return f;
  }
  return false;
}

const std::optional<Estimate>& MeasureTriple::get(Measure m) const {
  switch (m) {
    case Measure::hilbert_schmidt: return delta_hs;
    case Measure::relative_entropy: return delta_re;
    case Measure::fidelity: break;
  }
  return delta_f;
}

Estimate delta_f_diag(const PhotonNumberDistribution& d, const ThermalReference& ref) {
  if (std::holds_alternative<state::Thermal>(d.source())) return {0.0, 0.0};
  detail::CompensatedSum overlap;
  for (std::size_t l = 0; l < d.size(); ++l) overlap += std::sqrt(d[l] * ref.prob(l));
  // Cauchy-Schwarz on the omitted terms.
  const double err = std::sqrt(d.tail_bound() * ref.tail_after(d.size() - 1));
  return clamp_nonnegative(1.0 - overlap.value(), err);
}

Estimate delta_re_diag(const PhotonNumberDistribution& d, const ThermalReference& ref) {
  detail::CompensatedSum neg_entropy;
  for (double p : d.probs())
    if (p > 0.0) neg_entropy += p * std::log(p);
  neg_entropy += ref.entropy();
  return clamp_nonnegative(neg_entropy.value(),
                           entropy_tail_bound(d.next_prob(), d.tail_ratio()));
}

Estimate delta_hs_diag(const PhotonNumberDistribution& d, const ThermalReference& ref) {
  const Estimate purity = purity_series(d);
  if (!(purity.value > std::numeric_limits<double>::min()))
    throw DegenerateError("purity underflows; Hilbert-Schmidt degree undefined");

  Estimate gen;
  if (has_closed_generating_function(d.source()))
    gen = {generating_function(d.source(), ref.sigma()), 0.0};
  else
    gen = generating_function_series(d, ref.sigma());

  const double n1 = ref.mean_n() + 1.0;
  const double bracket = ref.purity() - 2.0 * gen.value / n1;
  const double value = 0.5 * (1.0 + bracket / purity.value);
  const double err = 0.5 * std::abs(bracket) * purity.err / (purity.value * purity.value) +
                     gen.err / (n1 * purity.value);
  return clamp_nonnegative(value, err);
}

Estimate delta_hs_raw(const PhotonNumberDistribution& d, const ThermalReference& ref) {
  const Estimate purity = purity_series(d);
  if (!(purity.value > std::numeric_limits<double>::min()))
    throw DegenerateError("purity underflows; Hilbert-Schmidt degree undefined");

  detail::CompensatedSum distance;
  for (std::size_t l = 0; l < d.size(); ++l) {
    const double diff = d[l] - ref.prob(l);
    distance += diff * diff;
  }
  // Omitted reference terms are known exactly: sum_{l>L} s_l^2.
  const double s_tail = ref.tail_after(d.size() - 1);
  const double n1 = ref.mean_n() + 1.0;
  const double sigma2 = ref.sigma() * ref.sigma();
  distance += s_tail * s_tail / (n1 * n1 * (1.0 - sigma2));

  const double p_tail = d.tail_bound();
  const double numerator_err = p_tail * p_tail + 2.0 * p_tail * s_tail;
  const double value = distance.value() / (2.0 * purity.value);
  const double err = numerator_err / (2.0 * purity.value) +
                     value * purity.err / purity.value;
  return clamp_nonnegative(value, err);
}

double delta_hs_pats_closed(unsigned m, double nbar) {
  const double x = thermal_ratio(nbar);
  const double x2 = x * x;
  const double mean = nbar * (m + 1.0) + m;
  const double inverse_purity =
      std::pow((1.0 + x) / (1.0 - x), m + 1.0) /
      specfun::legendre_p(m, (1.0 + x2) / (1.0 - x2));
  const double bracket = 1.0 / (4.0 * mean + 2.0) - hs_overlap_closed(m, nbar);
  return std::max(0.0, 0.5 + inverse_purity * bracket);
}

double delta_f_fock(unsigned m) {
  if (m == 0) return 0.0;
  const double dm = m;
  // M^M / (M+1)^(M+1) = (M/(M+1))^M / (M+1)
  return 1.0 - std::sqrt(std::pow(dm / (dm + 1.0), dm) / (dm + 1.0));
}

double delta_hs_fock(unsigned m) {
  if (m == 0) return 0.0;
  const double dm = m;
  return (dm + 1.0) / (2.0 * dm + 1.0) - std::pow(dm / (dm + 1.0), dm) / (dm + 1.0);
}

double delta_re_pure(double delta) {
  if (!(delta >= 0.25) || !std::isfinite(delta))
    throw DomainError("covariance determinant must be finite and >= 1/4, got " +
                      std::to_string(delta));
  const double root = std::sqrt(delta);
  const double upper = root + 0.5;
  const double lower = root - 0.5;
  const double lower_term = lower > 0.0 ? lower * std::log(lower) : 0.0;
  return std::max(0.0, upper * std::log(upper) - lower_term);
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Index of the only occupied Fock level, if the pure state is a number state.
std::optional<unsigned> single_fock_level(const state::PureFock& s) {
  for (std::size_t l = 0; l < s.coeffs.size(); ++l)
    if (std::norm(s.coeffs[l]) >= 1.0 - kPureFockTol) return static_cast<unsigned>(l);
  return std::nullopt;
}

MeasureTriple measure_pure(const state::PureFock& s, MeasureSet which) {
  MeasureTriple out;
  const CovarianceSummary cov = moments_from_pure(s.coeffs);
  if (which.re) out.delta_re = Estimate{delta_re_pure(cov.delta), 0.0};
  if (auto level = single_fock_level(s)) {
    if (which.hs) out.delta_hs = Estimate{delta_hs_fock(*level), 0.0};
    if (which.f) out.delta_f = Estimate{delta_f_fock(*level), 0.0};
  }
  return out;
}

MeasureTriple measure_diagonal(const StateSpec& spec, const SeriesControl& ctl,
                               MeasureSet which) {
  MeasureTriple out;
  const PhotonNumberDistribution d = make_distribution(spec, ctl);
  const ThermalReference ref = reference_thermal(d);

  if (which.hs) {
    out.delta_hs = std::visit(
        Overloaded{
            [](const state::Thermal& s) { return Estimate{delta_hs_pats_closed(0, s.nbar), 0.0}; },
            [](const state::Fock& s) { return Estimate{delta_hs_fock(s.m), 0.0}; },
            [](const state::PhotonAdded& s) {
              return Estimate{delta_hs_pats_closed(s.m, s.nbar), 0.0};
            },
            [&](const auto&) { return delta_hs_diag(d, ref); },
        },
        spec);
  }
  if (which.re) out.delta_re = delta_re_diag(d, ref);
  if (which.f) {
    if (const auto* fock = std::get_if<state::Fock>(&spec))
      out.delta_f = Estimate{delta_f_fock(fock->m), 0.0};
    else
      out.delta_f = delta_f_diag(d, ref);
  }
  return out;
}

}  // namespace

MeasureTriple measure_all(const StateSpec& spec, const SeriesControl& ctl,
                          MeasureSet which) {
  // Adding no photons leaves the thermal state.
  if (const auto* pats = std::get_if<state::PhotonAdded>(&spec); pats && pats->m == 0)
    return measure_diagonal(state::Thermal{pats->nbar}, ctl, which);
  if (const auto* pure = std::get_if<state::PureFock>(&spec)) return measure_pure(*pure, which);
  return measure_diagonal(spec, ctl, which);
}

Estimate measure(const StateSpec& spec, Measure which, const SeriesControl& ctl) {
  MeasureSet only{false, false, false};
  switch (which) {
    case Measure::hilbert_schmidt: only.hs = true; break;
    case Measure::relative_entropy: only.re = true; break;
    case Measure::fidelity: only.f = true; break;
  }
  const MeasureTriple triple = measure_all(spec, ctl, only);
  const auto& component = triple.get(which);
  if (!component)
    throw UnsupportedError(std::string("measure '") + std::string(measure_name(which)) +
                           "' is not available for a general pure state");
  return *component;
}

}  // namespace nongauss
