#include "nongauss/states.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "compensated_sum.hpp"
#include "nongauss/errors.hpp"
#include "nongauss/specfun.hpp"

namespace nongauss {
namespace {

constexpr double kCustomNormTol = 1e-12;
constexpr double kPureNormTol = 1e-9;

void check_nbar(double nbar) {
  if (!(nbar >= 0.0) || !std::isfinite(nbar))
    throw DomainError("nbar must be finite and >= 0, got " + std::to_string(nbar));
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double thermal_ratio(double nbar) {
  check_nbar(nbar);
  return nbar / (nbar + 1.0);
}

double nbar_from_ratio(double x) {
  if (!(x >= 0.0 && x < 1.0))
    throw DomainError("thermal ratio x must lie in [0, 1), got " + std::to_string(x));
  return x / (1.0 - x);
}

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probs,
                                                   double next_prob, double tail_ratio,
                                                   StateSpec source)
    : probs_(std::move(probs)),
      next_prob_(next_prob),
      tail_ratio_(tail_ratio),
      source_(std::move(source)) {
  detail::CompensatedSum total;
  for (double p : probs_) total += p;
  tail_mass_ = std::max(0.0, 1.0 - total.value());
}

double PhotonNumberDistribution::tail_bound() const {
  if (next_prob_ == 0.0) return 0.0;
  return next_prob_ / (1.0 - tail_ratio_);
}

ThermalReference::ThermalReference(double mean_n) : mean_n_(mean_n) {
  if (!(mean_n >= 0.0) || !std::isfinite(mean_n))
    throw DomainError("reference mean occupancy must be finite and >= 0");
  sigma_ = mean_n / (mean_n + 1.0);
}

double ThermalReference::prob(std::size_t l) const {
  return std::pow(sigma_, static_cast<double>(l)) / (mean_n_ + 1.0);
}

double ThermalReference::tail_after(std::size_t last) const {
  return std::pow(sigma_, static_cast<double>(last) + 1.0);
}

double ThermalReference::entropy() const {
  if (mean_n_ == 0.0) return 0.0;
  return (mean_n_ + 1.0) * std::log(mean_n_ + 1.0) - mean_n_ * std::log(mean_n_);
}

namespace {

PhotonNumberDistribution build_pats(unsigned m, double nbar, const SeriesControl& ctl,
                                     StateSpec source) {
  ctl.validate();
  const double x = thermal_ratio(nbar);
  const double mean = nbar * (m + 1.0) + m;
  const double sigma = mean / (mean + 1.0);

  std::vector<double> probs(m, 0.0);
  double p = std::pow(1.0 - x, m + 1.0);
  if (p == 0.0)
    throw DegenerateError("photon-added law underflows for M = " + std::to_string(m) +
                          ", nbar = " + std::to_string(nbar));

  // p_{l+1} = p_l * x * (l+1) / (l+1-M); the ratio decreases towards x, so
  // the ratio at the first omitted step bounds all later ones.
  for (std::size_t l = m;; ++l) {
    probs.push_back(p);
    if (probs.size() > ctl.max_terms)
      throw ConvergenceError("photon-number series exceeds max_terms = " +
                             std::to_string(ctl.max_terms));
    const double dl = static_cast<double>(l);
    const double next = p * x * (dl + 1.0) / (dl + 1.0 - m);
    const double q = x * (dl + 2.0) / (dl + 2.0 - m);
    const double weighted_tail =
        next == 0.0 ? 0.0
                    : next * ((dl + 1.0) / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
    const bool p_done = next == 0.0 || (q < 1.0 && weighted_tail < ctl.tol);
    const bool s_done = std::pow(sigma, dl + 1.0) < ctl.tol;
    if (p_done && s_done) return {std::move(probs), next, next == 0.0 ? 0.0 : q, std::move(source)};
    p = next;
  }
}

}  // namespace

PhotonNumberDistribution pats_probabilities(unsigned m, double nbar,
                                            const SeriesControl& ctl) {
  return build_pats(m, nbar, ctl, state::PhotonAdded{m, nbar});
}

PhotonNumberDistribution make_distribution(const StateSpec& spec,
                                           const SeriesControl& ctl) {
  return std::visit(
      Overloaded{
          [&](const state::Thermal& s) { return build_pats(0, s.nbar, ctl, s); },
          [&](const state::Fock& s) { return build_pats(s.m, 0.0, ctl, s); },
          [&](const state::PhotonAdded& s) { return build_pats(s.m, s.nbar, ctl, s); },
          [&](const state::CustomDiagonal& s) {
            if (s.probs.empty()) throw NormalizationError("empty probability list");
            detail::CompensatedSum total;
            for (double p : s.probs) {
              if (!(p >= 0.0) || !std::isfinite(p))
                throw NormalizationError("probabilities must be finite and >= 0");
              total += p;
            }
            if (std::abs(total.value() - 1.0) > kCustomNormTol)
              throw NormalizationError("probabilities sum to " +
                                       std::to_string(total.value()) + ", not 1");
            std::vector<double> probs = s.probs;
            for (double& p : probs) p /= total.value();
            return PhotonNumberDistribution(std::move(probs), 0.0, 0.0, s);
          },
          [&](const state::PureFock&) -> PhotonNumberDistribution {
            throw UnsupportedError("a pure superposition is not Fock-diagonal");
          },
      },
      spec);
}

Estimate mean_occupancy(const PhotonNumberDistribution& d) {
  detail::CompensatedSum sum;
  for (std::size_t l = 0; l < d.size(); ++l) sum += static_cast<double>(l) * d[l];
  double err = 0.0;
  if (d.next_prob() > 0.0) {
    const double first = static_cast<double>(d.size());
    const double q = d.tail_ratio();
    err = d.next_prob() * (first / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
  }
  return {sum.value(), err};
}

ThermalReference reference_thermal(const PhotonNumberDistribution& d) {
  const double mean = std::visit(
      Overloaded{
          [](const state::Thermal& s) { return s.nbar; },
          [](const state::Fock& s) { return static_cast<double>(s.m); },
          [](const state::PhotonAdded& s) { return s.nbar * (s.m + 1.0) + s.m; },
          [&](const auto&) { return mean_occupancy(d).value; },
      },
      d.source());
  return ThermalReference(mean);
}

double generating_function(const StateSpec& spec, double y) {
  auto closed = [y](unsigned m, double nbar) {
    const double x = thermal_ratio(nbar);
    if (!(y >= 0.0 && y <= 1.0))
      throw DomainError("generating function argument must lie in [0, 1]");
    if (!(x * y < 1.0)) throw DomainError("generating function requires x*y < 1");
    return std::pow(y, m) * std::pow((1.0 - x) / (1.0 - x * y), m + 1.0);
  };
  return std::visit(
      Overloaded{
          [&](const state::Thermal& s) { return closed(0, s.nbar); },
          [&](const state::Fock& s) { return closed(s.m, 0.0); },
          [&](const state::PhotonAdded& s) { return closed(s.m, s.nbar); },
          [](const auto&) -> double {
            throw UnsupportedError("no closed generating function for this state");
          },
      },
      spec);
}

Estimate generating_function_series(const PhotonNumberDistribution& d, double y) {
  if (!(y >= 0.0 && y <= 1.0))
    throw DomainError("generating function argument must lie in [0, 1]");
  detail::CompensatedSum sum;
  double power = 1.0;
  for (double p : d.probs()) {
    sum += p * power;
    power *= y;
  }
  return {sum.value(), d.tail_bound() * power};
}

double purity_closed(unsigned m, double nbar) {
  const double x = thermal_ratio(nbar);
  const double x2 = x * x;
  return std::pow((1.0 - x) / (1.0 + x), m + 1.0) *
         specfun::legendre_p(m, (1.0 + x2) / (1.0 - x2));
}

Estimate purity_series(const PhotonNumberDistribution& d) {
  detail::CompensatedSum sum;
  for (double p : d.probs()) sum += p * p;
  const double tail = d.tail_bound();
  return {sum.value(), tail * tail};
}

Estimate hs_overlap(const PhotonNumberDistribution& d, const ThermalReference& ref) {
  detail::CompensatedSum sum;
  for (std::size_t l = 0; l < d.size(); ++l) sum += d[l] * ref.prob(l);
  return {sum.value(), d.tail_bound() * ref.tail_after(d.size() - 1)};
}

double hs_overlap_closed(unsigned m, double nbar) {
  check_nbar(nbar);
  const double mean = nbar * (m + 1.0) + m;
  return std::pow(mean, m) / std::pow(mean + nbar + 1.0, m + 1.0);
}

CovarianceSummary moments_from_pure(std::span<const std::complex<double>> coeffs) {
  double norm = 0.0;
  for (const auto& c : coeffs) norm += std::norm(c);
  if (!(std::abs(norm - 1.0) <= kPureNormTol))
    throw NormalizationError("pure-state amplitudes have norm^2 " + std::to_string(norm));

  std::complex<double> alpha{};
  std::complex<double> a2{};
  double n = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    const double dl = static_cast<double>(l);
    n += dl * std::norm(coeffs[l]);
    if (l + 1 < coeffs.size())
      alpha += std::sqrt(dl + 1.0) * std::conj(coeffs[l]) * coeffs[l + 1];
    if (l + 2 < coeffs.size())
      a2 += std::sqrt((dl + 1.0) * (dl + 2.0)) * std::conj(coeffs[l]) * coeffs[l + 2];
  }

  // Centered moments give V_xx = n_c + 1/2 + Re a2_c, V_pp = n_c + 1/2 - Re a2_c,
  // V_xp = Im a2_c.
  const double n_c = n - std::norm(alpha);
  const std::complex<double> a2_c = a2 - alpha * alpha;
  const double v_xx = n_c + 0.5 + a2_c.real();
  const double v_pp = n_c + 0.5 - a2_c.real();
  const double v_xp = a2_c.imag();
  return {alpha, n, a2, v_xx * v_pp - v_xp * v_xp};
}

}  // namespace nongauss
