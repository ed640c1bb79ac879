#include "nongauss/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "nongauss/errors.hpp"

namespace nongauss::sweep {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    const auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct Point {
  double param;
  unsigned m;
};

std::vector<double> block_values_nbar(const SweepConfig& cfg) {
  if (cfg.family == Family::fock) return {0.0};
  std::vector<double> v;
  for (double nb : cfg.nbar_values) v.push_back(quantize(nb));
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<unsigned> m_values_sorted(const SweepConfig& cfg) {
  if (cfg.family == Family::thermal) return {0};
  std::vector<unsigned> v = cfg.m_values;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Point> grid_points(const SweepConfig& cfg) {
  std::vector<Point> points;
  if (cfg.param == Param::m) {
    for (double nb : block_values_nbar(cfg))
      for (unsigned m : m_values_sorted(cfg)) points.push_back({nb, m});
    return points;
  }
  std::vector<double> grid;
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(cfg.steps - 1);
    grid.push_back(i + 1 == cfg.steps ? quantize(cfg.to)
                                      : quantize(cfg.from + (cfg.to - cfg.from) * t));
  }
  for (unsigned m : m_values_sorted(cfg))
    for (double g : grid) points.push_back({g, m});
  return points;
}

std::string_view pair_name(const MeasurePair& p) {
  using enum Measure;
  if (p.first == hilbert_schmidt && p.second == relative_entropy) return "hs-re";
  if (p.first == fidelity && p.second == hilbert_schmidt) return "f-hs";
  return "f-re";
}

nlohmann::json estimate_json(const std::optional<Estimate>& e) {
  return e ? nlohmann::json(e->value) : nlohmann::json(nullptr);
}

nlohmann::json error_json(const std::optional<Estimate>& e) {
  return e ? nlohmann::json(e->err) : nlohmann::json(nullptr);
}

}  // namespace

void SweepConfig::validate() const {
  ctl.validate();
  if (!(x_max > 0.0 && x_max < 1.0))
    throw DomainError("x upper bound must lie in (0, 1)");
  if (param == Param::m) {
    if (family == Family::thermal)
      throw DomainError("a thermal sweep has no photon number to vary");
    if (m_values.empty()) throw DomainError("M list is empty");
    if (family != Family::fock) {
      if (nbar_values.empty()) throw DomainError("nbar list is empty");
      for (double nb : nbar_values) {
        if (!(nb >= 0.0) || !std::isfinite(nb))
          throw DomainError("nbar values must be finite and >= 0");
        if (thermal_ratio(nb) > x_max) throw DomainError("nbar value exceeds the x upper bound");
      }
    }
    return;
  }
  if (family == Family::fock)
    throw DomainError("a Fock sweep only varies M (use --param m)");
  if (steps < 2) throw DomainError("grid needs at least 2 steps");
  if (!std::isfinite(from) || !std::isfinite(to) || !(from <= to))
    throw DomainError("grid requires finite from <= to");
  if (!(from >= 0.0)) throw DomainError("grid start must be >= 0");
  const double top = param == Param::x ? to : thermal_ratio(to);
  if (top > x_max)
    throw DomainError("grid end exceeds the x upper bound " + format_csv_number(x_max));
  if (family == Family::photon_added && m_values.empty())
    throw DomainError("M list is empty");
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::photon_added: return "pats";
    case Family::thermal: return "thermal";
    case Family::fock: return "fock";
  }
  return "?";
}

std::string_view to_string(Param p) {
  switch (p) {
    case Param::x: return "x";
    case Param::nbar: return "nbar";
    case Param::m: return "m";
  }
  return "?";
}

Family parse_family(std::string_view s) {
  if (s == "pats") return Family::photon_added;
  if (s == "thermal") return Family::thermal;
  if (s == "fock") return Family::fock;
  throw DomainError("sweeps support --state pats, thermal or fock, got '" + std::string(s) + "'");
}

Param parse_param(std::string_view s) {
  if (s == "x") return Param::x;
  if (s == "nbar") return Param::nbar;
  if (s == "m" || s == "M") return Param::m;
  throw DomainError("unknown sweep parameter '" + std::string(s) + "'");
}

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw DomainError("unknown output format '" + std::string(s) + "'");
}

Measure parse_measure(std::string_view s) {
  s = trim(s);
  if (s == "hs") return Measure::hilbert_schmidt;
  if (s == "re") return Measure::relative_entropy;
  if (s == "fid" || s == "f") return Measure::fidelity;
  throw DomainError("unknown measure '" + std::string(s) + "'");
}

MeasureSet parse_measure_set(std::string_view s) {
  MeasureSet set{false, false, false};
  for (auto part : split(s, ',')) {
    switch (parse_measure(part)) {
      case Measure::hilbert_schmidt: set.hs = true; break;
      case Measure::relative_entropy: set.re = true; break;
      case Measure::fidelity: set.f = true; break;
    }
  }
  return set;
}

std::vector<MeasurePair> parse_pairs(std::string_view s) {
  std::vector<MeasurePair> pairs;
  if (trim(s).empty()) throw DomainError("pair list is empty");
  using enum Measure;
  for (auto part : split(s, ',')) {
    const auto halves = split(trim(part), ':');
    if (halves.size() != 2) throw DomainError("pairs are written a:b, got '" + std::string(part) + "'");
    const MeasurePair p{parse_measure(halves[0]), parse_measure(halves[1])};
    const bool allowed = p == MeasurePair{hilbert_schmidt, relative_entropy} ||
                         p == MeasurePair{fidelity, hilbert_schmidt} ||
                         p == MeasurePair{fidelity, relative_entropy};
    if (!allowed)
      throw DomainError("pair '" + std::string(part) + "' must be one of hs:re, f:hs, f:re");
    pairs.push_back(p);
  }
  return pairs;
}

MeasureSet measures_for(const std::vector<MeasurePair>& pairs) {
  MeasureSet set{false, false, false};
  for (const auto& [a, b] : pairs) {
    for (Measure m : {a, b}) {
      if (m == Measure::hilbert_schmidt) set.hs = true;
      if (m == Measure::relative_entropy) set.re = true;
      if (m == Measure::fidelity) set.f = true;
    }
  }
  return set;
}

double quantize(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string format_csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

StateSpec point_state(const SweepConfig& cfg, double param, unsigned m) {
  const double nbar = cfg.param == Param::x ? nbar_from_ratio(param) : param;
  switch (cfg.family) {
    case Family::thermal: return state::Thermal{nbar};
    case Family::fock: return state::Fock{m};
    case Family::photon_added: break;
  }
  return state::PhotonAdded{m, nbar};
}

OutputRecord evaluate_point(const SweepConfig& cfg, double param, unsigned m) {
  return {param, m, measure_all(point_state(cfg, param, m), cfg.ctl, cfg.measures)};
}

std::vector<OutputRecord> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<Point> points = grid_points(cfg);
  std::vector<OutputRecord> rows(points.size());
  std::vector<std::exception_ptr> failures(points.size());

  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = evaluate_point(cfg, points[i].param, points[i].m);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<OutputRecord>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << format_csv_number(r.param) << ',' << r.m;
    for (Measure m : {Measure::hilbert_schmidt, Measure::relative_entropy, Measure::fidelity}) {
      os << ',';
      if (const auto& e = r.values.get(m)) os << format_csv_number(e->value);
    }
    for (Measure m : {Measure::hilbert_schmidt, Measure::relative_entropy, Measure::fidelity}) {
      os << ',';
      if (const auto& e = r.values.get(m)) os << format_csv_number(e->err);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const SweepConfig& cfg,
                const std::vector<OutputRecord>& rows) {
  nlohmann::json doc;
  doc["family"] = to_string(cfg.family);
  doc["param"] = to_string(cfg.param);
  doc["tol"] = cfg.ctl.tol;
  auto& out = doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"param", r.param},
                   {"M", r.m},
                   {"delta_hs", estimate_json(r.values.delta_hs)},
                   {"delta_re", estimate_json(r.values.delta_re)},
                   {"delta_f", estimate_json(r.values.delta_f)},
                   {"err_hs", error_json(r.values.delta_hs)},
                   {"err_re", error_json(r.values.delta_re)},
                   {"err_f", error_json(r.values.delta_f)}});
  }
  os << doc.dump(2) << '\n';
}

void write_mutual_csv(std::ostream& os, const std::vector<MeasurePair>& pairs,
                      const std::vector<OutputRecord>& rows) {
  if (pairs.empty()) throw DomainError("pair list is empty");
  os << kMutualCsvHeader << '\n';
  for (const auto& pair : pairs) {
    for (const auto& r : rows) {
      const auto& a = r.values.get(pair.first);
      const auto& b = r.values.get(pair.second);
      os << pair_name(pair) << ',' << format_csv_number(r.param) << ',' << r.m << ','
         << (a ? format_csv_number(a->value) : "") << ','
         << (b ? format_csv_number(b->value) : "") << '\n';
    }
  }
}

void write_mutual_json(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<MeasurePair>& pairs,
                       const std::vector<OutputRecord>& rows) {
  if (pairs.empty()) throw DomainError("pair list is empty");
  nlohmann::json doc;
  doc["family"] = to_string(cfg.family);
  doc["param"] = to_string(cfg.param);
  doc["tol"] = cfg.ctl.tol;
  auto& blocks = doc["pairs"] = nlohmann::json::array();
  for (const auto& pair : pairs) {
    nlohmann::json block;
    block["pair"] = pair_name(pair);
    auto& points = block["points"] = nlohmann::json::array();
    for (const auto& r : rows)
      points.push_back({{"param", r.param},
                        {"M", r.m},
                        {"measure_a", estimate_json(r.values.get(pair.first))},
                        {"measure_b", estimate_json(r.values.get(pair.second))}});
    blocks.push_back(std::move(block));
  }
  os << doc.dump(2) << '\n';
}

}  // namespace nongauss::sweep
