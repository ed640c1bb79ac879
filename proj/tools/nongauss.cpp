// Command-line front end: single-state measurement, parameter sweeps,
// mutual-dependence curves and the self-verification suite.

#include <chrono>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nongauss/errors.hpp"
#include "nongauss/measures.hpp"
#include "nongauss/states.hpp"
#include "nongauss/sweep.hpp"
#include "nongauss/verify.hpp"

namespace {

using namespace nongauss;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-empty, comment-stripped lines of a data file.
std::vector<std::string> data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> read_probs(const std::string& path) {
  std::vector<double> probs;
  for (const auto& line : data_lines(path)) {
    std::istringstream is(line);
    double p;
    std::string rest;
    if (!(is >> p) || (is >> rest)) throw UsageError("bad probability line in '" + path + "': " + line);
    probs.push_back(p);
  }
  return probs;
}

std::vector<std::complex<double>> read_coeffs(const std::string& path) {
  std::vector<std::complex<double>> coeffs;
  for (const auto& line : data_lines(path)) {
    std::istringstream is(line);
    double re = 0.0, im = 0.0;
    std::string rest;
    if (!(is >> re)) throw UsageError("bad coefficient line in '" + path + "': " + line);
    if (!(is >> im)) im = 0.0;
    else if (is >> rest) throw UsageError("bad coefficient line in '" + path + "': " + line);
    coeffs.emplace_back(re, im);
  }
  return coeffs;
}

// "1,3,5,10" or ranges such as "0-15".
std::vector<unsigned> parse_m_list(const std::string& s) {
  std::vector<unsigned> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      if (auto dash = item.find('-'); dash != std::string::npos && dash > 0) {
        const unsigned lo = std::stoul(item.substr(0, dash));
        const unsigned hi = std::stoul(item.substr(dash + 1), &used);
        if (used != item.size() - dash - 1 || hi < lo) throw std::invalid_argument(item);
        for (unsigned m = lo; m <= hi; ++m) out.push_back(m);
      } else {
        if (item.find('-') != std::string::npos) throw std::invalid_argument(item);
        out.push_back(static_cast<unsigned>(std::stoul(item, &used)));
        if (used != item.size()) throw std::invalid_argument(item);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad M list entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("M list is empty");
  return out;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("number list is empty");
  return out;
}

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct MeasureOptions {
  std::string state = "pats";
  unsigned m = 0;
  double nbar = 0.0;
  std::string probs_file;
  std::string coeffs_file;
  std::string measures;
  double tol = 1e-12;
  std::size_t max_terms = 100000;
  std::string format = "text";
  std::string out;
};

StateSpec build_state(const MeasureOptions& o) {
  if (o.state == "thermal") return state::Thermal{o.nbar};
  if (o.state == "fock") return state::Fock{o.m};
  if (o.state == "pats") return state::PhotonAdded{o.m, o.nbar};
  if (o.state == "custom") {
    if (o.probs_file.empty()) throw UsageError("--state custom requires --probs <file>");
    return state::CustomDiagonal{read_probs(o.probs_file)};
  }
  if (o.state == "pure") {
    if (o.coeffs_file.empty()) throw UsageError("--state pure requires --coeffs <file>");
    return state::PureFock{read_coeffs(o.coeffs_file)};
  }
  throw UsageError("unknown state '" + o.state + "'");
}

int cmd_measure(const MeasureOptions& o) {
  const StateSpec spec = build_state(o);
  SeriesControl ctl;
  ctl.tol = o.tol;
  ctl.max_terms = o.max_terms;
  const MeasureSet which = o.measures.empty() ? MeasureSet{} : sweep::parse_measure_set(o.measures);
  const MeasureTriple t = measure_all(spec, ctl, which);
  constexpr Measure kAll[] = {Measure::hilbert_schmidt, Measure::relative_entropy, Measure::fidelity};
  if (!o.measures.empty())
    for (Measure k : kAll)
      if (which.contains(k) && !t.get(k))
        throw UnsupportedError(std::string("measure '") + std::string(measure_name(k)) +
                               "' is not available for a general pure state");

  Output out(o.out);
  std::ostream& os = out.stream();
  if (o.format == "text") {
    for (Measure k : kAll) {
      if (!which.contains(k)) continue;
      os << measure_name(k) << '=';
      if (const auto& e = t.get(k))
        os << sweep::format_csv_number(e->value) << " err=" << sweep::format_csv_number(e->err);
      else
        os << "unsupported";
      os << '\n';
    }
  } else if (o.format == "csv") {
    os << "delta_hs,delta_re,delta_f,err_hs,err_re,err_f\n";
    for (Measure k : kAll) {
      if (k != Measure::hilbert_schmidt) os << ',';
      if (const auto& e = t.get(k)) os << sweep::format_csv_number(e->value);
    }
    for (Measure k : kAll) {
      os << ',';
      if (const auto& e = t.get(k)) os << sweep::format_csv_number(e->err);
    }
    os << '\n';
  } else if (o.format == "json") {
    nlohmann::json doc;
    doc["state"] = o.state;
    for (Measure k : kAll) {
      const std::string name(measure_name(k) == "fid" ? "f" : measure_name(k));
      const auto& e = t.get(k);
      doc["delta_" + name] = e ? nlohmann::json(e->value) : nlohmann::json(nullptr);
      doc["err_" + name] = e ? nlohmann::json(e->err) : nlohmann::json(nullptr);
    }
    os << doc.dump(2) << '\n';
  } else {
    throw UsageError("unknown format '" + o.format + "' (text, csv, json)");
  }
  return 0;
}

struct SweepOptions {
  std::string state = "pats";
  std::string param = "x";
  double from = 0.0;
  double to = 0.95;
  std::size_t steps = 100;
  double x_max = 0.99;
  std::string m_list;
  std::string nbar_list;
  std::string measures = "hs,re,fid";
  double tol = 1e-12;
  std::size_t max_terms = 100000;
  std::string format = "csv";
  std::string out;
  unsigned threads = 0;
  std::string pairs = "hs:re,f:hs,f:re";
};

sweep::SweepConfig build_sweep(const SweepOptions& o, bool to_given) {
  sweep::SweepConfig cfg;
  cfg.family = sweep::parse_family(o.state);
  cfg.param = sweep::parse_param(o.param);
  cfg.from = o.from;
  cfg.to = o.to;
  cfg.steps = o.steps;
  cfg.x_max = o.x_max;
  if (cfg.param == sweep::Param::m) {
    cfg.m_values = parse_m_list(o.m_list.empty() ? "0-15" : o.m_list);
  } else if (!o.m_list.empty()) {
    cfg.m_values = parse_m_list(o.m_list);
  }
  if (!o.nbar_list.empty()) cfg.nbar_values = parse_real_list(o.nbar_list);
  if (cfg.param == sweep::Param::nbar && !to_given) cfg.to = 1.0;
  cfg.measures = sweep::parse_measure_set(o.measures);
  cfg.ctl.tol = o.tol;
  cfg.ctl.max_terms = o.max_terms;
  cfg.threads = o.threads;
  return cfg;
}

void add_sweep_flags(CLI::App* cmd, SweepOptions& o) {
  cmd->add_option("--state", o.state, "state family: pats, thermal or fock");
  cmd->add_option("--param", o.param, "swept parameter: x, nbar or m");
  cmd->add_option("--from", o.from, "grid start");
  cmd->add_option("--to", o.to, "grid end");
  cmd->add_option("--steps", o.steps, "number of grid points (>= 2)");
  cmd->add_option("--x-max", o.x_max, "upper bound on x, must be < 1");
  cmd->add_option("--m-list", o.m_list, "photon numbers, e.g. 1,3,5,10 or 0-15");
  cmd->add_option("--nbar-list", o.nbar_list, "thermal means for --param m blocks");
  cmd->add_option("--tol", o.tol, "series tail tolerance");
  cmd->add_option("--max-terms", o.max_terms, "cap on summed series terms");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

int run(int argc, char** argv) {
  CLI::App app{"Distance-type non-Gaussianity measures for one-mode field states"};
  app.require_subcommand(1);

  MeasureOptions mo;
  auto* measure = app.add_subcommand("measure", "measure a single state");
  measure->add_option("--state", mo.state, "thermal, fock, pats, custom or pure");
  measure->add_option("--m", mo.m, "number of (added) photons");
  measure->add_option("--nbar", mo.nbar, "thermal mean occupancy");
  measure->add_option("--probs", mo.probs_file, "photon-number probabilities, one per line");
  measure->add_option("--coeffs", mo.coeffs_file, "Fock amplitudes 're im', one per line");
  measure->add_option("--measures", mo.measures, "subset of hs,re,fid");
  measure->add_option("--tol", mo.tol, "series tail tolerance");
  measure->add_option("--max-terms", mo.max_terms, "cap on summed series terms");
  measure->add_option("--format", mo.format, "text, csv or json");
  measure->add_option("--out", mo.out, "output path (default stdout)");

  SweepOptions so;
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate the measures on a parameter grid");
  add_sweep_flags(sweep_cmd, so);
  sweep_cmd->add_option("--measures", so.measures, "subset of hs,re,fid");

  SweepOptions mu;
  mu.to = 0.99;
  auto* mutual = app.add_subcommand("mutual", "parametric curves of one measure against another");
  add_sweep_flags(mutual, mu);
  mutual->add_option("--pairs", mu.pairs, "pairs among hs:re, f:hs, f:re");

  double verify_tol = 1e-12;
  std::string verify_grid = "full";
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant and oracle suite");
  verify_cmd->add_option("--tol", verify_tol, "series tail tolerance under test");
  verify_cmd->add_option("--grid", verify_grid, "small or full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*measure) return cmd_measure(mo);

  if (*sweep_cmd) {
    const auto cfg = build_sweep(so, sweep_cmd->count("--to") > 0);
    const auto format = sweep::parse_format(so.format);
    const auto rows = sweep::run_sweep(cfg);
    Output out(so.out);
    if (format == sweep::Format::csv)
      sweep::write_csv(out.stream(), rows);
    else
      sweep::write_json(out.stream(), cfg, rows);
    return 0;
  }

  if (*mutual) {
    auto cfg = build_sweep(mu, mutual->count("--to") > 0);
    const auto pairs = sweep::parse_pairs(mu.pairs);
    cfg.measures = sweep::measures_for(pairs);
    const auto format = sweep::parse_format(mu.format);
    const auto rows = sweep::run_sweep(cfg);
    Output out(mu.out);
    if (format == sweep::Format::csv)
      sweep::write_mutual_csv(out.stream(), pairs, rows);
    else
      sweep::write_mutual_json(out.stream(), cfg, pairs, rows);
    return 0;
  }

  SeriesControl ctl;
  ctl.tol = verify_tol;
  ctl.validate();
  verify::GridSize grid;
  if (verify_grid == "full")
    grid = verify::GridSize::full;
  else if (verify_grid == "small")
    grid = verify::GridSize::small;
  else
    throw UsageError("--grid must be small or full");
  const auto start = std::chrono::steady_clock::now();
  const bool ok = verify::print_report(std::cout, verify::run_all(ctl, grid));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  std::cout << "elapsed " << elapsed.count() << " s\n";
  return ok ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nongauss::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
