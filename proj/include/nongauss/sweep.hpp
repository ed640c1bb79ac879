#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nongauss/measures.hpp"
#include "nongauss/series.hpp"

namespace nongauss::sweep {

enum class Family { photon_added, thermal, fock };
enum class Param { x, nbar, m };
enum class Format { csv, json };

/// A parameter sweep over one state family.
///
/// For Param::x and Param::nbar the real grid is swept once per entry of
/// m_values. For Param::m the m_values are the grid and one block is emitted
/// per entry of nbar_values.
struct SweepConfig {
  Family family = Family::photon_added;
  Param param = Param::x;
  double from = 0.0;
  double to = 0.95;
  std::size_t steps = 100;
  double x_max = 0.99;
  std::vector<unsigned> m_values{1, 3, 5, 10};
  std::vector<double> nbar_values{0.1, 1.0, 2.0, 5.0};
  MeasureSet measures;
  SeriesControl ctl;
  unsigned threads = 0;  ///< 0 picks std::thread::hardware_concurrency()

  /// Throws DomainError describing the first violated constraint.
  void validate() const;
};

/// One grid point. `param` holds x or nbar for real sweeps and the block's
/// nbar for Param::m sweeps.
struct OutputRecord {
  double param = 0.0;
  unsigned m = 0;
  MeasureTriple values;
};

using MeasurePair = std::pair<Measure, Measure>;

std::string_view to_string(Family f);
std::string_view to_string(Param p);
Family parse_family(std::string_view s);
Param parse_param(std::string_view s);
Format parse_format(std::string_view s);
/// Accepts "hs", "re", "fid" (alias "f").
Measure parse_measure(std::string_view s);
/// Comma-separated measure names.
MeasureSet parse_measure_set(std::string_view s);
/// Comma-separated pairs "a:b"; only hs:re, f:hs and f:re are accepted.
std::vector<MeasurePair> parse_pairs(std::string_view s);

/// Rounds to the 12 significant digits used in CSV output, so that parsed
/// grid values reproduce the evaluated ones exactly.
double quantize(double v);

/// The state evaluated for one (param, M) point of a sweep.
StateSpec point_state(const SweepConfig& cfg, double param, unsigned m);

/// Evaluates a single point as the sweep does.
OutputRecord evaluate_point(const SweepConfig& cfg, double param, unsigned m);

/// Evaluates every grid point, possibly concurrently, and returns records in
/// block order with ascending grid values inside each block.
std::vector<OutputRecord> run_sweep(const SweepConfig& cfg);

inline constexpr std::string_view kCsvHeader =
    "param,M,delta_hs,delta_re,delta_f,err_hs,err_re,err_f";
inline constexpr std::string_view kMutualCsvHeader = "pair,param,M,measure_a,measure_b";

/// Fixed 12-significant-digit rendering used by the CSV writers.
std::string format_csv_number(double v);

void write_csv(std::ostream& os, const std::vector<OutputRecord>& rows);
void write_json(std::ostream& os, const SweepConfig& cfg,
                const std::vector<OutputRecord>& rows);

/// Emits one block per pair and M, with (measure_a, measure_b) as the
/// swept parameter runs over its grid. Throws DomainError on an empty list.
void write_mutual_csv(std::ostream& os, const std::vector<MeasurePair>& pairs,
                      const std::vector<OutputRecord>& rows);
void write_mutual_json(std::ostream& os, const SweepConfig& cfg,
                       const std::vector<MeasurePair>& pairs,
                       const std::vector<OutputRecord>& rows);

/// The measures a mutual-dependence run needs.
MeasureSet measures_for(const std::vector<MeasurePair>& pairs);

}  // namespace nongauss::sweep
