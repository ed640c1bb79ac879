#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nongauss/errors.hpp"
#include "nongauss/measures.hpp"
#include "nongauss/sweep.hpp"

using namespace nongauss;
using namespace nongauss::sweep;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string csv_of(const std::vector<OutputRecord>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

constexpr Measure kAll[] = {Measure::hilbert_schmidt, Measure::relative_entropy, Measure::fidelity};

// Documented ceiling on err columns relative to the configured tolerance.
constexpr double kErrFactor = 10.0;

}  // namespace

TEST_CASE("config validation") {
  SweepConfig ok;
  CHECK_NOTHROW(ok.validate());

  auto bad = ok;
  bad.steps = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.to = 0.995;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.x_max = 1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.from = 0.5;
  bad.to = 0.4;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.from = -0.1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.m_values.clear();
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.param = Param::nbar;
  bad.to = 200.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.family = Family::thermal;
  bad.param = Param::m;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.family = Family::fock;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.param = Param::m;
  bad.nbar_values = {-1.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = ok;
  bad.ctl.tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("parsers") {
  CHECK(parse_param("nbar") == Param::nbar);
  CHECK(parse_family("thermal") == Family::thermal);
  CHECK_THROWS_AS(parse_family("custom"), DomainError);
  CHECK_THROWS_AS(parse_format("xml"), DomainError);
  const MeasureSet s = parse_measure_set("hs,fid");
  CHECK(s.hs);
  CHECK_FALSE(s.re);
  CHECK(s.f);
  CHECK_THROWS_AS(parse_measure_set("hs,bogus"), DomainError);
  CHECK(parse_pairs("hs:re,f:re").size() == 2);
  CHECK_THROWS_AS(parse_pairs(""), DomainError);
  CHECK_THROWS_AS(parse_pairs("re:hs"), DomainError);
  CHECK_THROWS_AS(parse_pairs("hs"), DomainError);
  CHECK(quantize(0.95 / 99.0) == std::stod(format_csv_number(0.95 / 99.0)));
}

TEST_CASE("x sweep: ordered grid, decreasing in x") {
  SweepConfig cfg;  // x in [0, 0.95], 100 steps, M = 1, 3, 5, 10
  cfg.m_values = {10, 1, 5, 3};
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 400);
  for (std::size_t b = 0; b < 4; ++b) {
    const unsigned m = std::vector<unsigned>{1, 3, 5, 10}[b];
    CHECK(rows[b * 100].param == 0.0);
    CHECK(rows[b * 100 + 99].param == 0.95);
    for (std::size_t i = 1; i < 100; ++i) {
      const auto& cur = rows[b * 100 + i];
      const auto& prev = rows[b * 100 + i - 1];
      CHECK(cur.m == m);
      CHECK(cur.param > prev.param);
      for (Measure k : kAll) CHECK(cur.values.get(k)->value < prev.values.get(k)->value);
    }
  }
  // Larger M sits higher at every x.
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t b = 1; b < 4; ++b)
      for (Measure k : kAll)
        CHECK(rows[b * 100 + i].values.get(k)->value > rows[(b - 1) * 100 + i].values.get(k)->value);
}

TEST_CASE("M sweep: increasing in M from the origin") {
  SweepConfig cfg;
  cfg.param = Param::m;
  cfg.m_values.clear();
  for (unsigned m = 0; m <= 15; ++m) cfg.m_values.push_back(m);
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 64);
  for (std::size_t b = 0; b < 4; ++b) {
    for (Measure k : kAll) CHECK(rows[b * 16].values.get(k)->value <= 1e-10);
    CHECK(rows[b * 16].values.delta_f->value == 0.0);
    for (std::size_t i = 1; i < 16; ++i)
      for (Measure k : kAll)
        CHECK(rows[b * 16 + i].values.get(k)->value > rows[b * 16 + i - 1].values.get(k)->value);
  }
}

TEST_CASE("two-point sweep at x = 0 matches the Fock closed forms") {
  SweepConfig cfg;
  cfg.from = cfg.to = 0.0;
  cfg.steps = 2;
  cfg.m_values = {1, 4};
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.values.delta_hs->value == doctest::Approx(delta_hs_fock(r.m)).epsilon(1e-12));
    CHECK(r.values.delta_f->value == doctest::Approx(delta_f_fock(r.m)).epsilon(1e-12));
    CHECK(r.values.delta_re->value == doctest::Approx(delta_re_pure((r.m + 0.5) * (r.m + 0.5))).epsilon(1e-12));
  }
}

TEST_CASE("output is independent of the thread count") {
  SweepConfig cfg;
  cfg.to = 0.99;
  cfg.steps = 60;
  cfg.threads = 1;
  const std::string serial = csv_of(run_sweep(cfg));
  cfg.threads = 7;
  CHECK(csv_of(run_sweep(cfg)) == serial);
  CHECK(csv_of(run_sweep(cfg)) == serial);
}

TEST_CASE("CSV rows recompute bit-identically") {
  for (Param p : {Param::x, Param::nbar, Param::m}) {
    SweepConfig cfg;
    cfg.param = p;
    cfg.steps = 37;
    if (p == Param::nbar) cfg.to = 3.7;
    if (p == Param::m) cfg.m_values = {0, 2, 7};
    const auto lines = lines_of(csv_of(run_sweep(cfg)));
    REQUIRE(lines.size() > 2);
    CHECK(lines[0] == kCsvHeader);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto f = fields_of(lines[i]);
      REQUIRE(f.size() == 8);
      const OutputRecord again = evaluate_point(cfg, std::stod(f[0]), std::stoul(f[1]));
      CHECK(csv_of({again}) == std::string(kCsvHeader) + "\n" + lines[i] + "\n");
    }
  }
}

TEST_CASE("emitted values respect bounds and error budget") {
  for (double tol : {1e-8, 1e-12}) {
    SweepConfig cfg;
    cfg.to = 0.99;
    cfg.steps = 50;
    cfg.m_values = {0, 1, 2, 5, 10, 20};
    cfg.ctl.tol = tol;
    for (const auto& r : run_sweep(cfg)) {
      CHECK(r.values.delta_f->value >= 0.0);
      CHECK(r.values.delta_f->value <= 1.0);
      for (Measure k : kAll) {
        CHECK(std::isfinite(r.values.get(k)->value));
        CHECK(r.values.get(k)->err <= kErrFactor * tol);
      }
    }
  }
}

TEST_CASE("measure subsets leave columns empty") {
  SweepConfig cfg;
  cfg.steps = 3;
  cfg.m_values = {1};
  cfg.measures = parse_measure_set("re");
  const auto lines = lines_of(csv_of(run_sweep(cfg)));
  const auto f = fields_of(lines[1]);
  REQUIRE(f.size() == 8);
  CHECK(f[2].empty());
  CHECK_FALSE(f[3].empty());
  CHECK(f[4].empty());
}

TEST_CASE("JSON keeps full precision") {
  SweepConfig cfg;
  cfg.steps = 5;
  cfg.m_values = {3};
  const auto rows = run_sweep(cfg);
  std::ostringstream os;
  write_json(os, cfg, rows);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["param"] == "x");
  REQUIRE(doc["rows"].size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(doc["rows"][i]["param"].get<double>() == rows[i].param);
    CHECK(doc["rows"][i]["delta_hs"].get<double>() == rows[i].values.delta_hs->value);
    CHECK(doc["rows"][i]["delta_re"].get<double>() == rows[i].values.delta_re->value);
    CHECK(doc["rows"][i]["delta_f"].get<double>() == rows[i].values.delta_f->value);
    CHECK(doc["rows"][i]["err_f"].get<double>() == rows[i].values.delta_f->err);
  }
}

TEST_CASE("mutual dependence blocks") {
  SweepConfig cfg;
  cfg.to = 0.99;
  cfg.steps = 40;
  const auto pairs = parse_pairs("hs:re,f:hs,f:re");
  cfg.measures = measures_for(pairs);
  const auto rows = run_sweep(cfg);
  std::ostringstream os;
  write_mutual_csv(os, pairs, rows);
  const auto lines = lines_of(os.str());
  CHECK(lines[0] == kMutualCsvHeader);
  REQUIRE(lines.size() == 1 + 3 * 4 * 40);

  // hs-re at x = 0, M = 1 is the Fock point (5/12, 2 ln 2).
  const auto first = fields_of(lines[1]);
  CHECK(first[0] == "hs-re");
  CHECK(first[2] == "1");
  CHECK(std::stod(first[3]) == doctest::Approx(5.0 / 12.0).epsilon(1e-11));
  CHECK(std::stod(first[4]) == doctest::Approx(2 * std::log(2.0)).epsilon(1e-11));

  // f-re: both coordinates fall monotonically as x approaches x_max and
  // stay positive.
  for (std::size_t b = 0; b < 4; ++b) {
    const std::size_t base = 1 + 2 * 4 * 40 + b * 40;
    for (std::size_t i = 1; i < 40; ++i) {
      const auto cur = fields_of(lines[base + i]);
      const auto prev = fields_of(lines[base + i - 1]);
      CHECK(cur[0] == "f-re");
      CHECK(std::stod(cur[3]) < std::stod(prev[3]));
      CHECK(std::stod(cur[4]) < std::stod(prev[4]));
      CHECK(std::stod(cur[3]) > 0.0);
    }
  }

  std::ostringstream empty;
  CHECK_THROWS_AS(write_mutual_csv(empty, {}, rows), DomainError);

  std::ostringstream js;
  write_mutual_json(js, cfg, pairs, rows);
  const auto doc = nlohmann::json::parse(js.str());
  REQUIRE(doc["pairs"].size() == 3);
  CHECK(doc["pairs"][2]["pair"] == "f-re");
  CHECK(doc["pairs"][0]["points"].size() == rows.size());
}

TEST_CASE("thermal and Fock families") {
  SweepConfig th;
  th.family = Family::thermal;
  th.param = Param::nbar;
  th.to = 20.0;
  th.steps = 11;
  for (const auto& r : run_sweep(th)) {
    CHECK(r.m == 0);
    for (Measure k : kAll) CHECK(r.values.get(k)->value <= 1e-10);
  }
  SweepConfig fock;
  fock.family = Family::fock;
  fock.param = Param::m;
  fock.m_values = {0, 1, 2, 3};
  const auto rows = run_sweep(fock);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.values.delta_f->value == doctest::Approx(delta_f_fock(r.m)));
}
