#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(NONGAUSS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// "name=value err=..." lines of the text format.
std::map<std::string, double> values_of(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string value = line.substr(eq + 1, line.find(' ') - eq - 1);
    if (value != "unsupported") out[line.substr(0, eq)] = std::stod(value);
  }
  return out;
}

fs::path write_temp(const std::string& name, const std::string& body) {
  const fs::path p = fs::temp_directory_path() / ("nongauss_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("measure prints the three degrees") {
  auto r = run("measure --state thermal --nbar 1");
  CHECK(r.code == 0);
  auto v = values_of(r.out);
  CHECK(v.at("hs") < 1e-10);
  CHECK(v.at("re") < 1e-10);
  CHECK(v.at("fid") == 0.0);

  r = run("measure --state fock --m 1");
  CHECK(r.code == 0);
  v = values_of(r.out);
  CHECK(v.at("hs") == doctest::Approx(0.416667).epsilon(1e-6));
  CHECK(v.at("re") == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK(v.at("fid") == doctest::Approx(0.5));

  r = run("measure --state pats --m 1 --nbar 1");
  CHECK(r.code == 0);
  v = values_of(r.out);
  CHECK(v.at("hs") == doctest::Approx(0.237714).epsilon(1e-6));
  CHECK(v.at("re") == doctest::Approx(0.370).epsilon(1e-3 / 0.370));
  CHECK(v.at("fid") == doctest::Approx(0.1564).epsilon(1e-3 / 0.1564));
}

TEST_CASE("measure formats") {
  auto r = run("measure --state pats --m 2 --nbar 0.5 --format json");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["delta_hs"].get<double>() > 0.0);
  CHECK(doc.contains("err_f"));

  r = run("measure --state fock --m 2 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("delta_hs,delta_re,delta_f,err_hs,err_re,err_f\n", 0) == 0);

  r = run("measure --state fock --m 2 --measures fid");
  CHECK(values_of(r.out).size() == 1);
}

TEST_CASE("custom and pure state files") {
  const auto probs = write_temp("probs.txt", "# 1-photon Fock state\n0\n1  # only level\n\n");
  auto r = run("measure --state custom --probs " + probs.string());
  CHECK(r.code == 0);
  CHECK(values_of(r.out).at("hs") == doctest::Approx(5.0 / 12.0));

  const auto coeffs = write_temp("coeffs.txt", "# (|0> + i|2>)/sqrt 2\n0.7071067811865476 0\n0 0\n0 0.7071067811865476\n");
  r = run("measure --state pure --coeffs " + coeffs.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("hs=unsupported") != std::string::npos);
  const double root = std::sqrt(1.75);
  CHECK(values_of(r.out).at("re") ==
        doctest::Approx((root + 0.5) * std::log(root + 0.5) - (root - 0.5) * std::log(root - 0.5)));

  CHECK(run("measure --state pure --coeffs " + coeffs.string() + " --measures hs").code == 2);
  const auto bad = write_temp("bad.txt", "0.5\n0.2\n");
  CHECK(run("measure --state custom --probs " + bad.string()).code == 2);
  CHECK(run("measure --state custom --probs /nonexistent/file").code == 2);
}

TEST_CASE("usage and domain errors exit with 2") {
  CHECK(run("measure --state pats --m 1 --nbar -1").code == 2);
  CHECK(run("measure --state squeezed").code == 2);
  CHECK(run("measure --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("sweep --steps 1").code == 2);
  CHECK(run("sweep --to 1.0").code == 2);
  CHECK(run("sweep --param q").code == 2);
  CHECK(run("sweep --m-list 1,x").code == 2);
  CHECK(run("mutual --pairs ''").code == 2);
  CHECK(run("mutual --pairs re:hs").code == 2);
  CHECK(run("verify --grid medium").code == 2);
  CHECK(run("measure --help").code == 0);
}

TEST_CASE("sweep output is deterministic and well-formed") {
  const std::string args = "sweep --param x --from 0 --to 0.95 --steps 100 --m-list 1,3,5,10";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("param,M,delta_hs,delta_re,delta_f,err_hs,err_re,err_f\n", 0) == 0);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 401);

  const fs::path out = fs::temp_directory_path() / "nongauss_test_sweep.json";
  const auto j = run("sweep --param m --m-list 0-15 --nbar-list 0.1,1,2,5 --format json --out " + out.string());
  CHECK(j.code == 0);
  CHECK(j.out.empty());
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  CHECK(doc["rows"].size() == 64);
  CHECK(doc["rows"][0]["delta_f"].get<double>() == 0.0);
}

TEST_CASE("mutual emits parametric blocks") {
  const auto r = run("mutual --pairs hs:re --m-list 1 --steps 5");
  CHECK(r.code == 0);
  std::istringstream is(r.out);
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header == "pair,param,M,measure_a,measure_b");
  CHECK(first == "hs-re,0,1,0.416666666667,1.38629436112");
}

TEST_CASE("verify") {
  const auto start = std::chrono::steady_clock::now();
  const auto small = run("verify --grid small");
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  CHECK(small.code == 0);
  CHECK(elapsed.count() < 10.0);
  CHECK(small.out.find("FAIL") == std::string::npos);

  const auto faulty = run("verify --tol 1e-2");
  CHECK(faulty.code == 1);
  CHECK(faulty.out.find("FAIL") != std::string::npos);
}
