#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fpt/bipoisson.hpp"
#include "fpt/cli.hpp"
#include "fpt/io.hpp"
#include "json.hpp"

using namespace fpt;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Splits stdout into the CSV blocks that follow each "# curve:" line.
std::vector<CurveTable> blocks(const std::string& text) {
  std::vector<CurveTable> tables;
  std::istringstream in(text);
  std::string line, current;
  auto flush = [&] {
    if (current.empty()) return;
    std::istringstream block(current);
    tables.push_back(read_csv(block));
    current.clear();
  };
  while (std::getline(in, line)) {
    if (line.rfind("# curve:", 0) == 0) {
      flush();
      continue;
    }
    current += line + '\n';
  }
  flush();
  return tables;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kModels = FPT_MODELS_DIR;

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"bipoisson", "--bogus"}).code == kExitUsage);
  CHECK(run({"nosuch"}).code == kExitUsage);
  CHECK(run({"bipoisson", "--M", "three"}).code == kExitUsage);
  CHECK(run({"cds"}).code == kExitUsage);
  CHECK(run({"bipoisson", "--out", "xml"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("version") {
  const auto r = run({"--version"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find(version()) != std::string::npos);
}

TEST_CASE("numerical failures exit with 3") {
  const auto neg = run({"bipoisson", "--l1", "-1"});
  CHECK(neg.code == kExitNumerical);
  CHECK(neg.err.find("numerical error") != std::string::npos);
  const auto trunc = run({"singlefile", "--k-trunc", "8", "--grid", "0.005:0.01:0.005"});
  CHECK(trunc.code == kExitNumerical);
  CHECK(trunc.err.find("survival_both_sf") != std::string::npos);
  CHECK(run({"singlefile", "--grid", "0:0.1:0.05"}).code == kExitNumerical);
  CHECK(run({"mc", "singlefile", "--dt", "0.1", "--grid", "0:1:0.5"}).code == kExitNumerical);
}

TEST_CASE("bipoisson curves") {
  const auto r = run({"bipoisson", "--l1", "1", "--l2", "2", "--l12", "0.8", "--M", "5", "--grid", "0:4:0.05",
                      "--out", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# curve: S2 model: bipoisson") != std::string::npos);
  const auto t = blocks(r.out);
  REQUIRE(t.size() == 2);
  CHECK(t[0].t.size() == 81);
  const BiPoissonParams p{1, 2, 0.8, 5};
  CHECK(t[0].value[40] == survival_both(p, 2.0));
  CHECK(t[1].value[80] == survival_last(p, 4.0));
  CHECK(std::abs(t[0].value[40] - 0.28719337459769940832) < 1e-13);

  const auto d = run({"bipoisson", "--fpt", "--grid", "1:2:1"});
  REQUIRE(d.code == kExitOk);
  const auto f = blocks(d.out);
  REQUIRE(f.size() == 2);
  CHECK(std::abs(f[0].value[0] - 0.49013038775677989229) < 1e-13);
}

TEST_CASE("trivariate and single-file curves") {
  const auto tri = run({"trivariate", "--grid", "0:1:0.5"});
  REQUIRE(tri.code == kExitOk);
  CHECK(blocks(tri.out).size() == 3);
  const auto sf = run({"singlefile", "--k-trunc", "16", "--grid", "0.1:0.3:0.1", "--with-reference"});
  REQUIRE(sf.code == kExitOk);
  const auto t = blocks(sf.out);
  REQUIRE(t.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(t[1].value[i] - t[2].value[i]) < 1e-6);
}

TEST_CASE("cds quote") {
  const auto r = run({"cds", "--model-file", kModels + "/modelA.cfg", "--order", "2"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "order,spread,fee_pv,protection_pv");
  CHECK(row.rfind("2,", 0) == 0);
  const double spread = std::stod(row.substr(2));
  CHECK(spread == doctest::Approx(41.84).epsilon(0.005));

  const auto j = run({"cds", "--model-file", kModels + "/modelB.cfg", "--out", "json"});
  REQUIRE(j.code == kExitOk);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["metadata"]["model"] == "cds");
  CHECK(doc["curves"][0]["value"][0].get<double>() == doctest::Approx(42.48).epsilon(0.005));

  CHECK(run({"cds", "--model-file", "/nonexistent.cfg"}).code == kExitUsage);
  CHECK(run({"cds", "--model-file", kModels + "/modelA.cfg", "--order", "5"}).code == kExitUsage);
}

TEST_CASE("Monte Carlo output is reproducible") {
  const std::vector<std::string> args{"mc", "trivariate", "--seed", "7", "--n", "10000", "--grid", "0:2:0.25"};
  const auto a = run(args), b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto t = blocks(a.out);
  REQUIRE(t.size() == 3);
  CHECK(t[0].has_std_err());
  auto other = args;
  other[3] = "8";
  CHECK(run(other).out != a.out);

  const auto bi = run({"mc", "bipoisson", "--seed", "3", "--n", "2000", "--grid", "0:4:1"});
  REQUIRE(bi.code == kExitOk);
  CHECK(blocks(bi.out).size() == 2);
}

TEST_CASE("output directory") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "fpt_order_cli_test";
  fs::remove_all(dir);
  REQUIRE(run({"bipoisson", "--grid", "0:1:0.5", "--output-dir", dir.string()}).code == kExitOk);
  CHECK(fs::exists(dir / "S1.csv"));
  CHECK(fs::exists(dir / "S2.csv"));
  std::ifstream in(dir / "S1.csv");
  CHECK(read_csv(in).t.size() == 3);

  REQUIRE(run({"mc", "trivariate", "--n", "500", "--grid", "0:1:0.5", "--out", "json", "--output-dir",
               dir.string()})
              .code == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir / "mc-trivariate.json"));
  CHECK(doc["curves"].size() == 3);
  CHECK(doc["curves"][0].contains("stderr"));
  fs::remove_all(dir);
}

TEST_CASE("invariant suites") {
  const auto r = run({"--validate"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("invariants hold") != std::string::npos);
}
