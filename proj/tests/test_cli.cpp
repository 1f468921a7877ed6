#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::string kCli = POINTSPEC_CLI;
const fs::path kTmp = POINTSPEC_TMP;

struct Run {
  int status;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  fs::create_directories(kTmp);
  static int counter = 0;
  const fs::path out = kTmp / ("out" + std::to_string(counter++) + ".txt");
  const std::string cmd =
      env + " '" + kCli + "' " + args + " > '" + out.string() + "' 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out)};
}

json run_json(const std::string& args) {
  const Run r = run(args);
  REQUIRE(r.status == 0);
  return json::parse(r.out);
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  FAIL("missing column " << name);
  return 0;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_CASE("Dirichlet spectrum") {
  const json j = run_json("spectrum --xi 0 --alpha-re -1 --levels 3 --mass 0.5");
  REQUIRE(j["energies"].size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(j["energies"][n - 1].get<double>() ==
          doctest::Approx(n * n * kPi * kPi).epsilon(1e-13));
  }
  CHECK(j["zero_mode"] == false);
  CHECK(j["negative_count"] == 0);
}

TEST_CASE("classify a twisted circle") {
  const json j = run_json("classify --xi 1.5707963267948966 --alpha-re 0 --beta-re -1");
  CHECK(j["families"] == json({"F2", "F3"}));
  CHECK(j["theta"].get<double>() == doctest::Approx(kPi / 2).epsilon(1e-15));
  const Run c = run("classify --xi 1.5707963267948966 --alpha-re 0 --beta-re -1 --format csv");
  REQUIRE(c.status == 0);
  const auto rows = csv(c.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][column(rows[0], "F3")] == "1");
}

TEST_CASE("kernel-compare on the periodic circle") {
  const json j =
      run_json("kernel-compare --xi 1.5707963267948966 --alpha-re 0 --beta-im -1");
  CHECK(j["agree"] == true);
  CHECK(j["max_rel_diff"].get<double>() < 1e-8);
  CHECK(j["times"].size() == 4);
}

TEST_CASE("eigenstate output") {
  const json j = run_json("eigenstate --alpha-re -1 --levels 2 --grid 3");
  REQUIRE(j["modes"].size() == 2);
  CHECK(j["modes"][0]["boundary_residual"].get<double>() < 1e-12);
  CHECK(j["modes"][0]["norm"].get<double>() == doctest::Approx(1.0));
  CHECK(j["modes"][0]["samples"].size() == 3);
}

TEST_CASE("scan an F2 slice in beta_I") {
  const Run r = run(
      "scan --xi 1.5707963267948966 --alpha-re 0 --alpha-im 0.6 --beta-im 0 "
      "--beta-re 0 --sweep beta_I:-0.8:0.8:9 --format csv --L0 1");
  REQUIRE(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 10);
  const std::size_t b = column(rows[0], "beta_im");
  const std::size_t k = column(rows[0], "k_lowest");
  const std::size_t ai = column(rows[0], "alpha_im");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double beta_im = std::stod(rows[i][b]);
    CHECK(std::abs(std::stod(rows[i][k]) - std::acos(-beta_im)) < 1e-10);
    const double a_im = std::stod(rows[i][ai]);
    CHECK(a_im * a_im + beta_im * beta_im == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("scan along the isospectral sphere") {
  const Run r = run(
      "scan --xi 0 --alpha-re 0 --alpha-im 0.5 --beta-re 0.8660254037844386 "
      "--sweep alpha_R:-0.9:0.9:7 --format csv");
  REQUIRE(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 8);
  // Positive levels stay at (n pi)^2 / 2. Each row also carries one bound
  // state, kappa L0 = sqrt((1 - alpha_R)/(1 + alpha_R)), which does move.
  const std::size_t e1 = column(rows[0], "E1");
  const std::size_t neg = column(rows[0], "negative_count");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][neg] == "1");
    const double a = std::stod(rows[i][column(rows[0], "alpha_re")]);
    CHECK(std::stod(rows[i][e1]) == doctest::Approx(-0.5 * (1 - a) / (1 + a)).epsilon(1e-10));
  }
  for (std::size_t i = 2; i < rows.size(); ++i) {
    for (std::size_t c = e1 + 1; c < e1 + 8; ++c) {
      CHECK(std::stod(rows[i][c]) == doctest::Approx(std::stod(rows[1][c])).epsilon(1e-10));
    }
  }
}

TEST_CASE("scan alpha_I at fixed fingerprint") {
  const Run r = run(
      "scan --xi 0.4 --alpha-re 0.3 --alpha-im 0.2 --beta-re 0.1 --beta-im 0.5 "
      "--sweep alpha_I:0:0.7:8 --format csv");
  REQUIRE(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 9);
  const std::size_t e1 = column(rows[0], "E1");
  const std::size_t fp = column(rows[0], "fp_beta_im");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(rows[i][fp] == rows[1][fp]);
    for (std::size_t c = e1; c < e1 + 8; ++c) {
      CHECK(std::stod(rows[i][c]) == doctest::Approx(std::stod(rows[1][c])).epsilon(1e-10));
    }
  }
}

TEST_CASE("two-axis scan is deterministic across thread counts") {
  const std::string args =
      "scan --xi 0.4 --alpha-re 0.3 --alpha-im 0.2 --beta-re 0.1 --beta-im 0.5 "
      "--sweep xi:0.1:2.5:4 L0:0.5:2:3 --format csv";
  const Run a = run(args, "POINTSPEC_THREADS=1");
  const Run b = run(args, "POINTSPEC_THREADS=4");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(csv(a.out).size() == 13);
  CHECK(run(args, "POINTSPEC_THREADS=0").status == 2);
}

TEST_CASE("identical runs are byte-identical") {
  const std::string args = "spectrum --xi 0.4 --alpha-re 0.3 --alpha-im 0.2 --beta-re 0.1 "
                           "--beta-im 0.9273618495495703 --levels 6";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("0.40000000000000002") != std::string::npos);
}

TEST_CASE("JSON output round-trips as a config") {
  const fs::path doc = kTmp / "roundtrip.json";
  const std::string args = "spectrum --xi 0.4 --alpha-re 0.3 --alpha-im 0.2 --beta-re 0.1 "
                           "--beta-im 0.9273618495495703 --L0 1.7 --length 2 --levels 6";
  REQUIRE(run(args + " --out '" + doc.string() + "'").status == 0);
  const json first = json::parse(slurp(doc));
  const json second = run_json("spectrum --levels 6 --config '" + doc.string() + "'");
  CHECK(first["energies"] == second["energies"]);
  CHECK(first["point"] == second["point"]);
}

TEST_CASE("key=value config and flag precedence") {
  const fs::path cfg = kTmp / "point.cfg";
  write(cfg, "xi=0\nalpha-re=-1\nlevels=2\nmass=0.5\n");
  const json j = run_json("spectrum --config '" + cfg.string() + "'");
  CHECK(j["energies"].size() == 2);
  CHECK(j["energies"][0].get<double>() == doctest::Approx(kPi * kPi));
  const json k = run_json("spectrum --config '" + cfg.string() + "' --levels 4");
  CHECK(k["energies"].size() == 4);

  const fs::path bad = kTmp / "bad.cfg";
  write(bad, "xi=0\ncolour=blue\n");
  CHECK(run("spectrum --config '" + bad.string() + "'").status == 2);
}

TEST_CASE("validation errors exit with 2") {
  CHECK(run("spectrum --alpha-re 2").status == 2);
  CHECK(run("spectrum --xi 4").status == 2);
  CHECK(run("spectrum --format xml").status == 2);
  CHECK(run("scan").status == 2);
  CHECK(run("scan --sweep gamma:0:1:3").status == 2);
  CHECK(run("kernel-compare --xi 0.4 --alpha-re 0.3 --alpha-im 0.2 --beta-re 0.1 "
            "--beta-im 0.9273618495495703").status != 0);
  CHECK(run("").status == 2);
}
