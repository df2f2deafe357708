#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "commands.hpp"

namespace fs = std::filesystem;
using finsleroid::cli::run;

namespace {

struct Out {
  int code;
  std::string out, err;
};

Out call(std::vector<std::string> args) {
  std::ostringstream o, e;
  const int c = run(args, o, e);
  return {c, o.str(), e.str()};
}

fs::path scratch_dir(const std::string& tag) {
  const auto d = fs::temp_directory_path() / ("finsleroid_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::vector<std::vector<double>> read_csv(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(f, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("eval") {
    auto r = call({"eval", "--g", "0", "--vec", "3,4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("K: 5\n") != std::string::npos);
    r = call({"eval", "--g", "0.6", "--vec", "1,1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("indicatrix_curvature: 0.91\n") != std::string::npos);
    r = call({"eval", "--g", "0.4", "--vec", "0.3,-0.2,0.9", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["indicatrix_curvature_fitted"].get<double>() == doctest::Approx(0.96).epsilon(1e-12));
    CHECK(j["metric_det"].get<double>() == doctest::Approx(j["metric_det_closed"].get<double>()).epsilon(1e-10));
    CHECK(j["H_dual"].get<double>() == doctest::Approx(j["K"].get<double>()).epsilon(1e-12));
  }

  TEST_CASE("exit codes") {
    auto r = call({"eval", "--g", "2.5", "--vec", "1,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("OutOfRange") != std::string::npos);
    CHECK(call({"eval", "--g", "0.2", "--vec", "1,x"}).code == 2);
    CHECK(call({"eval", "--g", "0.2", "--dim", "3", "--vec", "1,1"}).code == 2);
    CHECK(call({"nosuch"}).code == 2);
    CHECK(call({}).code == 2);
    // off the axis R and -R stay connectable when g != 0; opposite axis points do not
    CHECK(call({"geodesic", "--g", "0.3", "--vec", "1,0.5", "--vec2", "-1,-0.5"}).code == 0);
    r = call({"geodesic", "--g", "0.3", "--vec", "0,1", "--vec2", "0,-1"});
    CHECK(r.code == 3);
    CHECK(call({"eval", "--g", "0.2", "--vec", "0,0"}).code == 3);
    CHECK(call({"indicatrix", "--g", "0.2", "--out", "/nonexistent_dir_xyz/a.csv"}).code == 4);
  }

  TEST_CASE("angle") {
    const auto r = call({"angle", "--g", "0", "--vec", "1,0", "--vec2", "0,1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("alpha: 1.5707963267948966\n") != std::string::npos);
  }

  TEST_CASE("geodesic CSV is deterministic") {
    const std::vector<std::string> args = {"geodesic", "--g", "0.4", "--dim", "3", "--vec", "0.3,0.1,1", "--vec2", "-0.2,0.8,0.4", "--samples", "21"};
    const auto a = call(args), b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream in(a.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("# a=", 0) == 0);
    std::getline(in, line);
    CHECK(line == "s,R_1,R_2,R_3,K");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 21);
    const auto j = nlohmann::json::parse(call({"geodesic", "--g", "0.4", "--dim", "3", "--vec", "0.3,0.1,1", "--vec2", "-0.2,0.8,0.4", "--json"}).out);
    CHECK(j["samples"].size() == 11);
  }

  TEST_CASE("indicatrix formats") {
    CHECK(call({"indicatrix", "--g", "0.4", "--format", "svg"}).out.rfind("<svg", 0) == 0);
    CHECK(call({"indicatrix", "--g", "0.4", "--samples", "9"}).out.rfind("f,q,Z\n", 0) == 0);
    CHECK(nlohmann::json::parse(call({"indicatrix", "--g", "0.4", "--json"}).out).size() == 181);
    CHECK(call({"indicatrix", "--g", "0.4", "--format", "png"}).code == 2);
  }

  TEST_CASE("figures") {
    const auto dir = scratch_dir("fig");
    const auto r = call({"figures", "--out", dir.string(), "--samples", "101"});
    REQUIRE(r.code == 0);
    int n = 0;
    for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file();
    CHECK(n == 15);
    for (const char* g : {"0.2", "0.4", "0.6"}) {
      const auto a = read_csv(dir / (std::string("indicatrix_gp") + g + ".csv"));
      const auto b = read_csv(dir / (std::string("indicatrix_gm") + g + ".csv"));
      REQUIRE(a.size() == 101);
      REQUIRE(b.size() == 101);
      for (size_t k = 0; k < a.size(); ++k) {
        CHECK(std::abs(a[k][1] - b[100 - k][1]) <= 1e-10);
        CHECK(std::abs(a[k][2] + b[100 - k][2]) <= 1e-10);
      }
    }
    CHECK(read_csv(dir / "q_star.csv").size() == 191);
    CHECK(read_csv(dir / "z_2star.csv").size() == 191);
    fs::remove_all(dir);
  }

  TEST_CASE("check") {
    auto r = call({"check", "--samples", "5", "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"].get<bool>());
    CHECK(j["seed"].get<std::uint64_t>() == 20240917u);
    r = call({"check", "--samples", "5", "--fault-h", "1e-6"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(call({"check", "--samples", "5", "--tol", "bogus=1"}).code == 2);
    CHECK(call({"check", "--samples", "5", "--tol", "core.homogeneity"}).code == 2);
  }

  TEST_CASE("config document, flags win") {
    const auto dir = scratch_dir("cfg");
    const auto path = dir / "c.json";
    std::ofstream(path) << R"({"g": 0.6, "vec": [3, 4], "json": false})";
    auto r = call({"eval", "--config", path.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("g: 0.6\n") != std::string::npos);
    r = call({"eval", "--config", path.string(), "--g", "0"});
    CHECK(r.out.find("K: 5\n") != std::string::npos);
    std::ofstream(path) << "{not json";
    CHECK(call({"eval", "--config", path.string()}).code == 2);
    CHECK(call({"eval", "--config", (dir / "missing.json").string()}).code == 2);
    fs::remove_all(dir);
  }
}
