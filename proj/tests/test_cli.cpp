#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* env = std::getenv("DSHOCK_BIN");
  REQUIRE_MESSAGE(env != nullptr, "DSHOCK_BIN must point at the CLI binary");
  return env;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dshock_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

int run(const std::string& args) {
  const int status = std::system((binary() + " " + args).c_str());
  return WEXITSTATUS(status);
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kMixed =
    R"({"rho_minus":1,"u_minus":2,"rho_plus":1,"u_plus":0,
        "source":{"kind":"mixed"},"t_max":2})";
const char* kConstLeft =
    R"({"rho_minus":1,"u_minus":2,"rho_plus":1,"u_plus":0,
        "source":{"kind":"const_left","sign":1},"t_max":2})";

}  // namespace

TEST_CASE("solve writes the trajectory and truncates at death") {
  TempDir dir;
  write(dir.path / "mixed.json", kMixed);
  const int code = run("solve " + (dir.path / "mixed.json").string() +
                       " --out " + dir.path.string());
  CHECK(code == 0);

  const std::string csv = slurp(dir.path / "mixed_trajectory.csv");
  CHECK(csv.rfind("t,s,w,sigma,u_l,u_r\n", 0) == 0);
  CHECK(csv.find("# death t=0.85260550201372542") != std::string::npos);
  CHECK(csv.find('\r') == std::string::npos);

  // row at t = 1 never appears: the front died at ~0.8526
  CHECK(csv.find("\n1,") == std::string::npos);
}

TEST_CASE("solve reports the accelerated front") {
  TempDir dir;
  write(dir.path / "cl.json", kConstLeft);
  REQUIRE(run("solve " + (dir.path / "cl.json").string() + " --out " +
              dir.path.string()) == 0);
  const std::string csv = slurp(dir.path / "cl_trajectory.csv");
  // row at t = 1: s = (u_-+u_+)/2 + 1/4 = 1.25, sigma = 1.5
  CHECK(csv.find("\n1,1.25,2.5,1.5,3,0\n") != std::string::npos);
}

TEST_CASE("identical scenarios produce byte-identical outputs") {
  TempDir a, b;
  write(a.path / "sc.json", kMixed);
  write(b.path / "sc.json", kMixed);
  REQUIRE(run("solve " + (a.path / "sc.json").string() + " --out " +
              a.path.string()) == 0);
  REQUIRE(run("solve " + (b.path / "sc.json").string() + " --out " +
              b.path.string()) == 0);
  CHECK(slurp(a.path / "sc_trajectory.csv") ==
        slurp(b.path / "sc_trajectory.csv"));

  REQUIRE(run("fan " + (a.path / "sc.json").string() + " --out " +
              a.path.string()) == 0);
  REQUIRE(run("fan " + (b.path / "sc.json").string() + " --out " +
              b.path.string()) == 0);
  CHECK(slurp(a.path / "sc_fan.csv") == slurp(b.path / "sc_fan.csv"));
}

TEST_CASE("classify emits the report JSON") {
  TempDir dir;
  write(dir.path / "drag.json",
        R"({"rho_minus":1,"u_minus":2,"rho_plus":1,"u_plus":1,
            "source":{"kind":"drag_left","sign":-1},"t_max":2})");
  REQUIRE(run("classify " + (dir.path / "drag.json").string() + " --out " +
              dir.path.string()) == 0);
  const auto j = json::parse(slurp(dir.path / "drag_report.json"));
  CHECK(j.at("panel") == "Fig2a");
  CHECK(j.at("vacuum_after") == true);
  CHECK(j.at("times").at("t3").get<double>() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(j.at("death").get<double>() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("validation failures exit 2 with machine-readable errors") {
  TempDir dir;
  write(dir.path / "bad.json",
        R"({"rho_minus":1,"u_minus":1,"rho_plus":1,"u_plus":2,
            "source":{"kind":"homogeneous"}})");
  const int code = run("solve " + (dir.path / "bad.json").string() +
                       " --out " + dir.path.string() + " 2> " +
                       (dir.path / "err.txt").string());
  CHECK(code == 2);
  const auto err = json::parse(slurp(dir.path / "err.txt"));
  CHECK(err.at("error") == "NoDeltaShock");
}

TEST_CASE("verify passes exact fields and flags perturbed fronts") {
  TempDir dir;
  write(dir.path / "sc.json", kMixed);
  CHECK(run("verify " + (dir.path / "sc.json").string() + " --out " +
            dir.path.string()) == 0);
  const auto report = json::parse(slurp(dir.path / "sc_verify.json"));
  CHECK(report.at("pass") == true);
  CHECK(report.at("bumps").size() == 5);

  const int code = run("verify " + (dir.path / "sc.json").string() +
                       " --perturb-front 0.1 --out " + dir.path.string() +
                       " 2> " + (dir.path / "err.txt").string());
  CHECK(code == 3);
  const auto err = json::parse(slurp(dir.path / "err.txt"));
  CHECK(err.at("error") == "VerificationFailed");
  CHECK(err.at("failing_bumps").size() >= 1);
}

TEST_CASE("oracle runs supported kinds and rejects the rest") {
  TempDir dir;
  write(dir.path / "hom.json",
        R"({"rho_minus":1,"u_minus":2,"rho_plus":1,"u_plus":0,
            "source":{"kind":"homogeneous"},"t_max":1})");
  CHECK(run("oracle " + (dir.path / "hom.json").string() +
            " --n-particles 400 --out " + dir.path.string() + " > " +
            (dir.path / "summary.txt").string()) == 0);
  const auto summary = json::parse(slurp(dir.path / "summary.txt"));
  CHECK(summary.at("max_err_x").get<double>() <= 0.05);
  CHECK(fs::exists(dir.path / "hom_oracle.csv"));

  write(dir.path / "mixed.json", kMixed);
  const int code = run("oracle " + (dir.path / "mixed.json").string() +
                       " --out " + dir.path.string() + " 2> " +
                       (dir.path / "err.txt").string());
  CHECK(code == 4);
  const auto err = json::parse(slurp(dir.path / "err.txt"));
  CHECK(err.at("error") == "UnsupportedSource");
}

TEST_CASE("batch mode processes a directory of scenarios") {
  TempDir dir;
  fs::create_directories(dir.path / "in");
  write(dir.path / "in" / "a.json", kMixed);
  write(dir.path / "in" / "b.json", kConstLeft);
  CHECK(run("classify " + (dir.path / "in").string() + " --out " +
            dir.path.string()) == 0);
  CHECK(fs::exists(dir.path / "a_report.json"));
  CHECK(fs::exists(dir.path / "b_report.json"));
}
