#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cabred/rational.hpp"

namespace {

using nlohmann::json;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(CABRED_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "cabred_cli_tests";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream os(path, std::ios::binary);
  os << content;
  return path;
}

const char* kElliptic5 =
    R"({"p": 5, "a": 2, "b": 3, "coeffs": [{"i":0,"j":0,"c":1},{"i":3,"j":0,"c":1}]})";

}  // namespace

TEST_CASE("cli check") {
  auto curve = write_temp("e1.json", kElliptic5);
  SECTION("valid smooth curve") {
    CliResult res = run_cli("check " + curve.string());
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.at("valid") == true);
    REQUIRE(j.at("smooth") == true);
    REQUIRE(j.at("genus") == 1);
  }
  SECTION("singular curve") {
    auto cusp = write_temp("cusp.json",
                           R"({"p": 5, "a": 2, "b": 3, "coeffs": [{"i":3,"j":0,"c":1}]})");
    CliResult res = run_cli("check " + cusp.string());
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.at("smooth") == false);
    REQUIRE(j.contains("witness"));
  }
  SECTION("validation failure exits 2") {
    auto bad = write_temp("bad.json",
                          R"({"p": 5, "a": 2, "b": 4, "coeffs": [{"i":4,"j":0,"c":1}]})");
    CliResult res = run_cli("check " + bad.string());
    REQUIRE(res.exit_code == 2);
    json j = json::parse(res.out);
    REQUIRE(j.at("valid") == false);
  }
  SECTION("unknown keys are rejected") {
    auto bad = write_temp("unknown.json",
                          R"({"p": 5, "a": 2, "b": 3, "coeffs": [], "extra": 1})");
    REQUIRE(run_cli("check " + bad.string()).exit_code == 2);
  }
  SECTION("malformed JSON exits 2") {
    auto bad = write_temp("malformed.json", "{not json");
    REQUIRE(run_cli("check " + bad.string()).exit_code == 2);
  }
}

TEST_CASE("cli reduce") {
  auto curve = write_temp("e1.json", kElliptic5);
  SECTION("single step example") {
    CliResult res = run_cli("reduce " + curve.string() + " --form \"3 1 dx\" --certificate");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.at("verified") == true);
    REQUIRE(j.at("vector")[0].at("c") == "-2/11");
    REQUIRE(j.at("vector")[1].at("c") == "0");
  }
  SECTION("basis monomial") {
    CliResult res = run_cli("reduce " + curve.string() + " --form \"0 1 dx\"");
    json j = json::parse(res.out);
    REQUIRE(j.at("vector")[0].at("c") == "1");
    REQUIRE(j.at("vector")[1].at("c") == "0");
  }
  SECTION("long ladder has valuation -1") {
    CliResult res = run_cli("reduce " + curve.string() + " --form \"60 1 dx\"");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    cabred::Rat c = cabred::Rat::parse(j.at("vector")[0].at("c").get<std::string>());
    REQUIRE(cabred::valp(c, cabred::Int(5)) == cabred::Valuation::of(-1));
  }
  SECTION("bad form spec exits 2") {
    REQUIRE(run_cli("reduce " + curve.string() + " --form \"3 1 dz\"").exit_code == 2);
    REQUIRE(run_cli("reduce " + curve.string() + " --form \"x 1 dx\"").exit_code == 2);
  }
  SECTION("singular curve is refused") {
    auto cusp = write_temp("cusp.json",
                           R"({"p": 5, "a": 2, "b": 3, "coeffs": [{"i":3,"j":0,"c":1}]})");
    REQUIRE(run_cli("reduce " + cusp.string() + " --form \"3 1 dx\"").exit_code == 2);
  }
}

TEST_CASE("cli probe") {
  CliResult res = run_cli("probe 5 2 3 1 3");
  REQUIRE(res.exit_code == 0);
  std::istringstream is(res.out);
  std::string line;
  std::getline(is, line);
  REQUIRE(line == "# cabred-sweep-v1 seed=0");
  std::getline(is, line);
  REQUIRE(line == "p,a,b,alpha,j,r,c,d,M,N_digits,nu,bound_ok,C_d,crosscheck,note");
  std::getline(is, line);
  REQUIRE(line.rfind("5,2,3,1,1,1,11,1,3,2,-1,true,", 0) == 0);
  REQUIRE(line.find(",true,") != std::string::npos);
  std::getline(is, line);
  REQUIRE(line.rfind("5,2,3,1,1,1,11,2,5,3,-2,true,", 0) == 0);

  CliResult j = run_cli("probe 7 2 3 1 1 --format json");
  json parsed = json::parse(j.out);
  REQUIRE(parsed.at("rows")[0].at("M") == 2);
  REQUIRE(parsed.at("rows")[0].at("nu") == -1);
  REQUIRE(parsed.at("rows")[0].at("bound_ok") == true);
}

TEST_CASE("cli sweep") {
  auto config = write_temp("sweep.json", R"({
    "primes": [3, 5, 7],
    "pairs": [[2, 3], [3, 4]],
    "alphas": [1],
    "d_max": 2,
    "exact_cap": 1000,
    "crosscheck_cap": 100,
    "seed": 42,
    "format": "csv"
  })");
  CliResult res = run_cli("sweep " + config.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(res.out.rfind("# cabred-sweep-v1 seed=42\n", 0) == 0);
  // p = 3 divides both 2*3 and 3*4: two warning rows
  REQUIRE(res.out.find("3,2,3,1,,,,,,,,,,,skipped: p divides ab") != std::string::npos);
  REQUIRE(res.out.find("3,3,4,1,,,,,,,,,,,skipped: p divides ab") != std::string::npos);
  REQUIRE(res.out.find("5,2,3,1,1,1,11,1,3,2,-1,true,") != std::string::npos);

  // determinism: byte-identical reruns
  CliResult again = run_cli("sweep " + config.string());
  REQUIRE(res.out == again.out);

  auto bad = write_temp("sweep_bad.json", R"({"primes": [5], "pairs": [[2, 3]], "surprise": 1})");
  REQUIRE(run_cli("sweep " + bad.string()).exit_code == 2);

  auto as_json = write_temp("sweep_json.json",
                            R"({"primes": [5], "pairs": [[2, 3]], "d_max": 1, "format": "json",
                                "seed": 9})");
  CliResult jres = run_cli("sweep " + as_json.string());
  REQUIRE(jres.exit_code == 0);
  json parsed = json::parse(jres.out);
  REQUIRE(parsed.at("version") == "cabred-sweep-v1");
  REQUIRE(parsed.at("seed") == 9);
  REQUIRE(parsed.at("rows")[0].at("nu") == -1);
}

TEST_CASE("cli generic") {
  CliResult res = run_cli("generic 2 3 5 1");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.out);
  REQUIRE(j.at("l_d") == 1);
  REQUIRE(j.at("i_d") == "60");
  REQUIRE(j.at("long_chain") == true);
  REQUIRE(j.at("locus_mod_p").size() == 1);

  // with caps too small for the chain, exit 3
  REQUIRE(run_cli("generic 2 3 5 1 --exact-cap 5").exit_code == 3);
}

TEST_CASE("cli genus0") {
  auto form = write_temp("form.json",
                         R"({"punctures": [0], "poly": ["0", "2"], "principal": [["3", "0", "1"]]})");
  CliResult res = run_cli("genus0 " + form.string());
  REQUIRE(res.exit_code == 0);
  REQUIRE(json::parse(res.out).at("residues") == json::array({"3"}));

  auto rational = write_temp("form_rat.json",
                             R"({"punctures": [0, 1], "num": ["1"], "mult": [1, 1]})");
  CliResult res2 = run_cli("genus0 " + rational.string());
  REQUIRE(json::parse(res2.out).at("residues") == json::array({"-1", "1"}));

  auto coincident = write_temp("form_bad.json",
                               R"({"punctures": [2, 2], "poly": ["1"], "principal": [[], []]})");
  REQUIRE(run_cli("genus0 " + coincident.string()).exit_code == 2);

  // punctures must stay distinct modulo the optional p
  auto modp = write_temp("form_modp.json",
                         R"({"punctures": [0, 5], "p": 5, "poly": ["1"], "principal": [[], []]})");
  REQUIRE(run_cli("genus0 " + modp.string()).exit_code == 2);
  auto modp_ok = write_temp("form_modp_ok.json",
                            R"({"punctures": [0, 5], "p": 7, "poly": ["1"], "principal": [[], []]})");
  REQUIRE(run_cli("genus0 " + modp_ok.string()).exit_code == 0);
}
