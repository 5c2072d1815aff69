#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gtbound/cli.hpp"
#include "gtbound/json_io.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gtbound;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gtbound_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("usage and help") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"bell", "4", "2", "--bogus"}).code == kExitUsage);
  CHECK(run({"bell", "4"}).code == kExitUsage);
  auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("bound") != std::string::npos);
  CHECK(run({"bound", "--help"}).code == kExitOk);
}

TEST_CASE("bell") {
  auto r = run({"bell", "4", "2", "--symbolic"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "2*x1*x3 + x2^2\n");
  CHECK(run({"bell", "4", "2", "--at", "1/2,2,3"}).out == "7\n");
  CHECK(run({"bell", "4", "2", "--at", "1,2"}).code == kExitDomain);
  CHECK(run({"bell", "4", "0"}).code == kExitDomain);
}

TEST_CASE("special functions print 17 digits") {
  auto f = run({"special", "2f1", "0.5", "0.5", "1.5", "0.25"});
  CHECK(f.out.size() == 19);  // 17 significant digits, point, newline
  CHECK(std::stod(f.out) == doctest::Approx(1.0471975511965976).epsilon(1e-14));
  CHECK(run({"special", "moment", "1", "2", "0.3"}).out.substr(0, 3) == "1\n");
  CHECK(run({"special", "hermite", "1", "1.5"}).out == "1.5\n");
  CHECK(run({"special", "2f1", "0.5", "0.5", "1", "1"}).code == kExitDomain);
  CHECK(run({"special", "2f1", "0.5", "0.5", "1", "0.9999999"}).code == kExitNumeric);
  CHECK(run({"special", "moment", "2", "1", "1"}).code == kExitDomain);
}

TEST_CASE("bound JSON report") {
  auto r = run({"bound", "--concept", "sign", "--order", "41", "--json", "-"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(validate_report_json(j).empty());
  CHECK(j["schema"] == kBoundReportSchema);
  CHECK(std::abs(j["bound"].get<double>() - 1.7822139781913693) < 1e-9);
  CHECK(run({"bound", "--concept", "sign", "--order", "41", "--json", "-"}).out == r.out);

  auto csv = scratch("roots.csv");
  auto out = scratch("report.json");
  auto r2 = run({"bound", "--concept", "threshold:0.7", "--json", out.string(), "--csv",
                 csv.string()});
  CHECK((r2.code == kExitOk || r2.code == kExitDomain));
  auto j2 = json::parse(slurp(out));
  CHECK(validate_report_json(j2).empty());
  CHECK(j2["order"] == 60);
  CHECK(j2["inverted_object"] == "psi");
  CHECK(slurp(csv).rfind("order,r,bound\n", 0) == 0);

  CHECK(run({"bound", "--concept", "threshold:2"}).code == kExitDomain);
  CHECK(run({"bound", "--concept", "sign", "--order", "3"}).code == kExitDomain);
  CHECK(validate_report_json(json{{"schema", "nope"}}) != "");
}

TEST_CASE("text bound output") {
  auto r = run({"bound"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("K_G <= 1.78221397819") != std::string::npos);
}

TEST_CASE("series commands") {
  auto coeffs = scratch("arctan.json");
  {
    std::ofstream f(coeffs);
    f << R"({"order": 5, "kind": "rational", "coeffs": ["0", "1", "0", "-1/3", "0", "1/5"]})";
  }
  auto r = run({"series", "invert", "--coeffs", coeffs.string(), "--order", "5", "--exact"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["kind"] == "rational");
  CHECK(j["coeffs"][3] == "1/3");
  CHECK(j["coeffs"][5] == "2/15");
  auto f = run({"series", "invert", "--coeffs", coeffs.string(), "--order", "5"});
  CHECK(json::parse(f.out)["kind"] == "float");
  CHECK(run({"series", "eval", "--coeffs", coeffs.string(), "--x", "1.5"}).code == kExitDomain);

  auto weak = scratch("weak.json");
  {
    std::ofstream w(weak);
    w << R"({"order": 1, "kind": "float", "coeffs": [0.0, 0.9]})";
  }
  CHECK(run({"series", "root", "--coeffs", weak.string()}).code == kExitDomain);
  CHECK(run({"series", "root", "--coeffs", scratch("missing.json").string()}).code == kExitDomain);
}

TEST_CASE("concept alphas") {
  auto r = run({"concept", "alphas", "--kind", "sign", "--order", "5", "--json"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["alpha"].size() == 6);
  CHECK(j["alpha"][3].get<double>() == doctest::Approx(1.0 / (3.0 * 3.141592653589793)));
  CHECK(run({"concept", "alphas", "--kind", "cosine", "--order", "5"}).code == kExitDomain);
}

TEST_CASE("oracle output and reproducibility") {
  auto r = run({"oracle", "sign-identity", "--rho", "0.5", "--n", "1e6", "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(std::abs(j["mean"].get<double>() - 1.0 / 3.0) < 5e-3);
  CHECK(std::abs(j["z_score"].get<double>()) < 4.0);
  CHECK(j["n"] == 1000000);
  CHECK(j["seed"] == 1);
  for (const char* key : {"mean", "std_error", "n", "seed", "closed_form", "z_score"}) {
    CHECK(j.contains(key));
  }
  CHECK(run({"oracle", "sign-identity", "--rho", "0.5", "--n", "1e6", "--seed", "1"}).out == r.out);

  auto h = run({"oracle", "haagerup", "--z", "0.3+0.2i", "--n", "200000", "--seed", "3"});
  REQUIRE(h.code == kExitOk);
  CHECK(json::parse(h.out)["mean"].is_array());
  CHECK(run({"oracle", "haagerup", "--z", "0.3+0.2j"}).code == kExitDomain);
  CHECK(run({"oracle", "moment", "--d", "3", "--m", "2", "--rho", "0.4", "--n", "1e5"}).code ==
        kExitOk);
  CHECK(run({"oracle", "orthant", "--n", "2.5"}).code == kExitDomain);
}

TEST_CASE("matrix commands") {
  auto r = run({"matrix", "ccp-probe", "--fn", "sin", "--sizes", "3..5", "--trials", "30",
                "--seed", "7"});
  REQUIRE(r.code == kExitOk);
  auto j = json::parse(r.out);
  CHECK(j["violations"].get<int>() > 0);
  CHECK(j["seed"] == 7);
  CHECK(j.contains("violation"));
  CHECK(json::parse(run({"matrix", "ccp-probe", "--fn", "arcsin"}).out)["violations"] == 0);
  CHECK(run({"matrix", "ccp-probe", "--fn", "tan"}).code == kExitDomain);

  auto m = scratch("m.csv");
  {
    std::ofstream f(m);
    f << "1,1\n1,-1\n";
  }
  auto n = json::parse(run({"matrix", "norm", "--in", m.string()}).out);
  CHECK(n["value"] == 2.0);
  CHECK(n["exact"] == true);
  auto c = json::parse(run({"matrix", "check", "--in", m.string()}).out);
  CHECK(c["valid"] == false);
}
