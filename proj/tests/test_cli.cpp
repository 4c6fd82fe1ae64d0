#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cyclicity/cli.hpp"
#include "cyclicity/errors.hpp"

using namespace cyc;
using io::json;

namespace {

const json kOneMinusZ{{"family", "one_minus_z"}};

int exit_code_of(const std::string& command, const json& config) {
  try {
    cli::run(command, config);
  } catch (const std::exception& e) {
    return cli::exit_code_for(e);
  }
  return 0;
}

}  // namespace

TEST_CASE("document envelope") {
  const cli::RunResult r = cli::run("index", json{{"space", "hardy"}, {"function", kOneMinusZ}, {"n", 3}});
  CHECK(r.document.at("schemaVersion") == cli::kSchemaVersion);
  CHECK(r.document.at("command") == "index");
  CHECK(r.document.at("config").at("n") == 3);
  CHECK(r.document.at("config").at("space").at("kind") == "preset");
  CHECK(r.document.at("result").at("residual").get<double>() == doctest::Approx(std::sqrt(1.0 / 5.0)).epsilon(1e-12));
  CHECK(r.document.at("warnings").empty());
}

TEST_CASE("resolved config reproduces the run") {
  const json config{{"space", "bergman"}, {"function", kOneMinusZ}, {"n", 4}};
  const cli::RunResult a = cli::run("index", config);
  const cli::RunResult b = cli::run("index", a.document.at("config"));
  CHECK(io::dump_canonical(a.document.at("result")) == io::dump_canonical(b.document.at("result")));
  CHECK(a.document.at("config") == b.document.at("config"));
}

TEST_CASE("index of the constant function vanishes") {
  const cli::RunResult r =
      cli::run("index", json{{"space", "dirichlet_type"}, {"function", {{"family", "constant"}, {"value", 2.0}}}, {"n", 2}});
  CHECK(r.document.at("result").at("residual").get<double>() < 1e-12);
}

TEST_CASE("sweep table") {
  const cli::RunResult r = cli::run("sweep", json{{"space", "hardy"}, {"function", kOneMinusZ}, {"nMax", 6}});
  REQUIRE(r.extra.size() == 1);
  CHECK(r.extra[0].fileName == "sweep.csv");
  std::istringstream in(r.extra[0].content);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("degree,residual", 0) == 0);
  int n = 0;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    CHECK(std::stoi(line.substr(0, comma)) == n);
    const double res = std::stod(line.substr(comma + 1));
    CHECK(res * res == doctest::Approx(1.0 / (n + 2)).epsilon(1e-12));
    ++n;
  }
  CHECK(n == 7);
}

TEST_CASE("capacity of an empty cloud") {
  const cli::RunResult r = cli::run("capacity", json{{"cloud", json::array()}});
  CHECK(r.document.at("result").at("capacity") == 0.0);
  CHECK_FALSE(r.warnings.empty());
  CHECK(r.document.at("warnings").size() == r.warnings.size());
}

TEST_CASE("capacity of a zero set") {
  const cli::RunResult r = cli::run("capacity", json{{"function", kOneMinusZ}});
  CHECK(r.document.at("result").at("capacity") == 0.0);
  CHECK(r.document.at("result").at("degenerate") == true);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_of("nope", json::object()) == 2);
  CHECK(exit_code_of("index", json{{"space", "hardy"}, {"n", 2}}) == 2);
  CHECK(exit_code_of("index", json{{"space", "hardy"}, {"function", kOneMinusZ}, {"n", "two"}}) == 2);
  CHECK(exit_code_of("index", json{{"space", "hardy"}, {"function", kOneMinusZ}, {"n", -1}}) == 2);
  CHECK(exit_code_of("corona-check", json{{"d", 2}, {"function", {{"family", "shifted"}, {"c", 2.0}}}}) == 2);
  CHECK(exit_code_of("mixed-norm", json{{"spec", {{"d", 2}, {"preset", "hardy"}}}, {"function", kOneMinusZ}}) == 2);
  CHECK(exit_code_of("capacity", json{{"function", {{"family", "constant"}, {"value", 0.0}}}}) == 2);
  json tiny = json::array();
  for (int k = 0; k <= 6; ++k) tiny.push_back({{"exponents", {k}}, {"value", k < 2 ? 1.0 : 1e-40}});
  const json space{{"kind", "custom_diagonal"}, {"d", 1}, {"maxDegree", 6}, {"weights", tiny}};
  CHECK(exit_code_of("index", json{{"space", space}, {"function", kOneMinusZ}, {"n", 4}}) == 3);
  CHECK(cli::exit_code_for(std::runtime_error("x")) == 1);
}

TEST_CASE("every command is listed once") {
  const auto& cs = cli::commands();
  CHECK(cs.size() == 12);
  CHECK(std::set<std::string>(cs.begin(), cs.end()).size() == cs.size());
}

TEST_CASE("mixed index table and warnings") {
  const cli::RunResult r =
      cli::run("mixed-index", json{{"spec", {{"preset", "bergman"}, {"p", 3.0}, {"q", 3.0}}}, {"function", kOneMinusZ}, {"nMax", 3}});
  REQUIRE(r.extra.size() == 1);
  CHECK(r.extra[0].fileName == "mixed-index.csv");
  CHECK(r.document.at("result").at("runs").size() == 4);
}
