#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "harmvol/commands.hpp"
#include "harmvol/error.hpp"

using namespace harmvol;
using json = nlohmann::json;

namespace {

RunConfig config(int g, std::optional<int> nu, const std::string& engines) {
  RunConfig c;
  c.genus = g;
  c.nu = nu;
  c.engines = EngineSet::parse(engines);
  c.timing = false;
  return c;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(HARMVOL_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = std::string(HARMVOL_TEST_TMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("table agrees across exact engines") {
  const CommandResult r = cmd_table(config(2, 3, "exact"));
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.output);
  REQUIRE(doc["tables"].size() == 1);
  const json& rows = doc["tables"][0]["rows"];
  CHECK(rows.size() == 60);
  bool seen = false;
  for (const json& row : rows) {
    CHECK(row["agree"] == true);
    if (row["element"] == "x1⊗x2" && row["third"] == "y1") {
      seen = true;
      CHECK(row["values"]["combinatorial"] == "1/2");
    }
  }
  CHECK(seen);
  CHECK(json::parse(cmd_table(config(2, std::nullopt, "exact")).output)["tables"].size() == 6);
}

TEST_CASE("eval on a single tensor") {
  const HTensor t = HTensor::monomial(2, {x(1), x(2), y(1)});
  const json doc = json::parse(cmd_eval(config(2, 3, "combinatorial,composed"), t).output);
  CHECK(doc.dump().find("1/2") != std::string::npos);
  CHECK_THROWS_AS(cmd_eval(config(2, 3, "exact"), HTensor::monomial(2, {x(1), y(1), x(1)})), NotInKError);
}

TEST_CASE("configuration limits") {
  CHECK_THROWS_AS(config(9, std::nullopt, "exact").validate(), DomainError);
  CHECK_THROWS_AS(config(4, std::nullopt, "numeric").validate(), DomainError);
  CHECK_THROWS_AS(config(2, 7, "exact").validate(), DomainError);
  CHECK_NOTHROW(config(8, std::nullopt, "exact").validate());
  RunConfig wide = config(9, std::nullopt, "exact");
  wide.max_genus_exact = 10;
  CHECK_NOTHROW(wide.validate());
  CHECK_THROWS_AS(EngineSet::parse("combinatorial,bogus"), ParseError);
}

TEST_CASE("verify report is independent of execution mode") {
  RunConfig c = config(2, std::nullopt, "exact");
  c.random_count = 50;
  const CommandResult par = cmd_verify(c);
  c.exec = Execution::serial;
  const CommandResult ser = cmd_verify(c);
  CHECK(par.exit_code == 0);
  CHECK(par.output == ser.output);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("table --g 2 --nu 1").status == 0);
  CHECK(run_cli("").status == 2);
  CHECK(run_cli("table --g 9").status == 2);
  CHECK(run_cli("table --g 2 --nu 6").status == 2);
  CHECK(run_cli("table --g 2 --format yaml").status == 2);

  const std::string good =
      temp_file("good.json", R"({"g": 2, "terms": [{"coeff": 1, "factors": [["x", 1], ["x", 2], ["y", 1]]}]})");
  const Run ok = run_cli("eval " + good + " --nu 3 --engines all");
  CHECK(ok.status == 0);
  CHECK(ok.out.find("1/2") != std::string::npos);

  const std::string bad =
      temp_file("bad.json", R"({"g": 2, "terms": [{"coeff": 1, "factors": [["x", 1], ["y", 1], ["x", 1]]}]})");
  const Run notk = run_cli("eval " + bad);
  CHECK(notk.status == 2);
  CHECK(notk.out.find("pairing contraction") != std::string::npos);

  const Run malformed = run_cli("eval " + temp_file("broken.json", "{\"g\": 2,"));
  CHECK(malformed.status == 2);
  CHECK(malformed.out.find("line") != std::string::npos);

  const Run starved = run_cli("verify --g 2 --engines numeric --precision 53 --tol-iterated 1e-20 --no-timing");
  CHECK(starved.status == 1);
}
