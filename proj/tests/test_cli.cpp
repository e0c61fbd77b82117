// Scenario round-trips plus end-to-end runs of the command-line tool.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "windguide/scenario.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace windguide;
using namespace windguide::scenario;

namespace {

const std::string cli = WINDGUIDE_CLI_PATH;
const std::string data_dir = WINDGUIDE_DATA_DIR;

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "windguide_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args, const fs::path& stdout_file = {}) {
  std::string command = cli + " " + args;
  if (!stdout_file.empty()) command += " > " + stdout_file.string();
  command += " 2> /dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("scenario parsing and round-trip") {
  SUBCASE("serialize -> parse -> serialize is byte-identical") {
    for (const char* name :
         {"planar_rendezvous.json", "piecewise_field.json", "shear.json", "fig5_intercept.json"}) {
      const auto s = load_scenario(data_dir + "/" + name);
      const std::string once = serialize_scenario(s);
      const std::string twice = serialize_scenario(parse_scenario(once));
      CHECK(once == twice);
    }
  }
  SUBCASE("unknown keys are rejected with a field path") {
    const std::string text = R"({"kind":"intercept","r0":[1,0,0],"rf":[0,0,0],
      "vg0":[-1,0,0],"c_i":1.0,"wind":{"type":"constant","w0":[0,0,0],"gusts":3}})";
    try {
      (void)parse_scenario(text);
      FAIL("expected a ScenarioError");
    } catch (const ScenarioError& e) {
      CHECK(std::string(e.what()).find("scenario.wind.gusts") != std::string::npos);
    }
  }
  SUBCASE("vgf is forbidden for intercepts and required for rendezvous") {
    CHECK_THROWS_AS((void)parse_scenario(R"({"kind":"intercept","r0":[1,0,0],"rf":[0,0,0],
      "vg0":[-1,0,0],"vgf":[0,0,0],"c_i":1.0,"wind":{"type":"constant"}})"),
                    ScenarioError);
    CHECK_THROWS_AS((void)parse_scenario(R"({"kind":"rendezvous","r0":[1,0,0],"rf":[0,0,0],
      "vg0":[-1,0,0],"c_i":1.0,"wind":{"type":"constant"}})"),
                    ScenarioError);
  }
  SUBCASE("exactly one of vg0 and airspeed0") {
    CHECK_THROWS_AS((void)parse_scenario(R"({"kind":"intercept","r0":[1,0,0],"rf":[0,0,0],
      "c_i":1.0,"wind":{"type":"constant"}})"),
                    ScenarioError);
  }
  SUBCASE("airspeed0 resolves the ground velocity through the wind at r0") {
    const auto s = load_scenario(data_dir + "/piecewise_field.json");
    const auto bc = s.boundary_conditions();
    const Vec3 w0 = wind_at(s.wind, 0.0, s.r0);
    const double rad = -110.0 * 3.14159265358979323846 / 180.0;
    CHECK(bc.vg0.x == doctest::Approx(20.0 * std::cos(rad) + w0.x));
    CHECK(bc.vg0.y == doctest::Approx(20.0 * std::sin(rad) + w0.y));
  }
  SUBCASE("shortest round-trip double formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(6.230630581839278) == "6.230630581839278");
  }
}

TEST_CASE("cli solve") {
  const auto dir = temp_dir();
  SUBCASE("planar rendezvous document") {
    const auto out = dir / "solve.json";
    REQUIRE(run_cli("solve " + data_dir + "/planar_rendezvous.json", out) == 0);
    const json doc = json::parse(slurp(out));
    CHECK(std::abs(doc["costates"]["p_r"][0].get<double>() - 1.33) < 0.01);
    CHECK(std::abs(doc["costates"]["p_r"][1].get<double>() - 0.74) < 0.01);
    CHECK(std::abs(doc["tf"].get<double>() - 6.2306) < 1e-3);
    CHECK(doc["roots"]["admissible"].size() >= 1);
    CHECK(doc["classification"]["valid"].get<bool>());
  }
  SUBCASE("degenerate scenario yields the tf = 0 sentinel") {
    const auto out = dir / "degenerate.json";
    REQUIRE(run_cli("solve " + data_dir + "/degenerate.json", out) == 0);
    const json doc = json::parse(slurp(out));
    CHECK(doc["tf"].get<double>() == 0.0);
    CHECK(doc["degenerate"].get<bool>());
  }
  SUBCASE("over-critical heading with C_I = 0 exits 3") {
    CHECK(run_cli("solve " + data_dir + "/intercept_over_critical.json") == 3);
  }
  SUBCASE("invalid scenario exits 2") {
    const auto bad = dir / "bad.json";
    std::ofstream(bad) << "{\"kind\": \"weird\"}";
    CHECK(run_cli("solve " + bad.string()) == 2);
  }
  SUBCASE("intercept scenario picks the cost-minimizing branch") {
    const auto out = dir / "intercept.json";
    REQUIRE(run_cli("solve " + data_dir + "/fig5_intercept.json", out) == 0);
    const json doc = json::parse(slurp(out));
    CHECK(doc["case"] == "intercept");
    CHECK(std::abs(doc["tf"].get<double>() - 3.0) < 1e-3);
    // C_I = 1e-6 nudges the root off K = 1 by ~3e-7, outside the named band.
    CHECK(std::abs(doc["classification"]["k"].get<double>() - 1.0) < 1e-4);
  }
  SUBCASE("shear scenario solves through the cross-track law") {
    const auto out = dir / "shear.json";
    REQUIRE(run_cli("solve " + data_dir + "/shear.json", out) == 0);
    const json doc = json::parse(slurp(out));
    CHECK(doc["case"] == "shear");
    CHECK(doc["costates"]["p_r"][1].get<double>() == 0.0);
  }
}

TEST_CASE("cli simulate") {
  const auto dir = temp_dir();
  SUBCASE("open-loop trajectory CSV") {
    const auto out = dir / "traj.csv";
    REQUIRE(run_cli("simulate " + data_dir + "/planar_rendezvous.json --out " + out.string()) ==
            0);
    const std::string text = slurp(out);
    CHECK(text.rfind("t,x,y,z,vgx,vgy,vgz,vax,vay,vaz,wx,wy,wz,ux,uy,uz,H,ci_eff\n", 0) == 0);
    CHECK(text.find("# t_arrival=") != std::string::npos);

    // final sample ends within 1e-6 of the target
    std::istringstream lines(text);
    std::string line, last_data;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      if (!line.empty() && line[0] != '#') last_data = line;
    }
    std::istringstream row(last_data);
    std::string cell;
    std::vector<double> cells;
    while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
    REQUIRE(cells.size() == 18);
    CHECK(std::abs(cells[1]) < 1e-6);
    CHECK(std::abs(cells[2]) < 1e-6);

    // sidecar metadata exists and echoes the scenario
    const json meta = json::parse(slurp(out.string() + ".meta.json"));
    CHECK(meta["command"] == "simulate");
    CHECK(meta["scenario"]["c_i"].get<double>() == 10.0);

    // determinism: a second run is byte-identical
    const auto out2 = dir / "traj2.csv";
    REQUIRE(run_cli("simulate " + data_dir + "/planar_rendezvous.json --out " + out2.string()) ==
            0);
    CHECK(slurp(out) == slurp(out2));
  }
  SUBCASE("piecewise spatial-field scenario lands within the capture radius") {
    const auto out = dir / "piecewise.csv";
    REQUIRE(run_cli("simulate " + data_dir + "/piecewise_field.json --out " + out.string()) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("# t_arrival=") != std::string::npos);
    CHECK(text.find("# event: captured") != std::string::npos);
  }
  SUBCASE("max_time exceeded exits 4") {
    CHECK(run_cli("simulate " + data_dir + "/max_time_exceeded.json") == 4);
  }
  SUBCASE("json-lines format") {
    const auto out = dir / "traj.jsonl";
    REQUIRE(run_cli("simulate " + data_dir + "/planar_rendezvous.json --format json-lines --out " +
                    out.string()) == 0);
    std::istringstream lines(slurp(out));
    std::string first;
    std::getline(lines, first);
    const json sample = json::parse(first);
    CHECK(sample["t"].get<double>() == 0.0);
  }
}

TEST_CASE("cli sweeps") {
  const auto dir = temp_dir();
  SUBCASE("pareto branch collapse near the critical trade-off") {
    const auto out = dir / "pareto.csv";
    REQUIRE(run_cli("pareto " + data_dir +
                    "/pareto_1d.json --min 0.5 --max 30 --steps 60 --out " + out.string()) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    CHECK(line == "c_i,branch,t_f,energy,local_min,bifurcation");
    std::set<int> low, high;
    while (std::getline(lines, line)) {
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      const double ci = std::stod(cells[0]);
      const int branch = std::stoi(cells[1]);
      if (ci < 17.0) low.insert(branch);
      if (ci > 19.0) high.insert(branch);
    }
    CHECK(low.size() == 3);
    CHECK(high.size() == 1);
  }
  SUBCASE("roots sweep flags the heading bifurcations") {
    const auto out_i = dir / "roots_i.csv";
    REQUIRE(run_cli("roots " + data_dir +
                    "/fig5_intercept.json --sweep vgy0 --min 0 --max 1.2 --steps 241 --out " +
                    out_i.string()) == 0);
    const std::string text = slurp(out_i);
    bool saw_transition = false;
    std::istringstream lines(text);
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
      std::istringstream row(line);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(row, cell, ',')) cells.push_back(cell);
      if (cells.back() == "1") {
        const double param = std::stod(cells[0]);
        CHECK(std::abs(param - 0.5773502691896258) < 0.02);
        saw_transition = true;
      }
    }
    CHECK(saw_transition);
  }
  SUBCASE("grid validation exits 2") {
    CHECK(run_cli("pareto " + data_dir + "/pareto_1d.json --min 1 --max 30 --steps 0") == 2);
    CHECK(run_cli("roots " + data_dir + "/fig5_intercept.json --sweep bogus --min 0 --max 1 "
                  "--steps 5") == 2);
  }
  SUBCASE("single-point grid emits one parameter row") {
    const auto out = dir / "single.csv";
    REQUIRE(run_cli("pareto " + data_dir + "/pareto_1d.json --min 1 --steps 1 --out " +
                    out.string()) == 0);
    std::istringstream lines(slurp(out));
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
      CHECK(line.rfind("1,", 0) == 0);
      ++rows;
    }
    CHECK(rows >= 1);
  }
}

TEST_CASE("cli classify") {
  const auto dir = temp_dir();
  const auto out = dir / "classify.json";
  REQUIRE(run_cli("classify " + data_dir + "/planar_rendezvous.json", out) == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["classification"]["valid"].get<bool>());
  CHECK(doc["classification"]["t_r"].get<double>() == doctest::Approx(30.0));
  CHECK(doc["classification"]["category"] == "intermediate");
}
