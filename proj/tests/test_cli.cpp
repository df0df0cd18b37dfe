#include "qwalk/graph.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "qwalk_cli_test";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string(QWALK_CLI) + " " + args;
  if (!out.empty()) cmd += " -o " + out.string();
  cmd += " 2>" + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json run_json(const std::string& args) {
  const fs::path out = scratch() / "out.json";
  REQUIRE(run(args, out) == 0);
  return json::parse(slurp(out));
}

}  // namespace

TEST_CASE("gen writes edge-list files") {
  const fs::path f30 = scratch() / "f30.graph";
  CHECK(run("gen --tube 30", f30) == 0);
  CHECK(qwalk::load_graph(f30).n_edges() == 45);

  const fs::path c60 = scratch() / "c60.graph";
  CHECK(run("gen --c60", c60) == 0);
  const auto g = qwalk::load_graph(c60);
  CHECK(g.n_edges() == 90);
  CHECK(g == qwalk::build_c60_blocked());
}

TEST_CASE("validation errors exit with code 2") {
  CHECK(run("gen --tube 25") == 2);
  CHECK(slurp(scratch() / "stderr.txt").find("multiple of 10") != std::string::npos);
  CHECK(run("gen") == 2);
  CHECK(run("gen --tube 30 --c60") == 2);
  CHECK(run("nonsense") == 2);
  CHECK(run("bound --c60 --observable node:99") == 2);
  CHECK(run("limiting --graph /nonexistent/file.graph") == 2);
}

TEST_CASE("limiting on C60") {
  const json j = run_json("limiting --c60");
  const auto& u = j["u"];
  const double row1[5] = {0.079, 0.024, 0.021, 0.021, 0.024};
  for (int y = 0; y < 5; ++y) CHECK(std::abs(u[0][y].get<double>() - row1[y]) < 5e-4);
  CHECK(j["footer"]["max_row_sum_error"].get<double>() < 1e-9);
  CHECK(j["footer"]["mirror_residual"].get<double>() < 1e-9);
  CHECK(j["header"]["tool"] == "qwalk");
  CHECK(j["header"]["graph_checksum"] == qwalk::graph_checksum(qwalk::build_c60_blocked()));
  CHECK(j["header"]["config"]["command"] == "limiting");

  const fs::path csv = scratch() / "u.csv";
  CHECK(run("limiting --tube 30 --format csv --triples", csv) == 0);
  const std::string text = slurp(csv);
  CHECK(text.rfind("x,y,u\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 901);
}

TEST_CASE("bound reports") {
  const json c60 = run_json("bound --c60 --start 1 --n-eps 1 --tau-count 12");
  CHECK(c60["n_eps_used"] == 1);
  CHECK(c60["n_lambda"] == 15);
  CHECK(std::abs(c60["asymptote"].get<double>() - 0.08) < 2e-3);
  CHECK(c60["bound_holds"] == true);
  CHECK(c60["table"].size() == 12);

  const json f30 = run_json("bound --tube 30 --tau-count 8");
  CHECK(f30["bound_holds"] == true);
  CHECK(f30["n_eps_override"].is_null());
}

TEST_CASE("gibbs comparison over the tube family") {
  const fs::path out = scratch() / "gibbs.csv";
  REQUIRE(run("gibbs --family 30..130 --format csv", out) == 0);
  const std::string text = slurp(out);
  CHECK(text.rfind("N,u_NN,p_beta_min,p_beta_max,gibbs_matchable\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  CHECK(text.find("true") == std::string::npos);

  const fs::path sweep = scratch() / "sweep.csv";
  REQUIRE(run("gibbs --sweep --beta-count 5 --format csv", sweep) == 0);
  CHECK(slurp(sweep).rfind("beta,Z,p_j,p_0\n", 0) == 0);
}

TEST_CASE("eth on C60") {
  const json pos = run_json("eth --c60 --observable position --samples 50");
  for (const auto& v : pos["diagonal"]) CHECK(std::abs(v.get<double>() - 30.5) < 1e-9);
  const json node = run_json("eth --c60 --observable node:2 --samples 50");
  CHECK(std::abs(node["diag_std"].get<double>() - 0.018) < 3e-3);
  CHECK(node["nodes"].size() == 60);
}

TEST_CASE("symmetry check on the adapted basis") {
  const json j = run_json("symmetry --c60 --basis adapted");
  CHECK(j["ok"] == true);
  CHECK(j["basis"] == "symmetry-adapted");
  CHECK(run("symmetry --tube 30 --basis adapted") == 2);
}

TEST_CASE("identical configs give byte-identical output") {
  const fs::path out = scratch() / "repro.json";
  const std::string args = "eth --c60 --observable node:1 --seed 7 --samples 100 --reproducible";
  REQUIRE(run(args, out) == 0);
  const std::string first = slurp(out);
  REQUIRE(run(args, out) == 0);
  CHECK(slurp(out) == first);
  CHECK(json::parse(first)["header"]["timing"].is_null());
}
