#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polytree/cli.hpp"

using polytree::run_cli;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = std::string("cli_test_") + name;
  std::ofstream f(path);
  f << body;
  return path;
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("spectral command emits the versioned CSV with reference values") {
  const RunResult r = run({"spectral", "--q", "2", "--lambda", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# polytree-csv v1\n", 0) == 0);
  CHECK(r.out.find("outside-disk") != std::string::npos);
  CHECK(r.out.find("0.50000000000000022") != std::string::npos);  // F(1) = 1/2
  CHECK(count_lines(r.out) == 3);  // banner, header, one row
}

TEST_CASE("spectral identity residuals stay tiny for complex lambda") {
  const RunResult r = run({"spectral", "--q", "2", "--lambda", "1,1"});
  CHECK(r.code == 0);
  // residual columns sit at the end of the data row
  const auto last_line = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  std::istringstream is(last_line);
  std::string cell;
  std::vector<std::string> cells;
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 21);
  CHECK(std::stod(cells[15]) < 1e-12);  // quadratic residual
  CHECK(std::stod(cells[16]) < 1e-14);  // product residual
}

TEST_CASE("in-spectrum lambda exits with code 2") {
  const RunResult r = run({"spectral", "--q", "2", "--lambda", "0.5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("spectrum") != std::string::npos);
}

TEST_CASE("missing files exit with code 3") {
  const RunResult r = run({"dirichlet", "--q", "2", "--lambda", "2", "--g",
                           "does_not_exist.txt", "--end", "0|1", "--depths",
                           "1:5:1"});
  CHECK(r.code == 3);
}

TEST_CASE("parse errors exit with code 2") {
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"spectral", "--q", "2"}).code == 2);  // missing --lambda
  CHECK(run({"spectral", "--q", "2", "--lambda", "zz"}).code == 2);
  CHECK(run({"dirichlet", "--q", "2", "--lambda", "2", "--g", "g.txt",
             "--end", "0|1", "--depths", "5:1:1"})
            .code == 2);  // empty depth range
}

TEST_CASE("dirichlet probe errors decrease along the ray") {
  const std::string g = write_temp("g.txt", "0.1 1.0 0.0\n");
  const RunResult r = run({"dirichlet", "--q", "2", "--lambda", "2", "--g", g,
                           "--end", "0.1|0", "--depths", "4:16:4"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);  // banner
  std::getline(is, line);  // header
  CHECK(line ==
        "end,a,depth,vertex,value_re,value_im,target_re,target_im,abs_error");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(is, line)) {
    const double err_col = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(err_col <= prev);
    prev = err_col;
    ++rows;
  }
  CHECK(rows == 4);
  std::remove(g.c_str());
}

TEST_CASE("reproducibility: identical invocations give byte-identical CSV") {
  const std::string g = write_temp("repro.txt", "0 1.0 0.5\n1 -1.0 0.25\n");
  const std::vector<std::string> args = {
      "maximal",  "--q",   "2",       "--lambda", "2",    "--g", g,
      "--random-ends", "5", "--seed", "99",      "--max-depth", "20"};
  const RunResult r1 = run(args);
  const RunResult r2 = run(args);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.find("# polytree-csv v1") == 0);
  // all inequality rows satisfied
  CHECK(r1.out.find(",0\n") == std::string::npos);
  std::remove(g.c_str());
}

TEST_CASE("riquier command probes each order") {
  const std::string g0 = write_temp("r0.txt", "0 1 0\n");
  const std::string g1 = write_temp("r1.txt", "1 2 -1\n");
  const RunResult r = run({"riquier", "--q", "2", "--lambda", "2", "--n", "2",
                           "--g0", g0, "--g1", g1, "--end", "1|0", "--depths",
                           "10:30:10"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("k,end,a,depth") != std::string::npos);
  CHECK(count_lines(r.out) == 2 + 6);  // two orders x three depths
  std::remove(g0.c_str());
  std::remove(g1.c_str());
}

TEST_CASE("fatou command handles distribution files and cone widths") {
  const std::string nu = write_temp("nu.txt", "pm 0|0 1 0\nac 1 0.5 0\n");
  const RunResult r = run({"fatou", "--q", "2", "--lambda", "2", "--n", "0",
                           "--nu", nu, "--end", "1|1", "--a", "1", "--depths",
                           "5:25:5"});
  REQUIRE(r.code == 0);
  // target = density value at the probe end (point mass contributes 0)
  CHECK(r.out.find(",0.5,0,") != std::string::npos);
  std::remove(nu.c_str());
}

TEST_CASE("oracle command reports series, bound, and closed form") {
  const RunResult r = run({"oracle", "--q", "2", "--lambda", "2", "--d", "1",
                           "--N", "2000"});
  REQUIRE(r.code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  std::getline(is, line);
  std::getline(is, line);
  std::istringstream row(line);
  std::vector<std::string> cells;
  std::string cell;
  while (std::getline(row, cell, ',')) cells.push_back(cell);
  REQUIRE(cells.size() == 11);
  CHECK(std::stod(cells.back()) < 1e-8);  // |series - F|
}

TEST_CASE("output redirection writes the file") {
  const std::string path = "cli_out.csv";
  const RunResult r = run({"spectral", "--q", "3", "--lambda", "2",
                           "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string first;
  std::getline(f, first);
  CHECK(first == "# polytree-csv v1");
  f.close();
  std::remove(path.c_str());
}

TEST_CASE("help exits zero") {
  const RunResult r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("spectral") != std::string::npos);
}
