#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tensegrity/cli.hpp"
#include "tensegrity/io.hpp"

using namespace tensegrity;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("tensegrity_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("model then analyze") {
  const std::string ten = temp("ten.json");
  const std::string nine = temp("nine.json");
  CHECK(run({"model", "ten-segrity", "-o", ten}).code == cli::kExitOk);
  CHECK(run({"model", "nine-segrity", "--theta", "210", "--rod-length", "4", "-o", nine}).code == cli::kExitOk);
  CHECK(io::read_model(nine).point(3).z() == doctest::Approx(3.502563231753443).epsilon(1e-15));

  const Run a = run({"analyze", ten, "--require-stable"});
  CHECK(a.code == cli::kExitOk);
  CHECK(a.out.find("\"verdict\": \"stable\"") != std::string::npos);
  const Run b = run({"analyze", nine, "--require-stable"});
  CHECK(b.code == cli::kExitNotStable);
  CHECK(b.out.find("soft-mode") != std::string::npos);
  CHECK(run({"analyze", nine}).code == cli::kExitOk);
}

TEST_CASE("input errors exit with code 2") {
  const std::string bad = temp("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run({"analyze", bad}).code == cli::kExitInputError);
  CHECK(run({"analyze", temp("missing.json")}).code == cli::kExitInputError);
  const Run unknown = run({"model", "icosahedron"});
  CHECK(unknown.code == cli::kExitInputError);
  CHECK(unknown.err.find("unknown-builtin") != std::string::npos);
  CHECK(run({"model", "nine-segrity", "--theta", "180", "--rod-length", "1"}).code == cli::kExitInputError);
  CHECK(run({"model", "nine-segrity", "--theta", "0", "--rod-length", "1"}).code == cli::kExitOk);
  CHECK(run({}).code == cli::kExitInputError);
  CHECK(run({"analyze"}).code == cli::kExitInputError);
  CHECK(run({"curves", "--rod-length", "4", "--samples", "1"}).code == cli::kExitInputError);
}

TEST_CASE("help") {
  const Run h = run({"--help"});
  CHECK(h.code == cli::kExitOk);
  CHECK(h.out.find("formfind") != std::string::npos);
  const Run m = run({"modal", "--help"});
  CHECK(m.out.find("--kevlar-E") != std::string::npos);
  CHECK(m.out.find("--prestress") != std::string::npos);
}

TEST_CASE("forces, modal, formfind and curves") {
  const std::string ten = temp("ten2.json");
  run({"model", "ten-segrity", "-o", ten});

  const Run f = run({"forces", ten});
  CHECK(f.code == cli::kExitOk);
  CHECK(f.out.rfind("member_i,member_j,kind,coefficient,force\n", 0) == 0);

  const Run m = run({"modal", ten, "--modes", "8"});
  CHECK(m.code == cli::kExitOk);
  CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 9);
  CHECK(m.out.find("7,55.75") != std::string::npos);
  const Run soft = run({"modal", ten, "--kevlar-E", "1e7", "--modes", "18", "--fix", "0,1,2"});
  CHECK(soft.code == cli::kExitOk);
  CHECK(soft.out.find("rigid") == std::string::npos);

  const std::string found = temp("found.json");
  const std::string trace = temp("trace.txt");
  const Run ff = run({"formfind", ten, "-o", found, "--trace", trace});
  CHECK(ff.code == cli::kExitOk);
  CHECK(io::read_model(found).num_cables() == 10);
  CHECK(slurp(trace).find("action=accept") != std::string::npos);
  const Run own = run({"formfind", ten, "--pool-from-cables"});
  CHECK(own.code == cli::kExitOk);
  CHECK(own.err.find("node=1 depth=0 active=10") != std::string::npos);
  CHECK(run({"formfind", ten, "--node-limit", "1"}).code == cli::kExitNotStable);

  const std::string c1 = temp("c1.csv");
  const std::string c2 = temp("c2.csv");
  CHECK(run({"curves", "--rod-length", "4", "--samples", "360", "-o", c1}).code == cli::kExitOk);
  CHECK(run({"curves", "--rod-length", "4", "--samples", "360", "-o", c2}).code == cli::kExitOk);
  const std::string first = slurp(c1);
  CHECK(first == slurp(c2));
  CHECK(std::count(first.begin(), first.end(), '\n') == 361);
}

TEST_CASE("the installed binary runs") {
  const std::string out = temp("binary.json");
  const std::string cmd = std::string(TENSEGRITY_CLI) + " model kite -o " + out;
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(io::read_model(out).dimension() == 2);
}

}  // TEST_SUITE
