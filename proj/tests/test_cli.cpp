// Exercises the installed command-line surface end to end: exit codes,
// report fields, and file outputs. The binary path arrives via SEQPATH_CLI.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "seqpath/game_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* p = std::getenv("SEQPATH_CLI");
  REQUIRE_MESSAGE(p != nullptr, "SEQPATH_CLI must point at the binary");
  return p;
}

RunResult run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
    res.output.append(buf.data(), n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "seqpath-cli-tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  REQUIRE(out.good());
  out << text;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const char* kHorseTypeOne = R"({
  "profile": [
    {"player": 1, "infoset": "I1", "probs": {"D": 0, "C": 1}},
    {"player": 2, "infoset": "I2", "probs": {"d": 0, "c": 1}},
    {"player": 3, "infoset": "I3", "probs": {"L": 0, "R": 1}}
  ],
  "beliefs": [
    {"player": 3, "infoset": "I3", "probs": {"D": 0.2, "C/d": 0.8}}
  ]
})";

const char* kHorseDcL = R"({
  "profile": [
    {"player": 1, "infoset": "I1", "probs": {"D": 1, "C": 0}},
    {"player": 2, "infoset": "I2", "probs": {"d": 0, "c": 1}},
    {"player": 3, "infoset": "I3", "probs": {"L": 1, "R": 0}}
  ],
  "beliefs": [
    {"player": 3, "infoset": "I3", "probs": {"D": 1, "C/d": 0}}
  ]
})";

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("missing game file exits 2") {
  const RunResult res = run("solve /nonexistent/missing.json");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("error:") != std::string::npos);
}

TEST_CASE("fixtures listing and export") {
  const fs::path dir = scratch_dir();
  const RunResult res = run("fixtures --out-dir " + dir.string());
  CHECK(res.exit_code == 0);
  for (const char* name : {"F1", "F2", "F3", "F4", "FA1", "FA2", "FN"}) {
    CHECK(res.output.find(name) != std::string::npos);
    CHECK(fs::exists(dir / (std::string(name) + ".json")));
  }
  // Exported games parse back.
  const seqpath::GameTree f3 =
      seqpath::load_game((dir / "F3.json").string());
  CHECK(f3.num_actions_total() == 6);
}

TEST_CASE("solve reports an accepted equilibrium on F1") {
  const fs::path dir = scratch_dir();
  run("fixtures --out-dir " + dir.string());
  const RunResult res =
      run("solve " + (dir / "F1.json").string() +
          " --method entb-w --seed 7 --out " + (dir / "f1_out.json").string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("status: accepted") != std::string::npos);
  CHECK(res.output.find("verdict: accepted") != std::string::npos);
  CHECK(res.output.find("method: entb-w") != std::string::npos);
  // The mixing block lands on (2/7, 5/7) and (1/8, 7/8).
  auto value_after = [&](const std::string& key) {
    const std::size_t pos = res.output.find(key);
    REQUIRE(pos != std::string::npos);
    return std::strtod(res.output.c_str() + pos + key.size(), nullptr);
  };
  CHECK(value_after("L=") == doctest::Approx(2.0 / 7.0).epsilon(1e-4));
  CHECK(value_after("U=") == doctest::Approx(1.0 / 8.0).epsilon(1e-4));
  CHECK(fs::exists(dir / "f1_out.json"));

  SUBCASE("the emitted assessment passes check") {
    const RunResult chk = run("check " + (dir / "F1.json").string() + " " +
                              (dir / "f1_out.json").string());
    CHECK(chk.exit_code == 0);
    CHECK(chk.output.find("verdict: accepted") != std::string::npos);
  }
}

TEST_CASE("check exit codes") {
  const fs::path dir = scratch_dir();
  run("fixtures --out-dir " + dir.string());
  const fs::path game = dir / "F3.json";
  SUBCASE("accepted assessment exits 0") {
    write_file(dir / "good.json", kHorseTypeOne);
    const RunResult res =
        run("check " + game.string() + " " + (dir / "good.json").string());
    CHECK(res.exit_code == 0);
  }
  SUBCASE("rejected assessment exits 1 and names the violation") {
    write_file(dir / "bad.json", kHorseDcL);
    const RunResult res =
        run("check " + game.string() + " " + (dir / "bad.json").string());
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("violation: infoset I2 (d over c") !=
          std::string::npos);
  }
  SUBCASE("malformed assessment exits 2") {
    write_file(dir / "broken.json", "{\"profile\": [");
    const RunResult res =
        run("check " + game.string() + " " + (dir / "broken.json").string());
    CHECK(res.exit_code == 2);
  }
  SUBCASE("eps-gamma flags engage the totally mixed check") {
    write_file(dir / "good.json", kHorseTypeOne);
    const RunResult res = run("check " + game.string() + " " +
                              (dir / "good.json").string() +
                              " --gamma 0.1 --eps 0.01");
    CHECK(res.exit_code == 2);  // not totally mixed -> input error
  }
}

TEST_CASE("generate produces the advertised structure") {
  const fs::path dir = scratch_dir();
  const fs::path out = dir / "c_game.json";
  const RunResult res = run(
      "generate --type C --n 2 --a 2,2 --layers 3 --m 11,21 --seed 5 --out " +
      out.string());
  CHECK(res.exit_code == 0);
  const seqpath::GameTree g = seqpath::load_game(out.string());
  std::vector<int> counts(2, 0);
  for (const auto& is : g.infosets()) counts[is.player - 1]++;
  CHECK(counts == std::vector<int>{11, 21});
  SUBCASE("a wrong --m cross-check is rejected") {
    const RunResult bad =
        run("generate --type C --n 2 --a 2,2 --layers 3 --m 11,22");
    CHECK(bad.exit_code == 2);
  }
}

TEST_CASE("bench CSV surface") {
  const fs::path dir = scratch_dir();
  SUBCASE("count 0 emits only the header") {
    const RunResult res =
        run("bench --type A --n 3 --a 2,3,3 --count 0 --methods entb-w");
    CHECK(res.exit_code == 0);
    CHECK(res.output ==
          "spec,method,time_avg,time_min,time_max,iters_avg,iters_min,"
          "iters_max,successes,total\n");
  }
  SUBCASE("omit-time runs are bitwise reproducible") {
    const fs::path csv1 = dir / "bench1.csv";
    const fs::path csv2 = dir / "bench2.csv";
    const std::string base =
        "bench --type A --n 3 --a 2,3,3 --count 3 --methods entb-w --seed 31 "
        "--omit-time --jobs 2 --out ";
    CHECK(run(base + csv1.string()).exit_code == 0);
    CHECK(run(base + csv2.string()).exit_code == 0);
    const std::string a = read_file(csv1), b = read_file(csv2);
    CHECK(a == b);
    CHECK(a.find("A,3,(1,1,2),(2,3,3),entb-w,0,0,0,") != std::string::npos);
    CHECK(a.find(",3,3\n") != std::string::npos);  // 3/3 successes
  }
}

TEST_CASE("trace TSV is written and deterministic") {
  const fs::path dir = scratch_dir();
  run("fixtures --out-dir " + dir.string());
  const std::string base = "solve " + (dir / "F3.json").string() +
                           " --method entb-z --seed 11 --trace ";
  const fs::path t1 = dir / "t1.tsv", t2 = dir / "t2.tsv";
  CHECK(run(base + t1.string()).exit_code == 0);
  CHECK(run(base + t2.string()).exit_code == 0);
  const std::string a = read_file(t1);
  CHECK(a == read_file(t2));
  CHECK(a.rfind("t\tstep\tcorrector_iters\t", 0) == 0);
}

TEST_SUITE_END();
