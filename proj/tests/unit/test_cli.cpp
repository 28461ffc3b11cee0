#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using posynt::cli::run;

namespace {

const char* kPsi = "(G F u -> F(i <-> o)) & (G F !u -> F(i | o))";

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "posynt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("posynt-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Runs the real binary; stdout only.
Result shell(const std::string& args) {
  std::string cmd = std::string(POSYNT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out, {}};
}

}  // namespace

TEST_CASE("list splitting") {
  using posynt::cli::split_list;
  CHECK(split_list("a,b c\td") == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(split_list("").empty());
  CHECK(split_list(" , ").empty());
}

TEST_CASE("part files") {
  auto dir = scratch("part");
  write(dir / "bm.ltlf", "F(a <-> c)\n");
  write(dir / "bm.part", ".inputs: a b\n.outputs: c\n");
  auto p = posynt::cli::load_part_pair((dir / "bm.ltlf").string(), (dir / "bm.part").string(), {"b"});
  CHECK(p.inputs == std::vector<std::string>{"a"});
  CHECK(p.unobservable == std::vector<std::string>{"b"});
  CHECK(p.outputs == std::vector<std::string>{"c"});
  CHECK_THROWS(posynt::cli::load_part_pair((dir / "bm.ltlf").string(), (dir / "bm.part").string(),
                                           {"c"}));
  auto q = posynt::cli::load_part_pair((dir / "bm.ltlf").string(), (dir / "bm.part").string(), {});
  CHECK(q.inputs.size() == 2);
  CHECK(q.unobservable.empty());
  write(dir / "bad.part", ".inputs: a\n.wrong: c\n");
  CHECK_THROWS(posynt::cli::load_part_pair((dir / "bm.ltlf").string(), (dir / "bad.part").string(),
                                           {}));
  write(dir / "half.part", ".inputs: a\n");
  CHECK_THROWS(posynt::cli::load_part_pair((dir / "bm.ltlf").string(),
                                           (dir / "half.part").string(), {}));

  auto r = call({"--file", (dir / "bm.ltlf").string(), "--part", (dir / "bm.part").string(),
                 "--unobservable-ins", "b", "--print-strategy"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("REALIZABLE\n", 0) == 0);
  auto bad = call({"--file", (dir / "bm.ltlf").string(), "--part", (dir / "bm.part").string(),
                   "--unobservable-ins", "c"});
  CHECK(bad.code == 2);
  CHECK(bad.err.rfind("error:", 0) == 0);
}

TEST_CASE("running example from the command line") {
  auto r = call({"--formula", kPsi, "--ins", "i", "--outs", "o", "--unobservable-ins", "u",
                 "--semantics", "mealy", "--print-strategy"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "REALIZABLE\nsemantics: mealy\nins: i\nouts: o\n0 \"!i / !o\" 1\n"
        "0 \"i / o\" TERMINATE\n1 \"- / o\" TERMINATE\n");
  auto v = call({"--formula", kPsi, "--ins", "u,i", "--outs", "o", "--unobservable-ins", "",
                 "--print-strategy"});
  CHECK(v.code == 0);
  CHECK(v.out.find(" 1") == std::string::npos);  // every edge terminates
  auto full = call({"--formula", kPsi, "--ins", "i", "--outs", "o", "--unobservable-ins", "u",
                    "--mode", "full", "--stats=json"});
  CHECK(full.code == 0);
  CHECK(full.out.find("\"state_count\": 4") != std::string::npos);
  auto dot = call({"--formula", kPsi, "--ins", "i", "--outs", "o", "--unobservable-ins", "u",
                   "--print-strategy", "--format", "dot", "--print-automaton"});
  CHECK(dot.out.find("digraph controller") != std::string::npos);
  CHECK(dot.out.find("digraph mtbdd") != std::string::npos);
  auto timed = call({"--formula", "tt", "--outs", "o", "--timing"});
  CHECK(timed.out.find("wall_ms") != std::string::npos);
}

TEST_CASE("exit code contract") {
  CHECK(call({"--formula", "F o", "--outs", "o"}).code == 0);
  CHECK(call({"--formula", "G(N tt)", "--ins", "i", "--outs", "o"}).code == 1);
  CHECK(call({"--formula", "i <-> o", "--ins", "i", "--outs", "o", "--semantics", "moore"}).code ==
        1);
  auto syntax = call({"--formula", "F(o", "--outs", "o"});
  CHECK(syntax.code == 2);
  CHECK(syntax.err.rfind("error: parse:", 0) == 0);
  auto overlap = call({"--formula", "o", "--ins", "o", "--outs", "o"});
  CHECK(overlap.code == 2);
  CHECK(overlap.err.rfind("error: partition:", 0) == 0);
  CHECK(call({"--formula", "o", "--ins", "i", "--outs", "o", "--unobservable-ins", "o"}).code == 2);
  CHECK(call({"--formula", "zz", "--outs", "o"}).code == 2);
  CHECK(call({"--outs", "o"}).code == 2);
  CHECK(call({"--formula", "o", "--outs", "o", "--mode", "lazy"}).code == 2);
  CHECK(call({"--formula", "o", "--outs", "o", "--bogus"}).code == 2);
  auto tiny = call({"--formula", kPsi, "--ins", "i", "--outs", "o", "--unobservable-ins", "u",
                    "--mode", "full", "--max-states", "2"});
  CHECK(tiny.code == 3);
  CHECK(tiny.err.rfind("error: resource:", 0) == 0);
  CHECK(call({"--formula", kPsi, "--ins", "i", "--outs", "o", "--unobservable-ins", "u",
              "--max-nodes", "5"})
            .code == 3);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("the binary honours the same contract") {
  std::string psi = std::string("'") + kPsi + "'";
  CHECK(shell("--formula " + psi + " --ins i --outs o --unobservable-ins u").code == 0);
  CHECK(shell("--formula 'G(N tt)' --ins i --outs o").code == 1);
  CHECK(shell("--formula 'F(o' --outs o").code == 2);
  CHECK(shell("--formula o --ins o --outs o").code == 2);
  CHECK(shell("--formula " + psi + " --ins i --outs o --unobservable-ins u --mode full "
              "--max-states 2")
            .code == 3);
  std::string args = "--formula " + psi +
                     " --ins i --outs o --unobservable-ins u --print-strategy --print-automaton "
                     "--stats=json";
  Result a = shell(args), b = shell(args);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("REALIZABLE\n", 0) == 0);
}

TEST_CASE("bench harness") {
  auto dir = scratch("bench");
  write(dir / "four.ltlf", "F(o <-> (a | b)) | G(c -> X d)\n");
  write(dir / "four.part", ".inputs: a b c d\n.outputs: o\n");
  write(dir / "broken.ltlf", "F(o\n");
  write(dir / "broken.part", ".inputs: a\n.outputs: o\n");
  write(dir / "nopart.ltlf", "o\n");
  auto csv = dir / "report.csv";
  auto r = call({"bench", dir.string(), "--reps", "10", "--hide", "0.5", "--seed", "3",
                 "--output", csv.string()});
  std::ifstream in(csv);
  std::vector<std::string> rows;
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "instance,rep,hidden_set,mode,verdict,states,deltas,nodes,ms,status");
  std::size_t four_rows = 0, exhausted = 0, parse_rows = 0, skipped = 0;
  std::set<std::string> hidden;
  for (const auto& row : rows) {
    if (row.rfind("four,", 0) == 0) {
      if (row.find("exhausted") != std::string::npos) {
        ++exhausted;
        continue;
      }
      ++four_rows;
      CHECK(row.substr(row.rfind(',') + 1) == "ok");
      auto c1 = row.find(','), c2 = row.find(',', c1 + 1), c3 = row.find(',', c2 + 1);
      hidden.insert(row.substr(c2 + 1, c3 - c2 - 1));
    }
    if (row.rfind("broken,", 0) == 0 && row.find(",parse") != std::string::npos) ++parse_rows;
    if (row.rfind("nopart,", 0) == 0) ++skipped;
  }
  CHECK(four_rows == 12);  // C(4,2) = 6 hidden sets, two modes each
  CHECK(hidden.size() == 6);
  CHECK(exhausted == 1);
  CHECK(parse_rows > 0);
  CHECK(skipped == 1);
  CHECK(r.code == 0);

  // Same seed, same table apart from timings.
  auto strip = [](const fs::path& p) {
    std::ifstream f(p);
    std::string all;
    for (std::string line; std::getline(f, line);) {
      // drop the ms column (9th)
      std::vector<std::string> cols;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
      if (cols.size() >= 9) cols[8] = "";
      for (const auto& c : cols) all += c + ",";
      all += "\n";
    }
    return all;
  };
  auto csv2 = dir / "again.csv";
  call({"bench", dir.string(), "--reps", "10", "--hide", "0.5", "--seed", "3", "--output",
        csv2.string()});
  CHECK(strip(csv) == strip(csv2));
  CHECK(call({"bench", (dir / "missing").string()}).code == 2);
}
