#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "posynt/posynt.h"

namespace posynt::cli {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& names, const char* sep) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += sep;
    out += n;
  }
  return out;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool contains(const std::vector<std::string>& v, const std::string& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

Problem load_part_pair(const std::string& ltlf_path, const std::string& part_path,
                       const std::vector<std::string>& unobservable) {
  Problem p;
  p.formula = read_file(ltlf_path);
  std::istringstream part(read_file(part_path));
  bool have_in = false, have_out = false;
  std::string line;
  while (std::getline(part, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<std::string> names;
    for (std::string n; ls >> n;) names.push_back(n);
    if (key == ".inputs:") {
      p.inputs = names;
      have_in = true;
    } else if (key == ".outputs:") {
      p.outputs = names;
      have_out = true;
    } else {
      throw std::runtime_error("malformed part file '" + part_path + "': unexpected '" + key +
                               "'");
    }
  }
  if (!have_in || !have_out)
    throw std::runtime_error("malformed part file '" + part_path +
                             "': needs .inputs: and .outputs: lines");
  for (const auto& u : unobservable) {
    if (!contains(p.inputs, u))
      throw std::runtime_error("unobservable variable '" + u + "' is not a declared input");
  }
  std::erase_if(p.inputs, [&](const std::string& n) { return contains(unobservable, n); });
  p.unobservable = unobservable;
  return p;
}

namespace {

struct ContextHandle {
  posynt_context* ptr = nullptr;
  ~ContextHandle() { posynt_context_destroy(ptr); }
};

int exit_for(posynt_status s) {
  return s == POSYNT_ERR_RESOURCE ? resource_error : usage_error;
}

int report(std::ostream& err, posynt_status s) {
  err << "error: " << posynt_status_name(s) << ": " << posynt_last_error() << "\n";
  return exit_for(s);
}

struct RunOutcome {
  posynt_status status = POSYNT_OK;
  bool realizable = false;
  std::size_t states = 0, deltas = 0, nodes = 0;
  double ms = 0;
  std::string error;
};

RunOutcome solve_once(const Problem& p, posynt_semantics sem, posynt_mode mode, double timeout_ms) {
  RunOutcome r;
  ContextHandle h;
  r.status = posynt_context_create(join(p.inputs).c_str(), join(p.outputs).c_str(),
                                   join(p.unobservable).c_str(), sem, &h.ptr);
  if (r.status == POSYNT_OK) r.status = posynt_set_limits(h.ptr, 0, 0, timeout_ms);
  int real = 0;
  if (r.status == POSYNT_OK) r.status = posynt_solve(h.ptr, p.formula.c_str(), mode, &real);
  if (r.status != POSYNT_OK) {
    r.error = posynt_last_error();
    return r;
  }
  r.realizable = real != 0;
  posynt_counts(h.ptr, &r.states, &r.deltas, &r.nodes, &r.ms);
  return r;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

struct BenchOptions {
  std::string dir;
  std::size_t reps = 10;
  double hide = 0.5;
  std::uint64_t seed = 1;
  double timeout_s = 90;
  std::string semantics = "mealy";
  std::string output;
};

int bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(o.dir)) {
    err << "error: usage: '" << o.dir << "' is not a directory\n";
    return usage_error;
  }
  if (o.hide < 0 || o.hide > 1) {
    err << "error: usage: --hide must lie in [0, 1]\n";
    return usage_error;
  }
  std::vector<fs::path> instances;
  for (const auto& e : fs::directory_iterator(o.dir))
    if (e.path().extension() == ".ltlf") instances.push_back(e.path());
  std::sort(instances.begin(), instances.end());

  std::ofstream file;
  if (!o.output.empty()) {
    file.open(o.output);
    if (!file) {
      err << "error: usage: cannot write '" << o.output << "'\n";
      return usage_error;
    }
  }
  std::ostream& csv = o.output.empty() ? out : file;
  csv << "instance,rep,hidden_set,mode,verdict,states,deltas,nodes,ms,status\n";
  auto sem = o.semantics == "moore" ? POSYNT_MOORE : POSYNT_MEALY;
  bool failed = false;

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const auto& ltlf = instances[idx];
    std::string name = ltlf.stem().string();
    fs::path part = ltlf;
    part.replace_extension(".part");
    Problem base;
    try {
      base = load_part_pair(ltlf.string(), part.string(), {});
    } catch (const std::exception& e) {
      err << "warning: skipping " << name << ": " << e.what() << "\n";
      csv << name << ",0,,,,,,,,unreadable\n";
      continue;
    }
    const std::size_t n = base.inputs.size();
    const auto k = static_cast<std::size_t>(std::lround(o.hide * static_cast<double>(n)));
    const std::uint64_t available = binomial(n, k);
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                      static_cast<std::uint32_t>(idx)};
    std::mt19937_64 rng(seq);
    std::set<std::vector<std::string>> drawn;

    for (std::size_t rep = 0; rep < o.reps; ++rep) {
      if (drawn.size() >= available) {
        csv << name << ',' << rep << ",,,,,,,,exhausted: only " << available
            << " distinct hidden sets\n";
        break;
      }
      std::vector<std::string> hidden;
      do {
        std::vector<std::size_t> pick(n);
        for (std::size_t i = 0; i < n; ++i) pick[i] = i;
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(k);
        std::sort(pick.begin(), pick.end());
        hidden.clear();
        for (auto i : pick) hidden.push_back(base.inputs[i]);
      } while (drawn.count(hidden));
      drawn.insert(hidden);

      Problem p = load_part_pair(ltlf.string(), part.string(), hidden);
      RunOutcome runs[2];
      const posynt_mode modes[2] = {POSYNT_MODE_OTF, POSYNT_MODE_FULL};
      for (int m = 0; m < 2; ++m) runs[m] = solve_once(p, sem, modes[m], o.timeout_s * 1000.0);

      std::string check;
      if (runs[0].status == POSYNT_OK && runs[1].status == POSYNT_OK) {
        if (runs[0].realizable != runs[1].realizable) check = "mismatch";
        else if (runs[0].deltas > runs[1].states) check = "lazy-violation";
      }
      if (!check.empty()) failed = true;
      for (int m = 0; m < 2; ++m) {
        const RunOutcome& r = runs[m];
        csv << name << ',' << rep << ',' << join(hidden, " ") << ','
            << (m == 0 ? "otf" : "full") << ',';
        std::string status;
        if (r.status == POSYNT_OK) {
          status = check.empty() ? "ok" : check;
          csv << (r.realizable ? "REALIZABLE" : "UNREALIZABLE") << ',' << r.states << ','
              << r.deltas << ',' << r.nodes << ',' << r.ms << ',';
        } else {
          bool timeout = r.status == POSYNT_ERR_RESOURCE &&
                         r.error.find("time") != std::string::npos;
          status = timeout ? "timeout" : posynt_status_name(r.status);
          csv << ",,,,,";
        }
        csv << status << "\n";
      }
    }
  }
  return failed ? unrealizable : realizable;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LTLf synthesis under partial observability", "posynt"};
  app.set_version_flag("--version", std::string(posynt_version()));

  std::string formula, file, part, ins, outs, unobs, semantics = "mealy", mode = "otf",
      format = "text", stats;
  bool print_strategy = false, print_automaton = false, timing = false;
  std::size_t max_states = 0, max_nodes = 0;
  double timeout_s = 0;

  app.add_option("--formula", formula, "LTLf formula");
  app.add_option("--file", file, "file holding the formula");
  app.add_option("--part", part, "partition file with .inputs: and .outputs: lines");
  app.add_option("--ins", ins, "observable inputs");
  app.add_option("--outs", outs, "outputs");
  app.add_option("--unobservable-ins", unobs, "unobservable inputs");
  app.add_option("--semantics", semantics)->check(CLI::IsMember({"mealy", "moore"}));
  app.add_option("--mode", mode)->check(CLI::IsMember({"otf", "full"}));
  app.add_flag("--print-strategy", print_strategy, "print the controller");
  app.add_option("--format", format, "controller and automaton format")
      ->check(CLI::IsMember({"text", "dot"}));
  app.add_flag("--print-automaton", print_automaton, "print the belief automaton");
  app.add_option("--stats", stats, "print statistics")->check(CLI::IsMember({"json"}));
  app.add_flag("--timing", timing, "include wall time in the statistics");
  app.add_option("--max-states", max_states);
  app.add_option("--max-nodes", max_nodes);
  app.add_option("--timeout", timeout_s, "seconds")->check(CLI::NonNegativeNumber);

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "run both modes over a directory of instances");
  bench_cmd->add_option("dir", bo.dir)->required();
  bench_cmd->add_option("--reps", bo.reps);
  bench_cmd->add_option("--hide", bo.hide, "fraction of inputs made unobservable");
  bench_cmd->add_option("--seed", bo.seed);
  bench_cmd->add_option("--timeout", bo.timeout_s, "seconds per run")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--semantics", bo.semantics)->check(CLI::IsMember({"mealy", "moore"}));
  bench_cmd->add_option("--output", bo.output, "CSV file (default standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << posynt_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return usage_error;
  }

  if (bench_cmd->parsed()) return bench(bo, out, err);

  Problem p;
  if (!formula.empty() == !file.empty()) {
    err << "error: usage: give exactly one of --formula and --file\n";
    return usage_error;
  }
  if (!file.empty()) {
    if (part.empty()) {
      err << "error: usage: --file needs --part\n";
      return usage_error;
    }
    if (!ins.empty() || !outs.empty()) {
      err << "error: usage: --ins/--outs come from the part file\n";
      return usage_error;
    }
    try {
      p = load_part_pair(file, part, split_list(unobs));
    } catch (const std::exception& e) {
      err << "error: partition: " << e.what() << "\n";
      return usage_error;
    }
  } else {
    p.formula = formula;
    p.inputs = split_list(ins);
    p.outputs = split_list(outs);
    p.unobservable = split_list(unobs);
  }

  ContextHandle h;
  auto sem = semantics == "moore" ? POSYNT_MOORE : POSYNT_MEALY;
  if (auto s = posynt_context_create(join(p.inputs).c_str(), join(p.outputs).c_str(),
                                     join(p.unobservable).c_str(), sem, &h.ptr);
      s != POSYNT_OK)
    return report(err, s);
  if (auto s = posynt_set_limits(h.ptr, max_states, max_nodes, timeout_s * 1000.0);
      s != POSYNT_OK)
    return report(err, s);
  int real = 0;
  if (auto s = posynt_solve(h.ptr, p.formula.c_str(),
                            mode == "full" ? POSYNT_MODE_FULL : POSYNT_MODE_OTF, &real);
      s != POSYNT_OK)
    return report(err, s);

  out << (real ? "REALIZABLE" : "UNREALIZABLE") << "\n";
  auto fmt = format == "dot" ? POSYNT_FORMAT_DOT : POSYNT_FORMAT_TEXT;
  const char* text = nullptr;
  if (print_strategy && real) {
    if (auto s = posynt_controller(h.ptr, fmt, &text); s != POSYNT_OK) return report(err, s);
    out << text;
  }
  if (print_automaton) {
    if (auto s = posynt_automaton(h.ptr, fmt, &text); s != POSYNT_OK) return report(err, s);
    out << text;
  }
  if (!stats.empty() || timing) {
    if (auto s = posynt_stats(h.ptr, timing ? 1 : 0, &text); s != POSYNT_OK)
      return report(err, s);
    out << text << "\n";
  }
  return real ? realizable : unrealizable;
}

}  // namespace posynt::cli
