// posskc: command-line front end for the three compilation pipelines.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "posskc/bench.hpp"
#include "posskc/compiler.hpp"
#include "posskc/error.hpp"
#include "posskc/method_pkb.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"
#include "posskc/pipeline.hpp"

namespace fs = std::filesystem;
using namespace posskc;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;
constexpr int kExitUsage = 64;

// I/O problems are runtime failures, not bad input
struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << text;
  if (!out) throw IoError(path + ": write failed");
}

// Parse errors from text formats get the file name in front.
template <class F>
auto parse_file(const std::string& path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what(), e.line(), e.column());
  }
}

PossNetwork open_network(const std::string& path) {
  if (!fs::exists(path)) throw IoError(path + ": no such file");
  return load_network(path);
}

Method method_arg(const std::string& name) {
  auto m = parse_method(name);
  if (!m) throw CLI::ValidationError("--method", "expected pf, logical or pkb, got '" + name + "'");
  return *m;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// a:b:c -> a, a+c, ... up to b; a single number is one size
std::vector<std::size_t> parse_sizes(const std::string& spec) {
  std::vector<std::size_t> parts;
  std::stringstream ss(spec);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) parts.push_back(std::stoul(item));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--sizes", "expected FROM:TO:STEP, got '" + spec + "'");
  }
  if (parts.size() == 1) return {parts[0]};
  if (parts.size() != 3 || parts[2] == 0 || parts[0] == 0 || parts[0] > parts[1])
    throw CLI::ValidationError("--sizes", "expected FROM:TO:STEP, got '" + spec + "'");
  std::vector<std::size_t> sizes;
  for (std::size_t s = parts[0]; s <= parts[1]; s += parts[2]) sizes.push_back(s);
  return sizes;
}

CompileOptions budget_options(std::size_t node_budget) {
  CompileOptions o;
  if (node_budget) o.node_budget = node_budget;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Possibilistic network inference by knowledge compilation"};
  app.require_subcommand(1);

  std::string net_path, target, evidence, method_str = "pkb", out_path, base_path, in_path;
  bool json = false, no_local = false, smooth_out = false, assert_det = false;
  std::size_t node_budget = 0;

  auto* validate = app.add_subcommand("validate", "parse and check a network");
  validate->add_option("net", net_path, "network file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force conditional possibility");
  oracle->add_option("net", net_path, "network file")->required();
  oracle->add_option("--target,-x", target, "VAR=val[,VAR=val...]")->required();
  oracle->add_option("--evidence,-e", evidence, "VAR=val[,VAR=val...]");

  auto* query = app.add_subcommand("query", "conditional possibility through a compiled pipeline");
  query->add_option("net", net_path, "network file")->required();
  query->add_option("--method,-m", method_str, "pf | logical | pkb")->required();
  query->add_option("--target,-x", target, "VAR=val[,VAR=val...]")->required();
  query->add_option("--evidence,-e", evidence, "VAR=val[,VAR=val...]");
  query->add_flag("--json", json, "print a JSON object with timings");
  query->add_flag("--no-local", no_local, "pf: one parameter per table entry");
  query->add_option("--node-budget", node_budget, "compiler node cap");

  auto* enc = app.add_subcommand("encode", "write the CNF encoding of a network");
  enc->add_option("net", net_path, "network file")->required();
  enc->add_option("--method,-m", method_str, "pf | logical | pkb")->required();
  enc->add_option("-o,--output", out_path, "DIMACS output")->required();
  enc->add_option("--base", base_path, "pkb: also write the weighted base");
  enc->add_flag("--no-local", no_local, "pf: one parameter per table entry");

  auto* comp = app.add_subcommand("compile", "compile a DIMACS CNF into decision-DNNF");
  comp->add_option("cnf", in_path, "DIMACS input")->required();
  comp->add_option("-o,--output", out_path, "NNF output")->required();
  comp->add_flag("--smooth", smooth_out, "smooth the result");
  comp->add_flag("--assert-deterministic", assert_det, "fail unless determinism is confirmed");
  comp->add_option("--node-budget", node_budget, "compiler node cap");

  auto* stats = app.add_subcommand("stats", "CNF and NNF sizes for every method");
  stats->add_option("net", net_path, "network file")->required();
  stats->add_option("--node-budget", node_budget, "compiler node cap");

  bench::SweepConfig sweep;
  std::string sizes_str = "10:50:10";
  bool multi_valued = false;
  auto* bench_cmd = app.add_subcommand("bench", "random-network size comparison, CSV output");
  bench_cmd->add_option("--sizes", sizes_str, "FROM:TO:STEP");
  bench_cmd->add_option("--per-size", sweep.per_size, "networks per size");
  bench_cmd->add_option("--seed", sweep.seed, "base seed");
  bench_cmd->add_option("--max-parents", sweep.max_parents, "parent cap");
  bench_cmd->add_option("--threads", sweep.threads, "worker threads (0 = all cores)");
  bench_cmd->add_flag("--multi-valued", multi_valued, "domains of 2 or 3 values");
  std::string pool_str;
  bench_cmd->add_option("--pool", pool_str, "degree pool, comma separated (default 0.1,...,0.9)");
  bench_cmd->add_option("--node-budget", node_budget, "compiler node cap");
  bench_cmd->add_option("-o,--output", out_path, "CSV output")->required();

  bench::CrossCheckConfig check_cfg;
  auto* check = app.add_subcommand("check", "cross-validate all pipelines against the oracle");
  check->add_option("--nets", check_cfg.nets, "random networks");
  check->add_option("--max-vars", check_cfg.max_vars, "largest network");
  check->add_option("--queries", check_cfg.queries, "queries per network");
  check->add_option("--seed", check_cfg.seed, "base seed");
  check->add_flag("--multi-valued", multi_valued, "domains of 2 or 3 values");
  check->add_option("-o,--output", out_path, "report output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) {
      const auto net = open_network(net_path);
      std::size_t entries = 0;
      for (std::size_t v = 0; v < net.size(); ++v) entries += net.config_count(v) * net.variable(v).values.size();
      std::cout << net_path << ": ok, " << net.size() << " variables, " << entries << " table entries\n";
    } else if (*oracle) {
      const auto net = open_network(net_path);
      std::cout << oracle_conditional(net, net.parse_term(target), net.parse_term(evidence)) << "\n";
    } else if (*query) {
      const Method m = method_arg(method_str);
      const auto net = open_network(net_path);
      const EventTerm x = net.parse_term(target), e = net.parse_term(evidence);
      auto t0 = std::chrono::steady_clock::now();
      const auto p = Pipeline::build(net, m, budget_options(node_budget), !no_local);
      const double compile_ms = ms_since(t0);
      t0 = std::chrono::steady_clock::now();
      const Degree answer = p.query(x, e);
      const double query_ms = ms_since(t0);
      if (!json) {
        std::cout << answer << "\n";
      } else {
        const auto joint = EventTerm::merge(x, e);
        nlohmann::ordered_json j;
        j["method"] = std::string(method_name(m));
        j["target"] = net.term_str(x);
        j["evidence"] = net.term_str(e);
        j["answer"] = answer.str();
        j["joint"] = joint ? p.possibility(*joint).str() : Degree::zero().str();
        j["evidence_possibility"] = p.possibility(e).str();
        j["compile_ms"] = compile_ms;
        j["query_ms"] = query_ms;
        std::cout << j.dump(2) << "\n";
      }
    } else if (*enc) {
      const Method m = method_arg(method_str);
      const auto net = open_network(net_path);
      write_file(out_path, to_dimacs(encode(net, m, !no_local)));
      if (!base_path.empty()) {
        if (m != Method::Pkb) throw CLI::ValidationError("--base", "only meaningful with --method pkb");
        write_file(base_path, pkb::write_base(pkb::to_possibilistic_base(net)));
      }
    } else if (*comp) {
      const auto cnf = parse_file(in_path, parse_dimacs);
      CompileStats st;
      NnfDag d = compile(cnf, budget_options(node_budget), &st);
      if (assert_det && !validate_properties(d).deterministic) {
        std::cerr << "posskc: compiled circuit failed the determinism check\n";
        return kExitRuntime;
      }
      if (smooth_out) d = smooth(d);
      write_file(out_path, write_nnf(d));
      const auto s = nnf_stats(d);
      std::cerr << "nodes " << s.nodes << " edges " << s.edges << " decisions " << st.decisions << "\n";
    } else if (*stats) {
      const auto net = open_network(net_path);
      std::cout << std::left << std::setw(9) << "method" << std::right << std::setw(10) << "cnf_vars" << std::setw(12)
                << "cnf_clauses" << std::setw(11) << "nnf_nodes" << std::setw(11) << "nnf_edges" << std::setw(12)
                << "compile_ms" << "\n";
      for (Method m : {Method::Pf, Method::Logical, Method::Pkb}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto p = Pipeline::build(net, m, budget_options(node_budget));
        const double ms = ms_since(t0);
        const auto s = nnf_stats(p.dag());
        std::cout << std::left << std::setw(9) << method_name(m) << std::right << std::setw(10) << p.cnf_stats().vars
                  << std::setw(12) << p.cnf_stats().clauses << std::setw(11) << s.nodes << std::setw(11) << s.edges
                  << std::setw(12) << std::fixed << std::setprecision(2) << ms << "\n";
      }
    } else if (*bench_cmd) {
      sweep.sizes = parse_sizes(sizes_str);
      if (!pool_str.empty()) {
        sweep.degree_pool.clear();
        std::stringstream ss(pool_str);
        std::string item;
        while (std::getline(ss, item, ',')) {
          Degree d;
          try {
            d = Degree::parse(item);
          } catch (const InputError& e) {
            throw CLI::ValidationError("--pool", e.what());
          }
          if (d.is_zero() || d.is_one()) throw CLI::ValidationError("--pool", "degrees must lie strictly between 0 and 1");
          sweep.degree_pool.push_back(d);
        }
      }
      sweep.binary_only = !multi_valued;
      sweep.compile = budget_options(node_budget);
      const auto result = bench::run_comparison(sweep);
      std::ostringstream csv;
      bench::write_csv(csv, sweep, result);
      write_file(out_path, csv.str());
    } else if (*check) {
      check_cfg.binary_only = !multi_valued;
      const auto report = bench::cross_validate(check_cfg);
      write_file(out_path, report.text());
      std::cout << report.nets << " networks, " << report.queries << " queries, " << report.mismatches.size()
                << " mismatches\n";
      if (!report.mismatches.empty()) return kExitRuntime;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "posskc: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "posskc: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "posskc: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
