#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "posskc/bench.hpp"
#include "posskc/method_logical.hpp"
#include "posskc/method_pf.hpp"
#include "support.hpp"

using namespace posskc;
using namespace testsupport;

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 0, as published with the algorithm
  bench::SplitMix64 r(0);
  CHECK(r.next() == 0xe220a8397b1dcdafULL);
  CHECK(r.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(r.next() == 0x06c45d188009454fULL);
  bench::SplitMix64 b(3);
  for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7);
}

TEST_CASE("generator invariants") {
  bench::GenConfig g;
  g.n_nodes = 10;
  g.seed = 42;
  CHECK(write_network(bench::random_network(g)) == write_network(bench::random_network(g)));
  const auto net = bench::random_network(g);
  CHECK(net.size() == 10);
  CHECK(net.topological_order().size() == 10);
  std::set<Degree> allowed(g.degree_pool.begin(), g.degree_pool.end());
  allowed.insert(Degree::one());
  for (std::size_t v = 0; v < net.size(); ++v) {
    CHECK(net.parents(v).size() <= g.max_parents);
    for (Degree d : net.table(v)) CHECK(allowed.count(d) == 1);
  }
  g.seed = 43;
  CHECK(write_network(bench::random_network(g)) != write_network(net));

  g.binary_only = false;
  g.n_nodes = 30;
  const auto multi = bench::random_network(g);
  bool has_ternary = false;
  for (const auto& v : multi.variables()) has_ternary = has_ternary || v.values.size() == 3;
  CHECK(has_ternary);
  CHECK(parse_network(write_network(multi)) == multi);
}

TEST_CASE("baseline counts") {
  const auto net = fixture();
  CHECK(bench::baseline_counts(net, bench::BaselineScheme::Circuit) == CnfStats{12, 26});
  CHECK(bench::baseline_counts(net, bench::BaselineScheme::Logical) == CnfStats{15, 12});
  const auto crisp = parse_network("network c\nvar X a b\nvar Y c d\nparents Y X\ncpt X\na : 1\nb : 0\n"
                                   "cpt Y\nc | a : 1\nd | a : 0\nc | b : 1\nd | b : 1\n");
  CHECK(bench::baseline_counts(crisp, bench::BaselineScheme::Circuit) == cnf_stats(pf::encode_pf(crisp, true).cnf));
}

TEST_CASE("Props 4, 6, 11, 12 on 100 generated networks") {
  for (std::size_t size = 10; size <= 50; size += 10)
    for (std::uint64_t k = 0; k < 20; ++k) {
      const auto net = random_net(1 + k, size);
      const auto pf_local = cnf_stats(pf::encode_pf(net, true).cnf);
      const auto lg = cnf_stats(logical::encode_logical(net).cnf);
      const auto kb = cnf_stats(encode(net, Method::Pkb));
      const auto circuit = bench::baseline_counts(net, bench::BaselineScheme::Circuit);
      const auto logical_base = bench::baseline_counts(net, bench::BaselineScheme::Logical);
      CHECK(lg == kb);
      CHECK(pf_local.vars > kb.vars);
      CHECK(pf_local.clauses > kb.clauses);
      CHECK(pf_local.clauses < circuit.clauses);
      CHECK(lg.vars < logical_base.vars);
      CHECK(lg.clauses < logical_base.clauses);
    }
}

TEST_CASE("single-network comparison rows") {
  const auto rows = bench::compare_network(fixture(), 0, {Method::Pf, Method::Logical, Method::Pkb}, {});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == Method::Pf);
  CHECK(rows[0].cnf_vars == 12);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(rows[i].cnf_vars == 7);
    CHECK(rows[i].cnf_clauses == 6);
    CHECK(rows[i].status == "ok");
    CHECK(rows[i].nnf_nodes > 0);
  }
  CompileOptions tiny;
  tiny.node_budget = 50;
  const auto starved = bench::compare_network(random_net(5, 20), 5, {Method::Pkb}, tiny);
  REQUIRE(starved.size() == 1);
  CHECK(starved[0].status == "budget");
  CHECK(starved[0].cnf_vars > 0);
}

TEST_CASE("sweep output is ordered and thread-independent") {
  bench::SweepConfig cfg;
  cfg.sizes = {6, 4};
  cfg.per_size = 3;
  cfg.seed = 9;
  cfg.threads = 1;
  const auto one = bench::run_comparison(cfg);
  cfg.threads = 4;
  const auto four = bench::run_comparison(cfg);
  REQUIRE(one.rows.size() == 2 * 3 * 3);
  REQUIRE(four.rows.size() == one.rows.size());
  for (std::size_t i = 0; i < one.rows.size(); ++i) {
    CHECK(one.rows[i].seed == four.rows[i].seed);
    CHECK(one.rows[i].n_nodes == four.rows[i].n_nodes);
    CHECK(one.rows[i].method == four.rows[i].method);
    CHECK(one.rows[i].nnf_edges == four.rows[i].nnf_edges);
  }
  CHECK(std::is_sorted(one.rows.begin(), one.rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n_nodes, a.seed) < std::tie(b.n_nodes, b.seed);
  }));
  CHECK(one.rows.front().n_nodes == 4);
  CHECK(one.means.size() == 2 * 3);

  std::ostringstream csv;
  bench::write_csv(csv, cfg, one);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# posskc bench", 0) == 0);
  std::getline(in, line);
  CHECK(line == bench::kCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line) && line[0] != '#') {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == one.rows.size());
}

TEST_CASE("means average the rows") {
  bench::SweepConfig cfg;
  cfg.sizes = {5};
  cfg.per_size = 4;
  cfg.threads = 1;
  const auto r = bench::run_comparison(cfg);
  for (const auto& m : r.means) {
    double vars = 0;
    std::size_t count = 0;
    for (const auto& row : r.rows)
      if (row.method == m.method) {
        vars += static_cast<double>(row.cnf_vars);
        ++count;
      }
    CHECK(m.count == count);
    CHECK(m.cnf_vars == doctest::Approx(vars / static_cast<double>(count)));
  }
}

TEST_CASE("cross validation") {
  bench::CrossCheckConfig cfg;
  cfg.nets = 40;
  cfg.max_vars = 8;
  cfg.queries = 5;
  const auto report = bench::cross_validate(cfg);
  CHECK(report.nets == 40);
  CHECK(report.queries == 200);
  CHECK(report.mismatches.empty());
  CHECK(report.text().rfind("nets 40\nqueries 200\nmismatches 0\n", 0) == 0);
  cfg.binary_only = false;
  CHECK(bench::cross_validate(cfg).mismatches.empty());
}
