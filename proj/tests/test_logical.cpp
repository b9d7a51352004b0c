#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "posskc/method_logical.hpp"
#include "posskc/method_pkb.hpp"
#include "support.hpp"

using namespace posskc;
using namespace testsupport;

namespace {

struct Compiled {
  logical::LogicalEncoding enc;
  NnfDag dag;
};

Compiled build(const PossNetwork& net) {
  auto enc = logical::encode_logical(net);
  NnfDag d = compile(enc.cnf);
  return {std::move(enc), std::move(d)};
}

}  // namespace

TEST_CASE("instance atoms") {
  const auto net = fixture();
  const InstanceAtoms atoms(net);
  CHECK(atoms.num_props() == 3);
  CHECK(atoms.literal(0, 0) == 1);
  CHECK(atoms.literal(0, 1) == -1);
  CHECK(atoms.literal_str(-2) == "B=b2");
  CHECK(atoms.exactly_one_clauses().empty());

  const auto tri = parse_network("network t\nvar X a b c\ncpt X\na : 1\nb : 0.5\nc : 0.2\n");
  const InstanceAtoms ta(tri);
  CHECK(ta.num_props() == 3);
  CHECK(ta.literal(0, 2) == 3);
  CHECK(ta.literal_str(-3) == "X!=c");
  CHECK(ta.exactly_one_clauses().size() == 4);  // one at-least-one, three pairs
}

TEST_CASE("fixture encoding") {
  const auto enc = logical::encode_logical(fixture());
  CHECK(cnf_stats(enc.cnf) == CnfStats{7, 6});
  std::vector<Degree> thetas;
  for (auto [d, id] : enc.theta_of) {
    thetas.push_back(d);
    CHECK(enc.theta_weights.get(id) == d);
  }
  CHECK(thetas == std::vector<Degree>{deg("0.8"), deg("0.7"), deg("0.4"), deg("0.2")});
  // ids follow the atoms in descending degree order
  CHECK(enc.theta_of.at(deg("0.8")) == 4);
  CHECK(enc.theta_of.at(deg("0.2")) == 7);
  // every clause carries exactly one parameter, positively
  for (const Clause& c : enc.cnf.clauses()) {
    int params = 0;
    for (Lit l : c)
      if (var_of(l) > 3) {
        CHECK(l > 0);
        ++params;
      }
    CHECK(params == 1);
  }
}

TEST_CASE("degenerate roots") {
  const auto uniform = parse_network("network u\nvar X a b\ncpt X\na : 1\nb : 1\n");
  CHECK(cnf_stats(logical::encode_logical(uniform).cnf) == CnfStats{1, 0});
  const auto zero = parse_network("network z\nvar X a b\ncpt X\na : 1\nb : 0\n");
  const auto enc = logical::encode_logical(zero);
  CHECK(cnf_stats(enc.cnf) == CnfStats{1, 1});
  CHECK(enc.cnf.clauses()[0] == Clause{1});
}

TEST_CASE("explore and query on the fixture") {
  const auto net = fixture();
  const auto c = build(net);
  CHECK(logical::explore(c.dag, c.enc, net.parse_term("F=f2,D=d1")) == deg("0.4"));
  CHECK(logical::explore(c.dag, c.enc, {}) == Degree::one());
  CHECK(logical::explore(c.dag, c.enc, net.parse_term("D=d1,B=b1")) == deg("0.7"));
  CHECK(logical::query_logical(c.dag, c.enc, net.parse_term("F=f2"), net.parse_term("D=d1")) == deg("0.4"));
  CHECK(logical::query_logical(c.dag, c.enc, net.parse_term("F=f1"), net.parse_term("D=d1")) == Degree::one());
  CHECK(logical::query_logical(c.dag, c.enc, net.parse_term("B=b2"), {}) == deg("0.4"));
  CHECK(logical::query_logical(c.dag, c.enc, net.parse_term("F=f1"), net.parse_term("F=f2")) == Degree::zero());
}

TEST_CASE("Props 5, 8 and 11 on random networks") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const bool binary = seed % 3 != 0;
    const auto net = random_net(seed * 17 + 3, 2 + seed % 8, binary);
    const auto c = build(net);
    CHECK(cnf_stats(c.enc.cnf) == cnf_stats(pkb::encode_pkb(pkb::to_possibilistic_base(net))));
    brute_worlds(net, [&](const World& w) {
      EventTerm t;
      for (std::size_t v = 0; v < w.size(); ++v) t.assign(v, w[v]);
      CHECK(logical::explore(c.dag, c.enc, t) == brute_joint(net, w));
    });
    bench::SplitMix64 rng(seed + 1000);
    for (int q = 0; q < 6; ++q) {
      auto [x, e] = bench::random_query(net, rng);
      CHECK(logical::query_logical(c.dag, c.enc, x, e) == brute_conditional(net, x, e));
    }
  }
}
