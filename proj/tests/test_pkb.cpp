#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "posskc/method_pf.hpp"
#include "posskc/method_pkb.hpp"
#include "support.hpp"

using namespace posskc;
using namespace testsupport;

namespace {

World fixture_world(const PossNetwork& net, const char* text) {
  const auto t = net.parse_term(text);
  World w(net.size());
  for (auto [v, val] : t) w[v] = val;
  return w;
}

}  // namespace

TEST_CASE("fixture base") {
  const auto net = fixture();
  const auto base = pkb::to_possibilistic_base(net);
  const auto& a = base.atoms;
  const std::size_t F = 0, B = 1, D = 2;
  const std::vector<pkb::WeightedFormula> expect{
      {Clause{a.literal(F, 1)}, deg("0.3")},
      {Clause{a.literal(B, 0)}, deg("0.6")},
      {Clause{a.literal(D, 0), a.literal(F, 1), a.literal(B, 1)}, deg("0.6")},
      {Clause{a.literal(D, 1), a.literal(F, 0), a.literal(B, 1)}, deg("0.8")},
      {Clause{a.literal(D, 1), a.literal(F, 1), a.literal(B, 0)}, deg("0.3")},
      {Clause{a.literal(D, 1), a.literal(F, 0), a.literal(B, 0)}, deg("0.2")},
  };
  CHECK(base.formulas == expect);
  CHECK(base.levels == std::vector<Degree>{deg("0.8"), deg("0.6"), deg("0.3"), deg("0.2")});
  CHECK(pkb::write_base(base).find("F=f2 : 0.3") != std::string::npos);
}

TEST_CASE("degenerate bases") {
  const auto uniform = parse_network("network u\nvar X a b\ncpt X\na : 1\nb : 1\n");
  const auto empty = pkb::to_possibilistic_base(uniform);
  CHECK(empty.formulas.empty());
  CHECK(cnf_stats(pkb::encode_pkb(empty)) == CnfStats{1, 0});

  const auto zero = parse_network("network z\nvar X a b\ncpt X\na : 1\nb : 0\n");
  const auto hard = pkb::to_possibilistic_base(zero);
  REQUIRE(hard.formulas.size() == 1);
  CHECK(hard.formulas[0].weight == Degree::one());
  CHECK(hard.levels.empty());
  const auto k = pkb::encode_pkb(hard);
  CHECK(cnf_stats(k) == CnfStats{1, 1});
  CHECK(k.clauses()[0] == Clause{1});

  pkb::PossibilisticBase none;
  CHECK(cnf_stats(pkb::encode_pkb(none)) == CnfStats{0, 0});
}

TEST_CASE("base semantics on the fixture") {
  const auto net = fixture();
  const auto base = pkb::to_possibilistic_base(net);
  CHECK(pkb::pi_sigma(base, fixture_world(net, "F=f2,B=b1,D=d2")) == Degree::one());
  CHECK(pkb::pi_sigma(base, fixture_world(net, "F=f2,B=b1,D=d1")) == deg("0.2"));
  CHECK(pkb::pi_sigma(base, fixture_world(net, "F=f1,B=b1,D=d1")) == deg("0.7"));
}

TEST_CASE("fixture encoding and Algorithm 4") {
  const auto net = fixture();
  const auto base = pkb::to_possibilistic_base(net);
  const auto k = pkb::encode_pkb(base);
  CHECK(cnf_stats(k) == CnfStats{7, 6});
  std::vector<Degree> weights;
  for (const auto& v : k.variables())
    if (const auto* l = std::get_if<LevelRole>(&v.role)) {
      CHECK(l->rank == weights.size() + 1);
      weights.push_back(l->weight);
    }
  CHECK(weights == std::vector<Degree>{deg("0.8"), deg("0.6"), deg("0.3"), deg("0.2")});

  const auto kb = pkb::compile_base(base);
  const auto r = pkb::query_pkb(kb, net.parse_term("F=f2"), net.parse_term("D=d1"));
  CHECK(r.degree == deg("0.4"));
  CHECK(r.iterations == 2);
  CHECK(pkb::query_pkb(kb, net.parse_term("F=f1"), net.parse_term("D=d1")).degree == Degree::one());
  CHECK(pkb::query_pkb(kb, net.parse_term("F=f1"), net.parse_term("F=f2")).degree == Degree::zero());
  CHECK(pkb::query_pkb(kb, net.parse_term("D=d1,B=b1"), {}).degree == deg("0.7"));
}

TEST_CASE("Def 4, Props 9, 10 and 12 on random networks") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const bool binary = seed % 3 != 0;
    const auto net = random_net(seed * 13 + 5, 2 + seed % 8, binary);
    const auto base = pkb::to_possibilistic_base(net);
    CHECK(std::is_sorted(base.levels.begin(), base.levels.end(), std::greater<>{}));
    CHECK(std::adjacent_find(base.levels.begin(), base.levels.end()) == base.levels.end());
    const auto kb = pkb::compile_base(base);
    brute_worlds(net, [&](const World& w) {
      CHECK(pkb::pi_sigma(base, w) == brute_joint(net, w));
      CHECK(pkb::consistency_degree(kb, w) == brute_joint(net, w));
    });

    const auto pf_stats = cnf_stats(pf::encode_pf(net).cnf);
    const auto kb_stats = cnf_stats(pkb::encode_pkb(base));
    CHECK(pf_stats.vars > kb_stats.vars);
    CHECK(pf_stats.clauses > kb_stats.clauses);

    bench::SplitMix64 rng(seed + 500);
    for (int q = 0; q < 6; ++q) {
      auto [x, e] = bench::random_query(net, rng);
      const Degree got = pkb::query_pkb(kb, x, e).degree;
      CHECK(got == brute_conditional(net, x, e));
      bool allowed = got.is_zero() || got.is_one();
      for (Degree a : base.levels) allowed = allowed || got == complement(a);
      CHECK(allowed);
    }
  }
}
