#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "posskc/compiler.hpp"
#include "posskc/error.hpp"
#include "posskc/method_pf.hpp"
#include "posskc/method_pkb.hpp"
#include "posskc/nnf.hpp"
#include "support.hpp"

using namespace posskc;
using namespace testsupport;

namespace {

NnfDag literal_dag(int n, Lit l) {
  NnfBuilder b(n);
  return b.finish(b.literal(l), {true, true, true});
}

CnfFormula xor2() {
  CnfFormula f;
  f.add_variable(PlainRole{});
  f.add_variable(PlainRole{});
  f.add_clause({1, 2});
  f.add_clause({-1, -2});
  return f;
}

Interpretation overwrite(Interpretation m, const std::vector<Lit>& term) {
  std::vector<bool> v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = m.value(static_cast<int>(i) + 1);
  for (Lit l : term) v[static_cast<std::size_t>(var_of(l) - 1)] = l > 0;
  return Interpretation(v);
}

// max over models of the min weight of their true positive literals
Degree brute_pi(const NnfDag& d, const std::vector<Degree>& pos_weight) {
  Degree best = Degree::zero();
  brute_assignments(d.num_vars(), [&](const Interpretation& m) {
    if (!evaluate(d, m)) return;
    Degree v = Degree::one();
    for (int x = 1; x <= d.num_vars(); ++x)
      if (m.value(x)) v = min(v, pos_weight[static_cast<std::size_t>(x)]);
    best = max(best, v);
  });
  return best;
}

}  // namespace

TEST_CASE("constants and literals") {
  const NnfDag t;
  CHECK(t.is_true());
  CHECK(nnf_stats(t) == NnfStats{1, 0});
  CHECK(condition(t, {1}).is_true());
  CHECK(condition(literal_dag(1, 1), {-1}).is_false());
  CHECK(condition(literal_dag(1, 1), {1}).is_true());
  CHECK(forget(literal_dag(1, 1), {1}).is_true());
  CHECK(pi_evaluate(t, WeightMap{}) == Degree::one());
  CHECK_THROWS_AS(condition(literal_dag(2, 1), {2, -2}), std::invalid_argument);
}

TEST_CASE("builder folds constants and shares nodes") {
  NnfBuilder b(3);
  const NodeId x = b.literal(1), y = b.literal(2);
  CHECK(b.conjoin({x, b.true_node()}) == x);
  CHECK(b.conjoin({x, b.false_node()}) == b.false_node());
  CHECK(b.disjoin({y, b.true_node()}) == b.true_node());
  CHECK(b.disjoin({y, b.false_node()}) == y);
  CHECK(b.conjoin({x, y}) == b.conjoin({y, x}));
  CHECK(b.literal(1) == x);
}

TEST_CASE("max-min evaluation") {
  NnfBuilder b(2);
  const NodeId root = b.disjoin({b.conjoin({b.literal(1), b.literal(-2)}), b.conjoin({b.literal(-1), b.literal(2)})}, 1);
  const NnfDag d = b.finish(root, {true, true, false});
  WeightMap w;
  w.set(1, deg("0.2"));
  w.set(2, deg("0.4"));
  CHECK(pi_evaluate(d, w) == deg("0.4"));
  CHECK(w.get(-1) == Degree::one());
  CHECK(w.get(7) == Degree::one());
}

TEST_CASE("compiled xor: condition, forget, entailment") {
  const NnfDag d = compile(xor2());
  CHECK(dag_models(d, 2) == std::vector<Interpretation>{Interpretation({false, true}), Interpretation({true, false})});
  const NnfDag c = condition(d, {1});
  auto models = dag_models(c, 2);
  // var 1 is free after conditioning; only var 2 is constrained
  for (const auto& m : models) CHECK_FALSE(m.value(2));
  CHECK(models.size() == 2);
  CHECK(mentioned_vars(c) == std::vector<int>{2});

  CnfFormula or2;
  or2.add_variable(PlainRole{});
  or2.add_variable(PlainRole{});
  or2.add_clause({1, 2});
  const NnfDag f = forget(compile(or2), {1});
  CHECK(dag_models(f, 2).size() == 4);
  CHECK(forget(d, {}).nodes() == d.nodes());

  CHECK(entails_clause(d, std::vector<Lit>{1, -1}));
  CHECK(entails_clause(d, Clause{1, 2}));
  CHECK_FALSE(entails_clause(d, Clause{1}));
  CHECK(is_consistent(d));
  CHECK_FALSE(is_consistent_under(d, {1, 2}));
  CHECK(is_consistent_under(d, {1, -2}));
}

TEST_CASE("fixture base: Algorithm-4 entailments") {
  const auto net = fixture();
  const auto kb = pkb::compile_base(pkb::to_possibilistic_base(net));
  REQUIRE(kb.level_vars.size() == 4);
  const Lit d2 = kb.atoms.literal(*net.find_variable("D"), 1);
  const Lit d1 = kb.atoms.literal(*net.find_variable("D"), 0);
  const Lit f1 = kb.atoms.literal(*net.find_variable("F"), 0);
  CHECK_FALSE(entails_clause(kb.dag, std::vector<Lit>{kb.level_vars[0], d2}));
  const NnfDag k = condition(kb.dag, {-kb.level_vars[0], -kb.level_vars[1], d1});
  CHECK(entails_clause(k, std::vector<Lit>{f1}));
}

TEST_CASE("smoothing") {
  NnfBuilder b(3);
  const NodeId root = b.disjoin({b.conjoin({b.literal(1), b.literal(2)}), b.literal(-1)}, 1);
  const NnfDag d = b.finish(root, {true, true, false});
  CHECK_FALSE(validate_properties(d).smooth);
  const NnfDag s = smooth(d);
  const auto flags = validate_properties(s);
  CHECK(flags.smooth);
  CHECK(flags.decomposable);
  CHECK(flags.deterministic);
  CHECK(s.flags() == flags);
  CHECK(dag_models(s, 3) == dag_models(d, 3));
  const NnfDag again = smooth(s);
  CHECK(nnf_stats(again) == nnf_stats(s));

  // a group gadget is the family's exactly-one constraint
  NnfBuilder b3(3);
  const NodeId r3 = b3.disjoin({b3.conjoin({b3.literal(1), b3.literal(2), b3.literal(-3)}), b3.literal(-1)}, 1);
  const NnfDag g = smooth(b3.finish(r3, {true, true, false}), {{2, 3}});
  CHECK(validate_properties(g).smooth);
  CHECK(validate_properties(g) == NnfFlags{true, true, true});
  brute_assignments(3, [&](const Interpretation& m) {
    const bool one = m.value(2) != m.value(3);
    CHECK(evaluate(g, m) == ((m.value(1) && m.value(2) && !m.value(3)) || (!m.value(1) && one)));
  });
}

TEST_CASE("smoothed fixture circuit evaluates the same") {
  const auto net = fixture();
  const auto circuit = pf::build_circuit(pf::encode_pf(net));
  pf::PossCircuit smoothed = circuit;
  smoothed.dag = smooth(circuit.dag);
  CHECK(validate_properties(smoothed.dag).smooth);
  for (const char* t : {"D=d1,B=b1", "F=f2,D=d1", "", "F=f1", "F=f2,B=b2,D=d2"}) {
    const auto term = net.parse_term(t);
    CHECK(pf::circuit_possibility(smoothed, term) == pf::circuit_possibility(circuit, term));
  }
  WeightMap w = pf::query_weights(circuit, net.parse_term("D=d1,B=b1"));
  CHECK(pi_evaluate(circuit.dag, w) == deg("0.7"));
}

TEST_CASE("text format") {
  const NnfDag t;
  CHECK(parse_nnf(write_nnf(t)).is_true());
  const auto net = fixture();
  for (const NnfDag& d : {compile(pkb::encode_pkb(pkb::to_possibilistic_base(net))), compile(pf::encode_pf(net).cnf)}) {
    const NnfDag r = parse_nnf(write_nnf(d));
    CHECK(nnf_stats(r) == nnf_stats(d));
    CHECK(r.flags() == d.flags());
    CHECK(dag_models(r, d.num_vars()) == dag_models(d, d.num_vars()));
    const auto f = validate_properties(d);
    CHECK(f.decomposable);
    CHECK(f.deterministic);
  }
  CHECK_THROWS_AS(parse_nnf("nnf 2 1 1\nL 1\nA 1 5\n"), InputError);
  CHECK_THROWS_AS(parse_nnf("nnf 3 1 1\nL 1\n"), InputError);
  // a claimed flag the structure lacks
  CHECK_THROWS_AS(parse_nnf("c flags decomposable=1 deterministic=0 smooth=0\nnnf 3 2 1\nL 1\nL -1\nA 2 0 1\n"), InputError);
  // no flags line: computed
  const NnfDag plain = parse_nnf("nnf 3 2 2\nL 1\nL 2\nO 0 2 0 1\n");
  CHECK(plain.flags().decomposable);
  CHECK_FALSE(plain.flags().smooth);
}

TEST_CASE("random formulas: transformations against brute force") {
  bench::SplitMix64 rng(99);
  for (int round = 0; round < 200; ++round) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const auto f = random_cnf(rng, n, rng.below(static_cast<std::uint64_t>(2 * n + 1)));
    const NnfDag d = compile(f);
    const auto models = dag_models(d, n);

    std::vector<Lit> term;
    for (int v = 1; v <= n; ++v)
      if (rng.below(4) == 0) term.push_back(rng.below(2) ? v : -v);
    const NnfDag c = condition(d, term);
    brute_assignments(n, [&](const Interpretation& m) { CHECK(evaluate(c, m) == evaluate(d, overwrite(m, term))); });
    CHECK(is_consistent_under(d, term) == is_consistent(c));
    CHECK(validate_properties(c).decomposable);

    std::vector<int> gone;
    for (int v = 1; v <= n; ++v)
      if (rng.below(3) == 0) gone.push_back(v);
    const NnfDag g = forget(d, gone);
    brute_assignments(n, [&](const Interpretation& m) {
      bool exists = false;
      const std::uint64_t k = std::uint64_t{1} << gone.size();
      for (std::uint64_t bits = 0; bits < k && !exists; ++bits) {
        std::vector<Lit> t;
        for (std::size_t i = 0; i < gone.size(); ++i) t.push_back((bits >> i) & 1 ? gone[i] : -gone[i]);
        exists = evaluate(d, overwrite(m, t));
      }
      CHECK(evaluate(g, m) == exists);
    });

    std::vector<Lit> clause;
    for (int v = 1; v <= n; ++v)
      if (rng.below(3) == 0) clause.push_back(rng.below(2) ? v : -v);
    bool all = true;
    for (const auto& m : models) {
      bool sat = false;
      for (Lit l : clause) sat = sat || m.satisfies(l);
      all = all && sat;
    }
    CHECK(entails_clause(d, clause) == all);
    CHECK(is_consistent(d) == !models.empty());

    std::vector<Degree> weights(static_cast<std::size_t>(n) + 1, Degree::one());
    WeightMap w;
    for (int v = 1; v <= n; ++v) {
      weights[static_cast<std::size_t>(v)] = Degree::from_scaled(static_cast<std::uint32_t>(rng.below(11)) * 100000000u);
      w.set(v, weights[static_cast<std::size_t>(v)]);
    }
    CHECK(pi_evaluate(d, w) == brute_pi(d, weights));
    const NnfDag s = smooth(d);
    CHECK(pi_evaluate(s, w) == pi_evaluate(d, w));
    CHECK(dag_models(s, n) == models);
    CHECK(validate_properties(s) == NnfFlags{true, true, true});
    CHECK(dag_models(parse_nnf(write_nnf(d)), n) == models);
  }
}
