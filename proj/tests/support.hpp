#pragma once

// Test-side helpers: an oracle written independently of the library's,
// random CNF generation, and brute-force semantics for NNF checks.

#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "posskc/bench.hpp"
#include "posskc/cnf.hpp"
#include "posskc/degree.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"

namespace testsupport {

using namespace posskc;

inline std::string fixture_path() { return std::string(POSSKC_TEST_DATA) + "/fig2.pnet"; }
inline PossNetwork fixture() { return load_network(fixture_path()); }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Degree deg(const char* s) { return Degree::parse(s); }

// Every world, last variable fastest.
inline void brute_worlds(const PossNetwork& net, const std::function<void(const World&)>& fn) {
  const std::size_t n = net.size();
  World w(n, 0);
  for (;;) {
    fn(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < net.variable(i).values.size()) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

// Table lookup by hand: configuration index with the first parent fastest.
inline Degree brute_joint(const PossNetwork& net, const World& w) {
  Degree r = Degree::one();
  for (std::size_t v = 0; v < net.size(); ++v) {
    std::size_t config = 0, stride = 1;
    for (std::size_t p : net.parents(v)) {
      config += w[p] * stride;
      stride *= net.variable(p).values.size();
    }
    r = min(r, net.table(v)[config * net.variable(v).values.size() + w[v]]);
  }
  return r;
}

inline bool agrees(const EventTerm& t, const World& w) {
  for (auto [v, val] : t)
    if (w[v] != val) return false;
  return true;
}

inline Degree brute_possibility(const PossNetwork& net, const EventTerm& e) {
  Degree best = Degree::zero();
  brute_worlds(net, [&](const World& w) {
    if (agrees(e, w)) best = max(best, brute_joint(net, w));
  });
  return best;
}

// Eq 1 spelled out: the joint if strictly below the evidence, else 1.
inline Degree brute_conditional(const PossNetwork& net, const EventTerm& x, const EventTerm& e) {
  Degree joint = Degree::zero(), ev = Degree::zero();
  brute_worlds(net, [&](const World& w) {
    if (!agrees(e, w)) return;
    const Degree p = brute_joint(net, w);
    ev = max(ev, p);
    if (agrees(x, w)) joint = max(joint, p);
  });
  return joint < ev ? joint : Degree::one();
}

inline PossNetwork random_net(std::uint64_t seed, std::size_t n, bool binary = true, std::size_t max_parents = 3) {
  bench::GenConfig g;
  g.seed = seed;
  g.n_nodes = n;
  g.binary_only = binary;
  g.max_parents = max_parents;
  return bench::random_network(g);
}

// Random clauses of 1..max_len literals over n plain variables; tautologies
// are redrawn.
inline CnfFormula random_cnf(bench::SplitMix64& rng, int n, std::size_t clauses, std::size_t max_len = 3) {
  CnfFormula f;
  for (int i = 0; i < n; ++i) f.add_variable(PlainRole{});
  while (f.num_clauses() < clauses) {
    const std::size_t len = 1 + rng.below(max_len);
    std::vector<Lit> lits;
    for (std::size_t k = 0; k < len; ++k) {
      const int v = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      lits.push_back(rng.below(2) ? v : -v);
    }
    if (Clause::is_tautology(lits)) continue;
    f.add_clause(Clause(lits));
  }
  return f;
}

// All 2^n assignments, variable 1 most significant.
inline void brute_assignments(int n, const std::function<void(const Interpretation&)>& fn) {
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::vector<bool> vals(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vals[static_cast<std::size_t>(i)] = (bits >> (n - 1 - i)) & 1;
    fn(Interpretation(vals));
  }
}

inline bool brute_sat(const CnfFormula& f, const Interpretation& m) {
  for (const Clause& c : f.clauses()) {
    bool ok = false;
    for (Lit l : c) ok = ok || (l > 0 ? m.value(l) : !m.value(-l));
    if (!ok) return false;
  }
  return true;
}

inline std::vector<Interpretation> dag_models(const NnfDag& d, int n) {
  std::vector<Interpretation> out;
  brute_assignments(n, [&](const Interpretation& m) {
    if (evaluate(d, m)) out.push_back(m);
  });
  return out;
}

inline std::vector<Interpretation> cnf_models(const CnfFormula& f) {
  std::vector<Interpretation> out;
  brute_assignments(static_cast<int>(f.num_vars()), [&](const Interpretation& m) {
    if (brute_sat(f, m)) out.push_back(m);
  });
  return out;
}

}  // namespace testsupport
