#pragma once

#include <string>
#include <vector>

#include "posskc/cnf.hpp"
#include "posskc/compiler.hpp"
#include "posskc/method_logical.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"

// Base pipeline: the network becomes a weighted clause base, the base
// becomes a CNF with one level variable per distinct weight, and queries
// walk the levels on the compiled CNF.
namespace posskc::pkb {

struct WeightedFormula {
  Clause clause;  // over instance atoms
  Degree weight;  // in (0,1]; 1 marks hard knowledge
  bool operator==(const WeightedFormula&) const = default;
};

struct PossibilisticBase {
  InstanceAtoms atoms;
  std::vector<WeightedFormula> formulas;
  // Distinct weights below 1, strictly descending.
  std::vector<Degree> levels;
};

// (-x | -u1 | ... | -um, 1 - d) for every entry with d < 1, in network and
// table order, followed by the exactly-one constraints of multi-valued
// variables as hard formulas.
PossibilisticBase to_possibilistic_base(const PossNetwork& net);

// 1 when w satisfies every formula, else 1 - (largest violated weight).
Degree pi_sigma(const PossibilisticBase& base, const World& w);

// `literal literal ... : weight` per line, literals as `X=v` / `X!=v`.
std::string write_base(const PossibilisticBase& base);

// Each soft formula is disjoined with the level variable of its weight
// (level i = i-th largest weight, ids after the atoms); hard formulas are
// emitted as they are.
CnfFormula encode_pkb(const PossibilisticBase& base);

struct CompiledBase {
  NnfDag dag;
  InstanceAtoms atoms;
  std::vector<int> level_vars;       // level_vars[i] is A_{i+1}
  std::vector<Degree> level_weights;  // descending
};

// Compiles encode_pkb(base); level variables are recovered from the roles.
CompiledBase compile_base(const PossibilisticBase& base, const CompileOptions& options = {});

struct PkbAnswer {
  Degree degree;
  std::size_t iterations = 0;  // level-loop bodies executed
};

// Level-wise query. Hard-level pre-checks first: evidence refuted -> 1,
// target refuted together with evidence -> 0. Then for i = 1..k: stop
// with 1 if K entails (A_i | -e); otherwise condition K on -A_i, and if
// K & e now entails -x return 1 - a_i. Exhausting the levels yields 1.
PkbAnswer query_pkb(const CompiledBase& kb, const EventTerm& x, const EventTerm& e);

// First level i at which -A_1..-A_i & w & K is inconsistent, read as
// 1 - a_i; 1 when every level stays consistent; 0 when w is refuted by the
// hard part. Used to check the compiled encoding against pi_sigma.
Degree consistency_degree(const CompiledBase& kb, const World& w);

}  // namespace posskc::pkb
