#pragma once

#include <vector>

#include "posskc/cnf.hpp"
#include "posskc/compiler.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"

// Possibilistic-function pipeline: evidence indicators and parameters,
// compiled into a max-min circuit that is evaluated twice per query.
namespace posskc::pf {

struct PfEncoding {
  CnfFormula cnf;
  // Positive parameter literals and their degrees; indicators are weighted
  // per query and every negative literal weighs 1.
  WeightMap weight_map;
  bool local_structure = true;
  // indicators[var][value] = proposition id of lambda_{var=value}.
  std::vector<std::vector<int>> indicators;
};

struct PossCircuit {
  NnfDag dag;
  WeightMap base_weights;
  std::vector<std::vector<int>> indicators;
};

// Explicit max over all instantiations of the min over indicators and
// parameters, with indicators set from e. Exponential; desk scale only.
Degree evaluate_fmin(const PossNetwork& net, const EventTerm& e);

// Indicator clauses per variable (at-least-one, pairwise at-most-one) plus
// parameter clauses. Without local structure every table entry owns a
// parameter tied to its indicators by a biconditional. With local structure
// degree-1 entries emit nothing, degree-0 entries emit a hard clause, and the
// remaining entries of one table share one parameter per distinct degree
// through a single implication.
PfEncoding encode_pf(const PossNetwork& net, bool local_structure = true);

// Compiles the encoding; parameter weights are read back from the roles.
PossCircuit build_circuit(const PfEncoding& enc, const CompileOptions& options = {});

// Parameter weights plus indicators: lambda_{X=v} is 1 iff the term leaves X
// free or fixes it to v.
WeightMap query_weights(const PossCircuit& circuit, const EventTerm& term);

// Root value of the circuit under the term's indicator setting.
Degree circuit_possibility(const PossCircuit& circuit, const EventTerm& term);

// Pi(x | e) from two circuit evaluations combined by min-conditioning.
Degree query_pf(const PossCircuit& circuit, const EventTerm& x, const EventTerm& e);

}  // namespace posskc::pf
