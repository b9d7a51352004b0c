#pragma once

#include <map>
#include <vector>

#include "posskc/cnf.hpp"
#include "posskc/compiler.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"

namespace posskc {

// Propositional atoms for network values, shared by the logical and the
// base encodings. A binary variable is one proposition (its first value is
// the positive literal); a variable with k > 2 values gets one proposition
// per value tied by exactly-one clauses. Atoms take ids 1..num_props() in
// network order.
class InstanceAtoms {
public:
  InstanceAtoms() = default;
  explicit InstanceAtoms(const PossNetwork& net);

  std::size_t num_props() const { return roles_.size(); }
  std::size_t num_network_vars() const { return first_.size(); }

  // Literal that is true exactly when variable v takes `value`.
  Lit literal(std::size_t v, std::size_t value) const;
  std::vector<int> props_of(std::size_t v) const;
  std::vector<int> all_props() const;
  bool holds(Lit l, const World& w) const;
  std::vector<Lit> term_literals(const EventTerm& term) const;

  // Registers the atoms as the first variables of an empty formula.
  void register_in(CnfFormula& f) const;
  std::vector<Clause> exactly_one_clauses() const;

  // `X=v` for literals true on X=v; `X!=v` for negated multi-valued atoms.
  std::string literal_str(Lit l) const;

private:
  struct Atom {
    std::size_t var;
    std::size_t value;
  };
  std::vector<InstanceRole> roles_;
  std::vector<Atom> atoms_;                      // index id - 1
  std::vector<int> first_;                       // first atom id per network variable
  std::vector<std::size_t> domain_;              // domain size per network variable
  std::vector<std::vector<std::string>> names_;  // value names
  std::vector<std::string> var_names_;
};

}  // namespace posskc

// Logical pipeline: instance atoms plus one parameter per distinct degree,
// compiled once; each marginal is condition, forget, evaluate.
namespace posskc::logical {

struct LogicalEncoding {
  CnfFormula cnf;
  InstanceAtoms atoms;
  std::vector<int> delta_vars;
  WeightMap theta_weights;
  std::map<Degree, int, std::greater<>> theta_of;  // degree -> parameter id
};

// One clause (-u1 | ... | -um | -x | theta_d) per entry with 0 < d < 1, the
// same clause without theta for d = 0, nothing for d = 1. Parameters are
// network-wide, one per distinct degree, numbered by descending degree after
// the atoms.
LogicalEncoding encode_logical(const PossNetwork& net);

// Conditions the compiled encoding on the term, forgets the atoms and
// evaluates with parameter weights. Throws std::invalid_argument on a term
// that is not a consistent partial assignment.
Degree explore(const NnfDag& compiled, const LogicalEncoding& enc, const EventTerm& term);

Degree query_logical(const NnfDag& compiled, const LogicalEncoding& enc, const EventTerm& x, const EventTerm& e);

}  // namespace posskc::logical
