#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "posskc/degree.hpp"

namespace posskc {

// Signed DIMACS-style literal: +v or -v for variable id v >= 1.
using Lit = int;

constexpr int var_of(Lit l) { return l < 0 ? -l : l; }

// Role tags carried by every propositional variable so that weight maps can
// be rebuilt from a serialized encoding alone.
struct PlainRole {
  bool operator==(const PlainRole&) const = default;
};
// Network value x of X (logical and base encodings).
struct InstanceRole {
  std::string variable;
  std::string value;
  bool operator==(const InstanceRole&) const = default;
};
// Evidence indicator lambda_x (possibilistic-function encoding).
struct IndicatorRole {
  std::string variable;
  std::string value;
  bool operator==(const IndicatorRole&) const = default;
};
// Network parameter theta carrying a degree; scope names what owns it
// (a table entry, a variable's table, or `*` for network-wide sharing).
struct ParameterRole {
  std::string scope;
  Degree degree;
  bool operator==(const ParameterRole&) const = default;
};
// Stratum variable A_i of a weighted base; rank 1 is the highest weight.
struct LevelRole {
  std::size_t rank = 0;
  Degree weight;
  bool operator==(const LevelRole&) const = default;
};

using Role = std::variant<PlainRole, InstanceRole, IndicatorRole, ParameterRole, LevelRole>;

struct PropVariable {
  int id = 0;
  Role role;
  std::string label;
  bool operator==(const PropVariable&) const = default;
};

// A disjunction of literals, kept sorted by variable and duplicate-free.
// Complementary literals are rejected; the empty clause is allowed and is
// unsatisfiable.
class Clause {
public:
  Clause() = default;
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}
  explicit Clause(std::vector<Lit> lits);

  // True when the literal list contains some v together with -v.
  static bool is_tautology(std::vector<Lit> lits);

  const std::vector<Lit>& literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  bool operator==(const Clause&) const = default;

private:
  std::vector<Lit> lits_;
};

class Interpretation {
public:
  Interpretation() = default;
  explicit Interpretation(std::vector<bool> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  bool value(int var) const { return values_.at(static_cast<std::size_t>(var - 1)); }
  bool satisfies(Lit l) const { return l > 0 ? value(l) : !value(-l); }
  bool satisfies(const Clause& c) const;

  bool operator==(const Interpretation&) const = default;
  auto operator<=>(const Interpretation& other) const { return values_ <=> other.values_; }

private:
  std::vector<bool> values_;  // index id - 1
};

class CnfFormula {
public:
  // Registers the next variable (ids are dense from 1). An empty label is
  // replaced by one derived from the role.
  int add_variable(Role role, std::string label = {});
  // Throws std::invalid_argument when a literal names an unregistered variable.
  void add_clause(Clause clause);

  std::size_t num_vars() const { return variables_.size(); }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<PropVariable>& variables() const { return variables_; }
  const PropVariable& variable(int id) const { return variables_.at(static_cast<std::size_t>(id - 1)); }
  const std::vector<Clause>& clauses() const { return clauses_; }

  bool satisfied_by(const Interpretation& m) const;

  bool operator==(const CnfFormula&) const = default;

private:
  std::vector<PropVariable> variables_;
  std::vector<Clause> clauses_;
};

std::string default_label(const Role& role, int id);

struct CnfStats {
  std::size_t vars = 0;
  std::size_t clauses = 0;
  bool operator==(const CnfStats&) const = default;
};

CnfStats cnf_stats(const CnfFormula& f);

// DIMACS with `c var <id> <role> <fields...> <label>` comment lines for every
// variable whose role is not plain (or whose label is not the default).
std::string to_dimacs(const CnfFormula& f);
CnfFormula parse_dimacs(std::string_view text);

inline constexpr std::size_t kModelEnumerationLimit = 24;

// Visits satisfying interpretations in lexicographic order (variable 1 most
// significant, false before true). Throws BudgetError above max_vars.
void for_each_model(const CnfFormula& f, const std::function<void(const Interpretation&)>& fn,
                    std::size_t max_vars = kModelEnumerationLimit);
std::vector<Interpretation> enumerate_models(const CnfFormula& f, std::size_t max_vars = kModelEnumerationLimit);

}  // namespace posskc
