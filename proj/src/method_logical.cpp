#include "posskc/method_logical.hpp"

#include <set>
#include <stdexcept>

namespace posskc {

InstanceAtoms::InstanceAtoms(const PossNetwork& net) {
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& var = net.variable(v);
    first_.push_back(static_cast<int>(atoms_.size()) + 1);
    domain_.push_back(var.domain_size());
    names_.push_back(var.values);
    var_names_.push_back(var.name);
    const std::size_t count = var.domain_size() == 2 ? 1 : var.domain_size();
    for (std::size_t k = 0; k < count; ++k) {
      atoms_.push_back({v, k});
      roles_.push_back(InstanceRole{var.name, var.values[k]});
    }
  }
}

Lit InstanceAtoms::literal(std::size_t v, std::size_t value) const {
  if (v >= first_.size() || value >= domain_[v]) throw std::out_of_range("instance literal out of range");
  if (domain_[v] == 2) return value == 0 ? first_[v] : -first_[v];
  return first_[v] + static_cast<int>(value);
}

std::vector<int> InstanceAtoms::props_of(std::size_t v) const {
  const std::size_t count = domain_.at(v) == 2 ? 1 : domain_[v];
  std::vector<int> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(first_[v] + static_cast<int>(k));
  return out;
}

std::vector<int> InstanceAtoms::all_props() const {
  std::vector<int> out;
  for (std::size_t i = 1; i <= atoms_.size(); ++i) out.push_back(static_cast<int>(i));
  return out;
}

bool InstanceAtoms::holds(Lit l, const World& w) const {
  const Atom& a = atoms_.at(static_cast<std::size_t>(var_of(l)) - 1);
  const bool positive_true = w.at(a.var) == a.value;
  return l > 0 ? positive_true : !positive_true;
}

std::vector<Lit> InstanceAtoms::term_literals(const EventTerm& term) const {
  std::vector<Lit> out;
  for (const auto& [v, value] : term) out.push_back(literal(v, value));
  return out;
}

void InstanceAtoms::register_in(CnfFormula& f) const {
  if (f.num_vars() != 0) throw std::logic_error("instance atoms must be registered first");
  for (const auto& role : roles_) f.add_variable(role);
}

std::vector<Clause> InstanceAtoms::exactly_one_clauses() const {
  std::vector<Clause> out;
  for (std::size_t v = 0; v < domain_.size(); ++v) {
    if (domain_[v] == 2) continue;
    const auto props = props_of(v);
    out.emplace_back(std::vector<Lit>(props.begin(), props.end()));
    for (std::size_t i = 0; i < props.size(); ++i)
      for (std::size_t j = i + 1; j < props.size(); ++j) out.push_back(Clause{-props[i], -props[j]});
  }
  return out;
}

std::string InstanceAtoms::literal_str(Lit l) const {
  const Atom& a = atoms_.at(static_cast<std::size_t>(var_of(l)) - 1);
  const std::string& name = var_names_[a.var];
  if (domain_[a.var] == 2) return name + "=" + names_[a.var][l > 0 ? 0 : 1];
  return name + (l > 0 ? "=" : "!=") + names_[a.var][a.value];
}

}  // namespace posskc

namespace posskc::logical {

LogicalEncoding encode_logical(const PossNetwork& net) {
  LogicalEncoding enc;
  enc.atoms = InstanceAtoms(net);
  enc.atoms.register_in(enc.cnf);
  enc.delta_vars = enc.atoms.all_props();

  std::set<Degree, std::greater<>> degrees;
  for (std::size_t v = 0; v < net.size(); ++v)
    for (Degree d : net.table(v))
      if (!d.is_zero() && !d.is_one()) degrees.insert(d);
  for (Degree d : degrees) {
    const int theta = enc.cnf.add_variable(ParameterRole{"*", d});
    enc.theta_of.emplace(d, theta);
    enc.theta_weights.set(theta, d);
  }

  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& parents = net.parents(v);
    for (std::size_t c = 0; c < net.config_count(v); ++c) {
      const auto pvals = net.config_values(v, c);
      for (std::size_t x = 0; x < net.variable(v).domain_size(); ++x) {
        const Degree d = net.entry(v, x, c);
        if (d.is_one()) continue;
        std::vector<Lit> lits;
        for (std::size_t j = 0; j < parents.size(); ++j) lits.push_back(-enc.atoms.literal(parents[j], pvals[j]));
        lits.push_back(-enc.atoms.literal(v, x));
        if (!d.is_zero()) lits.push_back(enc.theta_of.at(d));
        enc.cnf.add_clause(Clause(std::move(lits)));
      }
    }
  }
  for (auto& c : enc.atoms.exactly_one_clauses()) enc.cnf.add_clause(std::move(c));
  return enc;
}

Degree explore(const NnfDag& compiled, const LogicalEncoding& enc, const EventTerm& term) {
  const NnfDag conditioned = condition(compiled, enc.atoms.term_literals(term));
  const NnfDag projected = forget(conditioned, enc.delta_vars);
  return pi_evaluate(projected, enc.theta_weights);
}

Degree query_logical(const NnfDag& compiled, const LogicalEncoding& enc, const EventTerm& x, const EventTerm& e) {
  const Degree evidence = explore(compiled, enc, e);
  const auto joint_term = EventTerm::merge(x, e);
  const Degree joint = joint_term ? explore(compiled, enc, *joint_term) : Degree::zero();
  return min_condition(joint, evidence);
}

}  // namespace posskc::logical
