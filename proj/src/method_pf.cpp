#include "posskc/method_pf.hpp"

#include <map>
#include <stdexcept>

#include "posskc/error.hpp"

namespace posskc::pf {

Degree evaluate_fmin(const PossNetwork& net, const EventTerm& e) {
  double worlds = 1;
  for (const auto& var : net.variables()) worlds *= static_cast<double>(var.domain_size());
  if (worlds > double(1 << 24)) throw BudgetError("f_min enumeration over more than 2^24 instantiations");

  auto lambda = [&](std::size_t v, std::size_t value) {
    const auto fixed = e.value_of(v);
    return !fixed || *fixed == value ? Degree::one() : Degree::zero();
  };
  Degree best = Degree::zero();
  for_each_world(net, EventTerm{}, [&](const World& w) {
    Degree term = Degree::one();
    for (std::size_t v = 0; v < net.size(); ++v) {
      term = min(term, lambda(v, w[v]));
      term = min(term, net.entry(v, w[v], net.config_of(v, w)));
    }
    best = max(best, term);
  });
  return best;
}

PfEncoding encode_pf(const PossNetwork& net, bool local_structure) {
  PfEncoding enc;
  enc.local_structure = local_structure;
  auto& cnf = enc.cnf;

  for (const auto& var : net.variables()) {
    std::vector<int> ids;
    for (const auto& value : var.values) ids.push_back(cnf.add_variable(IndicatorRole{var.name, value}));
    enc.indicators.push_back(std::move(ids));
  }
  for (const auto& ids : enc.indicators) {
    cnf.add_clause(Clause(std::vector<Lit>(ids.begin(), ids.end())));
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) cnf.add_clause(Clause{-ids[i], -ids[j]});
  }

  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& var = net.variable(v);
    const auto& parents = net.parents(v);
    std::map<Degree, int> shared;  // local mode: one parameter per distinct degree of this table
    for (std::size_t c = 0; c < net.config_count(v); ++c) {
      const auto pvals = net.config_values(v, c);
      for (std::size_t x = 0; x < var.domain_size(); ++x) {
        const Degree d = net.entry(v, x, c);
        std::vector<Lit> family{enc.indicators[v][x]};
        for (std::size_t j = 0; j < parents.size(); ++j) family.push_back(enc.indicators[parents[j]][pvals[j]]);

        std::vector<Lit> implication;
        for (Lit l : family) implication.push_back(-l);

        if (!local_structure) {
          std::string scope = var.name + "=" + var.values[x];
          for (std::size_t j = 0; j < parents.size(); ++j)
            scope += (j == 0 ? "|" : ",") + net.variable(parents[j]).name + "=" +
                     net.variable(parents[j]).values[pvals[j]];
          const int theta = cnf.add_variable(ParameterRole{scope, d});
          if (!d.is_one()) enc.weight_map.set(theta, d);
          implication.push_back(theta);
          cnf.add_clause(Clause(implication));
          for (Lit l : family) cnf.add_clause(Clause{-theta, l});
          continue;
        }

        if (d.is_one()) continue;
        if (d.is_zero()) {
          cnf.add_clause(Clause(implication));
          continue;
        }
        auto it = shared.find(d);
        if (it == shared.end()) {
          const int theta = cnf.add_variable(ParameterRole{var.name, d});
          enc.weight_map.set(theta, d);
          it = shared.emplace(d, theta).first;
        }
        implication.push_back(it->second);
        cnf.add_clause(Clause(implication));
      }
    }
  }
  return enc;
}

PossCircuit build_circuit(const PfEncoding& enc, const CompileOptions& options) {
  PossCircuit circuit{compile(enc.cnf, options), {}, enc.indicators};
  for (const auto& pv : enc.cnf.variables())
    if (const auto* role = std::get_if<ParameterRole>(&pv.role)) circuit.base_weights.set(pv.id, role->degree);
  return circuit;
}

WeightMap query_weights(const PossCircuit& circuit, const EventTerm& term) {
  WeightMap w = circuit.base_weights;
  for (std::size_t v = 0; v < circuit.indicators.size(); ++v) {
    const auto fixed = term.value_of(v);
    for (std::size_t x = 0; x < circuit.indicators[v].size(); ++x)
      w.set(circuit.indicators[v][x], !fixed || *fixed == x ? Degree::one() : Degree::zero());
  }
  return w;
}

Degree circuit_possibility(const PossCircuit& circuit, const EventTerm& term) {
  return pi_evaluate(circuit.dag, query_weights(circuit, term));
}

Degree query_pf(const PossCircuit& circuit, const EventTerm& x, const EventTerm& e) {
  const Degree evidence = circuit_possibility(circuit, e);
  const auto joint_term = EventTerm::merge(x, e);
  const Degree joint = joint_term ? circuit_possibility(circuit, *joint_term) : Degree::zero();
  return min_condition(joint, evidence);
}

}  // namespace posskc::pf
