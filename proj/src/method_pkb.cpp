#include "posskc/method_pkb.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace posskc::pkb {

PossibilisticBase to_possibilistic_base(const PossNetwork& net) {
  PossibilisticBase base;
  base.atoms = InstanceAtoms(net);
  std::set<Degree, std::greater<>> weights;
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& parents = net.parents(v);
    for (std::size_t c = 0; c < net.config_count(v); ++c) {
      const auto pvals = net.config_values(v, c);
      for (std::size_t x = 0; x < net.variable(v).domain_size(); ++x) {
        const Degree d = net.entry(v, x, c);
        if (d.is_one()) continue;
        std::vector<Lit> lits{-base.atoms.literal(v, x)};
        for (std::size_t j = 0; j < parents.size(); ++j) lits.push_back(-base.atoms.literal(parents[j], pvals[j]));
        const Degree weight = complement(d);
        base.formulas.push_back({Clause(std::move(lits)), weight});
        if (!weight.is_one()) weights.insert(weight);
      }
    }
  }
  for (auto& c : base.atoms.exactly_one_clauses()) base.formulas.push_back({std::move(c), Degree::one()});
  base.levels.assign(weights.begin(), weights.end());
  return base;
}

Degree pi_sigma(const PossibilisticBase& base, const World& w) {
  Degree worst = Degree::zero();
  bool violated = false;
  for (const auto& f : base.formulas) {
    const bool sat = std::any_of(f.clause.begin(), f.clause.end(), [&](Lit l) { return base.atoms.holds(l, w); });
    if (!sat) {
      violated = true;
      worst = max(worst, f.weight);
    }
  }
  return violated ? complement(worst) : Degree::one();
}

std::string write_base(const PossibilisticBase& base) {
  std::ostringstream out;
  for (const auto& f : base.formulas) {
    for (Lit l : f.clause) out << base.atoms.literal_str(l) << ' ';
    out << ": " << f.weight << '\n';
  }
  return out.str();
}

CnfFormula encode_pkb(const PossibilisticBase& base) {
  CnfFormula cnf;
  base.atoms.register_in(cnf);
  std::vector<int> level_var;
  for (std::size_t i = 0; i < base.levels.size(); ++i)
    level_var.push_back(cnf.add_variable(LevelRole{i + 1, base.levels[i]}));
  for (const auto& f : base.formulas) {
    if (f.weight.is_one()) {
      cnf.add_clause(f.clause);
      continue;
    }
    const auto it = std::find(base.levels.begin(), base.levels.end(), f.weight);
    if (it == base.levels.end()) throw std::logic_error("formula weight missing from level list");
    std::vector<Lit> lits = f.clause.literals();
    lits.push_back(level_var[static_cast<std::size_t>(it - base.levels.begin())]);
    cnf.add_clause(Clause(std::move(lits)));
  }
  return cnf;
}

CompiledBase compile_base(const PossibilisticBase& base, const CompileOptions& options) {
  const CnfFormula cnf = encode_pkb(base);
  CompiledBase kb{compile(cnf, options), base.atoms, {}, {}};
  std::vector<std::pair<std::size_t, int>> ranked;
  for (const auto& pv : cnf.variables())
    if (const auto* role = std::get_if<LevelRole>(&pv.role)) ranked.emplace_back(role->rank, pv.id);
  std::sort(ranked.begin(), ranked.end());
  for (const auto& [rank, id] : ranked) {
    kb.level_vars.push_back(id);
    kb.level_weights.push_back(std::get<LevelRole>(cnf.variable(id).role).weight);
  }
  return kb;
}

PkbAnswer query_pkb(const CompiledBase& kb, const EventTerm& x, const EventTerm& e) {
  const std::vector<Lit> evidence = kb.atoms.term_literals(e);
  if (!is_consistent_under(kb.dag, evidence)) return {Degree::one(), 0};
  const auto joint_term = EventTerm::merge(x, e);
  if (!joint_term) return {Degree::zero(), 0};
  const std::vector<Lit> joint = kb.atoms.term_literals(*joint_term);
  if (!is_consistent_under(kb.dag, joint)) return {Degree::zero(), 0};

  NnfDag k = kb.dag;
  PkbAnswer answer{Degree::one(), 0};
  for (std::size_t i = 0; i < kb.level_vars.size(); ++i) {
    const Lit a = kb.level_vars[i];
    std::vector<Lit> guard{a};
    for (Lit l : evidence) guard.push_back(-l);
    if (entails_clause(k, guard)) break;
    ++answer.iterations;
    k = condition(k, {-a});
    if (!is_consistent_under(k, joint)) {
      answer.degree = complement(kb.level_weights[i]);
      break;
    }
  }
  return answer;
}

Degree consistency_degree(const CompiledBase& kb, const World& w) {
  std::vector<Lit> lits;
  for (std::size_t v = 0; v < w.size(); ++v) lits.push_back(kb.atoms.literal(v, w[v]));
  for (int p : kb.atoms.all_props())
    if (std::find_if(lits.begin(), lits.end(), [&](Lit l) { return var_of(l) == p; }) == lits.end())
      lits.push_back(-p);  // multi-valued atoms not selected by w
  if (!is_consistent_under(kb.dag, lits)) return Degree::zero();
  for (std::size_t i = 0; i < kb.level_vars.size(); ++i) {
    lits.push_back(-kb.level_vars[i]);
    if (!is_consistent_under(kb.dag, lits)) return complement(kb.level_weights[i]);
  }
  return Degree::one();
}

}  // namespace posskc::pkb
