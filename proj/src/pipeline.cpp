#include "posskc/pipeline.hpp"

namespace posskc {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Pf: return "pf";
    case Method::Logical: return "logical";
    case Method::Pkb: return "pkb";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "pf") return Method::Pf;
  if (name == "logical") return Method::Logical;
  if (name == "pkb") return Method::Pkb;
  return std::nullopt;
}

CnfFormula encode(const PossNetwork& net, Method method, bool local_structure) {
  switch (method) {
    case Method::Pf: return pf::encode_pf(net, local_structure).cnf;
    case Method::Logical: return logical::encode_logical(net).cnf;
    case Method::Pkb: return pkb::encode_pkb(pkb::to_possibilistic_base(net));
  }
  return {};
}

Pipeline Pipeline::build(const PossNetwork& net, Method method, const CompileOptions& options, bool local_structure) {
  switch (method) {
    case Method::Pf: {
      auto enc = pf::encode_pf(net, local_structure);
      const CnfStats stats = posskc::cnf_stats(enc.cnf);
      return Pipeline(method, stats, pf::build_circuit(enc, options));
    }
    case Method::Logical: {
      auto enc = logical::encode_logical(net);
      const CnfStats stats = posskc::cnf_stats(enc.cnf);
      NnfDag dag = compile(enc.cnf, options);
      return Pipeline(method, stats, LogicalState{std::move(enc), std::move(dag)});
    }
    case Method::Pkb: {
      const auto base = pkb::to_possibilistic_base(net);
      const CnfStats stats = posskc::cnf_stats(pkb::encode_pkb(base));
      return Pipeline(method, stats, pkb::compile_base(base, options));
    }
  }
  throw std::logic_error("unknown method");
}

const NnfDag& Pipeline::dag() const {
  struct Visitor {
    const NnfDag& operator()(const pf::PossCircuit& c) const { return c.dag; }
    const NnfDag& operator()(const LogicalState& s) const { return s.dag; }
    const NnfDag& operator()(const pkb::CompiledBase& kb) const { return kb.dag; }
  };
  return std::visit(Visitor{}, state_);
}

Degree Pipeline::query(const EventTerm& x, const EventTerm& e) const {
  struct Visitor {
    const EventTerm& x;
    const EventTerm& e;
    Degree operator()(const pf::PossCircuit& c) const { return pf::query_pf(c, x, e); }
    Degree operator()(const LogicalState& s) const { return logical::query_logical(s.dag, s.enc, x, e); }
    Degree operator()(const pkb::CompiledBase& kb) const { return pkb::query_pkb(kb, x, e).degree; }
  };
  return std::visit(Visitor{x, e}, state_);
}

}  // namespace posskc
