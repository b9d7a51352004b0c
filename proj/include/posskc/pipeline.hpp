#pragma once

#include <optional>
#include <string_view>
#include <variant>

#include "posskc/compiler.hpp"
#include "posskc/method_logical.hpp"
#include "posskc/method_pf.hpp"
#include "posskc/method_pkb.hpp"
#include "posskc/network.hpp"

namespace posskc {

enum class Method { Pf, Logical, Pkb };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

// CNF encoding of a network under one method (pf uses local structure unless
// told otherwise).
CnfFormula encode(const PossNetwork& net, Method method, bool local_structure = true);

// A network encoded and compiled once under one method, answering any number
// of conditional queries.
class Pipeline {
public:
  static Pipeline build(const PossNetwork& net, Method method, const CompileOptions& options = {},
                        bool local_structure = true);

  Method method() const { return method_; }
  const CnfStats& cnf_stats() const { return cnf_stats_; }
  const NnfDag& dag() const;

  Degree query(const EventTerm& x, const EventTerm& e) const;
  Degree possibility(const EventTerm& term) const { return query(term, EventTerm{}); }

private:
  struct LogicalState {
    logical::LogicalEncoding enc;
    NnfDag dag;
  };

  Pipeline(Method m, CnfStats s, std::variant<pf::PossCircuit, LogicalState, pkb::CompiledBase> st)
      : method_(m), cnf_stats_(s), state_(std::move(st)) {}

  Method method_;
  CnfStats cnf_stats_;
  std::variant<pf::PossCircuit, LogicalState, pkb::CompiledBase> state_;
};

}  // namespace posskc
