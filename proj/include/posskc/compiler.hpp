#pragma once

#include <cstddef>

#include "posskc/cnf.hpp"
#include "posskc/nnf.hpp"

namespace posskc {

struct CompileOptions {
  // Hard cap on DAG nodes created during compilation; exceeding it throws
  // BudgetError rather than returning a partial DAG.
  std::size_t node_budget = 20'000'000;
  // Approximate bytes of component-cache keys kept before the cache is
  // flushed. Flushing only costs time.
  std::size_t cache_budget = std::size_t{1} << 28;
};

struct CompileStats {
  std::size_t decisions = 0;
  std::size_t cache_hits = 0;
  std::size_t cache_flushes = 0;
};

// Top-down decision-DNNF compilation: exhaustive branching with unit
// propagation, variable-disjoint component decomposition and a cache keyed by
// the residual clause set. Branches on the variable with the most
// occurrences in the current component, smallest id on ties. The result is
// logically equivalent to f over f's registry and flagged decomposable and
// deterministic.
NnfDag compile(const CnfFormula& f, const CompileOptions& options = {}, CompileStats* stats = nullptr);

}  // namespace posskc
