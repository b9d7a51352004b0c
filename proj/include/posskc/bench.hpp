#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "posskc/cnf.hpp"
#include "posskc/compiler.hpp"
#include "posskc/network.hpp"
#include "posskc/nnf.hpp"
#include "posskc/pipeline.hpp"

namespace posskc::bench {

// splitmix64 (Steele, Lea, Flood): state += 0x9e3779b97f4a7c15, then two
// xor-shift-multiply rounds. Used for every random choice so that runs are
// reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);

private:
  std::uint64_t state_;
};

std::vector<Degree> default_degree_pool();  // 0.1, 0.2, ..., 0.9

struct GenConfig {
  std::size_t n_nodes = 10;
  std::size_t max_parents = 3;
  std::vector<Degree> degree_pool = default_degree_pool();
  std::uint64_t seed = 1;
  bool binary_only = true;  // otherwise domains of 2 or 3 values
};

// Variables X1..Xn placed in a random topological order; each draws between
// 0 and max_parents parents among its predecessors. Per parent
// configuration one value gets degree 1 and the others a pool degree.
PossNetwork random_network(const GenConfig& cfg);

enum class BaselineScheme { Circuit, Logical };

// Encoding sizes of the probabilistic counterparts, counted by formula:
//   circuit: vars = sum |dom| + #entries not in {0,1};
//            clauses = sum (1 + C(|dom|,2)) + (m+2) * #entries not in {0,1}
//                      + #entries equal to 0   (m = parent count)
//   logical: vars = #instance atoms + #entries; clauses = #entries.
CnfStats baseline_counts(const PossNetwork& net, BaselineScheme scheme);

struct ComparisonRow {
  std::uint64_t seed = 0;
  std::size_t n_nodes = 0;
  Method method = Method::Pf;
  std::size_t cnf_vars = 0;
  std::size_t cnf_clauses = 0;
  std::size_t nnf_nodes = 0;
  std::size_t nnf_edges = 0;
  double compile_ms = 0;
  double query_ms = 0;
  std::string status = "ok";  // "ok" or "budget"
};

struct SizeMeans {
  std::size_t n_nodes = 0;
  Method method = Method::Pf;
  std::size_t count = 0;     // rows averaged for CNF columns
  std::size_t compiled = 0;  // rows averaged for NNF columns
  double cnf_vars = 0;
  double cnf_clauses = 0;
  double nnf_nodes = 0;
  double nnf_edges = 0;
};

struct SweepConfig {
  std::vector<std::size_t> sizes{10, 20, 30, 40, 50};
  std::size_t per_size = 20;
  std::uint64_t seed = 1;
  std::size_t max_parents = 3;
  std::vector<Degree> degree_pool = default_degree_pool();
  bool binary_only = true;
  std::vector<Method> methods{Method::Pf, Method::Logical, Method::Pkb};
  CompileOptions compile;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct SweepResult {
  std::vector<ComparisonRow> rows;  // ordered by (n_nodes, seed, method)
  std::vector<SizeMeans> means;     // ordered by (n_nodes, method)
};

// Instance k of size s uses GenConfig seed = cfg.seed + k.
SweepResult run_comparison(const SweepConfig& cfg);

// One instance under the configured methods; exposed for single-net runs.
std::vector<ComparisonRow> compare_network(const PossNetwork& net, std::uint64_t seed, const std::vector<Method>& methods,
                                           const CompileOptions& options);

std::vector<SizeMeans> aggregate(const std::vector<ComparisonRow>& rows);

inline constexpr const char* kCsvHeader =
    "seed,n_nodes,method,cnf_vars,cnf_clauses,nnf_nodes,nnf_edges,compile_ms,query_ms,status";

// Run-config comment, header, rows, then the means as `#`-prefixed lines.
void write_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result);

struct CrossCheckConfig {
  std::size_t nets = 200;
  std::size_t max_vars = 10;
  std::size_t queries = 5;
  std::uint64_t seed = 1;
  std::size_t max_parents = 3;
  bool binary_only = true;
};

struct Mismatch {
  std::string network;  // PNET text
  std::string target;
  std::string evidence;
  Degree oracle, pf, logical, pkb;
};

struct CrossCheckReport {
  std::size_t nets = 0;
  std::size_t queries = 0;
  std::vector<Mismatch> mismatches;

  std::string text() const;
};

// Random (x, e) queries on random small networks; every pipeline must equal
// the brute-force oracle exactly.
CrossCheckReport cross_validate(const CrossCheckConfig& cfg);

// A random query over a network: one or two target variables, evidence over
// a random subset of the rest, occasionally contradicting the target.
std::pair<EventTerm, EventTerm> random_query(const PossNetwork& net, SplitMix64& rng);

}  // namespace posskc::bench
