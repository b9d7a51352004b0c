#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "posskc/cnf.hpp"
#include "posskc/degree.hpp"

namespace posskc {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { True, False, Literal, And, Or };

struct NnfNode {
  NodeKind kind = NodeKind::True;
  Lit lit = 0;       // Literal nodes
  int decision = 0;  // Or nodes: the variable the two branches disagree on, 0 if none
  std::vector<NodeId> children;

  bool operator==(const NnfNode&) const = default;
};

struct NnfFlags {
  bool decomposable = false;
  bool deterministic = false;
  bool smooth = false;

  bool operator==(const NnfFlags&) const = default;
};

// Rooted NNF DAG. Nodes are pooled so that every child index is smaller than
// its parent's; the root is always the last node and every node is reachable
// from it. Instances are immutable; transformations return new DAGs.
class NnfDag {
public:
  NnfDag();  // the constant True

  const std::vector<NnfNode>& nodes() const { return nodes_; }
  const NnfNode& node(NodeId id) const { return nodes_.at(id); }
  NodeId root() const { return static_cast<NodeId>(nodes_.size() - 1); }
  const NnfFlags& flags() const { return flags_; }
  // Size of the variable registry the DAG ranges over (may exceed the
  // variables it mentions).
  int num_vars() const { return num_vars_; }

  bool is_true() const { return node(root()).kind == NodeKind::True; }
  bool is_false() const { return node(root()).kind == NodeKind::False; }

private:
  friend class NnfBuilder;
  std::vector<NnfNode> nodes_;
  NnfFlags flags_;
  int num_vars_ = 0;
};

// Hash-consing node factory with constant folding: True/False children are
// absorbed, duplicate children dropped, unary And/Or collapse to their child.
class NnfBuilder {
public:
  explicit NnfBuilder(int num_vars, std::size_t node_budget = std::numeric_limits<std::size_t>::max());

  NodeId true_node();
  NodeId false_node();
  NodeId literal(Lit l);
  NodeId conjoin(std::vector<NodeId> children);
  NodeId disjoin(std::vector<NodeId> children, int decision = 0);

  const NnfNode& node(NodeId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  // Extracts the sub-DAG reachable from root, renumbered children-first.
  NnfDag finish(NodeId root, NnfFlags flags) const;

private:
  NodeId intern(NnfNode node);

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept;
  };

  int num_vars_;
  std::size_t budget_;
  std::vector<NnfNode> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, NodeId, KeyHash> unique_;
  std::vector<std::uint32_t> scratch_;
};

// Literal valuation for max-min evaluation. Unlisted literals weigh 1.
class WeightMap {
public:
  void set(Lit l, Degree d);
  Degree get(Lit l) const;
  // Literals explicitly set, ascending by variable then sign.
  std::vector<std::pair<Lit, Degree>> entries() const;

private:
  std::vector<Degree> pos_;
  std::vector<Degree> neg_;
};

// Replaces each term literal by True and its complement by False. Throws
// std::invalid_argument on a term holding complementary literals.
NnfDag condition(const NnfDag& d, const std::vector<Lit>& term);

// Existential quantification: every literal of the listed variables becomes
// True. Clears the deterministic flag.
NnfDag forget(const NnfDag& d, const std::vector<int>& vars);

// Conjoins gadgets so that all children of each Or mention the same
// variables. `groups` optionally lists variable families (e.g. the indicators
// of one network variable): when a child misses a whole family, the gadget is
// the family's exactly-one constraint, so the result is equivalent to the
// input only where that constraint holds. Every other missing
// variable v gets (v | -v).
NnfDag smooth(const NnfDag& d, const std::vector<std::vector<int>>& groups = {});

bool is_consistent(const NnfDag& d);
// Consistency of d conjoined with a term, in one pass without rebuilding.
bool is_consistent_under(const NnfDag& d, const std::vector<Lit>& term);
bool entails_clause(const NnfDag& d, const Clause& c);
bool entails_clause(const NnfDag& d, const std::vector<Lit>& clause);

// Bottom-up And = min, Or = max; leaves via w, True = 1, False = 0.
Degree pi_evaluate(const NnfDag& d, const WeightMap& w);

// Truth value under a total interpretation of d's registry.
bool evaluate(const NnfDag& d, const Interpretation& m);

struct NnfStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  bool operator==(const NnfStats&) const = default;
};

NnfStats nnf_stats(const NnfDag& d);

// Recomputes the three properties from structure. Determinism is checked in
// its decision form: an Or with two or more children must have exactly two,
// one syntactically implying its decision variable and the other its
// negation.
NnfFlags validate_properties(const NnfDag& d);

// Throws InputError when a flag claims a property the structure lacks.
void check_flags(const NnfDag& d);

// c2d-style text: `nnf V E n`, then `L lit`, `A c ids...`, `O j c ids...`.
// A leading `c flags ...` line records the property flags.
std::string write_nnf(const NnfDag& d);
NnfDag parse_nnf(std::string_view text);

// Variables mentioned by the DAG, ascending.
std::vector<int> mentioned_vars(const NnfDag& d);

}  // namespace posskc
