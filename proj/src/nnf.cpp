#include "posskc/nnf.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "posskc/error.hpp"

namespace posskc {

NnfDag::NnfDag() : nodes_{NnfNode{}}, flags_{true, true, true} {}

// ---------------------------------------------------------------------------
// Builder

std::size_t NnfBuilder::KeyHash::operator()(const std::vector<std::uint32_t>& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ key.size();
  for (std::uint32_t k : key) {
    h ^= k + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

NnfBuilder::NnfBuilder(int num_vars, std::size_t node_budget) : num_vars_(num_vars), budget_(node_budget) {}

NodeId NnfBuilder::intern(NnfNode node) {
  scratch_.clear();
  scratch_.push_back(static_cast<std::uint32_t>(node.kind));
  scratch_.push_back(static_cast<std::uint32_t>(node.lit));
  scratch_.push_back(static_cast<std::uint32_t>(node.decision));
  scratch_.insert(scratch_.end(), node.children.begin(), node.children.end());
  auto it = unique_.find(scratch_);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= budget_)
    throw BudgetError("NNF node budget of " + std::to_string(budget_) + " nodes exceeded");
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
  unique_.emplace(scratch_, id);
  return id;
}

NodeId NnfBuilder::true_node() { return intern(NnfNode{NodeKind::True, 0, 0, {}}); }

NodeId NnfBuilder::false_node() { return intern(NnfNode{NodeKind::False, 0, 0, {}}); }

NodeId NnfBuilder::literal(Lit l) {
  if (l == 0 || var_of(l) > num_vars_) throw std::invalid_argument("literal outside the variable registry");
  return intern(NnfNode{NodeKind::Literal, l, 0, {}});
}

NodeId NnfBuilder::conjoin(std::vector<NodeId> children) {
  std::vector<NodeId> kept;
  kept.reserve(children.size());
  for (NodeId c : children) {
    const NodeKind k = nodes_.at(c).kind;
    if (k == NodeKind::False) return false_node();
    if (k != NodeKind::True) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return true_node();
  if (kept.size() == 1) return kept.front();
  return intern(NnfNode{NodeKind::And, 0, 0, std::move(kept)});
}

NodeId NnfBuilder::disjoin(std::vector<NodeId> children, int decision) {
  std::vector<NodeId> kept;
  kept.reserve(children.size());
  for (NodeId c : children) {
    const NodeKind k = nodes_.at(c).kind;
    if (k == NodeKind::True) return true_node();
    if (k != NodeKind::False) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return false_node();
  if (kept.size() == 1) return kept.front();
  if (kept.size() != 2) decision = 0;
  return intern(NnfNode{NodeKind::Or, 0, decision, std::move(kept)});
}

NnfDag NnfBuilder::finish(NodeId root, NnfFlags flags) const {
  constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> remap(nodes_.size(), kUnset);
  NnfDag out;
  out.nodes_.clear();
  out.flags_ = flags;
  out.num_vars_ = num_vars_;

  // Iterative post-order so deep DAGs do not exhaust the call stack.
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const NnfNode& n = nodes_.at(id);
    if (remap[id] != kUnset) {
      stack.pop_back();
      continue;
    }
    if (next < n.children.size()) {
      const NodeId child = n.children[next++];
      if (remap[child] == kUnset) stack.emplace_back(child, 0);
      continue;
    }
    NnfNode copy = n;
    for (auto& c : copy.children) c = remap[c];
    remap[id] = static_cast<NodeId>(out.nodes_.size());
    out.nodes_.push_back(std::move(copy));
    stack.pop_back();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weights

void WeightMap::set(Lit l, Degree d) {
  if (l == 0) throw std::invalid_argument("weight for literal 0");
  auto& side = l > 0 ? pos_ : neg_;
  const auto v = static_cast<std::size_t>(var_of(l));
  if (side.size() <= v) side.resize(v + 1, Degree::one());
  side[v] = d;
}

Degree WeightMap::get(Lit l) const {
  const auto& side = l > 0 ? pos_ : neg_;
  const auto v = static_cast<std::size_t>(var_of(l));
  return v < side.size() ? side[v] : Degree::one();
}

std::vector<std::pair<Lit, Degree>> WeightMap::entries() const {
  std::vector<std::pair<Lit, Degree>> out;
  const std::size_t n = std::max(pos_.size(), neg_.size());
  for (std::size_t v = 1; v < n; ++v) {
    const int var = static_cast<int>(v);
    if (v < neg_.size() && !neg_[v].is_one()) out.emplace_back(-var, neg_[v]);
    if (v < pos_.size() && !pos_[v].is_one()) out.emplace_back(var, pos_[v]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transformations

namespace {

// Rebuilds d bottom-up. `leaf(lit)` returns +1 (True), -1 (False) or 0 (keep);
// `keeps_decision(var)` says whether an Or's decision label survives.
template <class LeafFn, class DecisionFn>
NnfDag rebuild(const NnfDag& d, LeafFn leaf, DecisionFn keeps_decision, NnfFlags flags) {
  NnfBuilder b(d.num_vars());
  std::vector<NodeId> map(d.nodes().size());
  std::vector<NodeId> kids;
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    switch (n.kind) {
      case NodeKind::True:
        map[i] = b.true_node();
        break;
      case NodeKind::False:
        map[i] = b.false_node();
        break;
      case NodeKind::Literal: {
        const int r = leaf(n.lit);
        map[i] = r > 0 ? b.true_node() : r < 0 ? b.false_node() : b.literal(n.lit);
        break;
      }
      case NodeKind::And:
      case NodeKind::Or:
        kids.clear();
        for (NodeId c : n.children) kids.push_back(map[c]);
        if (n.kind == NodeKind::And)
          map[i] = b.conjoin(kids);
        else
          map[i] = b.disjoin(kids, n.decision != 0 && keeps_decision(n.decision) ? n.decision : 0);
        break;
    }
  }
  return b.finish(map[d.root()], flags);
}

// Assignment lookup: +1 literal true, -1 false, 0 unassigned.
class TermIndex {
public:
  TermIndex(int num_vars, const std::vector<Lit>& term) {
    int top = num_vars;
    for (Lit l : term) top = std::max(top, var_of(l));
    value_.assign(static_cast<std::size_t>(top) + 1, 0);
    for (Lit l : term) {
      if (l == 0) throw std::invalid_argument("term literal 0");
      auto& slot = value_[static_cast<std::size_t>(var_of(l))];
      const std::int8_t want = l > 0 ? 1 : -1;
      if (slot == -want) throw std::invalid_argument("term contains complementary literals");
      slot = want;
    }
  }

  int operator()(Lit l) const {
    const auto v = static_cast<std::size_t>(var_of(l));
    if (v >= value_.size() || value_[v] == 0) return 0;
    return l > 0 ? value_[v] : -value_[v];
  }

  bool assigned(int var) const {
    const auto v = static_cast<std::size_t>(var);
    return v < value_.size() && value_[v] != 0;
  }

private:
  std::vector<std::int8_t> value_;
};

// Per-node variable sets as bitsets.
class VarSets {
public:
  explicit VarSets(const NnfDag& d) : words_((static_cast<std::size_t>(d.num_vars()) + 64) / 64) {
    for (const auto& n : d.nodes())
      if (n.kind == NodeKind::Literal) words_ = std::max(words_, static_cast<std::size_t>(var_of(n.lit)) / 64 + 1);
    bits_.assign(d.nodes().size() * words_, 0);
    for (std::size_t i = 0; i < d.nodes().size(); ++i) {
      const NnfNode& n = d.nodes()[i];
      if (n.kind == NodeKind::Literal) {
        const auto v = static_cast<std::size_t>(var_of(n.lit));
        row(i)[v / 64] |= std::uint64_t{1} << (v % 64);
      }
      for (NodeId c : n.children)
        for (std::size_t w = 0; w < words_; ++w) row(i)[w] |= row(c)[w];
    }
  }

  std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t words() const { return words_; }

  bool equal(std::size_t a, std::size_t b) const { return std::equal(row(a), row(a) + words_, row(b)); }

  std::vector<int> vars(std::size_t i) const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_; ++w)
      for (std::uint64_t bits = row(i)[w]; bits != 0; bits &= bits - 1)
        out.push_back(static_cast<int>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
    return out;
  }

private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

NnfDag condition(const NnfDag& d, const std::vector<Lit>& term) {
  const TermIndex index(d.num_vars(), term);
  return rebuild(
      d, [&](Lit l) { return index(l); }, [&](int var) { return !index.assigned(var); }, d.flags());
}

NnfDag forget(const NnfDag& d, const std::vector<int>& vars) {
  std::vector<char> gone(static_cast<std::size_t>(d.num_vars()) + 1, 0);
  for (int v : vars) {
    if (v <= 0) throw std::invalid_argument("forget: variable ids are positive");
    if (static_cast<std::size_t>(v) >= gone.size()) gone.resize(static_cast<std::size_t>(v) + 1, 0);
    gone[static_cast<std::size_t>(v)] = 1;
  }
  if (vars.empty()) return d;
  NnfFlags flags = d.flags();
  flags.deterministic = false;
  return rebuild(
      d, [&](Lit l) { return gone[static_cast<std::size_t>(var_of(l))] ? 1 : 0; },
      [&](int var) { return !gone[static_cast<std::size_t>(var)]; }, flags);
}

NnfDag smooth(const NnfDag& d, const std::vector<std::vector<int>>& groups) {
  const VarSets sets(d);
  std::vector<int> group_of(static_cast<std::size_t>(d.num_vars()) + 1, -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2) continue;
    for (int v : groups[g]) {
      if (v <= 0 || v > d.num_vars()) throw std::invalid_argument("smooth: group variable outside registry");
      if (group_of[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("smooth: groups overlap");
      group_of[static_cast<std::size_t>(v)] = static_cast<int>(g);
    }
  }

  NnfBuilder b(d.num_vars());
  auto gadgets_for = [&](std::vector<int> missing) {
    std::vector<NodeId> out;
    std::vector<char> done(missing.size(), 0);
    for (std::size_t i = 0; i < missing.size(); ++i) {
      if (done[i]) continue;
      const int v = missing[i];
      const int g = v < static_cast<int>(group_of.size()) ? group_of[static_cast<std::size_t>(v)] : -1;
      if (g >= 0) {
        const auto& fam = groups[static_cast<std::size_t>(g)];
        const bool whole = std::all_of(fam.begin(), fam.end(), [&](int u) {
          return std::binary_search(missing.begin(), missing.end(), u);
        });
        if (whole) {
          // exactly-one over the family as a decision chain, built back to front
          NodeId rest = b.literal(fam.back());
          for (std::size_t k = fam.size() - 1; k-- > 0;) {
            std::vector<NodeId> only{b.literal(fam[k])};
            for (std::size_t j = k + 1; j < fam.size(); ++j) only.push_back(b.literal(-fam[j]));
            rest = b.disjoin({b.conjoin(std::move(only)), b.conjoin({b.literal(-fam[k]), rest})}, fam[k]);
          }
          out.push_back(rest);
          for (int u : fam)
            done[static_cast<std::size_t>(std::lower_bound(missing.begin(), missing.end(), u) - missing.begin())] = 1;
          continue;
        }
      }
      out.push_back(b.disjoin({b.literal(v), b.literal(-v)}, v));
      done[i] = 1;
    }
    return out;
  };

  std::vector<NodeId> map(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    switch (n.kind) {
      case NodeKind::True:
        map[i] = b.true_node();
        break;
      case NodeKind::False:
        map[i] = b.false_node();
        break;
      case NodeKind::Literal:
        map[i] = b.literal(n.lit);
        break;
      case NodeKind::And: {
        std::vector<NodeId> kids;
        for (NodeId c : n.children) kids.push_back(map[c]);
        map[i] = b.conjoin(std::move(kids));
        break;
      }
      case NodeKind::Or: {
        const std::vector<int> all = sets.vars(i);
        std::vector<NodeId> kids;
        for (NodeId c : n.children) {
          if (sets.equal(i, c)) {
            kids.push_back(map[c]);
            continue;
          }
          const std::vector<int> have = sets.vars(c);
          std::vector<int> missing;
          std::set_difference(all.begin(), all.end(), have.begin(), have.end(), std::back_inserter(missing));
          std::vector<NodeId> parts = gadgets_for(std::move(missing));
          parts.push_back(map[c]);
          kids.push_back(b.conjoin(std::move(parts)));
        }
        map[i] = b.disjoin(std::move(kids), n.decision);
        break;
      }
    }
  }
  NnfFlags flags = d.flags();
  flags.smooth = true;
  return b.finish(map[d.root()], flags);
}

// ---------------------------------------------------------------------------
// Queries

bool is_consistent(const NnfDag& d) { return is_consistent_under(d, {}); }

bool is_consistent_under(const NnfDag& d, const std::vector<Lit>& term) {
  const TermIndex index(d.num_vars(), term);
  std::vector<char> sat(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    switch (n.kind) {
      case NodeKind::True:
        sat[i] = 1;
        break;
      case NodeKind::False:
        sat[i] = 0;
        break;
      case NodeKind::Literal:
        sat[i] = index(n.lit) >= 0;
        break;
      case NodeKind::And:
        sat[i] = std::all_of(n.children.begin(), n.children.end(), [&](NodeId c) { return sat[c] != 0; });
        break;
      case NodeKind::Or:
        sat[i] = std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) { return sat[c] != 0; });
        break;
    }
  }
  return sat[d.root()] != 0;
}

bool entails_clause(const NnfDag& d, const std::vector<Lit>& clause) {
  if (Clause::is_tautology(clause)) return true;
  std::vector<Lit> negated;
  negated.reserve(clause.size());
  for (Lit l : clause) negated.push_back(-l);
  return !is_consistent_under(d, negated);
}

bool entails_clause(const NnfDag& d, const Clause& c) { return entails_clause(d, c.literals()); }

Degree pi_evaluate(const NnfDag& d, const WeightMap& w) {
  std::vector<Degree> val(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    switch (n.kind) {
      case NodeKind::True:
        val[i] = Degree::one();
        break;
      case NodeKind::False:
        val[i] = Degree::zero();
        break;
      case NodeKind::Literal:
        val[i] = w.get(n.lit);
        break;
      case NodeKind::And: {
        Degree acc = Degree::one();
        for (NodeId c : n.children) acc = min(acc, val[c]);
        val[i] = acc;
        break;
      }
      case NodeKind::Or: {
        Degree acc = Degree::zero();
        for (NodeId c : n.children) acc = max(acc, val[c]);
        val[i] = acc;
        break;
      }
    }
  }
  return val[d.root()];
}

bool evaluate(const NnfDag& d, const Interpretation& m) {
  std::vector<char> val(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    switch (n.kind) {
      case NodeKind::True:
        val[i] = 1;
        break;
      case NodeKind::False:
        val[i] = 0;
        break;
      case NodeKind::Literal:
        val[i] = m.satisfies(n.lit);
        break;
      case NodeKind::And:
        val[i] = std::all_of(n.children.begin(), n.children.end(), [&](NodeId c) { return val[c] != 0; });
        break;
      case NodeKind::Or:
        val[i] = std::any_of(n.children.begin(), n.children.end(), [&](NodeId c) { return val[c] != 0; });
        break;
    }
  }
  return val[d.root()] != 0;
}

NnfStats nnf_stats(const NnfDag& d) {
  NnfStats s{d.nodes().size(), 0};
  for (const auto& n : d.nodes()) s.edges += n.children.size();
  return s;
}

std::vector<int> mentioned_vars(const NnfDag& d) {
  std::vector<int> out;
  for (const auto& n : d.nodes())
    if (n.kind == NodeKind::Literal) out.push_back(var_of(n.lit));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Property validation

namespace {

// Does node `id` syntactically imply literal `l`? Follows And children only.
bool implies_literal(const NnfDag& d, NodeId id, Lit l, std::vector<NodeId>& stack, std::vector<char>& seen) {
  std::vector<NodeId> touched{id};
  stack.assign(1, id);
  seen[id] = 1;
  bool found = false;
  while (!stack.empty() && !found) {
    const NnfNode& n = d.node(stack.back());
    stack.pop_back();
    if ((n.kind == NodeKind::Literal && n.lit == l) || n.kind == NodeKind::False) {
      found = true;
      break;
    }
    if (n.kind != NodeKind::And) continue;
    for (NodeId c : n.children) {
      const NnfNode& cn = d.node(c);
      if (cn.kind == NodeKind::Literal && cn.lit == l) {
        found = true;
        break;
      }
      if (cn.kind == NodeKind::And && !seen[c]) {
        seen[c] = 1;
        touched.push_back(c);
        stack.push_back(c);
      }
    }
  }
  for (NodeId t : touched) seen[t] = 0;
  return found;
}

}  // namespace

NnfFlags validate_properties(const NnfDag& d) {
  const VarSets sets(d);
  NnfFlags f{true, true, true};
  std::vector<std::uint64_t> acc(sets.words());
  std::vector<NodeId> stack;
  std::vector<char> seen(d.nodes().size());
  for (std::size_t i = 0; i < d.nodes().size(); ++i) {
    const NnfNode& n = d.nodes()[i];
    if (n.kind == NodeKind::And && f.decomposable) {
      std::fill(acc.begin(), acc.end(), 0);
      for (NodeId c : n.children) {
        const std::uint64_t* r = sets.row(c);
        for (std::size_t w = 0; w < acc.size(); ++w) {
          if (acc[w] & r[w]) f.decomposable = false;
          acc[w] |= r[w];
        }
      }
    }
    if (n.kind != NodeKind::Or) continue;
    if (f.smooth)
      for (NodeId c : n.children)
        if (!sets.equal(c, n.children.front())) f.smooth = false;
    if (f.deterministic && n.children.size() >= 2) {
      const int v = n.decision;
      if (n.children.size() != 2 || v == 0) {
        f.deterministic = false;
      } else {
        const NodeId a = n.children[0];
        const NodeId b = n.children[1];
        const bool split = (implies_literal(d, a, v, stack, seen) && implies_literal(d, b, -v, stack, seen)) ||
                           (implies_literal(d, a, -v, stack, seen) && implies_literal(d, b, v, stack, seen));
        if (!split) f.deterministic = false;
      }
    }
  }
  return f;
}

void check_flags(const NnfDag& d) {
  const NnfFlags actual = validate_properties(d);
  const NnfFlags& claimed = d.flags();
  std::string bad;
  if (claimed.decomposable && !actual.decomposable) bad += " decomposable";
  if (claimed.deterministic && !actual.deterministic) bad += " deterministic";
  if (claimed.smooth && !actual.smooth) bad += " smooth";
  if (!bad.empty()) throw InputError("flag/structure mismatch: DAG is flagged but not" + bad);
}

// ---------------------------------------------------------------------------
// c2d text format

std::string write_nnf(const NnfDag& d) {
  std::ostringstream out;
  const NnfStats s = nnf_stats(d);
  out << "c flags decomposable=" << d.flags().decomposable << " deterministic=" << d.flags().deterministic
      << " smooth=" << d.flags().smooth << '\n';
  out << "nnf " << s.nodes << ' ' << s.edges << ' ' << d.num_vars() << '\n';
  for (const auto& n : d.nodes()) {
    switch (n.kind) {
      case NodeKind::True:
        out << "A 0\n";
        break;
      case NodeKind::False:
        out << "O 0 0\n";
        break;
      case NodeKind::Literal:
        out << "L " << n.lit << '\n';
        break;
      case NodeKind::And:
      case NodeKind::Or:
        out << (n.kind == NodeKind::And ? "A " : "O ");
        if (n.kind == NodeKind::Or) out << n.decision << ' ';
        out << n.children.size();
        for (NodeId c : n.children) out << ' ' << c;
        out << '\n';
        break;
    }
  }
  return out.str();
}

namespace {

class NnfReader {
public:
  NnfDag read(std::string_view text) {
    std::size_t pos = 0;
    std::optional<NnfFlags> claimed;
    std::size_t declared_nodes = 0, declared_edges = 0;
    bool header = false;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++line_;
      std::istringstream in{std::string(text.substr(pos, nl - pos))};
      pos = nl + 1;
      std::string head;
      if (!(in >> head)) continue;
      if (head == "c") {
        std::string word;
        if (in >> word && word == "flags") claimed = read_flags(in);
        continue;
      }
      if (head == "nnf") {
        if (header) fail("duplicate 'nnf' header");
        long long v = 0, e = 0, n = 0;
        if (!(in >> v >> e >> n) || v < 1 || e < 0 || n < 0) fail("malformed header, expected 'nnf V E n'");
        declared_nodes = static_cast<std::size_t>(v);
        declared_edges = static_cast<std::size_t>(e);
        num_vars_ = static_cast<int>(n);
        header = true;
        continue;
      }
      if (!header) fail("node before 'nnf' header");
      nodes_.push_back(read_node(head, in));
      std::string extra;
      if (in >> extra) fail("trailing tokens '" + extra + "'");
    }
    if (!header) throw InputError("missing 'nnf' header");
    if (nodes_.size() != declared_nodes)
      throw InputError("header declares " + std::to_string(declared_nodes) + " nodes, found " +
                       std::to_string(nodes_.size()));
    std::size_t edges = 0;
    for (const auto& n : nodes_) edges += n.children.size();
    if (edges != declared_edges)
      throw InputError("header declares " + std::to_string(declared_edges) + " edges, found " + std::to_string(edges));

    // Re-intern through a builder so the result obeys the pool invariants
    // (reachability, root last). Constants are kept as written.
    NnfBuilder b(num_vars_);
    std::vector<NodeId> map(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const NnfNode& n = nodes_[i];
      switch (n.kind) {
        case NodeKind::True: map[i] = b.true_node(); break;
        case NodeKind::False: map[i] = b.false_node(); break;
        case NodeKind::Literal: map[i] = b.literal(n.lit); break;
        case NodeKind::And:
        case NodeKind::Or: {
          std::vector<NodeId> kids;
          for (NodeId c : n.children) kids.push_back(map[c]);
          map[i] = n.kind == NodeKind::And ? b.conjoin(kids) : b.disjoin(kids, n.decision);
          break;
        }
      }
    }
    NnfDag provisional = b.finish(map.back(), NnfFlags{});
    const NnfFlags actual = validate_properties(provisional);
    NnfDag out = b.finish(map.back(), claimed ? *claimed : actual);
    if (claimed) check_flags(out);
    return out;
  }

private:
  std::size_t line_ = 0;
  int num_vars_ = 0;
  std::vector<NnfNode> nodes_;

  [[noreturn]] void fail(const std::string& what) const { throw InputError(what, line_); }

  NnfFlags read_flags(std::istringstream& in) {
    NnfFlags f;
    std::string item;
    while (in >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) fail("malformed flag '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      if (val != "0" && val != "1") fail("flag value must be 0 or 1");
      const bool on = val == "1";
      if (key == "decomposable") f.decomposable = on;
      else if (key == "deterministic") f.deterministic = on;
      else if (key == "smooth") f.smooth = on;
      else fail("unknown flag '" + key + "'");
    }
    return f;
  }

  long long number(std::istringstream& in, const char* what) {
    long long v = 0;
    if (!(in >> v)) fail(std::string("expected ") + what);
    return v;
  }

  NnfNode read_node(const std::string& head, std::istringstream& in) {
    NnfNode n;
    if (head == "L") {
      const long long lit = number(in, "literal");
      if (lit == 0 || lit > num_vars_ || -lit > num_vars_) fail("literal " + std::to_string(lit) + " out of range");
      n.kind = NodeKind::Literal;
      n.lit = static_cast<Lit>(lit);
      return n;
    }
    if (head != "A" && head != "O") fail("unknown node type '" + head + "'");
    const bool is_or = head == "O";
    if (is_or) {
      const long long j = number(in, "decision variable");
      if (j < 0 || j > num_vars_) fail("decision variable out of range");
      n.decision = static_cast<int>(j);
    }
    const long long count = number(in, "child count");
    if (count < 0) fail("negative child count");
    for (long long k = 0; k < count; ++k) {
      const long long c = number(in, "child index");
      if (c < 0 || static_cast<std::size_t>(c) >= nodes_.size()) fail("child index " + std::to_string(c) + " does not precede its parent");
      n.children.push_back(static_cast<NodeId>(c));
    }
    if (count == 0) n.kind = is_or ? NodeKind::False : NodeKind::True;
    else n.kind = is_or ? NodeKind::Or : NodeKind::And;
    return n;
  }
};

}  // namespace

NnfDag parse_nnf(std::string_view text) { return NnfReader{}.read(text); }

}  // namespace posskc
