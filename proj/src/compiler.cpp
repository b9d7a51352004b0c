#include "posskc/compiler.hpp"

#include <algorithm>
#include <unordered_map>

#include "posskc/error.hpp"

namespace posskc {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<Lit>& key) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Lit l : key) {
      h ^= static_cast<std::uint32_t>(l);
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

class Compiler {
public:
  Compiler(const CnfFormula& f, const CompileOptions& options)
      : n_(static_cast<int>(f.num_vars())),
        options_(options),
        builder_(n_, options.node_budget),
        value_(static_cast<std::size_t>(n_) + 1, 0),
        occurs_(static_cast<std::size_t>(n_) + 1),
        uf_parent_(static_cast<std::size_t>(n_) + 1),
        uf_stamp_(static_cast<std::size_t>(n_) + 1, 0),
        count_(static_cast<std::size_t>(n_) + 1, 0) {
    for (const Clause& c : f.clauses()) {
      const auto id = static_cast<std::uint32_t>(clauses_.size());
      clauses_.push_back(c.literals());
      for (Lit l : c) occurs_[static_cast<std::size_t>(var_of(l))].push_back(id);
    }
  }

  NnfDag run(CompileStats* stats) {
    NodeId root = compile_all();
    if (stats) *stats = stats_;
    return builder_.finish(root, NnfFlags{true, true, false});
  }

private:
  int n_;
  CompileOptions options_;
  NnfBuilder builder_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::int8_t> value_;
  std::vector<std::vector<std::uint32_t>> occurs_;
  std::vector<int> trail_;
  std::unordered_map<std::vector<Lit>, NodeId, KeyHash> cache_;
  std::size_t cache_bytes_ = 0;
  CompileStats stats_;

  std::vector<int> uf_parent_;
  std::vector<std::uint32_t> uf_stamp_;
  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> count_;

  bool is_true(Lit l) const {
    const std::int8_t v = value_[static_cast<std::size_t>(var_of(l))];
    return l > 0 ? v > 0 : v < 0;
  }
  bool is_free(Lit l) const { return value_[static_cast<std::size_t>(var_of(l))] == 0; }

  void assign(Lit l) {
    value_[static_cast<std::size_t>(var_of(l))] = l > 0 ? 1 : -1;
    trail_.push_back(var_of(l));
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
  }

  bool satisfied(std::uint32_t c) const {
    return std::any_of(clauses_[c].begin(), clauses_[c].end(), [&](Lit l) { return is_true(l); });
  }

  // Unit propagation from the literals already on the trail past `from`.
  // Appends implied literals to `implied`. Returns false on conflict.
  bool propagate(std::size_t from, std::vector<Lit>& implied) {
    for (std::size_t head = from; head < trail_.size(); ++head) {
      const int var = trail_[head];
      for (std::uint32_t c : occurs_[static_cast<std::size_t>(var)]) {
        Lit unit = 0;
        int free = 0;
        bool sat = false;
        for (Lit l : clauses_[c]) {
          if (is_true(l)) {
            sat = true;
            break;
          }
          if (is_free(l)) {
            ++free;
            unit = l;
          }
        }
        if (sat) continue;
        if (free == 0) return false;
        if (free == 1) {
          assign(unit);
          implied.push_back(unit);
        }
      }
    }
    return true;
  }

  int find(int v) {
    if (uf_stamp_[static_cast<std::size_t>(v)] != stamp_) {
      uf_stamp_[static_cast<std::size_t>(v)] = stamp_;
      uf_parent_[static_cast<std::size_t>(v)] = v;
      return v;
    }
    while (uf_parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = uf_parent_[static_cast<std::size_t>(v)];
      p = uf_parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  // Splits unsatisfied clauses into variable-disjoint groups, ordered by
  // their smallest clause id.
  std::vector<std::vector<std::uint32_t>> components(const std::vector<std::uint32_t>& ids) {
    ++stamp_;
    for (std::uint32_t c : ids) {
      int first = 0;
      for (Lit l : clauses_[c]) {
        if (!is_free(l)) continue;
        const int r = find(var_of(l));
        if (first == 0) {
          first = r;
        } else if (r != first) {
          uf_parent_[static_cast<std::size_t>(r)] = first;
        }
      }
    }
    std::vector<std::vector<std::uint32_t>> out;
    std::unordered_map<int, std::size_t> slot;
    for (std::uint32_t c : ids) {
      int root = 0;
      for (Lit l : clauses_[c])
        if (is_free(l)) {
          root = find(var_of(l));
          break;
        }
      auto [it, fresh] = slot.emplace(root, out.size());
      if (fresh) out.emplace_back();
      out[it->second].push_back(c);
    }
    return out;
  }

  std::vector<std::uint32_t> residual(const std::vector<std::uint32_t>& ids) const {
    std::vector<std::uint32_t> out;
    out.reserve(ids.size());
    for (std::uint32_t c : ids)
      if (!satisfied(c)) out.push_back(c);
    return out;
  }

  // Conjunction of implied literals and the compiled residual components.
  NodeId close(const std::vector<Lit>& implied, const std::vector<std::uint32_t>& ids) {
    std::vector<NodeId> kids;
    kids.reserve(implied.size() + 1);
    for (Lit l : implied) kids.push_back(builder_.literal(l));
    for (const auto& comp : components(residual(ids))) {
      const NodeId child = compile_component(comp);
      if (builder_.node(child).kind == NodeKind::False) return builder_.false_node();
      kids.push_back(child);
    }
    return builder_.conjoin(std::move(kids));
  }

  NodeId compile_all() {
    std::vector<Lit> implied;
    std::vector<std::uint32_t> all;
    for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
      if (clauses_[c].empty()) return builder_.false_node();
      all.push_back(c);
    }
    for (std::uint32_t c : all) {
      if (clauses_[c].size() != 1) continue;
      const Lit l = clauses_[c][0];
      if (is_true(l)) continue;
      if (!is_free(l)) return builder_.false_node();
      const std::size_t mark = trail_.size();
      assign(l);
      implied.push_back(l);
      if (!propagate(mark, implied)) return builder_.false_node();
    }
    return close(implied, all);
  }

  std::vector<Lit> cache_key(const std::vector<std::uint32_t>& comp) const {
    std::vector<std::vector<Lit>> reduced;
    reduced.reserve(comp.size());
    for (std::uint32_t c : comp) {
      std::vector<Lit> r;
      for (Lit l : clauses_[c])
        if (is_free(l)) r.push_back(l);
      reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end());
    std::vector<Lit> key;
    for (const auto& r : reduced) {
      key.insert(key.end(), r.begin(), r.end());
      key.push_back(0);
    }
    return key;
  }

  int pick_variable(const std::vector<std::uint32_t>& comp) {
    std::vector<int> touched;
    for (std::uint32_t c : comp)
      for (Lit l : clauses_[c])
        if (is_free(l)) {
          const auto v = static_cast<std::size_t>(var_of(l));
          if (count_[v]++ == 0) touched.push_back(var_of(l));
        }
    int best = 0;
    std::uint32_t best_count = 0;
    for (int v : touched) {
      const std::uint32_t k = count_[static_cast<std::size_t>(v)];
      if (k > best_count || (k == best_count && v < best)) {
        best = v;
        best_count = k;
      }
    }
    for (int v : touched) count_[static_cast<std::size_t>(v)] = 0;
    return best;
  }

  NodeId compile_component(const std::vector<std::uint32_t>& comp) {
    std::vector<Lit> key = cache_key(comp);
    if (auto it = cache_.find(key); it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }

    const int var = pick_variable(comp);
    ++stats_.decisions;
    NodeId branches[2];
    for (int side = 0; side < 2; ++side) {
      const Lit l = side == 0 ? var : -var;
      const std::size_t mark = trail_.size();
      std::vector<Lit> implied{l};
      assign(l);
      branches[side] = propagate(mark, implied) ? close(implied, comp) : builder_.false_node();
      undo(mark);
    }
    const NodeId node = builder_.disjoin({branches[0], branches[1]}, var);

    const std::size_t bytes = key.size() * sizeof(Lit) + 64;
    if (cache_bytes_ + bytes > options_.cache_budget) {
      cache_.clear();
      cache_bytes_ = 0;
      ++stats_.cache_flushes;
    }
    cache_bytes_ += bytes;
    cache_.emplace(std::move(key), node);
    return node;
  }
};

}  // namespace

NnfDag compile(const CnfFormula& f, const CompileOptions& options, CompileStats* stats) {
  return Compiler(f, options).run(stats);
}

}  // namespace posskc
