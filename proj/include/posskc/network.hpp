#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posskc/degree.hpp"

namespace posskc {

struct NetVariable {
  std::string name;
  std::vector<std::string> values;  // at least two, unique

  std::size_t domain_size() const { return values.size(); }
  bool operator==(const NetVariable&) const = default;
};

// Total assignment: one value index per network variable, in network order.
using World = std::vector<std::size_t>;

// Partial assignment of network variables (possibly empty).
class EventTerm {
public:
  EventTerm() = default;
  EventTerm(std::initializer_list<std::pair<const std::size_t, std::size_t>> init) : values_(init) {}

  // Returns false (and leaves the term unchanged) when `var` already holds a
  // different value.
  bool assign(std::size_t var, std::size_t value);

  std::optional<std::size_t> value_of(std::size_t var) const;
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  const std::map<std::size_t, std::size_t>& assignments() const { return values_; }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool consistent_with(const World& w) const;

  // Union of two terms, or nullopt when they disagree on a shared variable.
  static std::optional<EventTerm> merge(const EventTerm& a, const EventTerm& b);

  bool operator==(const EventTerm&) const = default;

private:
  std::map<std::size_t, std::size_t> values_;
};

// A min-based possibilistic network: a DAG over finite-domain variables with
// one conditional possibility table per variable. Tables are laid out
// configuration-major: entry(value, config) lives at config * |domain| + value,
// where the configuration index enumerates parent values with the FIRST
// declared parent varying fastest.
//
// The constructor validates everything (names, acyclicity, table shape and
// max-normalization of every column) and throws InputError on violation.
class PossNetwork {
public:
  PossNetwork(std::string name, std::vector<NetVariable> variables,
              std::vector<std::vector<std::size_t>> parents, std::vector<std::vector<Degree>> tables);

  const std::string& name() const { return name_; }
  std::size_t size() const { return variables_.size(); }
  const std::vector<NetVariable>& variables() const { return variables_; }
  const NetVariable& variable(std::size_t v) const { return variables_.at(v); }
  const std::vector<std::size_t>& parents(std::size_t v) const { return parents_.at(v); }
  const std::vector<Degree>& table(std::size_t v) const { return tables_.at(v); }
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  std::size_t config_count(std::size_t v) const;
  std::size_t config_of(std::size_t v, const World& w) const;
  // Parent value indices of a configuration, in parent declaration order.
  std::vector<std::size_t> config_values(std::size_t v, std::size_t config) const;
  Degree entry(std::size_t v, std::size_t value, std::size_t config) const;

  std::optional<std::size_t> find_variable(std::string_view name) const;
  std::optional<std::size_t> find_value(std::size_t v, std::string_view value) const;

  // Parses `VAR=val[,VAR=val...]`; empty text yields the empty term.
  // Unknown names and conflicting repeats throw InputError.
  EventTerm parse_term(std::string_view text) const;
  std::string term_str(const EventTerm& term) const;
  std::string world_str(const World& w) const;

  bool operator==(const PossNetwork&) const = default;

private:
  std::string name_;
  std::vector<NetVariable> variables_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<Degree>> tables_;
  std::vector<std::size_t> topo_;
};

// PNET text format; see README for the grammar.
PossNetwork parse_network(std::string_view text);
std::string write_network(const PossNetwork& net);
PossNetwork load_network(const std::filesystem::path& path);

// min over all variables of the table entry selected by the world.
Degree chain_rule_joint(const PossNetwork& net, const World& w);

// Calls fn on every world consistent with `fixed`, in lexicographic order
// (first variable most significant). Exponential in the free variables.
void for_each_world(const PossNetwork& net, const EventTerm& fixed, const std::function<void(const World&)>& fn);
std::vector<World> enumerate_worlds(const PossNetwork& net);

// Brute-force marginal: max of chain_rule_joint over worlds consistent with e.
Degree oracle_possibility(const PossNetwork& net, const EventTerm& e);

// Brute-force conditional via min-conditioning. Conflicting x, e count as
// an impossible joint event.
Degree oracle_conditional(const PossNetwork& net, const EventTerm& x, const EventTerm& e);

}  // namespace posskc
