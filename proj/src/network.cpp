#include "posskc/network.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "posskc/error.hpp"

namespace posskc {

bool EventTerm::assign(std::size_t var, std::size_t value) {
  auto [it, inserted] = values_.emplace(var, value);
  return inserted || it->second == value;
}

std::optional<std::size_t> EventTerm::value_of(std::size_t var) const {
  auto it = values_.find(var);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

bool EventTerm::consistent_with(const World& w) const {
  return std::all_of(values_.begin(), values_.end(), [&](const auto& kv) { return w.at(kv.first) == kv.second; });
}

std::optional<EventTerm> EventTerm::merge(const EventTerm& a, const EventTerm& b) {
  EventTerm out = a;
  for (const auto& [var, value] : b.values_)
    if (!out.assign(var, value)) return std::nullopt;
  return out;
}

PossNetwork::PossNetwork(std::string name, std::vector<NetVariable> variables,
                         std::vector<std::vector<std::size_t>> parents, std::vector<std::vector<Degree>> tables)
    : name_(std::move(name)), variables_(std::move(variables)), parents_(std::move(parents)), tables_(std::move(tables)) {
  const std::size_t n = variables_.size();
  if (parents_.size() != n || tables_.size() != n) throw InputError("network: parents/tables do not match variables");

  std::set<std::string_view> names;
  for (const auto& var : variables_) {
    if (!names.insert(var.name).second) throw InputError("duplicate variable '" + var.name + "'");
    if (var.values.size() < 2) throw InputError("variable '" + var.name + "' needs at least two values");
    std::set<std::string_view> vals(var.values.begin(), var.values.end());
    if (vals.size() != var.values.size()) throw InputError("variable '" + var.name + "' has duplicate values");
  }

  for (std::size_t v = 0; v < n; ++v) {
    std::set<std::size_t> seen;
    for (std::size_t p : parents_[v]) {
      if (p >= n) throw InputError("variable '" + variables_[v].name + "' has an out-of-range parent");
      if (p == v) throw InputError("variable '" + variables_[v].name + "' is its own parent");
      if (!seen.insert(p).second)
        throw InputError("variable '" + variables_[v].name + "' lists parent '" + variables_[p].name + "' twice");
    }
  }

  // Kahn's algorithm, smallest ready index first.
  std::vector<std::size_t> indegree(n);
  std::vector<std::vector<std::size_t>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    indegree[v] = parents_[v].size();
    for (std::size_t p : parents_[v]) children[p].push_back(v);
  }
  std::set<std::size_t> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.insert(v);
  while (!ready.empty()) {
    const std::size_t v = *ready.begin();
    ready.erase(ready.begin());
    topo_.push_back(v);
    for (std::size_t c : children[v])
      if (--indegree[c] == 0) ready.insert(c);
  }
  if (topo_.size() != n) {
    std::string cyc;
    for (std::size_t v = 0; v < n; ++v)
      if (indegree[v] != 0) cyc += (cyc.empty() ? "" : ", ") + variables_[v].name;
    throw InputError("parent relation has a cycle through " + cyc);
  }

  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t dom = variables_[v].domain_size();
    const std::size_t configs = config_count(v);
    if (tables_[v].size() != dom * configs)
      throw InputError("table of '" + variables_[v].name + "' has " + std::to_string(tables_[v].size()) +
                       " entries, expected " + std::to_string(dom * configs));
    for (std::size_t c = 0; c < configs; ++c) {
      Degree best = Degree::zero();
      for (std::size_t x = 0; x < dom; ++x) best = max(best, tables_[v][c * dom + x]);
      if (!best.is_one()) {
        std::string where = variables_[v].name;
        if (!parents_[v].empty()) {
          where += " |";
          const auto vals = config_values(v, c);
          for (std::size_t j = 0; j < vals.size(); ++j) where += " " + variables_[parents_[v][j]].values[vals[j]];
        }
        throw InputError("normalization violated for " + where + ": max degree is " + best.str() + ", not 1");
      }
    }
  }
}

std::size_t PossNetwork::config_count(std::size_t v) const {
  std::size_t count = 1;
  for (std::size_t p : parents_.at(v)) count *= variables_[p].domain_size();
  return count;
}

std::size_t PossNetwork::config_of(std::size_t v, const World& w) const {
  std::size_t index = 0;
  std::size_t stride = 1;
  for (std::size_t p : parents_.at(v)) {
    index += w.at(p) * stride;
    stride *= variables_[p].domain_size();
  }
  return index;
}

std::vector<std::size_t> PossNetwork::config_values(std::size_t v, std::size_t config) const {
  std::vector<std::size_t> out;
  out.reserve(parents_.at(v).size());
  for (std::size_t p : parents_[v]) {
    const std::size_t dom = variables_[p].domain_size();
    out.push_back(config % dom);
    config /= dom;
  }
  return out;
}

Degree PossNetwork::entry(std::size_t v, std::size_t value, std::size_t config) const {
  return tables_.at(v).at(config * variables_[v].domain_size() + value);
}

std::optional<std::size_t> PossNetwork::find_variable(std::string_view name) const {
  for (std::size_t v = 0; v < variables_.size(); ++v)
    if (variables_[v].name == name) return v;
  return std::nullopt;
}

std::optional<std::size_t> PossNetwork::find_value(std::size_t v, std::string_view value) const {
  const auto& vals = variables_.at(v).values;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] == value) return i;
  return std::nullopt;
}

EventTerm PossNetwork::parse_term(std::string_view text) const {
  EventTerm term;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    start = comma + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) throw InputError("empty assignment in term '" + std::string(text) + "'");
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("expected VAR=value, got '" + std::string(item) + "'");
    const std::string_view var_name = item.substr(0, eq);
    const std::string_view value_name = item.substr(eq + 1);
    const auto var = find_variable(var_name);
    if (!var) throw InputError("unknown variable '" + std::string(var_name) + "'");
    const auto value = find_value(*var, value_name);
    if (!value)
      throw InputError("unknown value '" + std::string(value_name) + "' for variable '" + std::string(var_name) + "'");
    if (!term.assign(*var, *value))
      throw InputError("variable '" + std::string(var_name) + "' assigned two different values");
  }
  return term;
}

std::string PossNetwork::term_str(const EventTerm& term) const {
  std::string out;
  for (const auto& [var, value] : term) {
    if (!out.empty()) out += ',';
    out += variables_.at(var).name + "=" + variables_[var].values.at(value);
  }
  return out;
}

std::string PossNetwork::world_str(const World& w) const {
  std::string out;
  for (std::size_t v = 0; v < w.size(); ++v) {
    if (!out.empty()) out += ',';
    out += variables_.at(v).name + "=" + variables_[v].values.at(w[v]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PNET text format

namespace {

struct Token {
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '|' || c == ':') {
      out.push_back({std::string(1, c), i + 1});
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' && line[i] != '#' &&
           line[i] != '|' && line[i] != ':')
      ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

struct VarDecl {
  NetVariable var;
  std::vector<std::size_t> parents;
  bool parents_declared = false;
  std::size_t cpt_line = 0;
  std::vector<std::optional<Degree>> table;
};

class NetParser {
public:
  PossNetwork parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t nl = text.find('\n', pos);
      if (nl == std::string_view::npos) nl = text.size();
      ++line_no;
      line(tokenize(text.substr(pos, nl - pos)), line_no);
      pos = nl + 1;
    }
    return finish();
  }

private:
  std::string name_ = "network";
  bool named_ = false;
  std::vector<VarDecl> decls_;
  std::optional<std::size_t> current_cpt_;

  std::size_t lookup_var(const Token& t, std::size_t line_no) const {
    for (std::size_t v = 0; v < decls_.size(); ++v)
      if (decls_[v].var.name == t.text) return v;
    throw InputError("unknown variable '" + t.text + "'", line_no, t.column);
  }

  std::size_t lookup_value(std::size_t v, const Token& t, std::size_t line_no) const {
    const auto& vals = decls_[v].var.values;
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (vals[i] == t.text) return i;
    throw InputError("unknown value '" + t.text + "' for variable '" + decls_[v].var.name + "'", line_no, t.column);
  }

  void line(const std::vector<Token>& toks, std::size_t line_no) {
    if (toks.empty()) return;
    const std::string& head = toks[0].text;
    if (head == "network") {
      current_cpt_.reset();
      if (named_) throw InputError("duplicate 'network' line", line_no, toks[0].column);
      if (toks.size() != 2) throw InputError("expected 'network <name>'", line_no, toks[0].column);
      name_ = toks[1].text;
      named_ = true;
    } else if (head == "var") {
      current_cpt_.reset();
      if (toks.size() < 4) throw InputError("expected 'var <name> <value> <value>...'", line_no, toks[0].column);
      VarDecl decl;
      decl.var.name = toks[1].text;
      for (const auto& d : decls_)
        if (d.var.name == decl.var.name)
          throw InputError("duplicate variable '" + decl.var.name + "'", line_no, toks[1].column);
      for (std::size_t i = 2; i < toks.size(); ++i) {
        check_identifier(toks[i], line_no);
        if (std::find(decl.var.values.begin(), decl.var.values.end(), toks[i].text) != decl.var.values.end())
          throw InputError("duplicate value '" + toks[i].text + "'", line_no, toks[i].column);
        decl.var.values.push_back(toks[i].text);
      }
      check_identifier(toks[1], line_no);
      decls_.push_back(std::move(decl));
    } else if (head == "parents") {
      current_cpt_.reset();
      if (toks.size() < 3) throw InputError("expected 'parents <child> <parent>...'", line_no, toks[0].column);
      const std::size_t child = lookup_var(toks[1], line_no);
      auto& decl = decls_[child];
      if (decl.parents_declared)
        throw InputError("parents of '" + decl.var.name + "' declared twice", line_no, toks[1].column);
      if (decl.cpt_line != 0)
        throw InputError("parents of '" + decl.var.name + "' declared after its cpt", line_no, toks[1].column);
      for (std::size_t i = 2; i < toks.size(); ++i) {
        const std::size_t p = lookup_var(toks[i], line_no);
        if (p == child) throw InputError("variable '" + decl.var.name + "' is its own parent", line_no, toks[i].column);
        if (std::find(decl.parents.begin(), decl.parents.end(), p) != decl.parents.end())
          throw InputError("parent '" + toks[i].text + "' listed twice", line_no, toks[i].column);
        decl.parents.push_back(p);
      }
      decl.parents_declared = true;
    } else if (head == "cpt") {
      if (toks.size() != 2) throw InputError("expected 'cpt <variable>'", line_no, toks[0].column);
      const std::size_t v = lookup_var(toks[1], line_no);
      auto& decl = decls_[v];
      if (decl.cpt_line != 0)
        throw InputError("second cpt block for '" + decl.var.name + "' (first at line " +
                             std::to_string(decl.cpt_line) + ")",
                         line_no, toks[1].column);
      decl.cpt_line = line_no;
      std::size_t configs = 1;
      for (std::size_t p : decl.parents) configs *= decls_[p].var.values.size();
      decl.table.assign(configs * decl.var.values.size(), std::nullopt);
      current_cpt_ = v;
    } else {
      if (!current_cpt_) throw InputError("unexpected '" + head + "'", line_no, toks[0].column);
      entry(toks, line_no);
    }
  }

  static void check_identifier(const Token& t, std::size_t line_no) {
    if (t.text == "|" || t.text == ":" || t.text.find_first_of("=,") != std::string::npos)
      throw InputError("invalid identifier '" + t.text + "'", line_no, t.column);
  }

  void entry(const std::vector<Token>& toks, std::size_t line_no) {
    auto& decl = decls_[*current_cpt_];
    const std::size_t value = lookup_value(*current_cpt_, toks[0], line_no);
    std::size_t i = 1;
    std::size_t config = 0;
    if (!decl.parents.empty()) {
      if (i >= toks.size() || toks[i].text != "|")
        throw InputError("expected '|' before parent values",
                         line_no, i < toks.size() ? toks[i].column : toks.back().column + toks.back().text.size());
      ++i;
      std::size_t stride = 1;
      for (std::size_t j = 0; j < decl.parents.size(); ++j, ++i) {
        if (i >= toks.size() || toks[i].text == ":")
          throw InputError("expected " + std::to_string(decl.parents.size()) + " parent values", line_no,
                           i < toks.size() ? toks[i].column : 0);
        const std::size_t p = decl.parents[j];
        config += lookup_value(p, toks[i], line_no) * stride;
        stride *= decls_[p].var.values.size();
      }
    } else if (i < toks.size() && toks[i].text == "|") {
      throw InputError("root variable '" + decl.var.name + "' takes no parent values", line_no, toks[i].column);
    }
    if (i >= toks.size() || toks[i].text != ":")
      throw InputError("expected ':'", line_no, i < toks.size() ? toks[i].column : 0);
    ++i;
    if (i >= toks.size()) throw InputError("missing degree after ':'", line_no, toks[i - 1].column + 1);
    if (i + 1 != toks.size()) throw InputError("trailing tokens after degree", line_no, toks[i + 1].column);
    Degree d;
    try {
      d = Degree::parse(toks[i].text);
    } catch (const InputError& err) {
      throw InputError(err.what(), line_no, toks[i].column);
    }
    auto& slot = decl.table[config * decl.var.values.size() + value];
    if (slot) throw InputError("duplicate entry for '" + decl.var.name + "'", line_no, toks[0].column);
    slot = d;
  }

  PossNetwork finish() {
    std::vector<NetVariable> vars;
    std::vector<std::vector<std::size_t>> parents;
    std::vector<std::vector<Degree>> tables;
    for (auto& decl : decls_) {
      if (decl.cpt_line == 0) throw InputError("missing cpt for '" + decl.var.name + "'");
      std::vector<Degree> table;
      const std::size_t dom = decl.var.values.size();
      for (std::size_t k = 0; k < decl.table.size(); ++k) {
        if (!decl.table[k]) {
          std::string which = decl.var.values[k % dom];
          if (!decl.parents.empty()) {
            which += " |";
            std::size_t config = k / dom;
            for (std::size_t p : decl.parents) {
              const std::size_t pd = decls_[p].var.values.size();
              which += " " + decls_[p].var.values[config % pd];
              config /= pd;
            }
          }
          throw InputError("missing entry '" + which + "' in cpt of '" + decl.var.name + "'", decl.cpt_line);
        }
        table.push_back(*decl.table[k]);
      }
      for (std::size_t c = 0; c * dom < table.size(); ++c) {
        Degree best = Degree::zero();
        for (std::size_t x = 0; x < dom; ++x) best = max(best, table[c * dom + x]);
        if (!best.is_one())
          throw InputError("normalization violated in cpt of '" + decl.var.name + "': column " +
                               std::to_string(c + 1) + " has max degree " + best.str() + ", not 1",
                           decl.cpt_line);
      }
      vars.push_back(decl.var);
      parents.push_back(decl.parents);
      tables.push_back(std::move(table));
    }
    if (vars.empty()) throw InputError("network declares no variables");
    return PossNetwork(name_, std::move(vars), std::move(parents), std::move(tables));
  }
};

}  // namespace

PossNetwork parse_network(std::string_view text) { return NetParser{}.parse(text); }

std::string write_network(const PossNetwork& net) {
  std::ostringstream out;
  out << "network " << net.name() << '\n';
  for (const auto& var : net.variables()) {
    out << "var " << var.name;
    for (const auto& val : var.values) out << ' ' << val;
    out << '\n';
  }
  for (std::size_t v = 0; v < net.size(); ++v) {
    if (net.parents(v).empty()) continue;
    out << "parents " << net.variable(v).name;
    for (std::size_t p : net.parents(v)) out << ' ' << net.variable(p).name;
    out << '\n';
  }
  for (std::size_t v = 0; v < net.size(); ++v) {
    const auto& var = net.variable(v);
    out << "cpt " << var.name << '\n';
    for (std::size_t c = 0; c < net.config_count(v); ++c) {
      const auto pvals = net.config_values(v, c);
      for (std::size_t x = 0; x < var.domain_size(); ++x) {
        out << var.values[x];
        if (!pvals.empty()) {
          out << " |";
          for (std::size_t j = 0; j < pvals.size(); ++j) out << ' ' << net.variable(net.parents(v)[j]).values[pvals[j]];
        }
        out << " : " << net.entry(v, x, c) << '\n';
      }
    }
  }
  return out.str();
}

PossNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open network file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_network(buf.str());
  } catch (const InputError& err) {
    throw InputError(path.string() + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Brute-force oracle

Degree chain_rule_joint(const PossNetwork& net, const World& w) {
  Degree result = Degree::one();
  for (std::size_t v = 0; v < net.size(); ++v) result = min(result, net.entry(v, w.at(v), net.config_of(v, w)));
  return result;
}

void for_each_world(const PossNetwork& net, const EventTerm& fixed, const std::function<void(const World&)>& fn) {
  const std::size_t n = net.size();
  World w(n, 0);
  std::vector<std::size_t> free;
  for (std::size_t v = 0; v < n; ++v) {
    if (auto val = fixed.value_of(v)) {
      if (*val >= net.variable(v).domain_size()) return;
      w[v] = *val;
    } else {
      free.push_back(v);
    }
  }
  for (;;) {
    fn(w);
    // Odometer, last free variable fastest.
    std::size_t k = free.size();
    while (k > 0) {
      const std::size_t v = free[k - 1];
      if (++w[v] < net.variable(v).domain_size()) break;
      w[v] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

std::vector<World> enumerate_worlds(const PossNetwork& net) {
  std::vector<World> out;
  for_each_world(net, EventTerm{}, [&](const World& w) { out.push_back(w); });
  return out;
}

Degree oracle_possibility(const PossNetwork& net, const EventTerm& e) {
  Degree best = Degree::zero();
  for_each_world(net, e, [&](const World& w) { best = max(best, chain_rule_joint(net, w)); });
  return best;
}

Degree oracle_conditional(const PossNetwork& net, const EventTerm& x, const EventTerm& e) {
  const Degree evidence = oracle_possibility(net, e);
  const auto joint_term = EventTerm::merge(x, e);
  const Degree joint = joint_term ? oracle_possibility(net, *joint_term) : Degree::zero();
  return min_condition(joint, evidence);
}

}  // namespace posskc
