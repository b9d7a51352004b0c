#include "posskc/cnf.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "posskc/error.hpp"

namespace posskc {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  for (Lit l : lits_)
    if (l == 0) throw std::invalid_argument("clause literal 0");
  std::sort(lits_.begin(), lits_.end(), [](Lit a, Lit b) { return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b; });
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (std::size_t i = 1; i < lits_.size(); ++i)
    if (lits_[i] == -lits_[i - 1]) throw std::invalid_argument("clause contains complementary literals");
}

bool Clause::is_tautology(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) { return var_of(a) != var_of(b) ? var_of(a) < var_of(b) : a < b; });
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i] == -lits[i - 1]) return true;
  return false;
}

bool Clause::contains(Lit l) const { return std::find(lits_.begin(), lits_.end(), l) != lits_.end(); }

bool Interpretation::satisfies(const Clause& c) const {
  return std::any_of(c.begin(), c.end(), [&](Lit l) { return satisfies(l); });
}

std::string default_label(const Role& role, int id) {
  struct Visitor {
    int id;
    std::string operator()(const PlainRole&) const { return "x" + std::to_string(id); }
    std::string operator()(const InstanceRole& r) const { return r.variable + "=" + r.value; }
    std::string operator()(const IndicatorRole& r) const { return "lambda[" + r.variable + "=" + r.value + "]"; }
    std::string operator()(const ParameterRole& r) const { return "theta[" + r.scope + "]" + r.degree.str(); }
    std::string operator()(const LevelRole& r) const { return "A" + std::to_string(r.rank); }
  };
  return std::visit(Visitor{id}, role);
}

int CnfFormula::add_variable(Role role, std::string label) {
  const int id = static_cast<int>(variables_.size()) + 1;
  if (label.empty()) label = default_label(role, id);
  std::replace_if(label.begin(), label.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n'; }, '_');
  variables_.push_back(PropVariable{id, std::move(role), std::move(label)});
  return id;
}

void CnfFormula::add_clause(Clause clause) {
  for (Lit l : clause)
    if (static_cast<std::size_t>(var_of(l)) > variables_.size())
      throw std::invalid_argument("clause mentions unregistered variable " + std::to_string(var_of(l)));
  clauses_.push_back(std::move(clause));
}

bool CnfFormula::satisfied_by(const Interpretation& m) const {
  return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return m.satisfies(c); });
}

CnfStats cnf_stats(const CnfFormula& f) { return {f.num_vars(), f.num_clauses()}; }

// ---------------------------------------------------------------------------
// DIMACS

namespace {

std::string role_fields(const Role& role) {
  struct Visitor {
    std::string operator()(const PlainRole&) const { return "plain"; }
    std::string operator()(const InstanceRole& r) const { return "instance " + r.variable + " " + r.value; }
    std::string operator()(const IndicatorRole& r) const { return "indicator " + r.variable + " " + r.value; }
    std::string operator()(const ParameterRole& r) const { return "parameter " + r.scope + " " + r.degree.str(); }
    std::string operator()(const LevelRole& r) const {
      return "level " + std::to_string(r.rank) + " " + r.weight.str();
    }
  };
  return std::visit(Visitor{}, role);
}

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, std::size_t line_no) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) throw InputError("expected an integer, got '" + tok + "'", line_no);
  return v;
}

Role parse_role(const std::vector<std::string>& t, std::size_t line_no) {
  // t = {"c", "var", id, kind, fields..., label}
  const std::string& kind = t[3];
  auto need = [&](std::size_t n) {
    if (t.size() != n) throw InputError("malformed role line for kind '" + kind + "'", line_no);
  };
  try {
    if (kind == "plain") {
      need(5);
      return PlainRole{};
    }
    if (kind == "instance") {
      need(7);
      return InstanceRole{t[4], t[5]};
    }
    if (kind == "indicator") {
      need(7);
      return IndicatorRole{t[4], t[5]};
    }
    if (kind == "parameter") {
      need(7);
      return ParameterRole{t[4], Degree::parse(t[5])};
    }
    if (kind == "level") {
      need(7);
      const long long rank = parse_int(t[4], line_no);
      if (rank < 1) throw InputError("level rank must be positive", line_no);
      return LevelRole{static_cast<std::size_t>(rank), Degree::parse(t[5])};
    }
  } catch (const InputError& err) {
    if (err.line() != 0) throw;
    throw InputError(err.what(), line_no);
  }
  throw InputError("unknown variable role '" + kind + "'", line_no);
}

}  // namespace

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  for (const auto& var : f.variables()) {
    if (std::holds_alternative<PlainRole>(var.role) && var.label == default_label(var.role, var.id)) continue;
    out << "c var " << var.id << ' ' << role_fields(var.role) << ' ' << var.label << '\n';
  }
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& clause : f.clauses()) {
    for (Lit l : clause) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  struct RoleLine {
    Role role;
    std::string label;
    std::size_t line;
  };
  std::vector<std::pair<long long, RoleLine>> roles;
  std::vector<std::vector<Lit>> clauses;
  std::vector<std::size_t> clause_lines;
  std::vector<Lit> pending;
  long long declared_vars = -1;
  long long declared_clauses = -1;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++line_no;
    const auto toks = split_ws(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (toks.empty()) continue;
    if (toks[0] == "c") {
      if (toks.size() >= 2 && toks[1] == "var") {
        if (toks.size() < 5) throw InputError("malformed 'c var' line", line_no);
        const long long id = parse_int(toks[2], line_no);
        roles.push_back({id, RoleLine{parse_role(toks, line_no), toks.back(), line_no}});
      }
      continue;
    }
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (declared_vars >= 0) throw InputError("duplicate problem line", line_no);
      if (toks.size() != 4 || toks[1] != "cnf") throw InputError("malformed header, expected 'p cnf <vars> <clauses>'", line_no);
      declared_vars = parse_int(toks[2], line_no);
      declared_clauses = parse_int(toks[3], line_no);
      if (declared_vars < 0 || declared_clauses < 0) throw InputError("negative counts in header", line_no);
      continue;
    }
    if (declared_vars < 0) throw InputError("clause before 'p cnf' header", line_no);
    for (const auto& tok : toks) {
      const long long lit = parse_int(tok, line_no);
      if (lit == 0) {
        if (Clause::is_tautology(pending)) throw InputError("clause contains complementary literals", line_no);
        clauses.push_back(std::move(pending));
        clause_lines.push_back(line_no);
        pending.clear();
        continue;
      }
      if (lit > declared_vars || -lit > declared_vars)
        throw InputError("literal " + tok + " beyond declared " + std::to_string(declared_vars) + " variables", line_no);
      pending.push_back(static_cast<Lit>(lit));
    }
  }
  if (declared_vars < 0) throw InputError("missing 'p cnf' header");
  if (!pending.empty()) throw InputError("last clause is not terminated by 0", line_no);
  if (static_cast<long long>(clauses.size()) != declared_clauses)
    throw InputError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(clauses.size()));

  std::vector<std::optional<RoleLine>> by_id(static_cast<std::size_t>(declared_vars) + 1);
  for (auto& [id, rl] : roles) {
    if (id < 1 || id > declared_vars) throw InputError("role line for undeclared variable " + std::to_string(id), rl.line);
    auto& slot = by_id[static_cast<std::size_t>(id)];
    if (slot) throw InputError("second role line for variable " + std::to_string(id), rl.line);
    slot = std::move(rl);
  }

  CnfFormula f;
  for (long long id = 1; id <= declared_vars; ++id) {
    auto& slot = by_id[static_cast<std::size_t>(id)];
    if (slot)
      f.add_variable(std::move(slot->role), std::move(slot->label));
    else
      f.add_variable(PlainRole{});
  }
  for (auto& c : clauses) f.add_clause(Clause(std::move(c)));
  return f;
}

// ---------------------------------------------------------------------------
// Model enumeration

void for_each_model(const CnfFormula& f, const std::function<void(const Interpretation&)>& fn, std::size_t max_vars) {
  const std::size_t n = f.num_vars();
  if (n > max_vars)
    throw BudgetError("model enumeration over " + std::to_string(n) + " variables exceeds the limit of " +
                      std::to_string(max_vars));
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<bool> values(n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (std::size_t i = 0; i < n; ++i) values[i] = (bits >> (n - 1 - i)) & 1U;
    Interpretation m(values);
    if (f.satisfied_by(m)) fn(m);
  }
}

std::vector<Interpretation> enumerate_models(const CnfFormula& f, std::size_t max_vars) {
  std::vector<Interpretation> out;
  for_each_model(f, [&](const Interpretation& m) { out.push_back(m); }, max_vars);
  return out;
}

}  // namespace posskc
