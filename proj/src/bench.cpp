#include "posskc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "posskc/error.hpp"

namespace posskc::bench {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r = next();
  while (r >= limit) r = next();
  return r % bound;
}

std::vector<Degree> default_degree_pool() {
  std::vector<Degree> pool;
  for (std::uint32_t k = 1; k <= 9; ++k) pool.push_back(Degree::from_scaled(k * (Degree::kScale / 10)));
  return pool;
}

PossNetwork random_network(const GenConfig& cfg) {
  if (cfg.n_nodes == 0) throw std::invalid_argument("random_network: n_nodes must be at least 1");
  if (cfg.degree_pool.empty()) throw std::invalid_argument("random_network: empty degree pool");
  for (Degree d : cfg.degree_pool)
    if (d.is_zero() || d.is_one()) throw std::invalid_argument("random_network: pool degrees must lie in (0,1)");

  SplitMix64 rng(cfg.seed);
  const std::size_t n = cfg.n_nodes;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  std::vector<NetVariable> vars(n);
  for (std::size_t v = 0; v < n; ++v) {
    vars[v].name = "X" + std::to_string(v + 1);
    const std::size_t dom = cfg.binary_only ? 2 : 2 + rng.below(2);
    for (std::size_t k = 0; k < dom; ++k) vars[v].values.push_back("x" + std::to_string(v + 1) + "_" + std::to_string(k));
  }

  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t v = order[pos];
    std::vector<std::size_t> preds(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(pos));
    const std::size_t k = rng.below(std::min(cfg.max_parents, pos) + 1);
    for (std::size_t i = 0; i < k; ++i) std::swap(preds[i], preds[i + rng.below(preds.size() - i)]);
    preds.resize(k);
    std::sort(preds.begin(), preds.end());
    parents[v] = std::move(preds);
  }

  std::vector<std::vector<Degree>> tables(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t v = order[pos];
    std::size_t configs = 1;
    for (std::size_t p : parents[v]) configs *= vars[p].values.size();
    const std::size_t dom = vars[v].values.size();
    auto& table = tables[v];
    table.resize(configs * dom);
    for (std::size_t c = 0; c < configs; ++c) {
      const std::size_t forced = rng.below(dom);
      for (std::size_t x = 0; x < dom; ++x)
        table[c * dom + x] = x == forced ? Degree::one() : cfg.degree_pool[rng.below(cfg.degree_pool.size())];
    }
  }
  return PossNetwork("random-" + std::to_string(cfg.seed) + "-" + std::to_string(n), std::move(vars),
                     std::move(parents), std::move(tables));
}

CnfStats baseline_counts(const PossNetwork& net, BaselineScheme scheme) {
  CnfStats s;
  if (scheme == BaselineScheme::Circuit) {
    for (std::size_t v = 0; v < net.size(); ++v) {
      const std::size_t dom = net.variable(v).domain_size();
      const std::size_t m = net.parents(v).size();
      s.vars += dom;
      s.clauses += 1 + dom * (dom - 1) / 2;
      for (Degree d : net.table(v)) {
        if (d.is_zero()) {
          s.clauses += 1;
        } else if (!d.is_one()) {
          s.vars += 1;
          s.clauses += m + 2;
        }
      }
    }
    return s;
  }
  for (std::size_t v = 0; v < net.size(); ++v) {
    const std::size_t dom = net.variable(v).domain_size();
    s.vars += dom == 2 ? 1 : dom;
    s.vars += net.table(v).size();
    s.clauses += net.table(v).size();
  }
  return s;
}

namespace {

double millis_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::vector<ComparisonRow> compare_network(const PossNetwork& net, std::uint64_t seed, const std::vector<Method>& methods,
                                           const CompileOptions& options) {
  std::vector<ComparisonRow> rows;
  EventTerm x, e;
  x.assign(0, 0);
  if (net.size() > 1) e.assign(net.size() - 1, 0);
  for (Method m : methods) {
    ComparisonRow row;
    row.seed = seed;
    row.n_nodes = net.size();
    row.method = m;
    const CnfStats cs = cnf_stats(encode(net, m));
    row.cnf_vars = cs.vars;
    row.cnf_clauses = cs.clauses;
    try {
      const auto start = std::chrono::steady_clock::now();
      const Pipeline p = Pipeline::build(net, m, options);
      row.compile_ms = millis_since(start);
      const NnfStats ns = nnf_stats(p.dag());
      row.nnf_nodes = ns.nodes;
      row.nnf_edges = ns.edges;
      const auto qstart = std::chrono::steady_clock::now();
      (void)p.query(x, e);
      row.query_ms = millis_since(qstart);
    } catch (const BudgetError&) {
      row.status = "budget";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SizeMeans> aggregate(const std::vector<ComparisonRow>& rows) {
  std::map<std::pair<std::size_t, int>, SizeMeans> acc;
  for (const auto& r : rows) {
    auto& m = acc[{r.n_nodes, static_cast<int>(r.method)}];
    m.n_nodes = r.n_nodes;
    m.method = r.method;
    ++m.count;
    m.cnf_vars += static_cast<double>(r.cnf_vars);
    m.cnf_clauses += static_cast<double>(r.cnf_clauses);
    if (r.status == "ok") {
      ++m.compiled;
      m.nnf_nodes += static_cast<double>(r.nnf_nodes);
      m.nnf_edges += static_cast<double>(r.nnf_edges);
    }
  }
  std::vector<SizeMeans> out;
  for (auto& [key, m] : acc) {
    m.cnf_vars /= static_cast<double>(m.count);
    m.cnf_clauses /= static_cast<double>(m.count);
    if (m.compiled > 0) {
      m.nnf_nodes /= static_cast<double>(m.compiled);
      m.nnf_edges /= static_cast<double>(m.compiled);
    }
    out.push_back(m);
  }
  return out;
}

SweepResult run_comparison(const SweepConfig& cfg) {
  struct Job {
    std::size_t size;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t size : cfg.sizes)
    for (std::size_t k = 0; k < cfg.per_size; ++k) jobs.push_back({size, cfg.seed + k});
  std::sort(jobs.begin(), jobs.end(),
            [](const Job& a, const Job& b) { return std::tie(a.size, a.seed) < std::tie(b.size, b.seed); });

  std::vector<std::vector<ComparisonRow>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      GenConfig gen;
      gen.n_nodes = jobs[i].size;
      gen.max_parents = cfg.max_parents;
      gen.degree_pool = cfg.degree_pool;
      gen.seed = jobs[i].seed;
      gen.binary_only = cfg.binary_only;
      slots[i] = compare_network(random_network(gen), jobs[i].seed, cfg.methods, cfg.compile);
    }
  };
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (auto& s : slots)
    for (auto& r : s) result.rows.push_back(std::move(r));
  result.means = aggregate(result.rows);
  return result;
}

void write_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result) {
  out << "# posskc bench sizes=";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) out << (i ? ";" : "") << cfg.sizes[i];
  out << " per_size=" << cfg.per_size << " seed=" << cfg.seed << " max_parents=" << cfg.max_parents << " pool=";
  for (std::size_t i = 0; i < cfg.degree_pool.size(); ++i) out << (i ? ";" : "") << cfg.degree_pool[i];
  out << " binary_only=" << (cfg.binary_only ? 1 : 0) << " node_budget=" << cfg.compile.node_budget << '\n';
  out << kCsvHeader << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& r : result.rows) {
    out << r.seed << ',' << r.n_nodes << ',' << method_name(r.method) << ',' << r.cnf_vars << ',' << r.cnf_clauses << ','
        << r.nnf_nodes << ',' << r.nnf_edges << ',' << r.compile_ms << ',' << r.query_ms << ',' << r.status << '\n';
  }
  out << "# means n_nodes,method,count,compiled,cnf_vars,cnf_clauses,nnf_nodes,nnf_edges\n";
  for (const auto& m : result.means) {
    out << "# " << m.n_nodes << ',' << method_name(m.method) << ',' << m.count << ',' << m.compiled << ','
        << m.cnf_vars << ',' << m.cnf_clauses << ',' << m.nnf_nodes << ',' << m.nnf_edges << '\n';
  }
}

std::pair<EventTerm, EventTerm> random_query(const PossNetwork& net, SplitMix64& rng) {
  const std::size_t n = net.size();
  std::vector<std::size_t> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(vars[i - 1], vars[rng.below(i)]);

  EventTerm x, e;
  const std::size_t targets = n > 2 && rng.below(4) == 0 ? 2 : 1;
  for (std::size_t i = 0; i < targets; ++i) x.assign(vars[i], rng.below(net.variable(vars[i]).domain_size()));
  for (std::size_t i = targets; i < n; ++i)
    if (rng.below(3) == 0) e.assign(vars[i], rng.below(net.variable(vars[i]).domain_size()));
  if (rng.below(10) == 0) e.assign(vars[0], rng.below(net.variable(vars[0]).domain_size()));
  return {x, e};
}

std::string CrossCheckReport::text() const {
  std::ostringstream out;
  out << "nets " << nets << "\nqueries " << queries << "\nmismatches " << mismatches.size() << '\n';
  for (const auto& m : mismatches) {
    out << "\n--- mismatch: target " << m.target << " evidence " << (m.evidence.empty() ? "{}" : m.evidence) << '\n'
        << "oracle " << m.oracle << " pf " << m.pf << " logical " << m.logical << " pkb " << m.pkb << '\n'
        << m.network;
  }
  return out.str();
}

CrossCheckReport cross_validate(const CrossCheckConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  CrossCheckReport report;
  for (std::size_t k = 0; k < cfg.nets; ++k) {
    GenConfig gen;
    gen.n_nodes = 1 + rng.below(cfg.max_vars);
    gen.max_parents = cfg.max_parents;
    gen.seed = rng.next();
    gen.binary_only = cfg.binary_only;
    const PossNetwork net = random_network(gen);
    const Pipeline pf = Pipeline::build(net, Method::Pf);
    const Pipeline lg = Pipeline::build(net, Method::Logical);
    const Pipeline kb = Pipeline::build(net, Method::Pkb);
    ++report.nets;
    for (std::size_t q = 0; q < cfg.queries; ++q) {
      const auto [x, e] = random_query(net, rng);
      Mismatch m;
      m.oracle = oracle_conditional(net, x, e);
      m.pf = pf.query(x, e);
      m.logical = lg.query(x, e);
      m.pkb = kb.query(x, e);
      ++report.queries;
      if (m.pf != m.oracle || m.logical != m.oracle || m.pkb != m.oracle) {
        m.network = write_network(net);
        m.target = net.term_str(x);
        m.evidence = net.term_str(e);
        report.mismatches.push_back(std::move(m));
      }
    }
  }
  return report;
}

}  // namespace posskc::bench
