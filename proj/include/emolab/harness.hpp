#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include "emolab/algorithms.hpp"

namespace emolab {

// ---------------------------------------------------------------------------
// Formatting helpers (locale independent)
// ---------------------------------------------------------------------------

inline std::string format_double(double x, int precision = 6) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, precision);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto pos = s.find(sep, start);
    const auto piece = trim(s.substr(start, pos == std::string_view::npos ? s.size() - start
                                                                           : pos - start));
    if (!piece.empty()) out.push_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T value{};
  const auto t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty())
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(s) + "'");
  return value;
}

/// Accepts plain integers and the 10^k / 1e<k> shorthands.
inline std::uint64_t parse_count(std::string_view s, std::string_view what) {
  const auto t = trim(s);
  auto power = [&](std::string_view base, std::string_view exp) {
    const auto b = parse_number<std::uint64_t>(base, what);
    const auto e = parse_number<unsigned>(exp, what);
    std::uint64_t v = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (v > UINT64_MAX / b) throw std::invalid_argument(std::string(what) + " overflows");
      v *= b;
    }
    return v;
  };
  if (const auto p = t.find('^'); p != std::string::npos)
    return power(std::string_view(t).substr(0, p), std::string_view(t).substr(p + 1));
  if (const auto p = t.find_first_of("eE"); p != std::string::npos)
    return parse_number<std::uint64_t>(std::string_view(t).substr(0, p), what) *
           power("10", std::string_view(t).substr(p + 1));
  return parse_number<std::uint64_t>(t, what);
}

inline bool parse_switch(std::string_view s) {
  const auto t = trim(s);
  if (t == "on" || t == "true" || t == "1") return true;
  if (t == "off" || t == "false" || t == "0") return false;
  throw std::invalid_argument("expected on/off, got '" + std::string(s) + "'");
}

/// `units` or `das-dennis:p=<P>` (two objectives).
inline ReferencePointSet parse_refpoints(std::string_view s) {
  const auto t = trim(s);
  if (t == "units") return ReferencePointSet::unit_vectors(2);
  constexpr std::string_view prefix = "das-dennis:p=";
  if (t.rfind(prefix, 0) == 0)
    return das_dennis(2, parse_number<std::size_t>(std::string_view(t).substr(prefix.size()),
                                                   "das-dennis p"));
  throw std::invalid_argument("unknown reference point spec '" + std::string(s) + "'");
}

inline HvReference parse_hv_reference(std::string_view s) {
  const auto parts = split_list(s);
  if (parts.size() != 2) throw std::invalid_argument("hv reference needs two values: f1,f2");
  HvReference h{};
  for (std::size_t k = 0; k < 2; ++k) h[k] = parse_number<double>(parts[k], "hv reference");
  return h;
}

/// Fixed pseudo-random mask for a given (n, seed).
inline Bitstring random_mask(std::size_t n, std::uint64_t seed) {
  Rng rng(splitmix64(seed ^ (0x6d61736bULL + n)));
  return random_bitstring(n, rng);
}

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct Summary {
  std::size_t runs = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  /// Over successful runs only; absent when no run succeeded.
  std::optional<double> mean;
  std::optional<double> median;
  std::optional<double> stddev;  ///< sample standard deviation (0 for one run)
};

inline Summary summarize(std::span<const RunResult> results) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  Summary s;
  s.runs = results.size();
  std::vector<double> hits;
  for (const auto& r : results)
    if (r.success) hits.push_back(static_cast<double>(r.evaluations));
  s.successes = hits.size();
  s.success_rate = static_cast<double>(hits.size()) / static_cast<double>(results.size());
  if (hits.empty()) return s;

  const double mean = std::accumulate(hits.begin(), hits.end(), 0.0) / static_cast<double>(hits.size());
  std::sort(hits.begin(), hits.end());
  const std::size_t m = hits.size();
  const double median = m % 2 ? hits[m / 2] : 0.5 * (hits[m / 2 - 1] + hits[m / 2]);
  double ss = 0.0;
  for (double h : hits) ss += (h - mean) * (h - mean);
  s.mean = mean;
  s.median = median;
  s.stddev = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
  return s;
}

struct ScalingFit {
  double c = 0.0;
  double max_relative_residual = 0.0;
};

/// Least-squares c in mean ~ c n ln n, plus the worst relative residual.
inline ScalingFit fit_scaling(std::span<const double> ns, std::span<const double> means) {
  if (ns.size() != means.size()) throw std::invalid_argument("fit_scaling: size mismatch");
  if (ns.size() < 3) throw std::invalid_argument("fit_scaling: need at least 3 points");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double g = ns[i] * std::log(ns[i]);
    num += means[i] * g;
    den += g * g;
  }
  ScalingFit fit;
  fit.c = num / den;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double model = fit.c * ns[i] * std::log(ns[i]);
    fit.max_relative_residual =
        std::max(fit.max_relative_residual, std::abs(means[i] - model) / means[i]);
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Reference oracles
// ---------------------------------------------------------------------------

/// Layers by repeated peeling: a layer is every remaining point that no
/// remaining point dominates.
inline Layers oracle_non_dominated_sort(std::span<const FitnessVector> points) {
  if (points.size() > 256) throw std::invalid_argument("oracle sort: at most 256 points");
  std::vector<bool> removed(points.size(), false);
  std::size_t left = points.size();
  Layers layers;
  while (left > 0) {
    std::vector<std::size_t> layer;
    for (std::size_t a = 0; a < points.size(); ++a) {
      if (removed[a]) continue;
      bool beaten = false;
      for (std::size_t b = 0; b < points.size() && !beaten; ++b)
        beaten = !removed[b] && dominates(points[b], points[a]);
      if (!beaten) layer.push_back(a);
    }
    for (auto a : layer) removed[a] = true;
    left -= layer.size();
    layers.push_back(std::move(layer));
  }
  return layers;
}

/// Hypervolume by counting unit lattice cells [i,i+1) x [j,j+1) (relative
/// to h) that lie in some point's box. Integer inputs only.
inline std::int64_t oracle_hypervolume_lattice(std::span<const FitnessVector> points,
                                               std::array<std::int64_t, 2> h) {
  constexpr std::int64_t kBound = 4096;
  std::int64_t width = 0;
  std::int64_t height = 0;
  for (const auto& p : points) {
    const std::int64_t w = p[0] - h[0];
    const std::int64_t v = p[1] - h[1];
    if (w < 0 || v < 0) throw std::invalid_argument("lattice oracle: point below h");
    if (w > kBound || v > kBound) throw std::invalid_argument("lattice oracle: bound exceeded");
    width = std::max(width, w);
    height = std::max(height, v);
  }
  std::int64_t cells = 0;
  for (std::int64_t i = 0; i < width; ++i) {
    for (std::int64_t j = 0; j < height; ++j) {
      for (const auto& p : points) {
        if (p[0] - h[0] >= i + 1 && p[1] - h[1] >= j + 1) {
          ++cells;
          break;
        }
      }
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Experiment plans
// ---------------------------------------------------------------------------

struct ExperimentCell {
  ProblemInstance problem;
  AlgorithmConfig algorithm;
};

struct ExperimentPlan {
  std::vector<ExperimentCell> cells;
  std::size_t runs = 1;
  std::uint64_t budget = 10'000'000;
  std::uint64_t master_seed = 0;
  std::string output;    ///< CSV path, empty for none
  std::size_t workers = 0;  ///< 0: EMO_LAB_WORKERS or hardware concurrency
};

/// Plan grid: every algorithm in `algos` crossed with every n in `ns`
/// (which must be strictly increasing).
struct GridSpec {
  std::vector<AlgorithmKind> algos;
  std::vector<std::size_t> ns;
  AlgorithmConfig base;
  std::optional<std::uint64_t> mask_seed;  ///< random mask per n when set
};

inline std::vector<ExperimentCell> expand_grid(const GridSpec& g) {
  for (std::size_t i = 1; i < g.ns.size(); ++i)
    if (g.ns[i] <= g.ns[i - 1]) throw std::invalid_argument("plan: n values must be strictly increasing");
  std::vector<ExperimentCell> cells;
  for (auto kind : g.algos) {
    for (auto n : g.ns) {
      ExperimentCell c;
      c.problem = g.mask_seed ? ProblemInstance::otzt(n, random_mask(n, *g.mask_seed))
                              : ProblemInstance::otzt(n);
      c.algorithm = g.base;
      c.algorithm.kind = kind;
      c.algorithm.mutation = effective_mutation(c.algorithm);
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

/// Flat `key = value` plan file. Blank lines and lines starting with '#' are
/// ignored. Keys:
///   algo        comma list of semo|gsemo|nsga2|nsga3|smsemoa   (required)
///   n           comma list, strictly increasing                  (required)
///   problem     otzt
///   mask        none | random:<seed>
///   mu, mutation, dedup, refpoints, eps_nadir, hv_ref, init_excludes_front
///   runs, budget, seed, output, workers
inline ExperimentPlan parse_plan(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(std::string_view(t).substr(0, eq));
    if (kv.count(key))
      throw std::invalid_argument("plan line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = trim(std::string_view(t).substr(eq + 1));
  }

  GridSpec g;
  ExperimentPlan plan;
  auto take = [&kv](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };
  const auto algo = take("algo");
  const auto ns = take("n");
  if (!algo || !ns) throw std::invalid_argument("plan: 'algo' and 'n' are required");
  for (const auto& a : split_list(*algo)) g.algos.push_back(parse_algorithm(a));
  for (const auto& n : split_list(*ns)) g.ns.push_back(parse_number<std::size_t>(n, "n"));
  if (auto v = take("problem"); v && *v != "otzt")
    throw std::invalid_argument("plan: only problem = otzt is supported");
  if (auto v = take("mask"); v && *v != "none") {
    constexpr std::string_view prefix = "random:";
    if (v->rfind(prefix, 0) != 0) throw std::invalid_argument("plan: mask must be none or random:<seed>");
    g.mask_seed = parse_number<std::uint64_t>(std::string_view(*v).substr(prefix.size()), "mask seed");
  }
  if (auto v = take("mu")) g.base.mu = parse_number<std::size_t>(*v, "mu");
  if (auto v = take("mutation")) g.base.mutation = parse_mutation(*v);
  if (auto v = take("dedup")) g.base.dedup = parse_switch(*v);
  if (auto v = take("refpoints")) g.base.refpoints = parse_refpoints(*v);
  if (auto v = take("eps_nadir")) g.base.eps_nadir = parse_number<double>(*v, "eps_nadir");
  if (auto v = take("hv_ref")) g.base.hv_ref = parse_hv_reference(*v);
  if (auto v = take("init_excludes_front")) g.base.init_excludes_front = parse_switch(*v);
  if (auto v = take("runs")) plan.runs = parse_count(*v, "runs");
  if (auto v = take("budget")) plan.budget = parse_count(*v, "budget");
  if (auto v = take("seed")) plan.master_seed = parse_number<std::uint64_t>(*v, "seed");
  if (auto v = take("output")) plan.output = *v;
  if (auto v = take("workers")) plan.workers = parse_number<std::size_t>(*v, "workers");
  if (!kv.empty()) throw std::invalid_argument("plan: unknown key '" + kv.begin()->first + "'");
  if (plan.runs < 1) throw std::invalid_argument("plan: runs must be >= 1");
  if (plan.budget < 1) throw std::invalid_argument("plan: budget must be >= 1");
  if (g.base.mu < 1) throw std::invalid_argument("plan: mu must be >= 1");
  plan.cells = expand_grid(g);
  return plan;
}

inline ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open plan file '" + path + "'");
  return parse_plan(in);
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

/// EMO_LAB_WORKERS when set to a positive integer, else hardware concurrency.
inline std::size_t default_worker_count() {
  if (const char* env = std::getenv("EMO_LAB_WORKERS")) {
    try {
      const auto v = parse_number<std::size_t>(env, "EMO_LAB_WORKERS");
      if (v > 0) return v;
    } catch (const std::invalid_argument&) {
    }
  }
  return std::max<unsigned>(1, std::thread::hardware_concurrency());
}

/// Runs job(i) for i in [0, count) on up to `workers` threads. Each job
/// writes only its own slot, so results are independent of scheduling.
template <class Job>
void parallel_for(std::size_t count, std::size_t workers, Job&& job) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct RunRecord {
  std::size_t cell = 0;
  RunResult result;
};

struct CellSummary {
  std::size_t cell = 0;
  Summary summary;
  std::size_t total_violations = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;  ///< cell-major, then run index
  std::vector<CellSummary> cells;
};

inline constexpr const char* kCsvHeader =
    "run_id,seed,algo,problem,n,mu,mutation,dedup,budget,success,evaluations,generations,violations";

inline void write_csv(std::ostream& os, const ExperimentPlan& plan, const ExperimentResult& res) {
  os << kCsvHeader << '\n';
  for (const auto& rec : res.runs) {
    const auto& cell = plan.cells[rec.cell];
    const auto& r = rec.result;
    os << r.run_id << ',' << r.seed << ',' << to_string(cell.algorithm.kind) << ','
       << to_descriptor(cell.problem) << ',' << cell.problem.n << ',' << cell.algorithm.mu << ','
       << to_string(effective_mutation(cell.algorithm)) << ','
       << (cell.algorithm.dedup ? "on" : "off") << ',' << plan.budget << ','
       << (r.success ? 1 : 0) << ',' << r.evaluations << ',' << r.generations << ','
       << r.monotone_violations << '\n';
  }
}

/// Executes every (cell, run) pair. Run i of cell c uses seed
/// derive_run_seed(master, c, i) and gets run id c * runs + i.
inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
  if (plan.runs < 1) throw std::invalid_argument("run_experiment: runs must be >= 1");
  ExperimentResult res;
  const std::size_t total = plan.cells.size() * plan.runs;
  res.runs.resize(total);
  const std::size_t workers = plan.workers ? plan.workers : default_worker_count();
  parallel_for(total, workers, [&](std::size_t job) {
    const std::size_t cell = job / plan.runs;
    const std::size_t run = job % plan.runs;
    const std::uint64_t seed = derive_run_seed(plan.master_seed, cell, run);
    Rng rng(seed);
    RunResult r = run_algorithm(plan.cells[cell].problem, plan.cells[cell].algorithm,
                                plan.budget, rng);
    r.run_id = job;
    r.seed = seed;
    res.runs[job] = RunRecord{cell, r};
  });

  for (std::size_t c = 0; c < plan.cells.size(); ++c) {
    std::vector<RunResult> rs;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < plan.runs; ++i) {
      rs.push_back(res.runs[c * plan.runs + i].result);
      violations += rs.back().monotone_violations;
    }
    res.cells.push_back({c, summarize(rs), violations});
  }

  if (!plan.output.empty()) {
    std::ofstream out(plan.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write CSV '" + plan.output + "'");
    write_csv(out, plan, res);
    if (!out) throw std::runtime_error("write failed for CSV '" + plan.output + "'");
  }
  return res;
}

inline std::string cell_label(const ExperimentCell& c) {
  std::string s = to_string(c.algorithm.kind);
  if (c.algorithm.kind != AlgorithmKind::SEMO && c.algorithm.kind != AlgorithmKind::GSEMO)
    s += " mu=" + std::to_string(c.algorithm.mu);
  s += std::string(" ") + to_string(effective_mutation(c.algorithm));
  s += c.algorithm.dedup ? " dedup" : " vanilla";
  return s;
}

inline void print_summary_table(std::ostream& os, const ExperimentPlan& plan,
                                const ExperimentResult& res) {
  os << "cell  config                          n     runs  success  mean         median       stddev       violations\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v, 1) : std::string("-"); };
  for (const auto& cs : res.cells) {
    const auto& cell = plan.cells[cs.cell];
    char line[256];
    std::snprintf(line, sizeof line, "%-5zu %-31s %-5zu %-5zu %-8s %-12s %-12s %-12s %zu\n",
                  cs.cell, cell_label(cell).c_str(), cell.problem.n, cs.summary.runs,
                  format_double(cs.summary.success_rate, 3).c_str(), opt(cs.summary.mean).c_str(),
                  opt(cs.summary.median).c_str(), opt(cs.summary.stddev).c_str(),
                  cs.total_violations);
    os << line;
  }
}

/// SVG of mean evaluations against n per configuration, with the fitted
/// c n ln n curve where a fit is possible.
inline void write_scaling_svg(std::ostream& os, const ExperimentPlan& plan,
                              const ExperimentResult& res) {
  struct Series {
    std::string label;
    std::vector<double> ns;
    std::vector<double> means;
  };
  std::vector<Series> series;
  for (const auto& cs : res.cells) {
    if (!cs.summary.mean) continue;
    const auto label = cell_label(plan.cells[cs.cell]);
    auto it = std::find_if(series.begin(), series.end(), [&](const Series& s) { return s.label == label; });
    if (it == series.end()) {
      series.push_back({label, {}, {}});
      it = std::prev(series.end());
    }
    it->ns.push_back(static_cast<double>(plan.cells[cs.cell].problem.n));
    it->means.push_back(*cs.summary.mean);
  }

  constexpr double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double max_n = 1, max_y = 1;
  for (const auto& s : series) {
    for (double n : s.ns) max_n = std::max(max_n, n);
    for (double m : s.means) max_y = std::max(max_y, m);
  }
  max_y *= 1.1;
  auto px = [&](double n) { return L + (W - L - R) * n / max_n; };
  auto py = [&](double y) { return H - B - (H - T - B) * y / max_y; };
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << (W / 2) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">n</text>\n";
  os << "<text x=\"15\" y=\"" << (H / 2) << "\" transform=\"rotate(-90 15 " << (H / 2)
     << ")\" text-anchor=\"middle\">mean evaluations</text>\n";
  os << "<text x=\"" << L - 5 << "\" y=\"" << T + 5 << "\" text-anchor=\"end\" font-size=\"10\">"
     << format_double(max_y, 0) << "</text>\n";
  os << "<text x=\"" << W - R << "\" y=\"" << H - B + 15 << "\" text-anchor=\"end\" font-size=\"10\">"
     << format_double(max_n, 0) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto* color = kColors[s % std::size(kColors)];
    const auto& ser = series[s];
    for (std::size_t i = 0; i < ser.ns.size(); ++i)
      os << "<circle cx=\"" << format_double(px(ser.ns[i]), 2) << "\" cy=\""
         << format_double(py(ser.means[i]), 2) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
    if (ser.ns.size() >= 3) {
      const auto fit = fit_scaling(ser.ns, ser.means);
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
      for (int k = 0; k <= 50; ++k) {
        const double n = 2.0 + (max_n - 2.0) * k / 50.0;
        os << format_double(px(n), 2) << ',' << format_double(py(fit.c * n * std::log(n)), 2) << ' ';
      }
      os << "\"/>\n";
    }
    os << "<text x=\"" << L + 10 << "\" y=\"" << T + 15 * (s + 1) << "\" fill=\"" << color
       << "\" font-size=\"12\">" << ser.label << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace emolab
