#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emolab/harness.hpp"
#include "emolab/verify.hpp"

namespace emolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for flag combinations CLI11 cannot reject on its own.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct AlgorithmFlags {
  std::string mu = "4";
  std::optional<std::string> mutation;
  std::string dedup = "on";
  std::string refpoints = "units";
  double eps_nadir = kDefaultEpsNadir;
  std::optional<std::string> hv_ref;
  std::string init_excludes_front = "on";

  void attach(CLI::App& app) {
    app.add_option("--mu", mu, "population size (ignored by semo/gsemo)")->capture_default_str();
    app.add_option("--mutation", mutation, "bitwise|local (default: bitwise; semo implies local)");
    app.add_option("--dedup", dedup, "avoid genotype duplicates: on|off")->capture_default_str();
    app.add_option("--refpoints", refpoints, "NSGA-III reference points: units | das-dennis:p=<P>")
        ->capture_default_str();
    app.add_option("--eps-nadir", eps_nadir, "NSGA-III nadir threshold")->capture_default_str();
    app.add_option("--hv-ref", hv_ref, "SMS-EMOA reference point f1,f2 (default -(ceil(n/2))^2 each)");
    app.add_option("--init-excludes-front", init_excludes_front,
                   "resample Pareto-optimal strings in the initial population: on|off")
        ->capture_default_str();
  }

  /// Builds the configuration for `kind`, rejecting contradictory flags.
  AlgorithmConfig build(AlgorithmKind kind) const {
    AlgorithmConfig cfg;
    cfg.kind = kind;
    try {
      const auto m = parse_count(mu, "mu");
      if (m < 1) throw UsageError("--mu must be at least 1");
      cfg.mu = static_cast<std::size_t>(m);
      if (mutation) cfg.mutation = parse_mutation(*mutation);
      if (kind == AlgorithmKind::SEMO && mutation && cfg.mutation != MutationKind::Local)
        throw UsageError("semo uses local mutation; --mutation bitwise is not allowed");
      if (kind == AlgorithmKind::GSEMO && mutation && cfg.mutation != MutationKind::StandardBitwise)
        throw UsageError("gsemo uses bitwise mutation; --mutation local is not allowed");
      cfg.mutation = effective_mutation(cfg);
      cfg.dedup = parse_switch(dedup);
      cfg.refpoints = parse_refpoints(refpoints);
      if (!(eps_nadir > 0.0)) throw UsageError("--eps-nadir must be positive");
      cfg.eps_nadir = eps_nadir;
      if (hv_ref) cfg.hv_ref = parse_hv_reference(*hv_ref);
      cfg.init_excludes_front = parse_switch(init_excludes_front);
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

inline void warn_nsga3(const AlgorithmConfig& cfg, std::ostream& err) {
  if (cfg.kind == AlgorithmKind::NSGA3 && !nsga3_guarantee_holds(cfg))
    err << "warning: nsga3 with mu=" << cfg.mu << " and " << cfg.refpoints.size()
        << " reference points does not satisfy mu >= 2|R| with unit vectors; "
           "extreme points may be lost\n";
}

// ---------------------------------------------------------------------------

struct RunCommand {
  std::string algo;
  std::optional<std::size_t> n;
  std::optional<std::string> problem;
  std::string budget = "10^7";
  std::uint64_t seed = 0;
  std::optional<std::string> trace;
  AlgorithmFlags flags;

  void attach(CLI::App& app) {
    app.add_option("--algo", algo, "semo|gsemo|nsga2|nsga3|smsemoa")->required();
    app.add_option("--n", n, "string length");
    app.add_option("--problem", problem, "problem descriptor otzt:n=<N>[:mask=<hex>]");
    app.add_option("--budget", budget, "evaluation budget")->capture_default_str();
    app.add_option("--seed", seed, "master seed (run 0 of cell 0)")->capture_default_str();
    app.add_option("--trace", trace, "write per-generation trace records to this path");
    flags.attach(app);
  }

  int execute(std::ostream& out, std::ostream& err) const {
    AlgorithmKind kind;
    ProblemInstance inst;
    AlgorithmConfig cfg;
    std::uint64_t bud = 0;
    try {
      kind = parse_algorithm(algo);
      if (!n && !problem) throw UsageError("one of --n or --problem is required");
      inst = problem ? parse_problem_descriptor(*problem) : ProblemInstance::otzt(*n);
      if (n && *n != inst.n) throw UsageError("--n disagrees with --problem");
      if (inst.kind != ProblemKind::OneTrapZeroTrap)
        throw UsageError("only otzt problems can be optimised");
      cfg = flags.build(kind);
      if (cfg.init_excludes_front && inst.n < 2)
        throw UsageError("--init-excludes-front on needs n >= 2");
      bud = parse_count(budget, "budget");
      if (bud < 1) throw UsageError("--budget must be at least 1");
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    warn_nsga3(cfg, err);

    std::ofstream trace_out;
    Observer observer;
    if (trace) {
      trace_out.open(*trace, std::ios::binary);
      if (!trace_out) {
        err << "error: cannot write trace '" << *trace << "'\n";
        return kExitFailure;
      }
      trace_out << kTraceHeader << '\n';
      observer = [&trace_out](const GenerationTrace& t) { write_trace_record(trace_out, t); };
    }

    const std::uint64_t run_seed = derive_run_seed(seed, 0, 0);
    Rng rng(run_seed);
    RunResult r;
    try {
      r = run_algorithm(inst, cfg, bud, rng, observer);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
    out << "algo=" << to_string(kind) << " problem=" << to_descriptor(inst) << " mu=" << cfg.mu
        << " mutation=" << to_string(cfg.mutation) << " dedup=" << (cfg.dedup ? "on" : "off")
        << " seed=" << seed << " success=" << (r.success ? "true" : "false")
        << " evaluations=" << r.evaluations << " generations=" << r.generations
        << " violations=" << r.monotone_violations << " max_ones=" << r.final_max_ones
        << " max_zeros=" << r.final_max_zeros << '\n';
    if (trace && !trace_out) {
      err << "error: failed writing trace '" << *trace << "'\n";
      return kExitFailure;
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct SweepCommand {
  std::optional<std::string> plan_path;
  std::optional<std::string> algo;
  std::optional<std::string> ns;
  std::optional<std::string> mask;
  std::string runs = "10";
  std::string budget = "10^7";
  std::uint64_t seed = 0;
  std::optional<std::string> out_path;
  std::optional<std::string> plot_path;
  AlgorithmFlags flags;
  CLI::App* app = nullptr;

  void attach(CLI::App& a) {
    app = &a;
    a.add_option("--plan", plan_path, "plan file (key = value lines)");
    a.add_option("--algo", algo, "comma list of algorithms");
    a.add_option("--n", ns, "comma list of strictly increasing n");
    a.add_option("--mask", mask, "none | random:<seed>");
    a.add_option("--runs", runs, "runs per cell")->capture_default_str();
    a.add_option("--budget", budget, "evaluation budget per run")->capture_default_str();
    a.add_option("--seed", seed, "master seed")->capture_default_str();
    a.add_option("--out", out_path, "CSV output path (default: stdout, table to stderr)");
    a.add_option("--plot", plot_path, "SVG scaling plot path");
    flags.attach(a);
  }

  ExperimentPlan build_plan() const {
    if (plan_path) {
      for (const char* grid : {"--algo", "--n", "--mask", "--runs", "--budget", "--seed", "--mu",
                               "--mutation", "--dedup", "--refpoints", "--eps-nadir", "--hv-ref",
                               "--init-excludes-front"})
        if (app->count(grid) > 0)
          throw UsageError(std::string(grid) + " cannot be combined with --plan");
      try {
        return load_plan(*plan_path);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (!algo || !ns) throw UsageError("sweep needs --plan, or --algo and --n");
    GridSpec g;
    ExperimentPlan plan;
    try {
      for (const auto& a : split_list(*algo)) g.algos.push_back(parse_algorithm(a));
      for (const auto& n : split_list(*ns)) g.ns.push_back(parse_number<std::size_t>(n, "n"));
      if (mask && *mask != "none") {
        if (mask->rfind("random:", 0) != 0) throw UsageError("--mask must be none or random:<seed>");
        g.mask_seed = parse_number<std::uint64_t>(std::string_view(*mask).substr(7), "mask seed");
      }
      plan.runs = parse_count(runs, "runs");
      plan.budget = parse_count(budget, "budget");
    } catch (const UsageError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (g.algos.empty() || g.ns.empty()) throw UsageError("--algo and --n must be non-empty");
    if (plan.runs < 1) throw UsageError("--runs must be at least 1");
    if (plan.budget < 1) throw UsageError("--budget must be at least 1");
    // The mutation constraint is per algorithm; validate each one.
    for (auto kind : g.algos) (void)flags.build(kind);
    g.base = flags.build(AlgorithmKind::NSGA2);
    if (!flags.mutation) g.base.mutation = MutationKind::StandardBitwise;
    plan.master_seed = seed;
    try {
      plan.cells = expand_grid(g);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return plan;
  }

  int execute(std::ostream& out, std::ostream& err) const {
    ExperimentPlan plan;
    try {
      plan = build_plan();
      if (out_path) plan.output = *out_path;
      for (const auto& c : plan.cells) {
        if (c.algorithm.init_excludes_front && c.problem.n < 2)
          throw UsageError("--init-excludes-front on needs n >= 2");
        warn_nsga3(c.algorithm, err);
      }
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    ExperimentResult res;
    try {
      res = run_experiment(plan);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
    if (plan.output.empty()) {
      write_csv(out, plan, res);
      print_summary_table(err, plan, res);
    } else {
      print_summary_table(out, plan, res);
      out << "wrote " << res.runs.size() << " rows to " << plan.output << '\n';
    }
    if (plot_path) {
      std::ofstream svg(*plot_path, std::ios::binary);
      if (!svg) {
        err << "error: cannot write plot '" << *plot_path << "'\n";
        return kExitFailure;
      }
      write_scaling_svg(svg, plan, res);
      if (!svg) {
        err << "error: failed writing plot '" << *plot_path << "'\n";
        return kExitFailure;
      }
    }
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

struct VerifyCommand {
  std::vector<std::string> suites;
  std::optional<std::size_t> n;
  std::string instances = "10^4";
  std::uint64_t seed = 0;

  void attach(CLI::App& app) {
    app.add_option("--suite", suites, "sorting|hypervolume|lemma1|lemma5|monotone (repeatable)");
    app.add_option("--n", n, "lemma1: max n; lemma5/monotone: the n to use");
    app.add_option("--instances", instances, "random instances for sorting/hypervolume")
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for random instances")->capture_default_str();
  }

  int execute(std::ostream& out, std::ostream& err) const {
    static const std::vector<std::string> kAll{"sorting", "hypervolume", "lemma1", "lemma5", "monotone"};
    std::vector<std::string> chosen = suites.empty() ? kAll : suites;
    std::uint64_t count = 0;
    try {
      for (const auto& s : chosen)
        if (std::find(kAll.begin(), kAll.end(), s) == kAll.end())
          throw UsageError("unknown suite '" + s + "'");
      count = parse_count(instances, "instances");
      const bool exhaustive = std::find(chosen.begin(), chosen.end(), "lemma1") != chosen.end();
      if (n && exhaustive && *n > 20) throw UsageError("lemma1 enumerates 4^n pairs; use --n <= 20");
      if (n && *n < 1) throw UsageError("--n must be positive");
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }

    bool all = true;
    for (const auto& s : chosen) {
      SuiteReport rep;
      if (s == "sorting") {
        rep = verify_sorting(count, seed);
      } else if (s == "hypervolume") {
        rep = verify_hypervolume(count, seed);
      } else if (s == "lemma1") {
        rep = verify_dominance_structure(n.value_or(12));
      } else if (s == "lemma5") {
        const std::vector<std::size_t> ns = n ? std::vector<std::size_t>{*n}
                                              : std::vector<std::size_t>{8, 16, 32};
        rep = verify_extreme_contributions(ns, 1000, seed);
      } else {
        rep = verify_monotone(n.value_or(16), 10, seed);
      }
      all = all && rep.passed;
      out << (rep.passed ? "PASS " : "FAIL ") << rep.name << " (" << rep.checks << " checks)";
      if (!rep.passed) out << ": " << rep.counterexample;
      out << '\n';
    }
    return all ? kExitOk : kExitFailure;
  }
};

// ---------------------------------------------------------------------------

struct FrontCommand {
  std::size_t n = 0;
  std::optional<std::string> mask;
  bool csv = false;

  void attach(CLI::App& app) {
    app.add_option("--n", n, "string length")->required()->check(CLI::PositiveNumber);
    app.add_option("--mask", mask, "hex mask (see problem descriptors)");
    app.add_flag("--csv", csv, "emit kind,ones,f1,f2 rows");
  }

  int execute(std::ostream& out, std::ostream& err) const {
    ProblemInstance inst;
    try {
      inst = mask ? ProblemInstance::otzt(n, mask_from_hex(*mask, n)) : ProblemInstance::otzt(n);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    auto row = [&](const char* kind, std::size_t ones) {
      // A representative string with `ones` ones relative to the mask.
      std::string bits(n, '0');
      for (std::size_t i = 0; i < ones; ++i) bits[i] = '1';
      const auto f = evaluate_otzt(inst, Bitstring::from_string(bits) ^ inst.mask);
      if (csv)
        out << kind << ',' << ones << ',' << f[0] << ',' << f[1] << '\n';
      else
        out << kind << ' ' << f << "  ones=" << ones << '\n';
    };
    if (csv) out << "kind,ones,f1,f2\n";
    else out << "# " << to_descriptor(inst) << ": Pareto front, then interior unitation classes\n";
    row("front", 0);
    row("front", n);
    for (std::size_t k = 1; k < n; ++k) row("interior", k);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

/// Entry point shared by the emo_lab binary and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolutionary multi-objective runtime lab on OneTrapZeroTrap", "emo_lab"};
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  RunCommand run;
  SweepCommand sweep;
  VerifyCommand verify;
  FrontCommand front;
  run.attach(*app.add_subcommand("run", "execute one run and print its result"));
  sweep.attach(*app.add_subcommand("sweep", "execute an experiment grid and write CSV"));
  verify.attach(*app.add_subcommand("verify", "run the oracle and property suites"));
  front.attach(*app.add_subcommand("front", "print the Pareto front and unitation classes"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("run")) return run.execute(out, err);
    if (app.got_subcommand("sweep")) return sweep.execute(out, err);
    if (app.got_subcommand("verify")) return verify.execute(out, err);
    return front.execute(out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace emolab::cli
