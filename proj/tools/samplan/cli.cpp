#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "output.hpp"
#include "samplan/dist.hpp"
#include "samplan/oracle.hpp"
#include "samplan/scheme.hpp"

namespace samplan::cli {

namespace {

Cell I(std::int64_t v) { return Cell(std::in_place_type<std::int64_t>, v); }
Cell D(double v) { return Cell(std::in_place_type<double>, v); }
Cell P(double v) { return Cell(std::in_place_type<Probability>, Probability{v}); }
Cell P(std::optional<double> v) { return v ? P(*v) : Cell(); }
Cell S(std::string_view v) { return Cell(std::in_place_type<std::string>, std::string(v)); }
Cell B(bool v) { return Cell(std::in_place_type<bool>, v); }
Cell Upper(std::optional<std::int64_t> v) { return v ? I(*v) : Cell(Unbounded{}); }

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// ---- shared option sets ----------------------------------------------------

struct Globals {
  double p_a = 0, P_a = 0, p_b = 0, P_b = 0;
  std::int64_t n_ceiling = 0;
  std::string config;
  std::string format = "table";
  CLI::Option* opt_pa = nullptr;
  CLI::Option* opt_Pa = nullptr;
  CLI::Option* opt_pb = nullptr;
  CLI::Option* opt_Pb = nullptr;
  CLI::Option* opt_ceiling = nullptr;

  Settings settings;
  OutputFormat output = OutputFormat::Table;

  void resolve() {
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ConfigError("cannot open config file " + config);
      std::ostringstream text;
      text << in.rdbuf();
      settings = parse_config(text.str(), settings);
    }
    if (opt_pa->count()) settings.p_a = p_a;
    if (opt_Pa->count()) settings.P_a = P_a;
    if (opt_pb->count()) settings.p_b = p_b;
    if (opt_Pb->count()) settings.P_b = P_b;
    if (opt_ceiling->count()) settings.n_ceiling = n_ceiling;
    if (settings.n_ceiling < 1) throw UsageError("n_ceiling must be positive");
    output = *parse_output_format(format);
  }
  TwoPointCriterion criterion() const { return settings.criterion(); }
};

struct PlanArgs {
  std::int64_t n = 0;
  std::int64_t c = 0;
  void add(CLI::App* cmd) {
    cmd->add_option("--n", n, "sample size")->required();
    cmd->add_option("--c", c, "acceptance number")->required();
  }
  SamplingPlan plan() const { return SamplingPlan(n, c); }
};

struct LotArg {
  std::int64_t N = 0;
  CLI::Option* opt = nullptr;
  void add(CLI::App* cmd, bool required) {
    opt = cmd->add_option("--N", N, "lot size");
    if (required) opt->required();
  }
  std::optional<std::int64_t> get() const { return opt->count() ? std::optional(N) : std::nullopt; }
};

const std::vector<std::string> kModelNames = {"binomial", "poisson", "hyper-exact", "hyper-ext"};

// Model from --model/--N; "auto" means binomial without a lot size and the
// gamma extension with one.
OcModel resolve_model(const std::string& name, std::optional<std::int64_t> lot) {
  const std::string effective = name == "auto" ? (lot ? "hyper-ext" : "binomial") : name;
  const auto kind = parse_oc_kind(effective);
  if (!kind) throw UsageError("unknown model '" + name + "'");
  switch (*kind) {
    case OcKind::Binomial:
    case OcKind::Poisson:
      if (lot) throw UsageError("--N only applies to the hypergeometric models");
      return *kind == OcKind::Binomial ? OcModel::binomial() : OcModel::poisson();
    case OcKind::HypergeometricExact:
    case OcKind::HypergeometricExtended:
      if (!lot) throw UsageError("model " + effective + " needs --N");
      return *kind == OcKind::HypergeometricExact ? OcModel::hypergeometric_exact(*lot)
                                                  : OcModel::hypergeometric_extended(*lot);
  }
  throw UsageError("unknown model '" + name + "'");
}

Cell lot_cell(const OcModel& model) { return model.lot_size() ? I(*model.lot_size()) : Cell(Unbounded{}); }

// ---- commands --------------------------------------------------------------

struct Context {
  Globals& g;
  std::ostream& out;
  std::ostream& err;
};

using Command = std::function<int(Context&)>;

double snap_grid(double p) { return std::round(p * 1e12) / 1e12; }

Command add_oc(CLI::App& app) {
  auto* cmd = app.add_subcommand("oc", "OC curve data series (p, OC(p))");
  auto s = std::make_shared<std::tuple<PlanArgs, LotArg, std::string, double, double, int, std::vector<double>>>();
  auto& [plan, lot, model, pmin, pmax, points, list] = *s;
  model = "binomial";
  pmin = 0.0;
  pmax = 0.12;
  points = 121;
  plan.add(cmd);
  lot.add(cmd, false);
  cmd->add_option("--model", model, "binomial | poisson | hyper-exact | hyper-ext")->check(CLI::IsMember(kModelNames));
  cmd->add_option("--pmin", pmin, "first quality level");
  cmd->add_option("--pmax", pmax, "last quality level");
  cmd->add_option("--points", points, "number of curve points")->check(CLI::Range(2, 1'000'000));
  cmd->add_option("--p", list, "explicit quality levels (replaces the grid)")->delimiter(',');
  return [s](Context& ctx) {
    auto& [plan, lot, model, pmin, pmax, points, list] = *s;
    const auto m = resolve_model(model, lot.get());
    const auto sp = plan.plan();
    Records rec{{"p", "oc", "kind"}};
    const bool exact = m.kind() == OcKind::HypergeometricExact;
    if (!list.empty()) {
      for (const double p : list) {
        if (!(p >= 0.0 && p <= 1.0)) throw UsageError("quality levels must lie in [0,1]");
        const bool on_grid = exact && QualityLevelGrid(*m.lot_size()).contains(p);
        const std::string kind = exact ? (on_grid ? "hyper-exact" : "hyper-ext") : std::string(to_string(m.kind()));
        rec.add({D(p), D(on_grid ? m.evaluate(p, sp) : m.evaluate_continuous(p, sp)), S(kind)});
      }
    } else {
      if (!(pmin >= 0.0 && pmin < pmax && pmax <= 1.0)) throw UsageError("need 0 <= pmin < pmax <= 1");
      const std::string kind = exact ? "hyper-ext" : std::string(to_string(m.kind()));
      for (int i = 0; i < points; ++i) {
        const double p = snap_grid((pmin * (points - 1 - i) + pmax * i) / (points - 1));
        rec.add({D(p), D(m.evaluate_continuous(p, sp)), S(kind)});
      }
      if (exact) {
        // The operational levels M/N, marked apart from the extended curve.
        const std::int64_t big_n = *m.lot_size();
        for (std::int64_t defects = 0; defects <= big_n; ++defects) {
          const double p = static_cast<double>(defects) / static_cast<double>(big_n);
          if (p < pmin || p > pmax) continue;
          rec.add({D(p), D(hypergeom_oc_exact(defects, big_n, sp)), S("hyper-exact")});
        }
      }
    }
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

void report_structural(Context& ctx, std::int64_t lot, std::int64_t c, const TwoPointCriterion& crit) {
  ctx.err << "structurally inadmissible: N=" << lot << " is below the lot-size bound " << lot_size_lower_bound(c, crit)
          << " for c=" << c << " (N > c/p_a required)\n";
}

Command add_check(CLI::App& app) {
  auto* cmd = app.add_subcommand("check", "admissibility verdict for one plan");
  auto s = std::make_shared<std::tuple<PlanArgs, LotArg, bool>>();
  auto& [plan, lot, discrete] = *s;
  plan.add(cmd);
  lot.add(cmd, false);
  cmd->add_flag("--discrete", discrete, "evaluate at the first grid levels at or above p_a, p_b (needs --N)");
  return [s](Context& ctx) {
    auto& [plan, lot, discrete] = *s;
    const auto crit = ctx.g.criterion();
    const auto sp = plan.plan();
    const auto big_n = lot.get();
    if (discrete && !big_n) throw UsageError("--discrete needs --N");
    const auto v = !big_n ? admissible_binomial(sp, crit)
                          : discrete ? admissible_discrete(*big_n, sp, crit) : admissible_extended(*big_n, sp, crit);
    const std::string model = !big_n ? "binomial" : discrete ? "hyper-exact" : "hyper-ext";
    Records rec{{"n", "c", "N", "model", "admissible", "oc_a", "oc_b", "margin_a", "margin_b", "binding", "structural"}};
    rec.vertical = true;
    rec.add({I(sp.n()), I(sp.c()), big_n ? I(*big_n) : Cell(Unbounded{}), S(model), B(v.admissible), P(v.oc_at_a),
             P(v.oc_at_b), D(v.margin_a), D(v.margin_b), S(to_string(v.binding_point)), B(v.structural)});
    write_records(ctx.out, rec, ctx.g.output);
    if (v.structural) report_structural(ctx, *big_n, sp.c(), crit);
    return v.admissible ? kOk : kInadmissible;
  };
}

Command add_minimize(CLI::App& app) {
  auto* cmd = app.add_subcommand("minimize", "smallest admissible sample size for an acceptance number");
  auto s = std::make_shared<std::tuple<std::int64_t, LotArg, std::string>>();
  auto& [c, lot, model] = *s;
  model = "auto";
  cmd->add_option("--c", c, "acceptance number")->required();
  lot.add(cmd, false);
  cmd->add_option("--model", model, "auto | binomial | poisson | hyper-exact | hyper-ext");
  return [s](Context& ctx) {
    auto& [c, lot, model] = *s;
    const auto crit = ctx.g.criterion();
    const auto m = resolve_model(model, lot.get());
    SampleSearch found;
    switch (m.kind()) {
      case OcKind::Binomial: found = min_sample_binomial(c, crit, ctx.g.settings.n_ceiling); break;
      case OcKind::Poisson: found = min_sample_poisson(c, crit, ctx.g.settings.n_ceiling); break;
      case OcKind::HypergeometricExact: found = min_sample_discrete(*m.lot_size(), c, crit); break;
      case OcKind::HypergeometricExtended: found = min_sample_extended(*m.lot_size(), c, crit); break;
    }
    Cell alpha, beta;
    if (found.plan) {
      if (m.kind() == OcKind::HypergeometricExact) {
        const auto v = admissible_discrete(*m.lot_size(), *found.plan, crit);
        alpha = P(1.0 - v.oc_at_a);
        beta = P(v.oc_at_b);
      } else {
        alpha = P(1.0 - m.evaluate_continuous(crit.aql_quality(), *found.plan));
        beta = P(m.evaluate_continuous(crit.lq_quality(), *found.plan));
      }
    }
    Records rec{{"n", "c", "N", "model", "status", "alpha", "beta", "lot_bound"}};
    rec.vertical = true;
    rec.add({found.plan ? I(found.plan->n()) : Cell(), I(c), lot_cell(m), S(to_string(m.kind())),
             S(to_string(found.status)), alpha, beta, found.lot_bound ? I(*found.lot_bound) : Cell()});
    write_records(ctx.out, rec, ctx.g.output);
    switch (found.status) {
      case SearchStatus::Found: return kOk;
      case SearchStatus::FullInspectionOnly:
        ctx.err << "only inspection of the whole lot (n = N) satisfies the criterion\n";
        return kOk;
      case SearchStatus::StructurallyInadmissible:
        report_structural(ctx, *m.lot_size(), c, crit);
        return kInadmissible;
      case SearchStatus::NoSolution:
        ctx.err << "no admissible sample size\n";
        return kInadmissible;
    }
    return kInadmissible;
  };
}

const std::vector<std::string> kIntervalColumns = {"N_from",     "N_to",    "n",         "c",
                                                   "alpha_from", "alpha_to", "beta_from", "beta_to"};

std::vector<Cell> interval_cells(const IntervalTableRow& row) {
  const auto& iv = row.interval;
  return {I(iv.lot_from),       Upper(iv.lot_to),   I(iv.n),          I(iv.c),
          P(row.at_from.alpha), P(row.at_to.alpha), P(row.at_from.beta), P(row.at_to.beta)};
}

RiskSummary risk_for(const SamplingPlan& plan, std::optional<std::int64_t> lot, const TwoPointCriterion& crit) {
  return lot ? risk_summary(plan, OcModel::hypergeometric_extended(*lot), crit)
             : risk_summary(plan, OcModel::binomial(), crit);
}

Command add_interval(CLI::App& app) {
  auto* cmd = app.add_subcommand("interval", "lot sizes [N_a, N_b] for which a plan is admissible");
  auto plan = std::make_shared<PlanArgs>();
  plan->add(cmd);
  return [plan](Context& ctx) {
    const auto crit = ctx.g.criterion();
    const auto sp = plan->plan();
    const auto iv = lot_interval(sp, crit);
    if (!iv) {
      ctx.err << "no lot size admits " << to_string(sp) << "\n";
      return static_cast<int>(kInadmissible);
    }
    Records rec{kIntervalColumns};
    rec.add(interval_cells({*iv, risk_for(sp, iv->lot_from, crit), risk_for(sp, iv->lot_to, crit)}));
    write_records(ctx.out, rec, ctx.g.output);
    return static_cast<int>(kOk);
  };
}

Command add_risk(CLI::App& app) {
  auto* cmd = app.add_subcommand("risk", "producer's and consumer's risk and the quality levels q_a, q_b");
  auto s = std::make_shared<std::tuple<PlanArgs, LotArg, std::string>>();
  auto& [plan, lot, model] = *s;
  model = "auto";
  plan.add(cmd);
  lot.add(cmd, false);
  cmd->add_option("--model", model, "auto | binomial | poisson | hyper-exact | hyper-ext");
  return [s](Context& ctx) {
    auto& [plan, lot, model] = *s;
    const auto crit = ctx.g.criterion();
    const auto m = resolve_model(model, lot.get());
    const auto sp = plan.plan();
    const auto r = risk_summary(sp, m, crit);
    Records rec{{"n", "c", "N", "model", "alpha", "beta", "q_a", "q_b", "alpha_operational"}};
    rec.vertical = true;
    rec.add({I(sp.n()), I(sp.c()), lot_cell(m), S(to_string(m.kind())), P(r.alpha), P(r.beta), P(r.q_a), P(r.q_b),
             B(r.alpha_operational)});
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

Command add_table(CLI::App& app) {
  auto* cmd = app.add_subcommand("table", "lot-size intervals and risks for every sample size of one c");
  auto s = std::make_shared<std::pair<std::int64_t, LotArg>>();
  cmd->add_option("--c", s->first, "acceptance number")->required();
  s->second.opt = cmd->add_option("--n-max", s->second.N, "largest sample size (default: twice the binomial minimum)");
  return [s](Context& ctx) {
    Records rec{kIntervalColumns};
    for (const auto& row : interval_table(s->first, ctx.g.criterion(), s->second.get())) rec.add(interval_cells(row));
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

struct SchemeSource {
  std::string file;
  void add(CLI::App* cmd) { cmd->add_option("--scheme-file", file, "scheme data file replacing the built-in one"); }
  SchemeData load() const { return file.empty() ? builtin_scheme_data() : load_scheme_file(file); }
};

Command add_scheme(CLI::App& app) {
  auto* cmd = app.add_subcommand("scheme", "simplified sampling scheme, validated and with recomputed bounds");
  auto s = std::make_shared<std::pair<LotArg, SchemeSource>>();
  s->first.add(cmd, false);
  s->second.add(cmd);
  return [s](Context& ctx) {
    const auto data = s->second.load();
    const auto lot = s->first.get();
    if (lot && *lot < 1) throw UsageError("lot size must be positive");
    const auto rows = simplified_scheme(ctx.g.criterion(), data);
    Records rec{{"N_from", "N_to", "n", "c", "alpha_max", "beta_min", "stated_alpha_max", "stated_beta_min",
                 "alpha_operational", "canonical"}};
    for (const auto& row : rows) {
      if (lot && !row.covers(*lot)) continue;
      for (const auto& e : row.entries)
        rec.add({I(row.lot_from), Upper(row.lot_to), I(e.plan.n()), I(e.plan.c()), P(e.alpha_max), P(e.beta_min),
                 P(e.stated_alpha_max), P(e.stated_beta_min), B(row.alpha_operational), B(row.canonical)});
    }
    if (lot && rec.rows.empty()) {
      ctx.err << "no scheme row covers N=" << *lot << "; see 'recommend' for small lots\n";
      return static_cast<int>(kInadmissible);
    }
    write_records(ctx.out, rec, ctx.g.output);
    return static_cast<int>(kOk);
  };
}

struct CountArgs {
  std::int64_t M = 0;
  LotArg lot;
  PlanArgs plan;
  void add(CLI::App* cmd) {
    cmd->add_option("--M", M, "defective items in the lot")->required();
    lot.add(cmd, true);
    plan.add(cmd);
  }
};

Command add_simulate(CLI::App& app) {
  auto* cmd = app.add_subcommand("simulate", "Monte Carlo acceptance rate of drawing without replacement");
  struct Args {
    CountArgs counts;
    std::int64_t trials = 100'000;
    std::uint64_t seed = 1;
    unsigned workers = 1;
  };
  auto a = std::make_shared<Args>();
  a->counts.add(cmd);
  cmd->add_option("--trials", a->trials, "number of simulated samples")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", a->seed, "master seed");
  cmd->add_option("--workers", a->workers, "worker threads (does not change results)")->check(CLI::Range(1, 16));
  return [a](Context& ctx) {
    const auto& k = a->counts;
    const auto sp = k.plan.plan();
    const auto sim = oracle::monte_carlo_oc(k.M, k.lot.N, sp, a->trials, a->seed, a->workers);
    Cell exact, z;
    if (k.lot.N <= oracle::kRationalLotLimit) {
      const double value = oracle::hypergeom_oc_rational(k.M, k.lot.N, sp).to_double();
      exact = P(value);
      if (sim.std_error > 0) z = D((sim.estimate - value) / sim.std_error);
    }
    Records rec{{"M", "N", "n", "c", "trials", "acceptances", "estimate", "std_error", "seed", "rng", "exact", "z"}};
    rec.vertical = true;
    rec.add({I(k.M), I(k.lot.N), I(sp.n()), I(sp.c()), I(sim.trials), I(sim.acceptances), P(sim.estimate),
             D(sim.std_error), S(std::to_string(sim.seed)), S(sim.rng), exact, z});
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

Command add_exact(CLI::App& app) {
  auto* cmd = app.add_subcommand("exact", "exact rational hypergeometric OC");
  auto k = std::make_shared<CountArgs>();
  k->add(cmd);
  return [k](Context& ctx) {
    const auto sp = k->plan.plan();
    const auto exact = oracle::hypergeom_oc_rational(k->M, k->lot.N, sp);
    const double value = exact.to_double();
    const double floating = hypergeom_oc_exact(k->M, k->lot.N, sp);
    Records rec{{"M", "N", "n", "c", "numerator", "denominator", "value", "floating", "relative_difference"}};
    rec.vertical = true;
    rec.add({I(k->M), I(k->lot.N), I(sp.n()), I(sp.c()), S(exact.numerator.str()), S(exact.denominator.str()),
             P(value), P(floating), D(value == 0.0 ? std::fabs(floating) : std::fabs(floating - value) / value)});
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

Command add_audit(CLI::App& app) {
  auto* cmd = app.add_subcommand("audit", "re-check an extended verdict at 50-digit precision");
  auto s = std::make_shared<std::pair<PlanArgs, LotArg>>();
  s->first.add(cmd);
  s->second.add(cmd, true);
  return [s](Context& ctx) {
    const auto sp = s->first.plan();
    const auto crit = ctx.g.criterion();
    const auto a = oracle::audit_extended(s->second.N, sp, crit);
    const auto digits = [](const oracle::HighFloat& x) { return x.str(30, std::ios_base::scientific); };
    Records rec{{"N", "n", "c", "oc_a", "oc_b", "admissible", "structural", "agrees"}};
    rec.vertical = true;
    rec.add({I(s->second.N), I(sp.n()), I(sp.c()), S(digits(a.oc_at_a)), S(digits(a.oc_at_b)), B(a.admissible),
             B(a.structural), B(a.agrees)});
    write_records(ctx.out, rec, ctx.g.output);
    if (!a.agrees) {
      ctx.err << "double-precision verdict differs from the high-precision one\n";
      return static_cast<int>(kNumerical);
    }
    return static_cast<int>(a.admissible ? kOk : kInadmissible);
  };
}

Command add_recommend(CLI::App& app) {
  auto* cmd = app.add_subcommand("recommend", "suggest a plan for a lot size (heuristic, not normative)");
  auto s = std::make_shared<std::tuple<LotArg, std::string, SchemeSource>>();
  auto& [lot, prefer, source] = *s;
  prefer = "min-sample";
  lot.add(cmd, true);
  cmd->add_option("--prefer", prefer, "min-sample | min-producer-risk")
      ->check(CLI::IsMember({"min-sample", "min-producer-risk"}));
  source.add(cmd);
  return [s](Context& ctx) {
    auto& [lot, prefer, source] = *s;
    const auto crit = ctx.g.criterion();
    const auto data = source.load();
    const auto r = recommend_plan(lot.N, *parse_preference(prefer), crit, data);
    const auto risk = risk_summary(r.plan, OcModel::hypergeometric_extended(lot.N), crit);
    Records rec{{"N", "n", "c", "full_inspection", "basis", "normative", "alpha", "beta"}};
    rec.vertical = true;
    rec.add({I(lot.N), I(r.plan.n()), I(r.plan.c()), B(r.full_inspection), S(r.basis), B(r.normative), P(risk.alpha),
             P(risk.beta)});
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

Command add_compare(CLI::App& app) {
  auto* cmd = app.add_subcommand("compare", "scheme plans next to the ISO 2859-1 reference plan for a lot size");
  auto s = std::make_shared<std::pair<LotArg, SchemeSource>>();
  s->first.add(cmd, true);
  s->second.add(cmd);
  return [s](Context& ctx) {
    const auto data = s->second.load();
    const auto record = compare(s->first.N, ctx.g.criterion(), data);
    Records rec{{"N", "source", "n", "c", "alpha", "beta", "q_a", "q_b"}};
    const auto add = [&](const ComparedPlan& p) {
      rec.add({I(record.lot_size), S(p.basis), I(p.plan.n()), I(p.plan.c()), P(p.risk.alpha), P(p.risk.beta),
               P(p.risk.q_a), P(p.risk.q_b)});
    };
    for (const auto& p : record.scheme) add(p);
    if (record.iso) add(*record.iso);
    write_records(ctx.out, rec, ctx.g.output);
    return kOk;
  };
}

}  // namespace

Settings parse_config(std::string_view text, Settings base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    const auto bad = [&] { return ConfigError("config line " + std::to_string(line_no) + ": bad value for " + key); };
    if (key == "n_ceiling") {
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc{} || ptr != value.data() + value.size() || v < 1) throw bad();
      base.n_ceiling = v;
      continue;
    }
    double* slot = key == "p_a" ? &base.p_a : key == "P_a" ? &base.P_a : key == "p_b" ? &base.p_b
                 : key == "P_b" ? &base.P_b : nullptr;
    if (!slot) throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) throw bad();
    *slot = v;
  }
  return base;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attribute single-sampling plans under a two-point AQL/LQ criterion", "samplan"};
  app.require_subcommand(1);
  Globals g;
  g.opt_pa = app.add_option("--pa", g.p_a, "AQL quality level p_a (fraction)");
  g.opt_Pa = app.add_option("--Pa", g.P_a, "acceptance bound P_a at p_a");
  g.opt_pb = app.add_option("--pb", g.p_b, "LQ quality level p_b (fraction)");
  g.opt_Pb = app.add_option("--Pb", g.P_b, "acceptance bound P_b at p_b");
  g.opt_ceiling = app.add_option("--n-ceiling", g.n_ceiling, "largest sample size tried for infinite lots");
  app.add_option("--config", g.config, "key = value file (p_a, P_a, p_b, P_b, n_ceiling)");
  app.add_option("--format", g.format, "table | csv | json")->check(CLI::IsMember({"table", "csv", "json"}));

  std::map<std::string, Command> commands;
  commands["oc"] = add_oc(app);
  commands["check"] = add_check(app);
  commands["minimize"] = add_minimize(app);
  commands["interval"] = add_interval(app);
  commands["risk"] = add_risk(app);
  commands["table"] = add_table(app);
  commands["scheme"] = add_scheme(app);
  commands["simulate"] = add_simulate(app);
  commands["exact"] = add_exact(app);
  commands["audit"] = add_audit(app);
  commands["recommend"] = add_recommend(app);
  commands["compare"] = add_compare(app);
  // Global options are accepted after the subcommand name too.
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context ctx{g, out, err};
  try {
    g.resolve();
    for (auto& [name, command] : commands)
      if (app.got_subcommand(name)) return command(ctx);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const SchemeError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kUsage;
}

}  // namespace samplan::cli
