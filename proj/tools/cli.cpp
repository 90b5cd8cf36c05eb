// Copyright 2026 The uicheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "uicheck/errors.hpp"
#include "uicheck/expr.hpp"
#include "uicheck/family.hpp"
#include "uicheck/model_file.hpp"
#include "uicheck/poussin.hpp"
#include "uicheck/sublinear.hpp"

namespace uic::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20170601;
constexpr std::uint64_t kDefaultPluginAxiomIndices = 32;
constexpr std::uint64_t kMaxAutoSandwichM = 128;

struct RunConfig {
  std::string command;
  std::string model;
  std::string plugin;
  std::string family;
  std::string levels;
  std::string criterion = "ui";
  std::uint64_t horizon = Horizons{}.atoms;
  std::uint64_t series_horizon = Horizons{}.series;
  int k = kDefaultPhiCount;
  std::string thresholds;
  double eps_stop = 1e-6;
  std::uint64_t search_cap = kDefaultSearchCap;
  std::size_t trials = 500;
  std::optional<std::uint64_t> n_max;
  std::uint64_t m = 0;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;

  Horizons horizons() const { return {horizon, series_horizon}; }
};

// Thrown for problems with the command line or the model input.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Syntax:
    case ErrorKind::UnknownFunction:
    case ErrorKind::Arity:
    case ErrorKind::JsonSyntax:
    case ErrorKind::Schema:
    case ErrorKind::UnresolvedName:
    case ErrorKind::DuplicateName:
    case ErrorKind::UnknownPlugin:
    case ErrorKind::Io: return true;
    default: return false;
  }
}

double parse_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::InvalidArgument, "bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::vector<std::uint64_t> integer_levels(std::span<const double> levels, std::string_view criterion) {
  std::vector<std::uint64_t> out;
  for (double a : levels) {
    if (std::floor(a) != a) {
      throw Error(ErrorKind::InvalidArgument,
                  std::string(criterion) + " needs integer levels, got " + format_double(a));
    }
    out.push_back(static_cast<std::uint64_t>(a));
  }
  return out;
}

std::string horizon_text(const EvalResult& r) {
  return r.horizon_used ? std::to_string(*r.horizon_used) : std::string();
}

// Everything a command needs from the loaded model.
struct Loaded {
  ModelFile model;
  std::string family_name;
  const Family* family = nullptr;

  std::string member_name(std::size_t i) const {
    const RandomVariable& x = family->members()[i];
    for (const auto& v : model.variables) {
      if (v.variable.same_as(x)) return v.name;
    }
    return "#" + std::to_string(i);
  }
};

Loaded load(const RunConfig& cfg) {
  if (cfg.model.empty() == cfg.plugin.empty()) throw UsageError("give exactly one of --model and --plugin");
  Loaded l;
  try {
    l.model = cfg.plugin.empty() ? load_model(cfg.model) : plugin_model(cfg.plugin, cfg.n_max.value_or(1000000));
    l.family = &l.model.family(cfg.family);
  } catch (const Error& e) {
    throw UsageError("[" + std::string(to_string(e.kind())) + "] " + e.what());
  }
  l.family_name = cfg.family.empty() ? l.model.families.front().name : cfg.family;
  return l;
}

std::vector<double> levels_of(const RunConfig& cfg) {
  return cfg.levels.empty() ? default_level_grid() : parse_level_grid(cfg.levels);
}

std::uint64_t seed_of(const RunConfig& cfg, const Loaded& l) {
  return cfg.seed.value_or(l.model.seed.value_or(kDefaultSeed));
}

bool csv_format(const RunConfig& cfg, bool default_csv) {
  if (cfg.format.empty()) return default_csv;
  return cfg.format == "csv";
}

// Left-aligned text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void print(std::ostream& os, std::string_view indent = "  ") const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_) {
      width.resize(std::max(width.size(), r.size()));
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows_) {
      std::string line(indent);
      for (std::size_t i = 0; i < r.size(); ++i) {
        line += r[i];
        if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
      }
      line.erase(line.find_last_not_of(' ') + 1);
      os << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void profile_csv(std::ostream& os, const Profile& p, bool with_criterion) {
  for (const auto& pt : p.points) {
    if (with_criterion) os << to_string(p.criterion) << ',';
    os << format_double(pt.level) << ',' << format_double(pt.result.value) << ',' << to_string(pt.result.certificate)
       << ',' << horizon_text(pt.result) << '\n';
  }
}

void profile_text(std::ostream& os, const Profile& p) {
  os << to_string(p.criterion) << " profile (" << (p.direction == Direction::Sup ? "sup" : "inf") << ")\n";
  Table t({"level", "value", "upper", "certificate", "horizon"});
  for (const auto& pt : p.points) {
    const double up = pt.result.upper();
    t.add({format_double(pt.level), format_double(pt.result.value), std::isinf(up) ? "inf" : format_double(up),
           std::string(to_string(pt.result.certificate)), horizon_text(pt.result)});
  }
  t.print(os);
}

Profile compute_profile(const Family& f, Criterion c, std::span<const double> levels, const Horizons& h) {
  switch (c) {
    case Criterion::UI: return ui_profile(f, levels, h);
    case Criterion::W_UI: return wui_profile(f, levels, h);
    case Criterion::UNI: return uni_profile(f, levels, h);
    case Criterion::W_UNI: return wuni_profile(f, levels, h);
    case Criterion::WSTAR_UI: return wstar_ui_profile(f, integer_levels(levels, "wsui"), h);
    case Criterion::S_UI: return sle_sui_profile(f, integer_levels(levels, "sui"), h);
    case Criterion::WSTAR_UNI: return wstar_uni_profile(f, integer_levels(levels, "wsuni"), h);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown criterion");
}

int cmd_profile(const RunConfig& cfg, std::ostream& os) {
  const auto c = parse_criterion(cfg.criterion);
  if (!c) throw UsageError("unknown criterion '" + cfg.criterion + "' (ui, wui, wsui, uni, wuni, wsuni, sui)");
  const auto levels = levels_of(cfg);
  const Loaded l = load(cfg);
  const Profile p = compute_profile(*l.family, *c, levels, cfg.horizons());
  if (csv_format(cfg, true)) {
    os << "level,value,certificate,horizon\n";
    profile_csv(os, p, false);
  } else {
    os << "family " << l.family_name << " under " << l.family->context().describe() << '\n';
    profile_text(os, p);
  }
  return kPass;
}

std::uint64_t auto_sandwich_m(const Loaded& l, const RunConfig& cfg) {
  if (cfg.m > 0) return cfg.m;
  if (!l.family->context().space().is_finite()) return 16;
  double top = 0.0;
  for (const auto& x : l.family->members()) top = std::max(top, x.max_abs().value_or(0.0));
  return std::min<std::uint64_t>(kMaxAutoSandwichM, static_cast<std::uint64_t>(std::ceil(top)) + 1);
}

struct SandwichRun {
  std::vector<std::vector<std::string>> rows;
  std::size_t checked = 0;
  std::string violation;
};

SandwichRun run_sandwich(const Loaded& l, std::uint64_t m_max, const Horizons& h) {
  SandwichRun run;
  const Family& f = *l.family;
  for (std::size_t i = 0; i < f.members().size(); ++i) {
    for (std::uint64_t m = 1; m <= m_max; ++m) {
      try {
        const SandwichResult s = sandwich_bounds(f.members()[i], f.context(), m, h);
        run.rows.push_back({l.member_name(i), std::to_string(m), format_double(s.lo.value),
                            format_double(s.mid.value), std::string(to_string(s.mid.certificate)),
                            format_double(s.hi.value), s.upper_checked ? "yes" : "no"});
        ++run.checked;
      } catch (const SandwichViolation& e) {
        if (run.violation.empty()) run.violation = l.member_name(i) + ": " + e.what();
        run.rows.push_back({l.member_name(i), std::to_string(m), format_double(e.lo()), format_double(e.mid()),
                            "violation", format_double(e.hi()), "yes"});
      }
    }
  }
  return run;
}

int cmd_sandwich(const RunConfig& cfg, std::ostream& os) {
  const Loaded l = load(cfg);
  const SandwichRun run = run_sandwich(l, auto_sandwich_m(l, cfg), cfg.horizons());
  if (csv_format(cfg, true)) {
    os << "member,m,excess_m,tail_sum,certificate,excess_m_minus_1,upper_checked\n";
    for (const auto& r : run.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << '\n';
    }
  } else {
    os << "sandwich E[(|X|-m)^+] <= sum_{n>=m} E[1{|X|>n}] <= E[(|X|-m+1)^+]\n";
    Table t({"member", "m", "excess(m)", "tail_sum(m)", "certificate", "excess(m-1)", "upper_checked"});
    for (const auto& r : run.rows) t.add(r);
    t.print(os);
    os << (run.violation.empty() ? "no violations" : "VIOLATION " + run.violation) << '\n';
  }
  if (!run.violation.empty()) throw Error(ErrorKind::SandwichViolation, run.violation);
  return kPass;
}

int cmd_diagnose(const RunConfig& cfg, std::ostream& os) {
  const auto levels = levels_of(cfg);
  const Loaded l = load(cfg);
  const Family& f = *l.family;

  DiagnoseConfig dc;
  dc.levels = levels;
  dc.horizons = cfg.horizons();
  dc.eps_stop = cfg.eps_stop;
  const DiagnosticsReport report = diagnose(f, dc);

  os << "model: " << (l.model.title.empty() ? "(untitled)" : l.model.title) << '\n';
  os << "family: " << l.family_name << ", " << f.members().size() << " member(s) under "
     << f.context().describe() << '\n';
  os << "eps_stop: " << format_double(cfg.eps_stop) << '\n';
  for (const auto& p : report.profiles) {
    os << '\n';
    profile_text(os, p);
  }

  os << "\nchecks\n";
  bool checks_ok = true;
  Table checks({"status", "check", "evaluated", "worst_slack", "detail"});
  for (const auto& c : report.checks) {
    checks_ok = checks_ok && c.passed;
    checks.add({c.passed ? "ok" : "FAIL", c.name, std::to_string(c.evaluated), format_double(c.worst_slack),
                c.detail});
  }

  if (f.context().space().is_finite()) {
    const SandwichRun run = run_sandwich(l, auto_sandwich_m(l, cfg), cfg.horizons());
    checks_ok = checks_ok && run.violation.empty();
    checks.add({run.violation.empty() ? "ok" : "FAIL", "sandwich per member, m = 1.." +
                std::to_string(auto_sandwich_m(l, cfg)), std::to_string(run.checked), "", run.violation});
  }
  checks.print(os);

  if (f.context().space().is_finite()) {
    const std::vector<double> eps{0.5, 0.1, 0.01};
    const Thm31Report t = check_thm31(f, eps, 4096, seed_of(cfg, l));
    os << "\ntwo-condition characterization (" << (t.exhaustive ? "exhaustive" : "heuristic") << ", "
       << t.events_examined << " events)\n";
    os << "  (i) sup E|X| = " << format_double(t.sup_mean) << '\n';
    Table tt({"eps", "delta", "worst_event_prob"});
    for (const auto& c : t.conditions) {
      tt.add({format_double(c.eps), c.delta ? format_double(*c.delta) : "none", format_double(c.worst_event_prob)});
    }
    os << "  (ii)\n";
    tt.print(os, "    ");
    if (!t.note.empty()) os << "  note: " << t.note << '\n';
  }

  os << "\nverdicts\n";
  Table v({"criterion", "verdict", "reason"});
  bool any_fail = false, any_inconclusive = false;
  for (const auto& cv : report.verdicts) {
    v.add({std::string(to_string(cv.criterion)), std::string(to_string(cv.verdict)), cv.reason});
    any_fail = any_fail || cv.verdict == Verdict::Fail;
    any_inconclusive = any_inconclusive || cv.verdict == Verdict::Inconclusive;
  }
  v.print(os);

  if (csv_format(cfg, false)) {
    os << "\ncriterion,level,value,certificate,horizon\n";
    for (const auto& p : report.profiles) profile_csv(os, p, true);
  }
  if (!checks_ok) throw Error(ErrorKind::InconsistentProfiles, "a consistency check failed");
  if (any_fail) return kFail;
  return any_inconclusive ? kInconclusive : kPass;
}

std::vector<std::uint64_t> parse_thresholds(std::string_view s) {
  std::vector<std::uint64_t> out;
  std::string_view body = s;
  if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  for (auto part : split(body, ',')) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw Error(ErrorKind::InvalidArgument, "bad threshold '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string threshold_list(const PhiFunction& phi) {
  std::string s = "[";
  for (std::size_t i = 0; i < phi.count(); ++i) s += (i ? "," : "") + std::to_string(phi.thresholds()[i]);
  return s + "]";
}

int cmd_phi(const RunConfig& cfg, std::ostream& os) {
  if (cfg.k < 1) throw UsageError("--k must be at least 1");
  const auto levels = levels_of(cfg);
  const Loaded l = load(cfg);
  const Family& f = *l.family;
  const Horizons h = cfg.horizons();

  const bool searched = cfg.thresholds.empty();
  const PhiFunction phi =
      searched ? find_thresholds(f, cfg.k, cfg.search_cap, h) : PhiFunction(parse_thresholds(cfg.thresholds));
  const PhiVerification v = verify_phi(f, phi, searched ? PhiProvenance::Searched : PhiProvenance::External, h);
  const SufficiencyReport w = check_sufficiency_witness(f, phi, levels, h);
  const std::string minimal = searched ? (thresholds_minimal(f, phi, h) ? "yes" : "no") : "n/a";

  if (csv_format(cfg, false)) {
    os << "quantity,value\n";
    os << "thresholds,\"" << threshold_list(phi) << "\"\n";
    os << "budget," << format_double(v.budget) << '\n';
    os << "sup_phi," << format_double(v.sup_phi) << '\n';
    os << "minimal," << minimal << '\n';
    os << "subadditivity_slack," << format_double(v.subadditivity_slack) << '\n';
    os << "\nk,threshold,excess,bound\n";
    for (std::size_t i = 0; i < v.terms.size(); ++i) {
      os << i + 1 << ',' << v.terms[i].threshold << ',' << format_double(v.terms[i].value) << ','
         << format_double(v.terms[i].budget) << '\n';
    }
    os << "\nn,phi_over_n\n";
    for (const auto& g : v.growth) os << g.n << ',' << format_double(g.ratio) << '\n';
    os << "\nlevel,ui,bound\n";
    for (const auto& r : w.rows) os << format_double(r.level) << ',' << format_double(r.ui) << ',' << format_double(r.bound) << '\n';
    return kPass;
  }

  os << "thresholds: " << threshold_list(phi) << (searched ? "" : " (given)") << '\n';
  os << "budget: " << format_double(v.budget) << (v.budget_checked ? "" : " (not asserted)") << '\n';
  os << "sup E[phi(|X|)]: " << format_double(v.sup_phi) << '\n';
  os << "minimal: " << minimal << '\n';
  os << "subadditivity slack: " << format_double(v.subadditivity_slack) << '\n';
  os << "\nterms\n";
  Table terms({"k", "n_k", "sup E[(|X|-n_k)^+]", "2^-k"});
  for (std::size_t i = 0; i < v.terms.size(); ++i) {
    terms.add({std::to_string(i + 1), std::to_string(v.terms[i].threshold), format_double(v.terms[i].value),
               format_double(v.terms[i].budget)});
  }
  terms.print(os);
  os << "\ngrowth phi(n)/n (" << (v.growth_nondecreasing ? "nondecreasing" : "NOT nondecreasing") << ")\n";
  Table growth({"n", "phi(n)/n"});
  for (const auto& g : v.growth) growth.add({std::to_string(g.n), format_double(g.ratio)});
  growth.print(os);
  os << "\nui profile against sup E[phi(|X|)] c(a) / phi(a)";
  if (w.skipped > 0) os << " (" << w.skipped << " level(s) with phi(a) = 0 skipped)";
  os << '\n';
  Table wt({"level", "ui", "bound"});
  for (const auto& r : w.rows) wt.add({format_double(r.level), format_double(r.ui), format_double(r.bound)});
  wt.print(os);
  return kPass;
}

// Puts finitely supported measures on the finite space {0, ..., max atom}.
std::vector<Measure> project_to_finite(const std::vector<Measure>& ms) {
  std::uint64_t top = 0;
  for (const auto& m : ms) {
    if (!m.has_finite_support()) {
      throw Error(ErrorKind::InvalidArgument, "axiom check needs finitely supported measures");
    }
    if (!m.atoms().empty()) top = std::max(top, m.atoms().back());
  }
  std::vector<Measure> out;
  const AtomSpace space = AtomSpace::finite(top + 1);
  for (const auto& m : ms) {
    std::vector<std::pair<std::uint64_t, double>> atoms;
    for (std::size_t i = 0; i < m.atoms().size(); ++i) atoms.emplace_back(m.atoms()[i], m.weights()[i]);
    out.push_back(Measure::sparse(space, std::move(atoms), m.normalization_tol()));
  }
  return out;
}

int cmd_axioms(const RunConfig& cfg, std::ostream& os) {
  if (cfg.trials < 1) throw UsageError("--trials must be at least 1");
  const Loaded l = load(cfg);
  const ExpectationOperator& ctx = l.family->context();
  std::shared_ptr<const ExpectationOperator> target = l.family->context_ptr();
  std::string what = ctx.describe();

  if (!ctx.space().is_finite()) {
    const auto* sub = dynamic_cast<const SublinearExpectation*>(&ctx);
    if (sub == nullptr || sub->measure_set().variant() == MeasureSet::Variant::Explicit) {
      throw Error(ErrorKind::InvalidArgument, "axioms need a finite space or an indexed measure set");
    }
    const MeasureSet& s = sub->measure_set();
    const std::uint64_t last_allowed = s.variant() == MeasureSet::Variant::ClosedForm ? s.plugin()->max_index()
                                                                                       : s.strategy().k_max;
    const std::uint64_t count = std::max<std::uint64_t>(1, cfg.n_max.value_or(kDefaultPluginAxiomIndices));
    const std::uint64_t last = std::min(last_allowed, s.first_index() + count - 1);
    std::vector<Measure> ms;
    for (std::uint64_t k = s.first_index(); k <= last; ++k) ms.push_back(s.measure_at(k));
    target = std::make_shared<const SublinearExpectation>(MeasureSet::explicit_set(project_to_finite(ms)));
    what = "indices " + std::to_string(s.first_index()) + ".." + std::to_string(last) + " of " + what;
  }

  const AxiomReport r = check_axioms(*target, cfg.trials, seed_of(cfg, l), 1e-12, false);
  if (csv_format(cfg, false)) {
    os << "axiom,worst,tol\n";
    os << "monotonicity," << format_double(r.monotonicity) << ',' << format_double(r.tol) << '\n';
    os << "constant," << format_double(r.constant) << ',' << format_double(r.tol) << '\n';
    os << "subadditivity," << format_double(r.subadditivity) << ',' << format_double(r.tol) << '\n';
    os << "homogeneity," << format_double(r.homogeneity) << ',' << format_double(r.tol) << '\n';
  } else {
    os << "axioms of " << what << ", " << r.trials << " trials, seed " << seed_of(cfg, l) << '\n';
    Table t({"axiom", "worst", "tol"});
    t.add({"monotonicity", format_double(r.monotonicity), format_double(r.tol)});
    t.add({"constant", format_double(r.constant), format_double(r.tol)});
    t.add({"subadditivity", format_double(r.subadditivity), format_double(r.tol)});
    t.add({"homogeneity", format_double(r.homogeneity), format_double(r.tol)});
    t.print(os);
    os << "violations: " << r.violations << '\n';
  }
  if (!r.ok()) throw Error(ErrorKind::AxiomViolation, r.witness);
  return kPass;
}

void add_shared(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--model", cfg.model, "Model file (JSON)");
  sub->add_option("--plugin", cfg.plugin, "Built-in model name (remark-counterexample)");
  sub->add_option("--family", cfg.family, "Family name (default: first in the model)");
  sub->add_option("--levels", cfg.levels, "Level grid start:stop:count[:log|lin] or a,b,c");
  sub->add_option("--horizon", cfg.horizon, "Last atom index summed for countable models");
  sub->add_option("--series-horizon", cfg.series_horizon, "Last n in tail sums");
  sub->add_option("--eps-stop", cfg.eps_stop, "Empirical pass threshold");
  sub->add_option("--n-max", cfg.n_max, "Largest materialized index of a plugin model");
  sub->add_option("--out", cfg.out, "Write output to this file");
  sub->add_option("--seed", cfg.seed, "Seed for randomized checks");
  sub->add_option("--format", cfg.format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
}

int dispatch(const RunConfig& cfg, std::ostream& os) {
  if (cfg.command == "profile") return cmd_profile(cfg, os);
  if (cfg.command == "diagnose") return cmd_diagnose(cfg, os);
  if (cfg.command == "phi") return cmd_phi(cfg, os);
  if (cfg.command == "axioms") return cmd_axioms(cfg, os);
  return cmd_sandwich(cfg, os);
}

}  // namespace

std::vector<double> parse_level_grid(std::string_view spec) {
  if (spec.empty()) throw Error(ErrorKind::InvalidArgument, "empty level grid");
  std::vector<double> grid;
  if (spec.find(':') == std::string_view::npos) {
    for (auto part : split(spec, ',')) grid.push_back(parse_number(part, "level"));
  } else {
    const auto parts = split(spec, ':');
    if (parts.size() < 3 || parts.size() > 4) {
      throw Error(ErrorKind::InvalidArgument, "grid must be start:stop:count[:log|lin]");
    }
    const double start = parse_number(parts[0], "grid start");
    const double stop = parse_number(parts[1], "grid stop");
    std::uint64_t count = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size() || count < 1) {
      throw Error(ErrorKind::InvalidArgument, "grid count must be a positive integer");
    }
    const std::string_view mode = parts.size() == 4 ? parts[3] : "lin";
    if (mode != "lin" && mode != "log") throw Error(ErrorKind::InvalidArgument, "grid mode must be log or lin");
    if (count == 1) {
      if (start != stop) throw Error(ErrorKind::InvalidArgument, "a one-point grid needs start == stop");
      grid.push_back(start);
    } else if (mode == "lin") {
      for (std::uint64_t i = 0; i < count; ++i) {
        grid.push_back(i + 1 == count ? stop : start + (stop - start) * static_cast<double>(i) /
                                                           static_cast<double>(count - 1));
      }
    } else {
      if (!(start > 0.0)) throw Error(ErrorKind::InvalidArgument, "log grid needs start > 0");
      const double l0 = std::log(start), l1 = std::log(stop);
      for (std::uint64_t i = 0; i < count; ++i) {
        double x = i == 0 ? start
                   : i + 1 == count
                       ? stop
                       : std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(count - 1));
        const double r = std::round(x);
        if (std::fabs(x - r) <= 1e-9 * std::max(1.0, std::fabs(x))) x = r;
        grid.push_back(x);
      }
    }
  }
  check_levels(grid);
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Uniform integrability diagnostics for discrete and sublinear models", "uicheck"};
  app.require_subcommand(1, 1);

  auto* profile = app.add_subcommand("profile", "Tabulate one criterion profile over a level grid");
  add_shared(profile, cfg);
  profile->add_option("--criterion", cfg.criterion, "ui, wui, wsui, uni, wuni, wsuni or sui");

  auto* diag = app.add_subcommand("diagnose", "Profiles, cross-checks and verdicts");
  add_shared(diag, cfg);

  auto* phi = app.add_subcommand("phi", "Construct and verify the de La Vallee Poussin function");
  add_shared(phi, cfg);
  phi->add_option("--k", cfg.k, "Number of thresholds");
  phi->add_option("--search-cap", cfg.search_cap, "Largest threshold searched");
  phi->add_option("--thresholds", cfg.thresholds, "Verify these thresholds instead of searching");

  auto* axioms = app.add_subcommand("axioms", "Randomized check of the sublinear expectation axioms");
  add_shared(axioms, cfg);
  axioms->add_option("--trials", cfg.trials, "Number of random trials");

  auto* sandwich = app.add_subcommand("sandwich", "Tail-sum sandwich per member and m");
  add_shared(sandwich, cfg);
  sandwich->add_option("--m", cfg.m, "Largest m (default: from the model)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  int code = kPass;
  try {
    code = dispatch(cfg, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const SearchCapExceeded& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    code = kFail;
  } catch (const Error& e) {
    err << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
    if (is_input_error(e.kind())) return kUsage;
    code = kFail;
  }

  if (cfg.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace uic::cli
