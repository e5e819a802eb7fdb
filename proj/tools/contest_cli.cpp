// Copyright 2026 The Multibattle Authors
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

// Command line front end.  Exit codes: 0 success (and "confirmed" for
// verify), 2 invalid configuration or input, 3 candidate refuted,
// 4 verification undetermined.  Output is deterministic: numbers are
// rounded to 9 significant digits and repeated runs produce identical
// bytes.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "multibattle/design.hpp"
#include "multibattle/equilibrium.hpp"
#include "multibattle/parallel.hpp"
#include "multibattle/params.hpp"
#include "multibattle/prize_rule.hpp"
#include "multibattle/simulate.hpp"
#include "multibattle/verification.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace multibattle;

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitRefuted = 3;
constexpr int kExitUndetermined = 4;

// Round to 9 significant digits so that emitted numbers are stable and
// re-parse to the printed value.
double sig9(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return std::strtod(buf, nullptr);
}

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

json jnum(double x) {
  if (std::isnan(x)) return nullptr;
  return sig9(x);
}

json jvec(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(jnum(x));
  return arr;
}

struct CliState {
  int n = 1;
  double r = 1.0;
  double cost_a = 1.0;
  double cost_b = 1.0;
  double pb_for_ratio = -1.0;
  std::string rule_spec = "majority";
  double p = -1.0;  // design probability override, unset when negative
  std::string out;
  std::string format = "json";
  std::string exec = "parallel";
  std::string player = "B";
  int points = 2001;
  double min_mult = 1e-4;
  double max_mult = 1e4;
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  bool brute_force = false;
  std::string grid = "0,0.25,0.5,0.75,1";
  bool table1 = false;
  bool threshold = false;
  std::string n_list = "3,5,7,9,11,21,31,51,101";
  double p_min = 0.5;
  double p_max = 0.99;
  int steps = 50;
};

ContestParams make_params(const CliState& s) {
  ContestParams params{s.n, s.r, s.cost_a, s.cost_b};
  if (s.pb_for_ratio >= 0.0) {
    params.cost_b =
        params.cost_a * cost_ratio_for_weak_prob(s.r, s.pb_for_ratio);
  }
  require_valid(params);
  return params;
}

PrizeRule make_rule(const CliState& s, int n) {
  PrizeRule rule;
  if (s.rule_spec == "majority") {
    rule = majority_rule(n);
  } else if (s.rule_spec.rfind("tie:", 0) == 0) {
    size_t used = 0;
    const std::string arg = s.rule_spec.substr(4);
    int t = 0;
    try {
      t = std::stoi(arg, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad tie threshold: " + arg);
    }
    if (used != arg.size()) {
      throw std::invalid_argument("bad tie threshold: " + arg);
    }
    rule = tie_margin_rule(n, t);
  } else if (s.rule_spec.rfind("file:", 0) == 0) {
    rule = load_rule_file(s.rule_spec.substr(5));
  } else {
    throw std::invalid_argument(
        "rule must be 'majority', 'tie:T' or 'file:PATH', got " + s.rule_spec);
  }
  if (rule.battles() != n) {
    throw std::invalid_argument("rule covers " +
                                std::to_string(rule.battles()) +
                                " battles but --n is " + std::to_string(n));
  }
  return rule;
}

Exec make_exec(const CliState& s) {
  return s.exec == "serial" ? Exec::serial : Exec::parallel;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) {
      throw std::invalid_argument("bad number in list: " + item);
    }
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
  return out;
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << content;
  if (!f) throw std::runtime_error("cannot write output file: " + out_path);
}

json params_json(const ContestParams& params) {
  return json{{"n", params.n},
              {"r", jnum(params.r)},
              {"cost_a", jnum(params.cost_a)},
              {"cost_b", jnum(params.cost_b)}};
}

json solution_json(const EquilibriumSolution& sol) {
  return json{{"p_a", jnum(sol.p_a)},
              {"p_b", jnum(sol.p_b)},
              {"x_a", jnum(sol.x_a)},
              {"x_b", jnum(sol.x_b)},
              {"spread", jnum(sol.spread)},
              {"payoff_a", jnum(sol.payoff_a)},
              {"payoff_b", jnum(sol.payoff_b)},
              {"total_effort", jnum(sol.total_effort)}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

int run_solve(const CliState& s) {
  const ContestParams params = make_params(s);
  const PrizeRule rule = make_rule(s, params.n);
  const EquilibriumSolution sol = candidate_equilibrium(params, rule);
  if (s.format == "csv") {
    std::string text =
        "p_a,p_b,x_a,x_b,spread,payoff_a,payoff_b,total_effort\n";
    text += csv_num(sol.p_a) + "," + csv_num(sol.p_b) + "," +
            csv_num(sol.x_a) + "," + csv_num(sol.x_b) + "," +
            csv_num(sol.spread) + "," + csv_num(sol.payoff_a) + "," +
            csv_num(sol.payoff_b) + "," + csv_num(sol.total_effort) + "\n";
    emit(text, s.out);
  } else {
    json doc{{"params", params_json(params)},
             {"rule", json{{"shares", jvec(rule.shares)}}},
             {"solution", solution_json(sol)}};
    emit(dump(doc), s.out);
  }
  return kExitOk;
}

int run_verify(const CliState& s) {
  const ContestParams params = make_params(s);
  const PrizeRule rule = make_rule(s, params.n);
  ScanOptions opts;
  opts.points = s.points;
  opts.min_mult = s.min_mult;
  opts.max_mult = s.max_mult;
  const VerificationReport rep =
      verify_equilibrium(params, rule, opts, make_exec(s));

  json doc{{"params", params_json(params)},
           {"rule", json{{"shares", jvec(rule.shares)}}},
           {"candidate", solution_json(rep.candidate)},
           {"sufficient_ok", rep.sufficient_ok},
           {"necessary_payoff_b", jnum(rep.necessary_payoff_b)},
           {"necessary_ok", rep.necessary_ok},
           {"slope_a", jnum(rep.slope_a)},
           {"slope_b", jnum(rep.slope_b)},
           {"best_response_a",
            json{{"effort", jnum(rep.best_response_a.effort)},
                 {"payoff", jnum(rep.best_response_a.payoff)}}},
           {"best_response_b",
            json{{"effort", jnum(rep.best_response_b.effort)},
                 {"payoff", jnum(rep.best_response_b.payoff)}}},
           {"improvement_a", jnum(rep.improvement_a)},
           {"improvement_b", jnum(rep.improvement_b)},
           {"verdict", to_string(rep.verdict)},
           {"unique", rep.unique}};

  std::string text;
  if (s.format == "csv") {
    text = "verdict,sufficient_ok,necessary_payoff_b,necessary_ok,slope_a,"
           "slope_b,best_effort_a,best_effort_b,improvement_a,improvement_b,"
           "unique\n";
    text += std::string(to_string(rep.verdict)) + "," +
            (rep.sufficient_ok ? "1" : "0") + "," +
            csv_num(rep.necessary_payoff_b) + "," +
            (rep.necessary_ok ? "1" : "0") + "," + csv_num(rep.slope_a) + "," +
            csv_num(rep.slope_b) + "," + csv_num(rep.best_response_a.effort) +
            "," + csv_num(rep.best_response_b.effort) + "," +
            csv_num(rep.improvement_a) + "," + csv_num(rep.improvement_b) +
            "," + (rep.unique ? "1" : "0") + "\n";
  } else {
    text = dump(doc);
  }
  if (!s.out.empty()) {
    emit(text, s.out);
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
  } else {
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
    emit(text, s.out);
  }
  switch (rep.verdict) {
    case Verdict::confirmed: return kExitOk;
    case Verdict::refuted: return kExitRefuted;
    default: return kExitUndetermined;
  }
}

int run_design(const CliState& s) {
  const ContestParams params = make_params(s);
  const DesignResult res = s.p >= 0.0 ? optimal_rule_at(params, s.p)
                                      : optimal_rule(params);
  json doc{{"params", params_json(params)},
           {"p", jnum(res.equilibrium.p_a)},
           {"g", jvec(res.g)},
           {"k_star", res.k_star},
           {"threshold", res.threshold},
           {"rule", json{{"shares", jvec(res.rule.shares)}}},
           {"equilibrium", solution_json(res.equilibrium)},
           {"within_sufficient_bound", res.within_sufficient_bound}};

  bool agrees = true;
  if (s.brute_force) {
    const std::vector<double> grid = parse_double_list(s.grid);
    const BruteForceResult bf =
        s.p >= 0.0
            ? brute_force_optimal_at(params, s.p, grid, make_exec(s))
            : brute_force_optimal(params, grid, make_exec(s));
    agrees = bf.rule.shares == res.rule.shares;
    doc["brute_force"] = json{{"shares", jvec(bf.rule.shares)},
                              {"spread", jnum(bf.spread)},
                              {"total_effort", jnum(bf.total_effort)},
                              {"enumerated", bf.enumerated},
                              {"agrees", agrees}};
  }

  if (s.format == "csv") {
    std::string text = "n,p,k_star,threshold,total_effort,"
                       "within_sufficient_bound\n";
    text += std::to_string(params.n) + "," + csv_num(res.equilibrium.p_a) +
            "," + std::to_string(res.k_star) + "," +
            std::to_string(res.threshold) + "," +
            csv_num(res.equilibrium.total_effort) + "," +
            (res.within_sufficient_bound ? "1" : "0") + "\n";
    emit(text, s.out);
  } else {
    emit(dump(doc), s.out);
  }
  return kExitOk;
}

int run_payoff_curve(const CliState& s) {
  const ContestParams params = make_params(s);
  const PrizeRule rule = make_rule(s, params.n);
  const EquilibriumSolution sol = candidate_equilibrium(params, rule);
  const Player who = s.player == "A" ? Player::A : Player::B;
  const double cand = who == Player::A ? sol.x_a : sol.x_b;
  const double opp = who == Player::A ? sol.x_b : sol.x_a;
  const double cost = who == Player::A ? params.cost_a : params.cost_b;
  const double ref = cand > 0.0 ? cand : 1.0 / (params.n * cost);

  if (s.points < 2) throw std::invalid_argument("--points must be >= 2");
  std::vector<double> efforts;
  efforts.push_back(0.0);
  const double llo = std::log(s.min_mult);
  const double lhi = std::log(s.max_mult);
  for (int i = 0; i < s.points; ++i) {
    const double t = static_cast<double>(i) / (s.points - 1);
    efforts.push_back(ref * std::exp(llo + t * (lhi - llo)));
  }

  if (s.format == "json") {
    json pts = json::array();
    for (double x : efforts) {
      pts.push_back(json::array(
          {jnum(x), jnum(uniform_payoff(params, rule, x, opp, who))}));
    }
    json doc{{"params", params_json(params)},
             {"player", s.player},
             {"candidate_effort", jnum(cand)},
             {"opponent_effort", jnum(opp)},
             {"points", pts}};
    emit(dump(doc), s.out);
  } else {
    std::string text = "effort,payoff\n";
    for (double x : efforts) {
      text += csv_num(x) + "," +
              csv_num(uniform_payoff(params, rule, x, opp, who)) + "\n";
    }
    emit(text, s.out);
  }
  return kExitOk;
}

int run_sweep(const CliState& s) {
  if (s.table1 == s.threshold) {
    throw std::invalid_argument("sweep needs exactly one of --table1 or "
                                "--threshold");
  }
  if (s.table1) {
    const std::vector<int> ns = parse_int_list(s.n_list);
    std::string text = "n,symmetric_bound,asymmetric_bound,ratio\n";
    json rows = json::array();
    for (int n : ns) {
      const double sym = symmetric_r_bound(n);
      const double asym = asymmetric_r_bound(n);
      const double ratio = sym / asym;
      text += std::to_string(n) + "," + csv_num(sym) + "," + csv_num(asym) +
              "," + csv_num(ratio) + "\n";
      rows.push_back(json{{"n", n},
                          {"symmetric_bound", jnum(sym)},
                          {"asymmetric_bound", jnum(asym)},
                          {"ratio", jnum(ratio)}});
    }
    emit(s.format == "json" ? dump(rows) : text, s.out);
    return kExitOk;
  }

  if (s.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  std::vector<double> p_grid;
  for (int i = 0; i < s.steps; ++i) {
    const double t = s.steps == 1 ? 0.0
                                  : static_cast<double>(i) / (s.steps - 1);
    p_grid.push_back(s.p_min + t * (s.p_max - s.p_min));
  }
  const std::vector<int> thresholds = sweep_threshold(s.n, p_grid);
  std::string text = "p,threshold\n";
  json rows = json::array();
  for (size_t i = 0; i < p_grid.size(); ++i) {
    text += csv_num(p_grid[i]) + "," + std::to_string(thresholds[i]) + "\n";
    rows.push_back(json{{"p", jnum(p_grid[i])}, {"threshold", thresholds[i]}});
  }
  emit(s.format == "json" ? dump(rows) : text, s.out);
  return kExitOk;
}

int run_simulate(const CliState& s) {
  const ContestParams params = make_params(s);
  const PrizeRule rule = make_rule(s, params.n);
  const EquilibriumSolution sol = candidate_equilibrium(params, rule);
  const EffortProfile a(static_cast<size_t>(params.n), sol.x_a);
  const EffortProfile b(static_cast<size_t>(params.n), sol.x_b);
  const SimulationSummary sum =
      simulate_contest(params, rule, a, b, s.trials, s.seed, make_exec(s));
  const EmpiricalCheck chk = empirical_check(sum, params, rule, sol);

  if (s.format == "csv") {
    std::string text = "trials,seed,mean_wins_a,prize_a,payoff_a,payoff_b,"
                       "max_abs_z,chi_square_pvalue\n";
    text += std::to_string(sum.trials) + "," + std::to_string(sum.seed) + "," +
            csv_num(sum.mean_wins_a) + "," + csv_num(sum.prize_a) + "," +
            csv_num(sum.payoff_a) + "," + csv_num(sum.payoff_b) + "," +
            csv_num(chk.max_abs_z) + "," + csv_num(chk.chi_square_pvalue) +
            "\n";
    emit(text, s.out);
    return kExitOk;
  }

  json hist = json::array();
  for (std::int64_t c : sum.win_count_hist) hist.push_back(c);
  json bw = json::array();
  for (std::int64_t c : sum.battle_wins_a) bw.push_back(c);
  json doc{{"params", params_json(params)},
           {"rule", json{{"shares", jvec(rule.shares)}}},
           {"solution", solution_json(sol)},
           {"simulation",
            json{{"trials", sum.trials},
                 {"seed", sum.seed},
                 {"win_count_hist", hist},
                 {"battle_wins_a", bw},
                 {"battle_freq_a", jvec(sum.battle_freq_a)},
                 {"mean_wins_a", jnum(sum.mean_wins_a)},
                 {"prize_a", jnum(sum.prize_a)},
                 {"prize_b", jnum(sum.prize_b)},
                 {"payoff_a", jnum(sum.payoff_a)},
                 {"payoff_b", jnum(sum.payoff_b)}}},
           {"check",
            json{{"z_battle", jvec(chk.z_battle)},
                 {"z_mean_wins", jnum(chk.z_mean_wins)},
                 {"z_payoff_a", jnum(chk.z_payoff_a)},
                 {"z_payoff_b", jnum(chk.z_payoff_b)},
                 {"chi_square", jnum(chk.chi_square)},
                 {"chi_square_df", chk.chi_square_df},
                 {"chi_square_pvalue", jnum(chk.chi_square_pvalue)},
                 {"max_abs_z", jnum(chk.max_abs_z)}}}};
  emit(dump(doc), s.out);
  return kExitOk;
}

void add_contest_options(CLI::App* sub, CliState& s, bool need_n = true) {
  auto* n_opt = sub->add_option("--n", s.n, "Number of battles");
  if (need_n) n_opt->required();
  sub->add_option("--r", s.r, "Battle decisiveness in (0, 1]");
  sub->add_option("--cost-a", s.cost_a, "Marginal cost of player A");
  auto* cb = sub->add_option("--cost-b", s.cost_b,
                             "Marginal cost of player B (>= cost-a)");
  sub->add_option("--cost-b-ratio-from-pb", s.pb_for_ratio,
                  "Set cost-b so the weak player's per-battle probability "
                  "is this value")
      ->excludes(cb);
}

void add_output_options(CLI::App* sub, CliState& s) {
  sub->add_option("--out", s.out, "Write output here instead of stdout");
  sub->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_rule_option(CLI::App* sub, CliState& s) {
  sub->add_option("--rule", s.rule_spec,
                  "Prize rule: majority, tie:T, or file:PATH");
}

void add_exec_option(CLI::App* sub, CliState& s) {
  sub->add_option("--exec", s.exec, "Execution mode")
      ->check(CLI::IsMember({"serial", "parallel"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and effort-maximizing prize designer for n-battle "
               "contests between players with unequal marginal costs"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  CliState s;

  auto* solve = app.add_subcommand(
      "solve", "Uniform-effort equilibrium candidate for a given rule");
  add_contest_options(solve, s);
  add_rule_option(solve, s);
  add_output_options(solve, s);

  auto* verify = app.add_subcommand(
      "verify", "Check whether the candidate survives global deviations");
  add_contest_options(verify, s);
  add_rule_option(verify, s);
  add_output_options(verify, s);
  add_exec_option(verify, s);
  verify->add_option("--points", s.points, "Deviation grid points");
  verify->add_option("--min-mult", s.min_mult, "Grid lower multiplier");
  verify->add_option("--max-mult", s.max_mult, "Grid upper multiplier");

  auto* design = app.add_subcommand(
      "design", "Effort-maximizing prize rule for the contest");
  add_contest_options(design, s);
  add_output_options(design, s);
  add_exec_option(design, s);
  design->add_option("--p", s.p,
                     "Impose the favorite's per-battle probability directly");
  design->add_flag("--brute-force", s.brute_force,
                   "Cross-check against exhaustive grid enumeration");
  design->add_option("--grid", s.grid,
                     "Share levels for --brute-force, comma separated");

  auto* curve = app.add_subcommand(
      "payoff-curve", "Payoff of uniform deviations around the candidate");
  add_contest_options(curve, s);
  add_rule_option(curve, s);
  add_output_options(curve, s);
  curve->add_option("--player", s.player, "Deviating player")
      ->check(CLI::IsMember({"A", "B"}));
  curve->add_option("--points", s.points, "Grid points");
  curve->add_option("--min-mult", s.min_mult, "Grid lower multiplier");
  curve->add_option("--max-mult", s.max_mult, "Grid upper multiplier");

  auto* sweep = app.add_subcommand(
      "sweep", "Tabulate guarantee bounds or optimal thresholds");
  sweep->add_flag("--table1", s.table1,
                  "Decisiveness bounds: symmetric benchmark vs asymmetric");
  sweep->add_flag("--threshold", s.threshold,
                  "Optimal threshold as the favorite's probability grows");
  sweep->add_option("--n", s.n, "Number of battles (threshold sweep)");
  sweep->add_option("--n-list", s.n_list,
                    "Battle counts for --table1, comma separated");
  sweep->add_option("--p-min", s.p_min, "Threshold sweep start");
  sweep->add_option("--p-max", s.p_max, "Threshold sweep end");
  sweep->add_option("--steps", s.steps, "Threshold sweep points");
  add_output_options(sweep, s);

  auto* simulate = app.add_subcommand(
      "simulate", "Monte-Carlo play at the candidate with analytic checks");
  add_contest_options(simulate, s);
  add_rule_option(simulate, s);
  add_output_options(simulate, s);
  add_exec_option(simulate, s);
  simulate->add_option("--trials", s.trials, "Number of contest plays");
  simulate->add_option("--seed", s.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadConfig;
  }

  try {
    if (solve->parsed()) return run_solve(s);
    if (verify->parsed()) return run_verify(s);
    if (design->parsed()) return run_design(s);
    if (curve->parsed()) return run_payoff_curve(s);
    if (sweep->parsed()) return run_sweep(s);
    if (simulate->parsed()) return run_simulate(s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  return kExitBadConfig;
}
