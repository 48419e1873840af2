// Command-line front end: run experiments, privacy audits, the worked-example
// check and capacity tables.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "bspir/config.hpp"
#include "bspir/experiment.hpp"
#include "bspir/golden.hpp"
#include "bspir/privacy_audit.hpp"
#include "bspir/report.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitCheckFailed = 3;

// Flags that map one-to-one onto config keys. Values are applied after the
// config file, so flags win.
struct Overrides {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::vector<std::pair<std::string, std::string>> values;

  void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
    values.emplace_back(key, "");
    // Stable storage: reserve happens up front in the caller.
    options.emplace_back(key, app.add_option(flag, values.back().second, help));
  }

  void apply(bspir::RunSettings& s) const {
    for (std::size_t i = 0; i < options.size(); ++i)
      if (options[i].second->count() > 0) bspir::apply_setting(s, values[i].first, values[i].second);
  }
};

void add_scheme_flags(CLI::App& app, Overrides& o) {
  o.values.reserve(32);
  o.options.reserve(32);
  o.add(app, "--model", "model", "secret or untouched");
  o.add(app, "--n", "n", "number of servers N");
  o.add(app, "--t", "t", "collusion bound T");
  o.add(app, "--b", "b", "number of jammed servers B");
  o.add(app, "--e", "e", "number of observed servers E (untouched model)");
  o.add(app, "--k-messages", "k_messages", "number of stored messages K");
  o.add(app, "--l", "l", "instances per retrieval l");
  o.add(app, "--alpha", "alpha", "hash points per check");
  o.add(app, "--beta", "beta", "padding instances (untouched model)");
  o.add(app, "--q", "q", "field modulus (0: smallest admissible prime)");
  o.add(app, "--lambdas", "lambdas", "comma-separated evaluation points");
  o.add(app, "--allow-zero-lambda", "allow_zero_lambda", "permit 0 among the evaluation points");
}

std::vector<std::size_t> parse_list(const std::string& text, const std::string& key) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw bspir::ConfigError(key, "expected a comma-separated list of integers, got '" + text + "'");
    }
  }
  return out;
}

nlohmann::json rational_json(const bspir::Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for private retrieval from replicated servers with jamming adversaries"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a Monte Carlo experiment and emit a report");
  std::string run_config;
  std::string sweep_l;
  long long transcript_index = -1;
  Overrides run_flags;
  run->add_option("--config", run_config, "key = value settings file");
  add_scheme_flags(*run, run_flags);
  run_flags.add(*run, "--strategy", "strategy", "adversary strategy");
  run_flags.add(*run, "--trials", "trials", "number of trials");
  run_flags.add(*run, "--seed", "seed", "master seed");
  run_flags.add(*run, "--k", "k", "desired message index (1-based)");
  run_flags.add(*run, "--hash-scope", "hash_scope", "all_rows or message_rows");
  run_flags.add(*run, "--threads", "threads", "worker threads (0: all cores)");
  run_flags.add(*run, "--out", "out", "output path (default stdout)");
  run_flags.add(*run, "--format", "format", "csv or json");
  run->add_option("--sweep-l", sweep_l, "comma-separated l values; q is re-derived per point unless --q is set");
  run->add_option("--transcript", transcript_index, "print the JSON transcript of this trial index instead");

  // audit
  auto* audit = app.add_subcommand("audit", "exhaustive privacy audit on a tiny instance");
  Overrides audit_flags;
  std::string variant = "faithful";
  std::size_t k1 = 1, k2 = 2;
  std::uint64_t budget = 100'000'000;
  std::string audit_out;
  std::string audit_kind = "both";
  add_scheme_flags(*audit, audit_flags);
  audit->add_option("--kind", audit_kind, "user, database or both")
      ->check(CLI::IsMember({"user", "database", "both"}));
  audit->add_option("--variant", variant, "faithful, leaky_queries or unmasked_s")
      ->check(CLI::IsMember({"faithful", "leaky_queries", "unmasked_s"}));
  audit->add_option("--k1", k1, "first message index");
  audit->add_option("--k2", k2, "second message index");
  audit->add_option("--budget", budget, "maximum enumerated states");
  audit->add_option("--out", audit_out, "output path (default stdout)");

  // golden
  auto* golden = app.add_subcommand("golden", "check the three-server worked example over F_5");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "print capacity and error-bound tables");
  std::size_t n_max = 8;
  Overrides bound_flags;
  bounds->add_option("--n-max", n_max, "largest N in the capacity table");
  add_scheme_flags(*bounds, bound_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) {
      bspir::RunSettings settings;
      if (!run_config.empty()) bspir::apply_config_file(settings, run_config);
      run_flags.apply(settings);

      if (transcript_index >= 0) {
        const bspir::SchemeParams params(settings.experiment.scheme);
        const auto seed = bspir::trial_seed(settings.experiment.seed, static_cast<std::uint64_t>(transcript_index));
        const auto t = bspir::run_trial(params, settings.experiment.k, settings.experiment.strategy, seed,
                                        settings.experiment.scope);
        bspir::write_output(settings.out, bspir::to_json(t).dump(2) + "\n");
        return 0;
      }

      std::vector<bspir::ExperimentReport> reports;
      if (sweep_l.empty()) {
        reports.push_back(bspir::run_experiment(settings.experiment));
      } else {
        for (std::size_t l : parse_list(sweep_l, "sweep_l")) {
          bspir::ExperimentConfig cfg = settings.experiment;
          cfg.scheme.l = l;
          reports.push_back(bspir::run_experiment(cfg));
        }
      }
      if (settings.format == bspir::ReportFormat::Csv) {
        bspir::write_output(settings.out, bspir::emit_csv(reports));
      } else if (reports.size() == 1) {
        bspir::write_output(settings.out, bspir::emit_report(reports.front(), bspir::ReportFormat::Json));
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(bspir::report_json(r));
        bspir::write_output(settings.out, arr.dump(2) + "\n");
      }
      return 0;
    }

    if (*audit) {
      bspir::RunSettings settings;
      settings.experiment.scheme.q = 5;
      audit_flags.apply(settings);
      bspir::AuditInstance inst{bspir::SchemeParams(settings.experiment.scheme), budget,
                                variant == "faithful"        ? bspir::AuditVariant::Faithful
                                : variant == "leaky_queries" ? bspir::AuditVariant::LeakyQueries
                                                             : bspir::AuditVariant::UnmaskedS};
      const auto& p = inst.params;
      if (k1 < 1 || k1 > p.K()) throw bspir::ConfigError("k1", "must be in [1, K]");
      if (k2 < 1 || k2 > p.K()) throw bspir::ConfigError("k2", "must be in [1, K]");

      const bool check_user = audit_kind != "database";
      const bool check_db = audit_kind != "user";
      bool pass = true;

      nlohmann::json j;
      j["variant"] = variant;
      j["model"] = bspir::to_string(p.model());
      j["q"] = p.field().modulus();
      j["N"] = p.N();
      j["T"] = p.T();
      j["B"] = p.B();
      j["K"] = p.K();
      j["l"] = p.l();
      if (check_user) {
        const auto cert = bspir::certify_user_privacy_algebraic(p);
        const auto user = bspir::audit_user_privacy_exhaustive(inst, k1, k2);
        pass = pass && cert.ok && user.max_distance == bspir::Rational(0);
        j["certificate"] = {{"ok", cert.ok}, {"witness", cert.witness}};
        j["user_privacy"] = {{"k1", k1},
                             {"k2", k2},
                             {"max_distance", rational_json(user.max_distance)},
                             {"worst_subset", user.worst_subset},
                             {"states", user.states}};
      }
      if (check_db) {
        const auto db = bspir::audit_database_privacy_exhaustive(inst, k1);
        pass = pass && db.independent;
        j["database_privacy"] = {{"k", k1},
                                 {"independent", db.independent},
                                 {"mutual_information", db.mutual_information},
                                 {"states", db.states}};
      }
      j["pass"] = pass;
      bspir::write_output(audit_out, j.dump(2) + "\n");
      return pass ? 0 : kExitCheckFailed;
    }

    if (*golden) {
      const auto g = bspir::check_golden_transcript();
      nlohmann::json j{{"pass", g.ok},
                       {"assignments", g.assignments},
                       {"hash_checks", g.hash_checks},
                       {"first_failure", g.first_failure}};
      std::cout << j.dump(2) << "\n";
      return g.ok ? 0 : kExitCheckFailed;
    }

    if (*bounds) {
      std::cout << "N,T,B,rate_capacity,rho_threshold,omniscient_zero_error_capacity\n";
      for (std::int64_t N = 1; N <= static_cast<std::int64_t>(n_max); ++N)
        for (std::int64_t T = 0; T < N; ++T)
          for (std::int64_t B = 0; T + B < N; ++B) {
            const auto rho = bspir::rho_threshold(N, T, B);
            std::cout << N << ',' << T << ',' << B << ',' << rational_json(bspir::capacity(N, T, B, rho)).get<std::string>()
                      << ',' << rational_json(rho).get<std::string>() << ','
                      << rational_json(bspir::capacity_omniscient_zero_error(N, T, B)).get<std::string>() << '\n';
          }
      bool any_scheme_flag = false;
      for (const auto& [key, opt] : bound_flags.options) any_scheme_flag = any_scheme_flag || opt->count() > 0;
      if (any_scheme_flag) {
        bspir::RunSettings settings;
        bound_flags.apply(settings);
        const bspir::SchemeParams p(settings.experiment.scheme);
        const auto b = bspir::scheme_error_bound(p);
        const auto a = bspir::accounting(p);
        nlohmann::json j{{"model", bspir::to_string(p.model())},
                         {"q", p.field().modulus()},
                         {"error_bound", b.actual_q},
                         {"error_bound_q_l_squared", b.with_q_l_squared},
                         {"list_term", b.list_term},
                         {"phase1_term", b.phase1_term},
                         {"rate", rational_json(a.rate)},
                         {"rho", rational_json(a.rho)},
                         {"phase1_symbols", a.phase1_symbols}};
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    }
  } catch (const bspir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const bspir::BudgetExceeded& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
