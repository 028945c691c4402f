#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "skewca/analysis.hpp"
#include "skewca/constructions.hpp"
#include "skewca/engine.hpp"
#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"
#include "verify.hpp"

namespace skewca::cli {

namespace {

struct GlobalOptions {
  bool ascii = false;
  unsigned jobs = 1;
  std::uint64_t seed = 1;

  GlyphStyle style() const { return ascii ? GlyphStyle::kAscii : GlyphStyle::kUnicode; }
};

std::int64_t default_horizon(std::int64_t fallback) {
  const char* env = std::getenv("CA_DEFAULT_HORIZON");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(env, &used);
    if (used != std::string(env).size() || v < 1) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("CA_DEFAULT_HORIZON must be a positive integer, got '") + env + "'");
  }
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("window must be LO:HI, got '" + text + "'");
  try {
    const Window w{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    if (w.lo > w.hi) throw UsageError("empty window '" + text + "'");
    return w;
  } catch (const std::logic_error&) {
    throw UsageError("window must be LO:HI, got '" + text + "'");
  }
}

RuleId require_rule(const std::string& name) {
  const auto id = parse_rule_id(name);
  if (!id) throw UsageError("unknown rule '" + name + "' (t1, t, t3, ts)");
  return *id;
}

/// Calls f(table) with the rule table matching id; the symbol type follows.
template <class F>
decltype(auto) with_rule(RuleId id, const RuleSet& rules, F&& f) {
  switch (id) {
    case RuleId::kT1:
      return f(rules.t1);
    case RuleId::kT:
      return f(rules.t);
    case RuleId::kT3:
      return f(rules.t3);
    case RuleId::kTs:
      break;
  }
  return f(rules.ts);
}

template <class Table>
using TableSymbol = std::decay_t<decltype(std::get<0>(std::declval<typename Table::Entry>()))>;

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulate and analyse the odometer-with-arrows cellular automata", "ca"};
  app.fallthrough();
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_flag("--ascii", global.ascii, "Print symbols as text-format characters");
  app.add_option("--jobs", global.jobs, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--seed", global.seed, "Seed for randomised checks");

  RuleSet rules;

  // trace
  auto* trace = app.add_subcommand("trace", "Print T^n x restricted to a window");
  std::string rule_name_arg = "t";
  std::string config_text;
  std::string window_text;
  std::int64_t steps = 27;
  std::string format = "table";
  trace->add_option("--rule", rule_name_arg, "t1, t, t3 or ts")->required();
  trace->add_option("--config", config_text, "Configuration text")->required();
  trace->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  trace->add_option("--window", window_text, "LO:HI")->required();
  trace->add_option("--format", format)->check(CLI::IsMember({"table", "csv"}));

  // period
  auto* period = app.add_subcommand("period", "Eventual period of a column or window");
  std::optional<std::int64_t> column;
  std::optional<std::int64_t> horizon_arg;
  period->add_option("--rule", rule_name_arg)->required();
  period->add_option("--config", config_text)->required();
  auto* column_opt = period->add_option("--column", column);
  period->add_option("--window", window_text)->excludes(column_opt);
  period->add_option("--horizon", horizon_arg)->check(CLI::PositiveNumber);

  // sensitivity
  auto* sensitivity = app.add_subcommand("sensitivity", "Times at which a ball can split on given columns");
  std::int64_t radius = 0;
  std::vector<std::int64_t> columns;
  std::string method = "auto";
  std::int64_t suffix_depth = -1;
  sensitivity->add_option("--rule", rule_name_arg)->required();
  sensitivity->add_option("--config", config_text)->required();
  sensitivity->add_option("--n", radius, "Ball radius")->required()->check(CLI::NonNegativeNumber);
  sensitivity->add_option("--columns", columns)->required()->delimiter(',');
  sensitivity->add_option("--horizon", horizon_arg)->check(CLI::NonNegativeNumber);
  sensitivity->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "brute", "bruteforce", "extremal", "both"}));
  sensitivity->add_option("--suffix-depth", suffix_depth);
  std::string out_path;
  sensitivity->add_option("--out", out_path, "CSV file, default stdout");

  // density
  auto* density = app.add_subcommand("density", "Finite-horizon upper density of a sensitivity set");
  std::optional<int> level;
  std::int64_t density_column = 0;
  density->add_option("--rule", rule_name_arg)->required()->check(CLI::IsMember({"t"}));
  auto* level_opt = density->add_option("--l", level, "Use the gate point blank 0^(2^l) blank");
  density->add_option("--config", config_text)->excludes(level_opt);
  auto* radius_opt = density->add_option("--n", radius);
  density->add_option("--column", density_column);
  density->add_option("--horizon", horizon_arg)->check(CLI::PositiveNumber);

  // certify
  auto* certify = app.add_subcommand("certify", "Finite-scale diam-mean certificate for the cascade point");
  int m = 0;
  std::string prefix_text;
  std::optional<int> depth;
  bool stacked = false;
  certify->add_option("--m", m)->required()->check(CLI::Range(0, 12));
  certify->add_option("--prefix", prefix_text, "Arrow-free word in front of the blocks");
  certify->add_option("--depth", depth, "Number of blocks; searched when omitted")->check(CLI::Range(1, 20));
  certify->add_option("--horizon", horizon_arg)->check(CLI::PositiveNumber);
  certify->add_flag("--stacked", stacked, "Lift to the stacked alphabet with phase a");
  std::optional<std::int64_t> m_prime;
  auto* cert_config = certify->add_option("--config", config_text, "Certify this point instead of the cascade");
  certify->add_option("--mprime", m_prime, "Ball radius m'")->needs(cert_config);
  cert_config->excludes("--depth");

  // build
  auto* build = app.add_subcommand("build", "Print a constructed configuration");
  std::string kind;
  int l = 1;
  std::int64_t j = 0;
  int cascade_depth = 1;
  std::string word_text;
  build->add_option("kind", kind)->required()->check(
      CLI::IsMember({"block", "cascade", "pair", "ts-pair", "two-block"}));
  build->add_option("--l", l)->check(CLI::Range(0, 30));
  build->add_option("--j", j)->check(CLI::NonNegativeNumber);
  build->add_option("--depth", cascade_depth)->check(CLI::Range(1, 30));
  build->add_option("--prefix", prefix_text);
  build->add_option("--word", word_text, "Word for pair and ts-pair");
  build->add_option("--out", out_path, "Output file, default stdout");

  // rules-dump, plus "rules dump"
  auto* dump = app.add_subcommand("rules-dump", "Print a rule table as CSV");
  bool shift_formula = false;
  dump->add_option("--rule", rule_name_arg)->required();
  dump->add_flag("--shift-formula", shift_formula, "Print the literal shift-formula arrow rule instead");
  auto* rules_cmd = app.add_subcommand("rules", "Rule table utilities");
  auto* rules_dump = rules_cmd->add_subcommand("dump", "Print a rule table as CSV");
  rules_cmd->require_subcommand(1);
  rules_dump->add_option("--rule", rule_name_arg)->required();
  rules_dump->add_flag("--shift-formula", shift_formula);

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check the automata's proven properties");
  std::string suite = "all";
  std::string corruption;
  bool csv = false;
  verify->add_option("suite", suite, "Suite name or all");
  verify->add_option("--corrupt", corruption, "Override one rule entry, RULE:CENTER,RIGHT=OUT");
  verify->add_flag("--csv", csv);
  verify->add_flag("--list", "List suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (trace->parsed()) {
      const Window w = parse_window(window_text);
      return with_rule(require_rule(rule_name_arg), rules, [&](const auto& table) {
        using S = TableSymbol<std::decay_t<decltype(table)>>;
        const auto t = trace_table(parse_config<S>(config_text), table, w, steps);
        out << render_trace(t, format == "csv" ? TraceFormat::kCsv : TraceFormat::kTable, global.style());
        return int{kExitOk};
      });
    }

    if (period->parsed()) {
      if (!column && window_text.empty()) throw UsageError("period needs --column or --window");
      const Window w = column ? Window{*column, *column} : parse_window(window_text);
      const std::int64_t horizon = horizon_arg.value_or(default_horizon(100000));
      return with_rule(require_rule(rule_name_arg), rules, [&](const auto& table) {
        using S = TableSymbol<std::decay_t<decltype(table)>>;
        const auto r = detect_eventual_period(parse_config<S>(config_text), table, w, horizon);
        out << "preperiod " << r.preperiod << " period " << r.period << " "
            << (r.confirmed ? "confirmed" : "unconfirmed") << "\n";
        return int{kExitOk};
      });
    }

    if (sensitivity->parsed()) {
      const std::int64_t horizon = horizon_arg.value_or(default_horizon(200));
      const RuleId id = require_rule(rule_name_arg);
      std::vector<SensitivityReport> reports;
      const bool extremal_ok = id == RuleId::kT && columns.size() == 1;
      const bool want_extremal = method == "extremal" || method == "both" || (method == "auto" && extremal_ok);
      const bool want_brute = method == "bruteforce" || method == "brute" || method == "both" || (method == "auto" && !extremal_ok);
      if (want_extremal) {
        if (!extremal_ok) throw UsageError("the extremal method needs --rule t and a single column");
        reports.push_back(sensitivity_set_arrow_extremal(parse_config<ProductSymbol>(config_text), rules.t,
                                                         radius, columns.front(), horizon));
      }
      if (want_brute) {
        std::int64_t depth = suffix_depth;
        if (depth < 0) {
          depth = std::max<std::int64_t>(0, *std::max_element(columns.begin(), columns.end()) + horizon - radius);
        }
        with_rule(id, rules, [&](const auto& table) {
          using S = TableSymbol<std::decay_t<decltype(table)>>;
          reports.push_back(sensitivity_set_bruteforce(parse_config<S>(config_text), table, radius, columns,
                                                       horizon, depth, global.jobs));
          return 0;
        });
      }
      write_output(out_path, sensitivity_csv(reports), out);
      return kExitOk;
    }

    if (density->parsed()) {
      const std::int64_t horizon = horizon_arg.value_or(default_horizon(10000));
      Configuration<ProductSymbol> x = Configuration<ProductSymbol>::uniform(kBlank);
      std::int64_t n = radius;
      if (level) {
        x = build_gate_point(*level);
        if (radius_opt->count() == 0) n = (std::int64_t{1} << *level) + 1;
      } else {
        if (config_text.empty()) throw UsageError("density needs --l or --config");
        x = parse_config<ProductSymbol>(config_text);
      }
      const auto r = sensitivity_set_arrow_extremal(x, rules.t, n, density_column, horizon);
      out << "configuration=" << r.configuration << "\n"
          << "n=" << n << "\n"
          << "column=" << density_column << "\n"
          << "horizon=" << horizon << "\n"
          << "density=" << r.density << "\n"
          << "value=" << r.density.value() << "\n";
      return kExitOk;
    }

    if (certify->parsed()) {
      const std::int64_t horizon = horizon_arg.value_or(default_horizon(10000));
      if (!config_text.empty()) {
        if (!m_prime) throw UsageError("certify --config needs --mprime");
        const auto c = stacked ? diam_mean_certificate(parse_config<StackedSymbol>(config_text), rules.t, m,
                                                       *m_prime, horizon)
                               : diam_mean_certificate(parse_config<ProductSymbol>(config_text), rules.t, m,
                                                       *m_prime, horizon);
        out << render_certificate(c);
        return c.passed ? kExitOk : kExitCheckFailed;
      }
      const auto prefix = parse_word<ProductSymbol>(prefix_text);
      CertificateSearchResult r = depth ? cascade_certificate_at_depth(prefix, m, *depth, horizon, rules.t)
                                        : search_cascade_certificate(prefix, m, horizon, rules.t);
      if (stacked) {
        const auto x = lift_to_stacked(build_cascade_point({prefix, r.depth}), A3Symbol::kA);
        r.certificate = diam_mean_certificate(x, rules.t, m, r.m_prime, horizon);
      }
      out << "depth=" << r.depth << "\n"
          << "source=" << (r.source == CertificateSource::kThreshold ? "threshold" : "search") << "\n"
          << render_certificate(r.certificate);
      return r.certificate.passed ? kExitOk : kExitCheckFailed;
    }

    if (build->parsed()) {
      std::string text;
      if (kind == "block") {
        text = format_config(build_block_point(l, j)) + "\n";
      } else if (kind == "two-block") {
        text = format_config(build_two_block_point(l)) + "\n";
      } else if (kind == "cascade") {
        text = format_config(build_cascade_point({parse_word<ProductSymbol>(prefix_text), cascade_depth})) + "\n";
      } else if (kind == "pair") {
        const auto [x, y] = build_divergence_pair(parse_word<ProductSymbol>(word_text));
        text = format_config(x) + "\n" + format_config(y) + "\n";
      } else {
        const auto pair = build_ts_pair(parse_word<StackedSymbol>(word_text), rules.ts);
        text = format_config(pair.x) + "\n" + format_config(pair.y) + "\n";
      }
      write_output(out_path, text, out);
      return kExitOk;
    }

    if (dump->parsed() || rules_dump->parsed()) {
      const RuleId id = require_rule(rule_name_arg);
      if (shift_formula) {
        if (id != RuleId::kT) throw UsageError("--shift-formula applies to rule t only");
        out << rule_table_csv(RuleTable<ProductSymbol>("t-shift-formula", rule_t_shift_formula));
        return kExitOk;
      }
      with_rule(id, rules, [&](const auto& table) {
        out << rule_table_csv(table);
        return 0;
      });
      return kExitOk;
    }

    if (verify->parsed()) {
      if (verify->count("--list") > 0) {
        for (const auto& name : verify_suite_names()) out << name << "\n";
        return kExitOk;
      }
      RuleSet tables;
      if (!corruption.empty()) apply_corruption(tables, corruption);
      const auto results = run_verify(suite, tables, {global.seed, global.jobs, corruption});
      out << render_verify(results, csv);
      for (const auto& r : results) {
        if (r.status == CheckStatus::kFail) return kExitCheckFailed;
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "ca: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "ca: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ca: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace skewca::cli
