#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>
#include <random>
#include <sstream>
#include <utility>

#include "skewca/analysis.hpp"
#include "skewca/constructions.hpp"
#include "skewca/engine.hpp"
#include "skewca/text_format.hpp"

namespace skewca::cli {

const std::vector<OrbitTableFixture>& orbit_table_fixtures() {
  static const std::vector<OrbitTableFixture> tables{
      {"t1-block", "t1", "(_)|_0000_|(_)", 0, 5,
       {"_0000_", "_0001_", "_0002_", "_0010_", "_0011_", "_0012_", "_0020_", "_0121_",
        "_0222_", "_1000_", "_1001_", "_1002_", "_1010_", "_1011_", "_1012_", "_1020_",
        "_1121_", "_1222_", "_2000_", "_2001_", "_2002_", "_2010_", "_2011_", "_2012_",
        "_2020_", "_2121_", "_2222_", "_0000_"}},
      {"arrow-tail", "t", "(_)|_000A|(<)", 0, 5,
       {"_000A<", "_000B<", "_000C<", "_00BA<", "_00BB<", "_00BC<", "_00CA<", "_0B2B<",
        "_0C2C<", "_B0AA<", "_B0AB<", "_B0AC<", "_B0BA<", "_B0BB<", "_B0BC<", "_B0CA<",
        "_BB2B<", "_BC2C<", "_C0AA<", "<20AB<", "_20AC<", "_20BA<", "_20BB<", "_20BC<",
        "_20CA<", "_2B2B<", "_2C2C<", "_A0AA<"}},
      {"gap-arrow-tail", "t", "(_)|_0_00|(<)", 0, 5,
       {"_0_00<", "_1_0B<", "_2_0C<", "_0_BA<", "_1_BB<", "_2_BC<", "_0_CA<", "_1<2B<",
        "_C_2C<", "<0_AA<", "_1_AB<", "_2_AC<", "_0_BA<", "_1_BB<", "_2_BC<", "_0_CA<",
        "_1<2B<", "_C_2C<", "<0_AA<", "_1_AB<", "_2_AC<", "_0_BA<", "_1_BB<", "_2_BC<",
        "_0_CA<", "_1<2B<", "_C_2C<", "<0_AA<"}},
  };
  return tables;
}

std::string_view arrow_rule_display_csv() {
  static constexpr std::string_view kCsv =
      "center,right,output\n"
      "_,_,_\n"
      "_,0,_\n"
      "_,1,_\n"
      "_,2,_\n"
      "_,<,<\n"
      "_,A,_\n"
      "_,B,_\n"
      "_,C,<\n"
      "0,_,1\n"
      "0,0,0\n"
      "0,1,0\n"
      "0,2,1\n"
      "0,<,B\n"
      "0,A,0\n"
      "0,B,0\n"
      "0,C,B\n"
      "1,_,2\n"
      "1,0,1\n"
      "1,1,1\n"
      "1,2,2\n"
      "1,<,C\n"
      "1,A,1\n"
      "1,B,1\n"
      "1,C,C\n"
      "2,_,0\n"
      "2,0,2\n"
      "2,1,2\n"
      "2,2,0\n"
      "2,<,A\n"
      "2,A,2\n"
      "2,B,2\n"
      "2,C,A\n"
      "<,_,_\n"
      "<,0,_\n"
      "<,1,_\n"
      "<,2,_\n"
      "<,<,<\n"
      "<,A,_\n"
      "<,B,_\n"
      "<,C,<\n"
      "A,_,B\n"
      "A,0,A\n"
      "A,1,A\n"
      "A,2,B\n"
      "A,<,B\n"
      "A,A,A\n"
      "A,B,A\n"
      "A,C,B\n"
      "B,_,C\n"
      "B,0,B\n"
      "B,1,B\n"
      "B,2,C\n"
      "B,<,C\n"
      "B,A,B\n"
      "B,B,B\n"
      "B,C,C\n"
      "C,_,0\n"
      "C,0,2\n"
      "C,1,2\n"
      "C,2,0\n"
      "C,<,A\n"
      "C,A,2\n"
      "C,B,2\n"
      "C,C,A\n";
  return kCsv;
}

std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kSkipped:
      return "skipped";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

// Outcome of one check body: expected/observed text and the verdict.
struct Outcome {
  bool ok = true;
  std::string expected;
  std::string observed;
};

class Runner {
 public:
  Runner(const RuleSet& rules, const VerifyOptions& options, std::string suite)
      : rules_(rules), options_(options), suite_(std::move(suite)) {}

  template <class Body>
  void check(const std::string& name, Body&& body) {
    const auto start = Clock::now();
    VerifyResult r;
    r.check_name = "verify:" + name;
    try {
      Outcome o = body();
      r.status = o.ok ? CheckStatus::kPass : CheckStatus::kFail;
      r.expected = std::move(o.expected);
      r.observed = std::move(o.observed);
    } catch (const std::exception& e) {
      r.status = CheckStatus::kFail;
      r.observed = std::string("error: ") + e.what();
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (r.status == CheckStatus::kFail) {
      r.repro = "ca verify " + suite_ + " --seed " + std::to_string(options_.seed);
      if (!options_.corruption.empty()) r.repro += " --corrupt '" + options_.corruption + "'";
    }
    results_.push_back(std::move(r));
  }

  const RuleSet& rules() const { return rules_; }
  const VerifyOptions& options() const { return options_; }
  Rng rng(std::uint64_t salt) const { return Rng(options_.seed * 0x9E3779B97F4A7C15ULL + salt); }
  std::vector<VerifyResult> take() { return std::move(results_); }

 private:
  const RuleSet& rules_;
  const VerifyOptions& options_;
  std::string suite_;
  std::vector<VerifyResult> results_;
};

std::int64_t pow3(int k) {
  std::int64_t p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <Symbol S>
S random_symbol(Rng& rng) {
  return SymbolTraits<S>::from_index(
      static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(SymbolTraits<S>::kCount) - 1)));
}

template <Symbol S>
Word<S> random_word(Rng& rng, std::int64_t len) {
  Word<S> w;
  for (std::int64_t i = 0; i < len; ++i) w.push_back(random_symbol<S>(rng));
  return w;
}

template <Symbol S>
Configuration<S> random_config(Rng& rng) {
  return Configuration<S>(random_word<S>(rng, uniform(rng, 1, 3)), random_word<S>(rng, uniform(rng, 0, 8)),
                          random_word<S>(rng, uniform(rng, 1, 3)), uniform(rng, -5, 5));
}

template <class T>
std::string join(const std::vector<T>& v, std::size_t limit = 24) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out << (i ? "," : "") << v[i];
  if (v.size() > limit) out << ",...(" << v.size() << ")";
  out << "}";
  return out.str();
}

Outcome verdict(bool ok, std::string expected, std::string observed) {
  return {ok, std::move(expected), std::move(observed)};
}

// ---------------------------------------------------------------- tables

template <Symbol S>
std::vector<std::string> table_rows(const RuleTable<S>& rule, const std::string& config,
                                    Window w, std::int64_t steps) {
  const auto trace = trace_table(parse_config<S>(config), rule, w, steps);
  std::vector<std::string> rows;
  for (const auto& row : trace.rows) rows.push_back(format_word(row));
  return rows;
}

void suite_example_tables(Runner& run) {
  for (const auto& fx : orbit_table_fixtures()) {
    run.check("orbit-table-" + fx.name, [&] {
      const Window w{fx.lo, fx.hi};
      const auto steps = static_cast<std::int64_t>(fx.rows.size()) - 1;
      const auto rows = fx.rule == "t1" ? table_rows(run.rules().t1, fx.config, w, steps)
                                        : table_rows(run.rules().t, fx.config, w, steps);
      std::vector<std::size_t> bad;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] != fx.rows[i]) bad.push_back(i);
      }
      std::string observed = bad.empty() ? "all " + std::to_string(rows.size()) + " rows match"
                                         : "mismatched rows " + join(bad);
      if (!bad.empty()) observed += "; first: got " + rows[bad[0]] + " want " + fx.rows[bad[0]];
      return verdict(bad.empty(), std::to_string(fx.rows.size()) + " rows from " + fx.config, observed);
    });
  }
}

// ----------------------------------------------------------------- rules

void suite_rules(Runner& run) {
  const RuleSet& rs = run.rules();
  run.check("rule-t-display-table", [&] {
    std::istringstream in{std::string(arrow_rule_display_csv())};
    std::string line;
    std::getline(in, line);
    std::vector<std::string> bad;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      const auto c = *SymbolTraits<ProductSymbol>::parse_token(line.substr(0, 1));
      const auto r = *SymbolTraits<ProductSymbol>::parse_token(line.substr(2, 1));
      const auto o = *SymbolTraits<ProductSymbol>::parse_token(line.substr(4, 1));
      ++n;
      if (!(rs.t(c, r) == o)) bad.push_back(line);
    }
    return verdict(bad.empty() && n == 64, "64 reference entries", bad.empty() ? "64 match" : "differs at " + join(bad));
  });
  run.check("rule-t1-odometer", [&] {
    std::vector<std::string> bad;
    for (A1Symbol c : alphabet<A1Symbol>()) {
      for (A1Symbol r : alphabet<A1Symbol>()) {
        A1Symbol want = c;
        if (c != A1Symbol::kEmpty && (r == A1Symbol::kEmpty || r == A1Symbol::kTwo)) {
          want = digit_from_residue(residue(c) + 1);
        }
        if (rs.t1(c, r) != want) {
          bad.push_back(SymbolTraits<A1Symbol>::token(c) + SymbolTraits<A1Symbol>::token(r));
        }
      }
    }
    return verdict(bad.empty(), "carry on blank or 2", bad.empty() ? "16 match" : "differs at " + join(bad));
  });
  run.check("rule-t-digit-layer", [&] {
    std::size_t bad = 0;
    for (auto [c, r, o] : rs.t.entries()) bad += o.digit != rs.t1(c.digit, r.digit);
    return verdict(bad == 0, "digit layer equals t1", std::to_string(bad) + " entries differ");
  });
  run.check("rule-t3-phase-swap", [&] {
    const bool ok = rs.t3(A3Symbol::kA, A3Symbol::kA) == A3Symbol::kA &&
                    rs.t3(A3Symbol::kB, A3Symbol::kA) == A3Symbol::kC &&
                    rs.t3(A3Symbol::kC, A3Symbol::kA) == A3Symbol::kB;
    std::size_t right_dependence = 0;
    for (auto [c, r, o] : rs.t3.entries()) right_dependence += !(o == rs.t3(c, A3Symbol::kA));
    return verdict(ok && right_dependence == 0, "a fixed, b and c swap", ok ? "ok" : "wrong image");
  });
  run.check("rule-ts-layer-composition", [&] {
    std::size_t bad = 0;
    for (auto [c, r, o] : rs.ts.entries()) {
      const A3Symbol bottom = c.top.has_arrow() ? c.bottom : rs.t3(c.bottom, r.bottom);
      bad += !(o.top == rs.t(c.top, r.top)) || o.bottom != bottom;
    }
    return verdict(bad == 0, "top follows t, phase frozen under an arrow", std::to_string(bad) + " of 576 differ");
  });
  run.check("rule-blank-fixed", [&] {
    const bool ok = rs.t1(A1Symbol::kEmpty, A1Symbol::kEmpty) == A1Symbol::kEmpty &&
                    rs.t(kBlank, kBlank) == kBlank &&
                    rs.ts(SymbolTraits<StackedSymbol>::blank(), SymbolTraits<StackedSymbol>::blank()) ==
                        SymbolTraits<StackedSymbol>::blank();
    return verdict(ok, "uniform blank point fixed", ok ? "fixed" : "moved");
  });
}

// -------------------------------------------------------------- digit blocks

std::string period_text(const PeriodReport& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

void suite_digits(Runner& run) {
  const auto& t1 = run.rules().t1;
  auto expect_period = [&](const std::string& name, const std::string& config, Window w, std::int64_t period) {
    run.check(name, [&, config, w, period] {
      const auto r = detect_eventual_period(parse_config<A1Symbol>(config), t1, w, 100000);
      return verdict(r.confirmed && r.preperiod == 0 && r.period == period,
                     "preperiod=0 period=" + std::to_string(period), period_text(r));
    });
  };
  expect_period("t1-single-zero-period", "(_)|0|(_)", {0, 1}, 3);
  expect_period("t1-double-zero-period", "(_)|00|(_)", {0, 2}, 9);
  expect_period("t1-triple-zero-period", "(_)|000|(_)", {0, 3}, 9);
  run.check("t1-double-zero-phases", [&] {
    const auto col = column_trace(parse_config<A1Symbol>("(_)|00|(_)"), t1, 0, 8);
    const std::string got = format_word(col);
    return verdict(got == "000111222", "000111222", got);
  });
  run.check("t1-blank-blocks", [&] {
    Rng rng = run.rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto x = random_config<A1Symbol>(rng);
      const std::int64_t lo = uniform(rng, -6, 3);
      const std::int64_t m = lo + uniform(rng, 0, 6);
      auto fixed = x.window_word({lo, m});
      fixed.back() = A1Symbol::kEmpty;
      const auto a = x.splice_right(lo, fixed, random_word<A1Symbol>(rng, uniform(rng, 1, 3)));
      const auto b = x.splice_right(lo, fixed, random_word<A1Symbol>(rng, uniform(rng, 1, 3)));
      HalfLine<A1Symbol> ha(a, lo), hb(b, lo);
      for (int n = 0; n <= 60; ++n) {
        if (ha.window_word({lo, m}) != hb.window_word({lo, m})) {
          return verdict(false, "equal windows left of a blank", "split at trial " + std::to_string(trial));
        }
        ha.step(t1);
        hb.step(t1);
      }
    }
    return verdict(true, "equal windows left of a blank", "200 trials");
  });
  run.check("t1-open-neighbour-agreement", [&] {
    Rng rng = run.rng(12);
    const Word<A1Symbol> open{A1Symbol::kEmpty, A1Symbol::kTwo};
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t k = uniform(rng, 1, 6);
      const auto shared = random_word<A1Symbol>(rng, k + 1);
      const auto x = Configuration<A1Symbol>({A1Symbol::kEmpty}, shared, random_word<A1Symbol>(rng, uniform(rng, 1, 3)), 0);
      const auto y = Configuration<A1Symbol>({A1Symbol::kEmpty}, shared, random_word<A1Symbol>(rng, uniform(rng, 1, 3)), 0);
      const auto cx = column_trace(x, t1, k + 1, 40);
      const auto cy = column_trace(y, t1, k + 1, 40);
      HalfLine<A1Symbol> hx(x, 0), hy(y, 0);
      for (std::size_t i = 0; i < cx.size(); ++i) {
        const bool both_open = is_open(cx[i]) && is_open(cy[i]);
        if (!both_open) break;
        if (hx.window_word({0, k}) != hy.window_word({0, k})) {
          return verdict(false, "agreement while the right neighbour stays open",
                         "split at trial " + std::to_string(trial));
        }
        hx.step(t1);
        hy.step(t1);
      }
    }
    return verdict(true, "agreement while the right neighbour stays open", "200 trials");
  });
  run.check("t1-eventual-exit", [&] {
    Rng rng = run.rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_config<A1Symbol>(rng);
      const std::int64_t j = uniform(rng, -3, 5);
      x = x.splice_right(j, {A1Symbol::kEmpty}, x.right_tail());
      for (std::int64_t i = 0; i <= 6; ++i) {
        const auto col = column_trace(x, t1, j - i, 3 * pow3(static_cast<int>(i) + 2));
        std::size_t visits = 0;
        for (std::size_t n = 1; n < col.size(); ++n) visits += is_open(col[n]);
        if (visits < 3) {
          return verdict(false, "every column left of a blank keeps reopening",
                         "column " + std::to_string(j - i) + " of " + format_config(x));
        }
      }
    }
    return verdict(true, "every column left of a blank keeps reopening", "100 trials");
  });
}

// ---------------------------------------------------------------- periods

void suite_periods(Runner& run) {
  const auto& t1 = run.rules().t1;
  run.check("period-block-ladder", [&] {
    std::vector<std::string> bad;
    std::size_t cases = 0;
    for (int l = 0; l <= 4; ++l) {
      const std::int64_t jmax = l <= 3 ? (std::int64_t{1} << l) - 1 : 0;
      for (std::int64_t j = 0; j <= jmax; ++j) {
        const std::int64_t len = (std::int64_t{1} << l) + j;
        const auto r = detect_eventual_period(build_block_point(l, j), t1, {0, len}, 100000);
        ++cases;
        if (!r.confirmed || r.preperiod != 0 || r.period != pow3(l + 1)) {
          bad.push_back("l=" + std::to_string(l) + ",j=" + std::to_string(j) + ":" + period_text(r));
        }
      }
    }
    return verdict(bad.empty(), "period 3^(l+1), preperiod 0, for 0 <= j < 2^l",
                   bad.empty() ? std::to_string(cases) + " blocks" : join(bad));
  });
  run.check("period-doubled-block", [&] {
    std::vector<std::string> bad;
    for (int l = 0; l <= 3; ++l) {
      const std::int64_t j = std::int64_t{1} << l;
      const auto r = detect_eventual_period(build_block_point(l, j), t1, {0, 2 * j}, 100000);
      if (!r.confirmed || r.preperiod != 0 || r.period != pow3(l + 2)) {
        bad.push_back("l=" + std::to_string(l) + ":" + period_text(r));
      }
    }
    return verdict(bad.empty(), "0^(2^(l+1)) has period 3^(l+2)", bad.empty() ? "l=0..3" : join(bad));
  });
  run.check("period-phase-thirds", [&] {
    for (int l = 0; l <= 4; ++l) {
      const std::int64_t third = pow3(l);
      const auto col = column_trace(build_block_point(l, 0), t1, 0, 3 * third - 1);
      for (std::int64_t i = 0; i < 3 * third; ++i) {
        if (residue(col[static_cast<std::size_t>(i)]) != i / third) {
          return verdict(false, "0, 1, 2 for 3^l steps each",
                         "l=" + std::to_string(l) + " step " + std::to_string(i));
        }
      }
    }
    return verdict(true, "0, 1, 2 for 3^l steps each", "l=0..4");
  });
}

// ----------------------------------------------------------------- arrows

std::vector<std::int64_t> schedule(int l, std::int64_t horizon) {
  std::vector<std::int64_t> out;
  for (std::int64_t t = 2 * pow3(l) + 1; t <= horizon; t += pow3(l + 1)) out.push_back(t);
  return out;
}

void suite_arrows(Runner& run) {
  const auto& t = run.rules().t;
  run.check("arrow-pass-schedule", [&] {
    for (int l = 0; l <= 3; ++l) {
      const std::int64_t horizon = 5 * pow3(l + 1);
      const auto r = sensitivity_set_arrow_extremal(build_gate_point(l), t, (1 << l) + 1, 0, horizon);
      if (r.times != schedule(l, horizon)) {
        return verdict(false, "k 3^(l+1) + 2 3^l + 1", "l=" + std::to_string(l) + " got " + join(r.times));
      }
    }
    return verdict(true, "k 3^(l+1) + 2 3^l + 1", "l=0..3");
  });
  run.check("arrow-gate-density", [&] {
    std::ostringstream seen;
    bool ok = true;
    for (int l = 0; l <= 3; ++l) {
      const std::int64_t horizon = 10 * pow3(l + 1);
      const auto r = sensitivity_set_arrow_extremal(build_gate_point(l), t, (1 << l) + 1, 0, horizon);
      const double bound = 1.0 / static_cast<double>(pow3(l + 1)) + 2.0 / static_cast<double>(horizon);
      ok = ok && r.density.value() <= bound;
      seen << "l=" << l << ":" << r.density << " ";
    }
    return verdict(ok, "<= 1/3^(l+1) + 2/horizon", seen.str());
  });
  run.check("arrow-gate-density-limit", [&] {
    const auto r = sensitivity_set_arrow_extremal(build_gate_point(1), t, 3, 0, 10000);
    return verdict(std::abs(r.density.value() - 1.0 / 9.0) <= 0.002, "1/9 within 0.002",
                   r.density.str());
  });
  run.check("arrow-two-block-shift", [&] {
    for (int l = 1; l <= 3; ++l) {
      const std::int64_t m = two_block_end(l);
      const std::int64_t k = (std::int64_t{1} << (l - 1)) + 1;
      const std::int64_t shift = 2 * pow3(l - 1);
      const std::int64_t horizon = 20 * pow3(l + 1);
      const auto x = build_two_block_point(l);
      const auto s0 = sensitivity_set_arrow_extremal(x, t, m, 0, horizon).times;
      const auto sk = sensitivity_set_arrow_extremal(x, t, m, k, horizon).times;
      std::vector<std::int64_t> moved;
      for (std::int64_t v : sk) {
        if (v + shift <= horizon) moved.push_back(v + shift);
      }
      std::vector<std::int64_t> head;
      for (std::int64_t v : s0) {
        if (v >= shift) head.push_back(v);
      }
      if (moved != head || (!s0.empty() && s0.front() < shift)) {
        return verdict(false, "S_0 = S_(2^(l-1)+1) + 2 3^(l-1)", "l=" + std::to_string(l) + " S_0=" + join(s0));
      }
    }
    return verdict(true, "S_0 = S_(2^(l-1)+1) + 2 3^(l-1)", "l=1..3");
  });
  run.check("arrow-two-block-density", [&] {
    std::ostringstream seen;
    bool ok = true;
    for (int l = 1; l <= 3; ++l) {
      const std::int64_t m = two_block_end(l);
      const std::int64_t k = (std::int64_t{1} << (l - 1)) + 1;
      const std::int64_t horizon = 20 * pow3(l + 1);
      const auto x = build_two_block_point(l);
      const Rational dk = sensitivity_set_arrow_extremal(x, t, m, k, horizon).density;
      const Rational factor{2 * pow3(l - 1) + 1, 1};
      const Rational slack{2 * (2 * pow3(l - 1) + 2), horizon};
      for (std::int64_t i = 1; i < k; ++i) {
        const Rational di = sensitivity_set_arrow_extremal(x, t, m, i, horizon).density;
        ok = ok && di <= factor * dk + slack;
        seen << "l=" << l << ",i=" << i << ":" << di << " ";
      }
      seen << "l=" << l << ",ref:" << dk << " ";
    }
    return verdict(ok, "D(S_i) <= (2 3^(l-1) + 1) D(S_(2^(l-1)+1))", seen.str());
  });
  run.check("arrow-eventual-vacate", [&] {
    Rng rng = run.rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      auto w = random_word<ProductSymbol>(rng, uniform(rng, 1, 10));
      w.insert(w.begin(), kBlank);
      const auto x = Configuration<ProductSymbol>::finite(w, kBlank);
      HalfLine<ProductSymbol> h(x, 0);
      std::int64_t steps = 0;
      auto arrows = [&] {
        std::size_t n = 0;
        for (std::int64_t i = 0; i <= static_cast<std::int64_t>(w.size()); ++i) n += h.get(i).has_arrow();
        return n;
      };
      while (arrows() > 0 && steps < 100000) {
        h.step(t);
        ++steps;
      }
      if (arrows() > 0) return verdict(false, "arrows leave right of a blank", format_config(x));
    }
    return verdict(true, "arrows leave right of a blank", "100 trials");
  });
}

// ---------------------------------------------------------------- oracles

void suite_oracles(Runner& run) {
  const auto& t = run.rules().t;
  run.check("oracle-bruteforce-vs-extremal", [&] {
    Rng rng = run.rng(31);
    int cases = 0;
    while (cases < 60) {
      const std::int64_t n = uniform(rng, 1, 4);
      const std::int64_t depth = std::min<std::int64_t>(6, 10 - n);
      const std::int64_t horizon = uniform(rng, 1, depth);
      const std::int64_t j = uniform(rng, -n, std::min(n, n + depth - horizon));
      Word<ProductSymbol> core;
      for (std::int64_t i = -n; i <= n; ++i) core.push_back({random_symbol<A1Symbol>(rng), A2Symbol::kEmpty});
      core.back().digit = A1Symbol::kEmpty;
      const auto x = Configuration<ProductSymbol>(random_word<ProductSymbol>(rng, 2), core, {kBlank}, -n);
      const auto brute = sensitivity_set_bruteforce(x, t, n, {j}, horizon, depth, run.options().jobs);
      const auto fast = sensitivity_set_arrow_extremal(x, t, n, j, horizon);
      if (brute.times != fast.times) {
        return verdict(false, "identical sets",
                       format_config(x) + " n=" + std::to_string(n) + " j=" + std::to_string(j) +
                           " brute=" + join(brute.times) + " extremal=" + join(fast.times));
      }
      ++cases;
    }
    return verdict(true, "identical sets", std::to_string(cases) + " instances");
  });
  run.check("oracle-bruteforce-vs-orbits", [&] {
    Rng rng = run.rng(32);
    for (int trial = 0; trial < 30; ++trial) {
      const std::int64_t n = uniform(rng, 0, 3);
      const std::int64_t depth = uniform(rng, 1, 3);
      const std::int64_t horizon = uniform(rng, 0, depth);
      const std::int64_t j = uniform(rng, -n, n + depth - horizon);
      const auto x = random_config<ProductSymbol>(rng);
      const auto brute = sensitivity_set_bruteforce(x, t, n, {j}, horizon, depth, 1);
      const auto balls = ball_completions(x, n, depth, random_word<ProductSymbol>(rng, 2));
      std::vector<std::int64_t> naive;
      std::vector<std::vector<ProductSymbol>> columns;
      for (const auto& y : balls) {
        std::vector<ProductSymbol> col;
        for (const auto& z : orbit(y, t, horizon)) col.push_back(z.get(j));
        columns.push_back(col);
      }
      for (std::int64_t s = 0; s <= horizon; ++s) {
        for (const auto& col : columns) {
          if (!(col[static_cast<std::size_t>(s)] == columns[0][static_cast<std::size_t>(s)])) {
            naive.push_back(s);
            break;
          }
        }
      }
      if (naive != brute.times) {
        return verdict(false, "kernel equals orbit enumeration", format_config(x) + " " + join(naive) + " vs " + join(brute.times));
      }
    }
    return verdict(true, "kernel equals orbit enumeration", "30 instances");
  });
}

// ------------------------------------------------------------- divergence

void suite_divergence(Runner& run) {
  const auto& t = run.rules().t;
  run.check("no-equicontinuity-point", [&] {
    Rng rng = run.rng(41);
    std::int64_t latest = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const std::int64_t len = 2 * uniform(rng, 0, 4) + 1;
      const auto w = random_word<ProductSymbol>(rng, len);
      const auto [x, y] = build_divergence_pair(w);
      const auto d = first_divergence(x, y, t, 0, 10000);
      if (!d || *d <= len / 2) {
        return verdict(false, "column 0 separates after the cone bound",
                       format_word(w) + (d ? " at " + std::to_string(*d) : " never"));
      }
      latest = std::max(latest, *d);
    }
    return verdict(true, "column 0 separates after the cone bound", "100 words, latest " + std::to_string(latest));
  });
}

// ------------------------------------------------------------ certificate

void suite_certificate(Runner& run) {
  const auto& t = run.rules().t;
  for (int m = 0; m <= 2; ++m) {
    run.check("cascade-certificate-m" + std::to_string(m), [&, m] {
      const auto r = search_cascade_certificate({}, m, 10000, t);
      return verdict(r.certificate.passed, "max density <= " + r.certificate.threshold.str(),
                     "depth=" + std::to_string(r.depth) + " m'=" + std::to_string(r.m_prime) +
                         " max=" + r.certificate.max_density.str());
    });
  }
  run.check("cascade-threshold-level", [&] {
    const auto l0 = threshold_level(0, 0);
    const auto l1 = threshold_level(1, 0);
    const bool ok = l0 == 3 && !l1;
    auto r = cascade_certificate_at_depth({}, 0, 4, 10000, t);
    return verdict(ok && r.certificate.passed, "level 3 for m=0 and certificate passes, none for m=1",
                   "m=0:" + (l0 ? std::to_string(*l0) : std::string("none")) + " max=" + r.certificate.max_density.str());
  });
  run.check("cascade-prefix-certificate", [&] {
    Rng rng = run.rng(51);
    for (int trial = 0; trial < 5; ++trial) {
      Word<ProductSymbol> prefix;
      for (std::int64_t i = uniform(rng, 1, 4); i > 0; --i) prefix.push_back({random_symbol<A1Symbol>(rng), A2Symbol::kEmpty});
      const auto r = search_cascade_certificate(prefix, 1, 6000, t);
      if (!r.certificate.passed) {
        return verdict(false, "certificate at m=1", format_word(prefix) + " max=" + r.certificate.max_density.str());
      }
    }
    return verdict(true, "certificate at m=1", "5 prefixes");
  });
}

// ---------------------------------------------------------------- stacked

Word<StackedSymbol> random_ts_word(Rng& rng) {
  Word<StackedSymbol> w{{kBlank, A3Symbol::kB}};
  for (std::int64_t i = uniform(rng, 0, 6); i > 0; --i) w.push_back(random_symbol<StackedSymbol>(rng));
  return w;
}

void suite_stacked(Runner& run) {
  const auto& rs = run.rules();
  run.check("stacked-phase-obstruction", [&] {
    Rng rng = run.rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      const auto w = random_ts_word(rng);
      const auto pair = build_ts_pair(w, rs.ts);
      const auto cx = column_trace(pair.x, rs.ts, 0, 5000);
      const auto cy = column_trace(pair.y, rs.ts, 0, 5000);
      std::int64_t onset = -1;
      for (std::size_t i = 0; i < cx.size(); ++i) {
        if (!(cx[i] == cy[i])) {
          onset = static_cast<std::int64_t>(i);
          break;
        }
      }
      if (onset < 0 || onset + 501 >= static_cast<std::int64_t>(cx.size())) {
        return verdict(false, "onset within 4500 steps", format_word(w));
      }
      for (std::int64_t i = onset + 1; i <= onset + 500; ++i) {
        if (cx[static_cast<std::size_t>(i)] == cy[static_cast<std::size_t>(i)]) {
          return verdict(false, "column 0 differs after onset", format_word(w) + " agrees at " + std::to_string(i));
        }
      }
      const auto arrivals = arrow_presence_times(top_layer(pair.x), rs.t, {0}, onset + 1).front();
      if (arrivals.empty() || arrivals.front() != onset) {
        return verdict(false, "onset is the arrow's arrival", format_word(w) + " onset " + std::to_string(onset));
      }
    }
    return verdict(true, "column 0 differs at every step after the arrow arrives", "20 words");
  });
  for (int m = 0; m <= 1; ++m) {
    run.check("stacked-cascade-certificate-m" + std::to_string(m), [&, m] {
      const auto search = search_cascade_certificate({}, m, 10000, rs.t);
      const auto x = lift_to_stacked(build_cascade_point({{}, search.depth}), A3Symbol::kA);
      const auto c = diam_mean_certificate(x, rs.t, m, search.m_prime, 10000);
      return verdict(c.passed, "max density <= " + c.threshold.str(), "max=" + c.max_density.str());
    });
  }
}

// -------------------------------------------------------------- structure

template <Symbol S>
bool commutes(const RuleTable<S>& rule, Rng& rng, int trials) {
  for (int i = 0; i < trials; ++i) {
    const auto x = random_config<S>(rng);
    if (!(step(shift(x), rule) == shift(step(x, rule)))) return false;
  }
  return true;
}

template <Symbol S>
bool respects_cone(const RuleTable<S>& rule, Rng& rng) {
  const auto x = random_config<S>(rng);
  const std::int64_t j = uniform(rng, -8, 8);
  const std::int64_t t = uniform(rng, 0, 12);
  const auto inside = x.window_word({j, j + t});
  const auto y = x.splice_left(j - 1, random_word<S>(rng, uniform(rng, 0, 4)), random_word<S>(rng, 2))
                     .splice_right(j, inside, random_word<S>(rng, uniform(rng, 1, 3)));
  return column_trace(x, rule, j, t).back() == column_trace(y, rule, j, t).back();
}

void suite_structure(Runner& run) {
  const auto& rs = run.rules();
  run.check("shift-commutation", [&] {
    Rng rng = run.rng(71);
    const bool ok = commutes(rs.t1, rng, 1000) && commutes(rs.t, rng, 1000) && commutes(rs.t3, rng, 1000) &&
                    commutes(rs.ts, rng, 1000);
    return verdict(ok, "T sigma = sigma T", "4 x 1000 points");
  });
  run.check("blank-preservation", [&] {
    std::size_t bad = 0;
    for (auto [c, r, o] : rs.t1.entries()) bad += (c == A1Symbol::kEmpty) != (o == A1Symbol::kEmpty);
    for (auto [c, r, o] : rs.t.entries()) bad += (c.digit == A1Symbol::kEmpty) != (o.digit == A1Symbol::kEmpty);
    for (auto [c, r, o] : rs.t3.entries()) bad += (c == A3Symbol::kA) != (o == A3Symbol::kA);
    for (auto [c, r, o] : rs.ts.entries()) {
      bad += (c.top.digit == A1Symbol::kEmpty) != (o.top.digit == A1Symbol::kEmpty);
    }
    return verdict(bad == 0, "blank digits never appear or vanish", std::to_string(bad) + " entries break it");
  });
  run.check("dependence-cone", [&] {
    Rng rng = run.rng(72);
    for (int i = 0; i < 250; ++i) {
      if (!respects_cone(rs.t1, rng) || !respects_cone(rs.t, rng) || !respects_cone(rs.t3, rng) ||
          !respects_cone(rs.ts, rng)) {
        return verdict(false, "T^t x_j depends on [j, j+t] only", "trial " + std::to_string(i));
      }
    }
    return verdict(true, "T^t x_j depends on [j, j+t] only", "1000 trials");
  });
  run.check("sensitivity-monotonicity", [&] {
    Rng rng = run.rng(73);
    auto subset = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = random_config<A1Symbol>(rng);
      const std::int64_t n = uniform(rng, 0, 3);
      const std::int64_t horizon = uniform(rng, 1, 4);
      const std::int64_t j = uniform(rng, -n, n);
      const std::int64_t depth = std::max<std::int64_t>(0, j + horizon + 2 - n);
      const auto base = sensitivity_set_bruteforce(x, rs.t1, n, {j}, horizon, depth + 1, 1).times;
      const auto wider = sensitivity_set_bruteforce(x, rs.t1, n, {j, j + 1}, horizon, depth + 1, 1).times;
      const auto deeper = sensitivity_set_bruteforce(x, rs.t1, n + 1, {j}, horizon, depth, 1).times;
      if (!subset(base, wider) || !subset(deeper, base)) {
        return verdict(false, "monotone in J and n", format_config(x));
      }
    }
    return verdict(true, "monotone in J and n", "40 instances");
  });
  run.check("arrow-count-non-increasing", [&] {
    Rng rng = run.rng(74);
    for (int trial = 0; trial < 200; ++trial) {
      const auto w = random_word<ProductSymbol>(rng, uniform(rng, 1, 12));
      auto x = Configuration<ProductSymbol>::finite(w, kBlank);
      auto count = [](const Configuration<ProductSymbol>& c) {
        return std::count_if(c.core().begin(), c.core().end(), [](ProductSymbol s) { return s.has_arrow(); });
      };
      auto before = count(x);
      for (int n = 0; n < 40; ++n) {
        x = step(x, rs.t);
        const auto after = count(x);
        if (after > before) return verdict(false, "arrow count never grows", format_word(w));
        before = after;
      }
    }
    return verdict(true, "arrow count never grows", "200 words");
  });
  run.check("text-round-trip", [&] {
    Rng rng = run.rng(75);
    for (int trial = 0; trial < 500; ++trial) {
      const auto x = random_config<StackedSymbol>(rng);
      const auto y = random_config<ProductSymbol>(rng);
      if (!(parse_config<StackedSymbol>(format_config(x)) == x) || !(parse_config<ProductSymbol>(format_config(y)) == y)) {
        return verdict(false, "parse(format(x)) = x", format_config(x));
      }
    }
    return verdict(true, "parse(format(x)) = x", "1000 points");
  });
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all{
      {"example-tables", suite_example_tables}, {"rules", suite_rules},
      {"digits", suite_digits},                 {"periods", suite_periods},
      {"arrows", suite_arrows},                 {"oracles", suite_oracles},
      {"divergence", suite_divergence},         {"certificate", suite_certificate},
      {"stacked", suite_stacked},               {"structure", suite_structure},
  };
  return all;
}

template <Symbol S>
void corrupt(RuleTable<S>& table, std::string_view body, std::string_view spec) {
  const auto comma = body.find(',');
  const auto eq = body.find('=');
  if (comma == std::string_view::npos || eq == std::string_view::npos || eq < comma) {
    throw UsageError("bad corruption spec '" + std::string(spec) + "', want RULE:CENTER,RIGHT=OUT");
  }
  const auto c = SymbolTraits<S>::parse_token(body.substr(0, comma));
  const auto r = SymbolTraits<S>::parse_token(body.substr(comma + 1, eq - comma - 1));
  const auto o = SymbolTraits<S>::parse_token(body.substr(eq + 1));
  if (!c || !r || !o) throw UsageError("unknown symbol in corruption spec '" + std::string(spec) + "'");
  table.set(*c, *r, *o);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<VerifyResult> run_verify(std::string_view suite, const RuleSet& rules,
                                     const VerifyOptions& options) {
  std::vector<VerifyResult> out;
  bool found = false;
  for (const auto& [name, fn] : suites()) {
    if (suite != "all" && suite != name) continue;
    found = true;
    Runner runner(rules, options, name);
    fn(runner);
    auto part = runner.take();
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (!found) throw UsageError("unknown verify suite '" + std::string(suite) + "'");
  return out;
}

void apply_corruption(RuleSet& rules, std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw UsageError("bad corruption spec '" + std::string(spec) + "'");
  const auto id = parse_rule_id(spec.substr(0, colon));
  if (!id) throw UsageError("unknown rule in corruption spec '" + std::string(spec) + "'");
  const auto body = spec.substr(colon + 1);
  switch (*id) {
    case RuleId::kT1:
      corrupt(rules.t1, body, spec);
      break;
    case RuleId::kT:
      corrupt(rules.t, body, spec);
      break;
    case RuleId::kT3:
      corrupt(rules.t3, body, spec);
      break;
    case RuleId::kTs:
      corrupt(rules.ts, body, spec);
      break;
  }
}

std::string render_verify(const std::vector<VerifyResult>& results, bool csv) {
  std::ostringstream out;
  if (csv) {
    out << "check,status,expected,observed,runtime_ms,repro\n";
    for (const auto& r : results) {
      out << csv_field(r.check_name) << "," << status_name(r.status) << "," << csv_field(r.expected) << ","
          << csv_field(r.observed) << "," << static_cast<long long>(r.runtime_ms) << "," << csv_field(r.repro)
          << "\n";
    }
    return out.str();
  }
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.status == CheckStatus::kPass ? "PASS " : r.status == CheckStatus::kFail ? "FAIL " : "SKIP ")
        << r.check_name << "  (" << static_cast<long long>(r.runtime_ms) << " ms)\n";
    if (r.status == CheckStatus::kFail) {
      ++failed;
      out << "  expected: " << r.expected << "\n"
          << "  observed: " << r.observed << "\n"
          << "  repro:    " << r.repro << "\n";
    }
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return out.str();
}

}  // namespace skewca::cli
