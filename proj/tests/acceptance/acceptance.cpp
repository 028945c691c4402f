// Acceptance suite: one PASS/FAIL line per criterion.
//
//   skewca_acceptance            run every criterion
//   skewca_acceptance 4 8        run the listed criteria
//
// Exit status is 0 only when every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "skewca/analysis.hpp"
#include "skewca/constructions.hpp"
#include "skewca/engine.hpp"
#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"

#ifndef SKEWCA_FIXTURE_DIR
#error "SKEWCA_FIXTURE_DIR must point at tests/fixtures"
#endif

using namespace skewca;

namespace {

using Rng = std::mt19937_64;
using Times = std::vector<std::int64_t>;

struct Line {
  bool pass = true;
  std::string detail;
};

std::int64_t pow3(int k) {
  std::int64_t p = 1;
  while (k-- > 0) p *= 3;
  return p;
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <Symbol S>
Word<S> random_word(Rng& rng, std::int64_t len) {
  Word<S> w;
  for (std::int64_t i = 0; i < len; ++i) {
    w.push_back(SymbolTraits<S>::from_index(
        static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(SymbolTraits<S>::kCount) - 1))));
  }
  return w;
}

template <Symbol S>
Configuration<S> random_config(Rng& rng) {
  return Configuration<S>(random_word<S>(rng, uniform(rng, 1, 3)), random_word<S>(rng, uniform(rng, 0, 8)),
                          random_word<S>(rng, uniform(rng, 1, 3)), uniform(rng, -5, 5));
}

std::string show(const Times& v, std::size_t limit = 12) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < v.size() && i < limit; ++i) out << (i ? "," : "") << v[i];
  if (v.size() > limit) out << ",...";
  out << "}";
  return out.str();
}

// Running-density maximum over n in [H/2, H], computed in floating point
// directly from the time list.
double density_oracle(const Times& times, std::int64_t horizon) {
  double best = 0.0;
  for (std::int64_t n = (horizon + 1) / 2; n <= horizon; ++n) {
    if (n == 0) continue;
    const auto count = std::count_if(times.begin(), times.end(), [n](std::int64_t t) { return t < n; });
    best = std::max(best, static_cast<double>(count) / static_cast<double>(n));
  }
  return best;
}

// Plain array simulation of a finite digit word closed by a blank: the blank
// never changes and hides the rest of the line.
std::int64_t block_period_oracle(std::vector<int> cells, std::int64_t limit) {
  const std::vector<int> start = cells;
  for (std::int64_t t = 1; t <= limit; ++t) {
    for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
      if (cells[i] >= 0 && (cells[i + 1] < 0 || cells[i + 1] == 2)) cells[i] = (cells[i] + 1) % 3;
    }
    if (cells == start) return t;
  }
  return -1;
}

// ------------------------------------------------------------------ 1

struct TableFixture {
  std::string rule;
  std::string config;
  Window window;
  std::int64_t steps = 0;
  std::vector<std::string> rows;
};

std::vector<TableFixture> load_tables() {
  std::ifstream in(std::string(SKEWCA_FIXTURE_DIR) + "/orbit_tables.txt");
  if (!in) throw std::runtime_error("missing orbit_tables.txt");
  std::vector<TableFixture> out;
  std::string line;
  TableFixture cur;
  auto flush = [&] {
    if (!cur.rows.empty()) out.push_back(cur);
    cur = {};
  };
  while (std::getline(in, line)) {
    if (line.empty()) {
      flush();
    } else if (line.rfind("rule ", 0) == 0) {
      cur.rule = line.substr(5);
    } else if (line.rfind("config ", 0) == 0) {
      cur.config = line.substr(7);
    } else if (line.rfind("window ", 0) == 0) {
      const auto colon = line.find(':');
      cur.window = {std::stoll(line.substr(7, colon - 7)), std::stoll(line.substr(colon + 1))};
    } else if (line.rfind("steps ", 0) == 0) {
      cur.steps = std::stoll(line.substr(6));
    } else {
      cur.rows.push_back(line);
    }
  }
  flush();
  return out;
}

template <Symbol S>
std::vector<std::string> rows_of(const std::string& config, const RuleTable<S>& rule, Window w, std::int64_t steps) {
  std::vector<std::string> out;
  for (const auto& row : trace_table(parse_config<S>(config), rule, w, steps).rows) out.push_back(format_word(row));
  return out;
}

Line criterion_tables() {
  const auto start = std::chrono::steady_clock::now();
  const auto tables = load_tables();
  Line line;
  std::ostringstream detail;
  for (const auto& fx : tables) {
    const auto rows = fx.rule == "t1" ? rows_of(fx.config, t1_table(), fx.window, fx.steps)
                                      : rows_of(fx.config, t_table(), fx.window, fx.steps);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < fx.rows.size(); ++i) bad += i >= rows.size() || rows[i] != fx.rows[i];
    line.pass = line.pass && bad == 0 && fx.rows.size() == 28;
    detail << fx.config << ": " << (fx.rows.size() - bad) << "/" << fx.rows.size() << " rows; ";
  }
  // The arrow-tail table's own first row carries an arrow at cell 4; the point
  // named alongside it has a plain 0 there. Every later row agrees for both.
  const auto stated = rows_of("(_)|_0000|(<)", t_table(), {0, 5}, 27);
  std::size_t later = 0;
  for (std::size_t i = 1; i < stated.size(); ++i) later += stated[i] == tables.at(1).rows[i];
  detail << "point (_)|_0000|(<) gives row 0 " << stated[0] << " vs table " << tables.at(1).rows[0]
         << ", rows 1..27 match " << later << "/27";
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  line.pass = line.pass && later == 27 && secs < 1.0;
  detail << "; " << secs << " s";
  line.detail = detail.str();
  return line;
}

// ------------------------------------------------------------------ 2

Line criterion_periods() {
  const auto start = std::chrono::steady_clock::now();
  Line line;
  std::ostringstream bad;
  int cases = 0;
  for (int l = 0; l <= 4; ++l) {
    const std::int64_t top = l <= 3 ? (std::int64_t{1} << l) : 0;
    for (std::int64_t j = 0; j <= top; ++j) {
      const std::int64_t len = (std::int64_t{1} << l) + j;
      const auto report = detect_eventual_period(build_block_point(l, j), t1_table(), {0, len}, 1000000);
      std::vector<int> cells(static_cast<std::size_t>(len), 0);
      cells.push_back(-1);
      const std::int64_t oracle = block_period_oracle(cells, 1000000);
      ++cases;
      const std::int64_t want = pow3(l + 1);
      if (!report.confirmed || report.preperiod != 0 || report.period != want || oracle != want) {
        line.pass = false;
        bad << " l=" << l << ",j=" << j << ": period " << report.period << " (oracle " << oracle << ", want " << want
            << ")";
      }
    }
    // Pure powers: column 0 shows 0, 1, 2 for 3^l steps each.
    const auto col = column_trace(build_block_point(l, 0), t1_table(), 0, pow3(l + 1) - 1);
    for (std::int64_t i = 0; i < pow3(l + 1); ++i) {
      if (residue(col[static_cast<std::size_t>(i)]) != i / pow3(l)) {
        line.pass = false;
        bad << " l=" << l << ": phase at step " << i;
        break;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  line.pass = line.pass && secs < 10.0;
  line.detail = std::to_string(cases) + " blocks, " + std::to_string(secs) + " s" +
                (bad.str().empty() ? "" : ";" + bad.str());
  return line;
}

// ------------------------------------------------------------------ 3

Line criterion_schedule() {
  Line line;
  std::ostringstream detail;
  for (int l = 0; l <= 3; ++l) {
    const std::int64_t horizon = 5 * pow3(l + 1);
    Times want;
    for (std::int64_t k = 0; k * pow3(l + 1) + 2 * pow3(l) + 1 <= horizon; ++k) {
      want.push_back(k * pow3(l + 1) + 2 * pow3(l) + 1);
    }
    const auto got = sensitivity_set_arrow_extremal(build_gate_point(l), t_table(), (1 << l) + 1, 0, horizon).times;
    line.pass = line.pass && got == want;
    detail << "l=" << l << " " << show(got) << (got == want ? "" : " want " + show(want)) << "; ";
  }
  line.detail = detail.str();
  return line;
}

// ------------------------------------------------------------------ 4

Line criterion_density() {
  Line line;
  std::ostringstream detail;
  for (int l = 0; l <= 3; ++l) {
    const std::int64_t horizon = 10 * pow3(l + 1);
    const auto r = sensitivity_set_arrow_extremal(build_gate_point(l), t_table(), (1 << l) + 1, 0, horizon);
    const double d = density_oracle(r.times, horizon);
    const double bound = 1.0 / static_cast<double>(pow3(l + 1)) + 2.0 / static_cast<double>(horizon);
    line.pass = line.pass && d <= bound && std::abs(d - r.density.value()) < 1e-12;
    detail << "l=" << l << " " << d << " <= " << bound << "; ";
  }
  const auto r = sensitivity_set_arrow_extremal(build_gate_point(1), t_table(), 3, 0, 10000);
  const double d = density_oracle(r.times, 10000);
  line.pass = line.pass && std::abs(d - 1.0 / 9.0) <= 0.002;
  detail << "l=1 at 10^4: " << d << " vs 1/9";
  line.detail = detail.str();
  return line;
}

// ------------------------------------------------------------------ 5

Line criterion_two_block() {
  Line line;
  std::ostringstream detail;
  for (int l = 1; l <= 3; ++l) {
    const std::int64_t m = two_block_end(l);
    const std::int64_t k = (std::int64_t{1} << (l - 1)) + 1;
    const std::int64_t shift = 2 * pow3(l - 1);
    const std::int64_t horizon = 30 * pow3(l + 1);
    const auto x = build_two_block_point(l);
    auto times = [&](std::int64_t j) { return sensitivity_set_arrow_extremal(x, t_table(), m, j, horizon).times; };
    const Times s0 = times(0);
    const Times sk = times(k);
    Times moved;
    for (auto t : sk) {
      if (t + shift <= horizon) moved.push_back(t + shift);
    }
    const bool shift_ok = s0 == moved;
    const double slack = 2.0 / static_cast<double>(horizon);
    const double dk = density_oracle(sk, horizon);
    const double d0 = density_oracle(s0, horizon);
    bool ineq_ok = std::abs(d0 - dk) <= slack;
    double worst = 0.0;
    for (std::int64_t i = 1; i < k; ++i) {
      const double di = density_oracle(times(i), horizon);
      worst = std::max(worst, di);
      ineq_ok = ineq_ok && di <= static_cast<double>(2 * pow3(l - 1) + 1) * dk + slack;
    }
    line.pass = line.pass && shift_ok && ineq_ok;
    detail << "l=" << l << " shift " << (shift_ok ? "ok" : "broken " + show(s0) + " vs " + show(moved))
           << ", D0=" << d0 << " Dk=" << dk << " max Di=" << worst << (ineq_ok ? "" : " (inequality fails)") << "; ";
  }
  line.detail = detail.str();
  return line;
}

// ------------------------------------------------------------------ 6

Line criterion_oracles() {
  Rng rng(6);
  Line line;
  int cases = 0;
  while (cases < 60) {
    const std::int64_t n = uniform(rng, 1, 4);
    const std::int64_t depth = std::min<std::int64_t>(6, 10 - n);
    const std::int64_t horizon = uniform(rng, 1, depth);
    const std::int64_t j = uniform(rng, -n, std::min(n, n + depth - horizon));
    Word<ProductSymbol> core;
    for (std::int64_t i = -n; i <= n; ++i) {
      core.push_back({static_cast<A1Symbol>(uniform(rng, 0, 3)), A2Symbol::kEmpty});
    }
    core.back().digit = A1Symbol::kEmpty;
    const Configuration<ProductSymbol> x(random_word<ProductSymbol>(rng, 2), core, random_word<ProductSymbol>(rng, 2),
                                         -n);
    const auto brute = sensitivity_set_bruteforce(x, t_table(), n, {j}, horizon, depth, 2);
    const auto fast = sensitivity_set_arrow_extremal(x, t_table(), n, j, horizon);
    ++cases;
    if (brute.times != fast.times) {
      line.pass = false;
      line.detail = "differs on " + format_config(x) + " n=" + std::to_string(n) + " j=" + std::to_string(j) + ": " +
                    show(brute.times) + " vs " + show(fast.times);
      return line;
    }
  }
  line.detail = std::to_string(cases) + " instances identical";
  return line;
}

// ------------------------------------------------------------------ 7

Line criterion_divergence() {
  Rng rng(7);
  Line line;
  int separated = 0;
  std::int64_t latest = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto w = random_word<ProductSymbol>(rng, 2 * uniform(rng, 0, 4) + 1);
    const auto [x, y] = build_divergence_pair(w);
    const auto cx = column_trace(x, t_table(), 0, 10000);
    const auto cy = column_trace(y, t_table(), 0, 10000);
    const auto it = std::mismatch(cx.begin(), cx.end(), cy.begin());
    if (it.first != cx.end()) {
      ++separated;
      latest = std::max<std::int64_t>(latest, it.first - cx.begin());
    }
  }
  line.pass = separated == 100;
  line.detail = std::to_string(separated) + "/100 pairs separate, latest at step " + std::to_string(latest);
  return line;
}

// ------------------------------------------------------------------ 8

Line criterion_certificate() {
  const auto start = std::chrono::steady_clock::now();
  const std::int64_t horizon = 10000;
  const Rational slack{2, horizon};
  Line line;
  std::ostringstream detail;
  bool searched_ok = true;
  for (int m = 0; m <= 2; ++m) {
    const auto level = threshold_level(m, 0);
    if (level) {
      const auto r = cascade_certificate_at_depth({}, m, *level + 1, horizon, t_table());
      const bool ok = r.certificate.max_density <= r.certificate.threshold + slack;
      line.pass = line.pass && ok;
      detail << "m=" << m << " threshold l=" << *level << " m'=" << r.m_prime << " max "
             << r.certificate.max_density.value() << (ok ? " pass" : " FAIL") << "; ";
    } else {
      line.pass = false;
      detail << "m=" << m << " threshold inequality has no solution l; ";
    }
    const auto s = search_cascade_certificate({}, m, horizon, t_table());
    const bool ok = s.certificate.max_density <= s.certificate.threshold + slack;
    searched_ok = searched_ok && ok;
    detail << "m=" << m << " searched depth " << s.depth << " m'=" << s.m_prime << " max "
           << s.certificate.max_density.value() << " <= " << s.certificate.threshold.value() << (ok ? " pass" : " FAIL")
           << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  line.pass = line.pass && secs < 60.0;
  detail << "searched certificates " << (searched_ok ? "all pass" : "fail") << "; " << secs << " s";
  line.detail = detail.str();
  return line;
}

// ------------------------------------------------------------------ 9

Line criterion_stacked() {
  Rng rng(9);
  Line line;
  std::ostringstream detail;
  const auto ts = ts_table();
  int good = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Word<StackedSymbol> w{{kBlank, A3Symbol::kB}};
    const auto tail = random_word<StackedSymbol>(rng, uniform(rng, 0, 6));
    w.insert(w.end(), tail.begin(), tail.end());
    const auto pair = build_ts_pair(w, ts);
    const auto cx = column_trace(pair.x, ts, 0, 20000);
    const auto cy = column_trace(pair.y, ts, 0, 20000);
    std::int64_t onset = -1;
    for (std::size_t i = 0; i < cx.size(); ++i) {
      if (!(cx[i] == cy[i])) {
        onset = static_cast<std::int64_t>(i);
        break;
      }
    }
    bool ok = onset >= 0 && onset + 500 < static_cast<std::int64_t>(cx.size());
    for (std::int64_t i = onset + 1; ok && i <= onset + 500; ++i) {
      ok = !(cx[static_cast<std::size_t>(i)] == cy[static_cast<std::size_t>(i)]);
    }
    // The onset must be the arrow's arrival at column 0 in the arrow automaton.
    if (ok) {
      const auto arrivals = arrow_presence_times(top_layer(pair.x), t_table(), {0}, onset).front();
      ok = arrivals.size() == 1 && arrivals.front() == onset;
    }
    good += ok;
    if (!ok) detail << "word " << format_word(w) << " onset " << onset << "; ";
  }
  line.pass = good == 20;
  detail << good << "/20 pairs differ on [N+1, N+500]; ";
  for (int m = 0; m <= 1; ++m) {
    const auto s = search_cascade_certificate({}, m, 10000, t_table());
    const auto x = lift_to_stacked(build_cascade_point({{}, s.depth}), A3Symbol::kA);
    const auto c = diam_mean_certificate(x, t_table(), m, s.m_prime, 10000);
    const bool ok = c.max_density <= c.threshold + Rational{2, 10000};
    line.pass = line.pass && ok;
    detail << "stacked m=" << m << " depth " << s.depth << " max " << c.max_density.value() << (ok ? " pass" : " FAIL")
           << "; ";
  }
  line.detail = detail.str();
  return line;
}

// ----------------------------------------------------------------- 10

template <Symbol S>
int shift_failures(const RuleTable<S>& rule, Rng& rng) {
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = random_config<S>(rng);
    const auto a = step(shift(x), rule);
    const auto b = shift(step(x, rule));
    for (std::int64_t c = -20; c <= 20; ++c) {
      if (!(a.get(c) == b.get(c))) {
        ++bad;
        break;
      }
    }
  }
  return bad;
}

template <Symbol S>
int cone_failures(const RuleTable<S>& rule, Rng& rng, int trials) {
  int bad = 0;
  for (int i = 0; i < trials; ++i) {
    const auto x = random_config<S>(rng);
    const std::int64_t j = uniform(rng, -8, 8);
    const std::int64_t t = uniform(rng, 0, 12);
    const auto y = x.splice_left(j - 1, random_word<S>(rng, 3), random_word<S>(rng, 2))
                       .splice_right(j + t + 1, random_word<S>(rng, 3), random_word<S>(rng, 2));
    bad += !(orbit(x, rule, t).back().get(j) == orbit(y, rule, t).back().get(j));
  }
  return bad;
}

Line criterion_structure() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(10);
  Line line;
  std::ostringstream detail;
  const int shift_bad = shift_failures(t1_table(), rng) + shift_failures(t_table(), rng) +
                        shift_failures(t3_table(), rng) + shift_failures(ts_table(), rng);
  int blank_bad = 0;
  for (auto [c, r, o] : t1_table().entries()) blank_bad += (c == A1Symbol::kEmpty) != (o == A1Symbol::kEmpty);
  for (auto [c, r, o] : t_table().entries()) blank_bad += (c.digit == A1Symbol::kEmpty) != (o.digit == A1Symbol::kEmpty);
  for (auto [c, r, o] : ts_table().entries()) {
    blank_bad += (c.top.digit == A1Symbol::kEmpty) != (o.top.digit == A1Symbol::kEmpty);
  }
  const int cone_bad = cone_failures(t1_table(), rng, 250) + cone_failures(t_table(), rng, 250) +
                       cone_failures(t3_table(), rng, 250) + cone_failures(ts_table(), rng, 250);
  int mono_bad = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_config<ProductSymbol>(rng);
    const std::int64_t n = uniform(rng, 0, 2);
    const std::int64_t horizon = uniform(rng, 1, 3);
    const std::int64_t j = uniform(rng, -n, n);
    const std::int64_t depth = std::max<std::int64_t>(0, j + 1 + horizon - n);
    const auto base = sensitivity_set_bruteforce(x, t_table(), n, {j}, horizon, depth).times;
    const auto wide = sensitivity_set_bruteforce(x, t_table(), n, {j, j + 1}, horizon, depth).times;
    const auto deep = sensitivity_set_bruteforce(x, t_table(), n + 1, {j}, horizon, depth).times;
    mono_bad += !std::includes(wide.begin(), wide.end(), base.begin(), base.end()) ||
                !std::includes(base.begin(), base.end(), deep.begin(), deep.end());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  line.pass = shift_bad == 0 && blank_bad == 0 && cone_bad == 0 && mono_bad == 0 && secs < 30.0;
  detail << "shift " << shift_bad << "/4000 bad, blank " << blank_bad << " bad entries, cone " << cone_bad
         << "/1000 bad, monotonicity " << mono_bad << "/40 bad; " << secs << " s";
  line.detail = detail.str();
  return line;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<std::string, std::function<Line()>>> criteria{
      {1, {"example tables", criterion_tables}},
      {2, {"block period ladder", criterion_periods}},
      {3, {"arrow pass schedule", criterion_schedule}},
      {4, {"gate density bound", criterion_density}},
      {5, {"two-block relations", criterion_two_block}},
      {6, {"brute force equals arrow-extremal", criterion_oracles}},
      {7, {"no equicontinuity points", criterion_divergence}},
      {8, {"diam-mean certificate", criterion_certificate}},
      {9, {"stacked obstruction", criterion_stacked}},
      {10, {"structural properties", criterion_structure}},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [k, v] : criteria) selected.insert(k);
  }
  bool all = true;
  for (int k : selected) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::cerr << "unknown criterion " << k << "\n";
      return 2;
    }
    Line line;
    try {
      line = it->second.second();
    } catch (const std::exception& e) {
      line = {false, std::string("error: ") + e.what()};
    }
    all = all && line.pass;
    std::cout << (line.pass ? "PASS" : "FAIL") << " criterion " << k << " (" << it->second.first
              << "): " << line.detail << std::endl;
  }
  return all ? 0 : 1;
}
