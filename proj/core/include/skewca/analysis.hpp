#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "skewca/configuration.hpp"
#include "skewca/engine.hpp"
#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"

namespace skewca {

// Exact non-negative fractions; numerators and denominators stay far below
// 2^31 for every horizon the tools accept.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// 1 / 2^k.
Rational dyadic(int k);

/// Finite-horizon stand-in for the upper density: the largest running
/// fraction |times ∩ [0, n)| / n over n in [horizon/2, horizon].
Rational upper_density_finite(const std::vector<std::int64_t>& times, std::int64_t horizon);

class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SensitivityMethod { kBruteForce, kArrowExtremal };

std::string_view method_name(SensitivityMethod m);

// S_J(x, n) ∩ [0, horizon].
struct SensitivityReport {
  std::string configuration;
  std::int64_t n = 0;
  std::vector<std::int64_t> columns;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> times;
  Rational density;
  SensitivityMethod method = SensitivityMethod::kBruteForce;
};

/// Rows "time,present,method" for t = 0..horizon.
std::string sensitivity_csv(const std::vector<SensitivityReport>& reports);

namespace detail {

inline std::int64_t checked_power(std::int64_t base, std::int64_t exp, std::int64_t limit) {
  std::int64_t out = 1;
  for (std::int64_t k = 0; k < exp; ++k) {
    if (out > limit / base) throw std::invalid_argument("enumeration too large");
    out *= base;
  }
  return out;
}

/// Runs body(begin, end, worker) over [0, count) split across `jobs` threads.
template <class Body>
void parallel_ranges(std::int64_t count, unsigned jobs, Body&& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::int64_t>(count, 1))));
  if (jobs == 1) {
    body(0, count, 0u);
    return;
  }
  std::vector<std::thread> workers;
  const std::int64_t chunk = (count + jobs - 1) / jobs;
  for (unsigned w = 0; w < jobs; ++w) {
    const std::int64_t begin = std::min<std::int64_t>(count, w * chunk);
    const std::int64_t end = std::min<std::int64_t>(count, begin + chunk);
    workers.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : workers) t.join();
}

// Finite strip [lo, hi] of a ball completion. Cells up to `fixed_hi` come
// from the centre point, the rest are enumerated. After t steps, cells
// [lo, hi - t] are still exact.
template <Symbol S>
struct Strip {
  std::int64_t lo;
  std::int64_t hi;
  std::vector<std::uint8_t> base;
  std::int64_t free_begin;  // first enumerated cell
  std::int64_t free_count;

  Strip(const Configuration<S>& x, std::int64_t lo_, std::int64_t hi_, std::int64_t fixed_hi)
      : lo(lo_), hi(hi_) {
    for (std::int64_t i = lo; i <= hi; ++i) {
      base.push_back(static_cast<std::uint8_t>(SymbolTraits<S>::index(x.get(i))));
    }
    free_begin = std::max(fixed_hi + 1, lo);
    free_count = std::max<std::int64_t>(0, hi - free_begin + 1);
  }

  std::int64_t completions() const {
    return checked_power(static_cast<std::int64_t>(SymbolTraits<S>::kCount), free_count,
                         std::int64_t{1} << 40);
  }

  void fill(std::int64_t index, std::vector<std::uint8_t>& row) const {
    row = base;
    for (std::int64_t k = 0; k < free_count; ++k) {
      row[static_cast<std::size_t>(free_begin - lo + k)] =
          static_cast<std::uint8_t>(index % static_cast<std::int64_t>(SymbolTraits<S>::kCount));
      index /= static_cast<std::int64_t>(SymbolTraits<S>::kCount);
    }
  }
};

template <Symbol S>
void strip_step(const RuleTable<S>& rule, std::vector<std::uint8_t>& row, std::size_t valid) {
  for (std::size_t k = 0; k + 1 < valid; ++k) row[k] = rule.apply_code(row[k], row[k + 1]);
}

}  // namespace detail

/// Every point agreeing with x on (-inf, n], with cells (n, n + suffix_depth]
/// ranging over all words and `tail` repeated beyond. Cells left of -n are
/// kept from x: no column >= -n reads them.
template <Symbol S>
std::vector<Configuration<S>> ball_completions(const Configuration<S>& x, std::int64_t n,
                                               std::int64_t suffix_depth, const Word<S>& tail) {
  if (suffix_depth < 0) throw std::invalid_argument("suffix_depth must be >= 0");
  const auto base = static_cast<std::int64_t>(SymbolTraits<S>::kCount);
  const std::int64_t count = detail::checked_power(base, suffix_depth, std::int64_t{1} << 24);
  std::vector<Configuration<S>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t c = 0; c < count; ++c) {
    Word<S> middle;
    std::int64_t v = c;
    for (std::int64_t k = 0; k < suffix_depth; ++k) {
      middle.push_back(SymbolTraits<S>::from_index(static_cast<std::size_t>(v % base)));
      v /= base;
    }
    out.push_back(x.splice_right(n + 1, middle, tail));
  }
  return out;
}

// Exact S_J(x, n) ∩ [0, horizon] by enumerating every completion of the
// dependence cone [min J, max J + horizon] to the right of n.
template <Symbol S>
SensitivityReport sensitivity_set_bruteforce(const Configuration<S>& x, const RuleTable<S>& rule,
                                             std::int64_t n, std::vector<std::int64_t> columns,
                                             std::int64_t horizon, std::int64_t suffix_depth,
                                             unsigned jobs = 1) {
  if (horizon < 0 || suffix_depth < 0 || n < 0) {
    throw std::invalid_argument("n, horizon and suffix_depth must be >= 0");
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  SensitivityReport report{format_config(x), n, columns, horizon, {}, {}, SensitivityMethod::kBruteForce};
  if (columns.empty()) return report;

  const std::int64_t lo = columns.front();
  const std::int64_t hi = columns.back() + horizon;
  if (hi > n + suffix_depth) throw std::invalid_argument("horizon exceeds enumerated dependence cone");

  const detail::Strip<S> strip(x, lo, hi, n);
  const std::int64_t count = strip.completions();
  const auto steps = static_cast<std::size_t>(horizon) + 1;

  auto observe = [&](std::int64_t index, std::vector<std::uint8_t>& row,
                     std::vector<std::uint8_t>& out) {
    strip.fill(index, row);
    out.clear();
    std::size_t valid = row.size();
    for (std::size_t t = 0; t < steps; ++t) {
      for (std::int64_t j : columns) out.push_back(row[static_cast<std::size_t>(j - lo)]);
      detail::strip_step(rule, row, valid);
      --valid;
    }
  };

  std::vector<std::uint8_t> row;
  std::vector<std::uint8_t> reference;
  observe(0, row, reference);

  const std::size_t width = columns.size();
  std::vector<std::vector<char>> differs(std::max(1u, jobs), std::vector<char>(steps, 0));
  detail::parallel_ranges(count - 1, jobs, [&](std::int64_t begin, std::int64_t end, unsigned w) {
    std::vector<std::uint8_t> local_row;
    std::vector<std::uint8_t> seen;
    auto& flags = differs[w];
    for (std::int64_t c = begin + 1; c < end + 1; ++c) {
      observe(c, local_row, seen);
      for (std::size_t t = 0; t < steps; ++t) {
        if (flags[t]) continue;
        flags[t] = !std::equal(seen.begin() + static_cast<std::ptrdiff_t>(t * width),
                               seen.begin() + static_cast<std::ptrdiff_t>((t + 1) * width),
                               reference.begin() + static_cast<std::ptrdiff_t>(t * width));
      }
    }
  });
  for (std::size_t t = 0; t < steps; ++t) {
    bool any = false;
    for (const auto& flags : differs) any = any || flags[t];
    if (any) report.times.push_back(static_cast<std::int64_t>(t));
  }
  report.density = upper_density_finite(report.times, std::max<std::int64_t>(horizon, 1));
  return report;
}

/// Times t <= horizon at which x and y differ somewhere on `columns`.
/// For two points of one ball this is a lower bound for S_J.
template <Symbol S>
std::vector<std::int64_t> disagreement_times(const Configuration<S>& x, const Configuration<S>& y,
                                             const RuleTable<S>& rule,
                                             const std::vector<std::int64_t>& columns,
                                             std::int64_t horizon) {
  std::vector<std::int64_t> out;
  if (columns.empty()) return out;
  const std::int64_t lo = *std::min_element(columns.begin(), columns.end());
  HalfLine<S> a(x, lo);
  HalfLine<S> b(y, lo);
  for (std::int64_t t = 0; t <= horizon; ++t) {
    for (std::int64_t j : columns) {
      if (!(a.get(j) == b.get(j))) {
        out.push_back(t);
        break;
      }
    }
    if (t < horizon) {
      a.step(rule);
      b.step(rule);
    }
  }
  return out;
}

/// Arrow-presence times, t = 0..horizon, at each requested column of the
/// orbit of x.
std::vector<std::vector<std::int64_t>> arrow_presence_times(
    const Configuration<ProductSymbol>& x, const RuleTable<ProductSymbol>& rule,
    const std::vector<std::int64_t>& columns, std::int64_t horizon);

/// The point x with every cell right of n replaced by an arrow on blank.
Configuration<ProductSymbol> arrow_saturated(const Configuration<ProductSymbol>& x,
                                             std::int64_t n);

/// Throws HypothesisError unless x has no arrows on [-n, n] and a blank
/// digit at n, which is what makes the single saturated orbit exact.
void check_extremal_hypothesis(const Configuration<ProductSymbol>& x, std::int64_t n,
                               const std::vector<std::int64_t>& columns);

// S_{j}(x, n) for the arrow automaton from a single orbit: with a blank digit
// at n sealing the digit layer, two ball points can only differ at j through
// arrows, and the saturated right side produces every arrival any completion
// can produce.
SensitivityReport sensitivity_set_arrow_extremal(const Configuration<ProductSymbol>& x,
                                                 const RuleTable<ProductSymbol>& rule,
                                                 std::int64_t n, std::int64_t j,
                                                 std::int64_t horizon);

/// Stacked version: valid when the phase layer is `a` at column j, where it
/// can never change, so only the top layer distinguishes ball points.
SensitivityReport sensitivity_set_arrow_extremal(const Configuration<StackedSymbol>& x,
                                                 const RuleTable<ProductSymbol>& top_rule,
                                                 std::int64_t n, std::int64_t j,
                                                 std::int64_t horizon);

Configuration<ProductSymbol> top_layer(const Configuration<StackedSymbol>& x);

struct ColumnPairDensity {
  std::int64_t j = 0;
  Rational right;  // density of S_{j}
  Rational left;   // density of S_{-j}
  Rational pair;   // density of S_{-j} ∪ S_{j}
  bool left_within_column0 = true;  // D(S_{-j}) <= D(S_{0})
};

// Finite-scale check of the diam-mean criterion at resolution m: every pair
// density D(S_{-j,j}(x, m')) for 0 <= j <= m + 1 must be at most 1/2^(m+2).
// The weaker margin 1/2^m is recorded alongside.
struct DiamMeanCertificate {
  std::string configuration;
  int m = 0;
  std::int64_t m_prime = 0;
  std::int64_t horizon = 0;
  std::vector<ColumnPairDensity> columns;
  Rational threshold;
  Rational converse_threshold;
  Rational max_density;
  bool passed = false;
  bool passed_converse = false;
};

DiamMeanCertificate diam_mean_certificate(const Configuration<ProductSymbol>& x,
                                          const RuleTable<ProductSymbol>& rule, int m,
                                          std::int64_t m_prime, std::int64_t horizon);

/// Stacked version; the phase layer must be `a` on [-(m+1), m+1].
DiamMeanCertificate diam_mean_certificate(const Configuration<StackedSymbol>& x,
                                          const RuleTable<ProductSymbol>& top_rule, int m,
                                          std::int64_t m_prime, std::int64_t horizon);

std::string render_certificate(const DiamMeanCertificate& c);

// diam(T^i B) over the enumerated completions, measured on columns
// |j| <= resolution_i = m' + suffix_depth - i (everything wider is not
// determined by the enumeration). Diameters that vanish at that resolution are
// reported as the floor 2^-(resolution_i + 1), an upper bound.
struct DiameterEntry {
  std::int64_t time = 0;
  std::optional<std::int64_t> exponent;  // diameter = 2^-exponent
  std::int64_t resolution = 0;

  double upper_bound() const {
    return std::ldexp(1.0, -static_cast<int>(exponent ? *exponent : resolution + 1));
  }
};

struct DiameterProfile {
  std::vector<DiameterEntry> entries;
  std::vector<double> running_mean;  // mean of upper_bound over [0, i]
};

template <Symbol S>
DiameterProfile ball_diameter_profile(const Configuration<S>& x, const RuleTable<S>& rule,
                                      std::int64_t m_prime, std::int64_t horizon,
                                      std::int64_t suffix_depth, unsigned jobs = 1) {
  if (horizon < 0 || horizon > suffix_depth) {
    throw std::invalid_argument("horizon exceeds enumerated dependence cone");
  }
  const std::int64_t reach = m_prime + suffix_depth;
  const detail::Strip<S> strip(x, -reach, reach, m_prime);
  const std::int64_t count = strip.completions();
  const auto steps = static_cast<std::size_t>(horizon) + 1;
  const std::int64_t none = reach + 1;

  auto run = [&](std::int64_t index, std::vector<std::uint8_t>& row,
                 std::vector<std::vector<std::uint8_t>>& rows) {
    strip.fill(index, row);
    rows.resize(steps);
    std::size_t valid = row.size();
    for (std::size_t t = 0; t < steps; ++t) {
      rows[t] = row;
      detail::strip_step(rule, row, valid);
      --valid;
    }
  };

  std::vector<std::uint8_t> row;
  std::vector<std::vector<std::uint8_t>> reference;
  run(0, row, reference);

  std::vector<std::vector<std::int64_t>> nearest(std::max(1u, jobs),
                                                 std::vector<std::int64_t>(steps, none));
  detail::parallel_ranges(count - 1, jobs, [&](std::int64_t begin, std::int64_t end, unsigned w) {
    std::vector<std::uint8_t> local_row;
    std::vector<std::vector<std::uint8_t>> rows;
    auto& best = nearest[w];
    for (std::int64_t c = begin + 1; c < end + 1; ++c) {
      run(c, local_row, rows);
      for (std::size_t t = 0; t < steps; ++t) {
        const std::int64_t resolution = reach - static_cast<std::int64_t>(t);
        for (std::int64_t d = 0; d <= std::min(resolution, best[t] - 1); ++d) {
          const auto right = static_cast<std::size_t>(reach + d);
          const auto left = static_cast<std::size_t>(reach - d);
          if (rows[t][right] != reference[t][right] || rows[t][left] != reference[t][left]) {
            best[t] = d;
            break;
          }
        }
      }
    }
  });

  DiameterProfile profile;
  double sum = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    std::int64_t d = none;
    for (const auto& best : nearest) d = std::min(d, best[t]);
    DiameterEntry e{static_cast<std::int64_t>(t), std::nullopt, reach - static_cast<std::int64_t>(t)};
    if (d < none) e.exponent = d;
    sum += e.upper_bound();
    profile.entries.push_back(e);
    profile.running_mean.push_back(sum / static_cast<double>(t + 1));
  }
  return profile;
}

}  // namespace skewca
