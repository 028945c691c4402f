#include "skewca/analysis.hpp"

#include <ostream>
#include <sstream>

namespace skewca {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational dyadic(int k) {
  if (k < 0 || k > 62) throw std::invalid_argument("dyadic exponent out of range");
  return {1, std::int64_t{1} << k};
}

Rational upper_density_finite(const std::vector<std::int64_t>& times, std::int64_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<std::int64_t> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  Rational best{0, 1};
  std::size_t below = 0;  // |times ∩ [0, n)|
  for (std::int64_t n = 1; n <= horizon; ++n) {
    while (below < sorted.size() && sorted[below] < n) ++below;
    if (2 * n < horizon) continue;
    const Rational r{static_cast<std::int64_t>(below), n};
    if (best < r) best = r;
  }
  return best;
}

std::string_view method_name(SensitivityMethod m) {
  return m == SensitivityMethod::kBruteForce ? "bruteforce" : "arrow-extremal";
}

std::string sensitivity_csv(const std::vector<SensitivityReport>& reports) {
  std::ostringstream out;
  out << "time,present,method\n";
  for (const auto& r : reports) {
    std::size_t k = 0;
    for (std::int64_t t = 0; t <= r.horizon; ++t) {
      const bool present = k < r.times.size() && r.times[k] == t;
      if (present) ++k;
      out << t << "," << (present ? 1 : 0) << "," << method_name(r.method) << "\n";
    }
  }
  return out.str();
}

std::vector<std::vector<std::int64_t>> arrow_presence_times(
    const Configuration<ProductSymbol>& x, const RuleTable<ProductSymbol>& rule,
    const std::vector<std::int64_t>& columns, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be >= 0");
  std::vector<std::vector<std::int64_t>> out(columns.size());
  if (columns.empty()) return out;
  HalfLine<ProductSymbol> h(x, *std::min_element(columns.begin(), columns.end()));
  for (std::int64_t t = 0; t <= horizon; ++t) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (h.get(columns[c]).has_arrow()) out[c].push_back(t);
    }
    if (t < horizon) h.step(rule);
  }
  return out;
}

Configuration<ProductSymbol> arrow_saturated(const Configuration<ProductSymbol>& x,
                                             std::int64_t n) {
  return x.splice_right(n + 1, {}, {kBlankArrow});
}

void check_extremal_hypothesis(const Configuration<ProductSymbol>& x, std::int64_t n,
                               const std::vector<std::int64_t>& columns) {
  if (n < 0) throw HypothesisError("n must be >= 0");
  for (std::int64_t i = -n; i <= n; ++i) {
    if (x.get(i).has_arrow()) {
      throw HypothesisError("arrow at cell " + std::to_string(i) + " inside [-n, n]");
    }
  }
  if (x.get(n).digit != A1Symbol::kEmpty) {
    throw HypothesisError("digit at cell n = " + std::to_string(n) + " is not blank");
  }
  for (std::int64_t j : columns) {
    if (j < -n || j > n) throw HypothesisError("column " + std::to_string(j) + " outside [-n, n]");
  }
}

SensitivityReport sensitivity_set_arrow_extremal(const Configuration<ProductSymbol>& x,
                                                 const RuleTable<ProductSymbol>& rule,
                                                 std::int64_t n, std::int64_t j,
                                                 std::int64_t horizon) {
  check_extremal_hypothesis(x, n, {j});
  SensitivityReport report{format_config(x), n, {j}, horizon, {}, {},
                           SensitivityMethod::kArrowExtremal};
  report.times = arrow_presence_times(arrow_saturated(x, n), rule, {j}, horizon).front();
  report.density = upper_density_finite(report.times, std::max<std::int64_t>(horizon, 1));
  return report;
}

Configuration<ProductSymbol> top_layer(const Configuration<StackedSymbol>& x) {
  auto project = [](const Word<StackedSymbol>& w) {
    Word<ProductSymbol> out;
    out.reserve(w.size());
    for (const auto& s : w) out.push_back(s.top);
    return out;
  };
  return Configuration<ProductSymbol>(project(x.left_tail()), project(x.core()),
                                      project(x.right_tail()), x.origin());
}

SensitivityReport sensitivity_set_arrow_extremal(const Configuration<StackedSymbol>& x,
                                                 const RuleTable<ProductSymbol>& top_rule,
                                                 std::int64_t n, std::int64_t j,
                                                 std::int64_t horizon) {
  if (x.get(j).bottom != A3Symbol::kA) {
    throw HypothesisError("phase layer at column " + std::to_string(j) + " is not a");
  }
  SensitivityReport report = sensitivity_set_arrow_extremal(top_layer(x), top_rule, n, j, horizon);
  report.configuration = format_config(x);
  return report;
}

namespace {

template <class Point>
DiamMeanCertificate certify(const Point& x, const Configuration<ProductSymbol>& top,
                            const RuleTable<ProductSymbol>& rule, int m, std::int64_t m_prime,
                            std::int64_t horizon) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (m_prime < m + 1) throw HypothesisError("m' must be at least m + 1");
  std::vector<std::int64_t> columns;
  for (std::int64_t j = -(m + 1); j <= m + 1; ++j) columns.push_back(j);
  check_extremal_hypothesis(top, m_prime, columns);

  const auto times = arrow_presence_times(arrow_saturated(top, m_prime), rule, columns, horizon);
  auto times_at = [&](std::int64_t j) -> const std::vector<std::int64_t>& {
    return times[static_cast<std::size_t>(j + m + 1)];
  };

  DiamMeanCertificate c;
  c.configuration = format_config(x);
  c.m = m;
  c.m_prime = m_prime;
  c.horizon = horizon;
  c.threshold = dyadic(m + 2);
  c.converse_threshold = dyadic(m);
  const Rational column0 = upper_density_finite(times_at(0), horizon);
  for (std::int64_t j = 0; j <= m + 1; ++j) {
    ColumnPairDensity d;
    d.j = j;
    d.right = upper_density_finite(times_at(j), horizon);
    d.left = upper_density_finite(times_at(-j), horizon);
    std::vector<std::int64_t> merged;
    std::set_union(times_at(j).begin(), times_at(j).end(), times_at(-j).begin(),
                   times_at(-j).end(), std::back_inserter(merged));
    d.pair = upper_density_finite(merged, horizon);
    d.left_within_column0 = d.left <= column0;
    if (c.max_density < d.pair) c.max_density = d.pair;
    c.columns.push_back(d);
  }
  c.passed = c.max_density <= c.threshold;
  c.passed_converse = c.max_density <= c.converse_threshold;
  return c;
}

}  // namespace

DiamMeanCertificate diam_mean_certificate(const Configuration<ProductSymbol>& x,
                                          const RuleTable<ProductSymbol>& rule, int m,
                                          std::int64_t m_prime, std::int64_t horizon) {
  return certify(x, x, rule, m, m_prime, horizon);
}

DiamMeanCertificate diam_mean_certificate(const Configuration<StackedSymbol>& x,
                                          const RuleTable<ProductSymbol>& top_rule, int m,
                                          std::int64_t m_prime, std::int64_t horizon) {
  for (std::int64_t j = -(m + 1); j <= m + 1; ++j) {
    if (x.get(j).bottom != A3Symbol::kA) {
      throw HypothesisError("phase layer at column " + std::to_string(j) + " is not a");
    }
  }
  return certify(x, top_layer(x), top_rule, m, m_prime, horizon);
}

std::string render_certificate(const DiamMeanCertificate& c) {
  std::ostringstream out;
  out << "configuration=" << c.configuration << "\n"
      << "m=" << c.m << "\n"
      << "m_prime=" << c.m_prime << "\n"
      << "horizon=" << c.horizon << "\n";
  for (const auto& d : c.columns) {
    out << "density[" << d.j << "]=" << d.pair << " (" << d.pair.value() << ")"
        << " right=" << d.right << " left=" << d.left
        << " left_within_column0=" << (d.left_within_column0 ? "true" : "false") << "\n";
  }
  out << "max_density=" << c.max_density << " (" << c.max_density.value() << ")\n"
      << "threshold=" << c.threshold << "\n"
      << "converse_threshold=" << c.converse_threshold << "\n"
      << "passed=" << (c.passed ? "true" : "false") << "\n"
      << "passed_converse=" << (c.passed_converse ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace skewca
