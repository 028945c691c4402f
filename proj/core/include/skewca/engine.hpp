#pragma once

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "skewca/configuration.hpp"
#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"

namespace skewca {

/// One global step: result_i = rule(x_i, x_{i+1}) for every i.
template <Symbol S>
Configuration<S> step(const Configuration<S>& x, const RuleTable<S>& rule) {
  const std::int64_t a = x.core_begin();
  const std::int64_t b = x.core_end();
  const Word<S>& left = x.left_tail();
  const Word<S>& right = x.right_tail();
  const auto nl = static_cast<std::int64_t>(left.size());

  // Left tail image ends at a - 2; cell a - 1 is the first that can see the core.
  Word<S> new_left;
  new_left.reserve(left.size());
  for (std::int64_t k = 0; k < nl; ++k) {
    const std::int64_t i = a - 1 - nl + k;
    new_left.push_back(rule(x.get(i), x.get(i + 1)));
  }
  Word<S> new_core;
  new_core.reserve(static_cast<std::size_t>(b - a + 1));
  for (std::int64_t i = a - 1; i < b; ++i) new_core.push_back(rule(x.get(i), x.get(i + 1)));
  Word<S> new_right;
  new_right.reserve(right.size());
  for (std::size_t k = 0; k < right.size(); ++k) {
    new_right.push_back(rule(right[k], right[(k + 1) % right.size()]));
  }
  return Configuration<S>(std::move(new_left), std::move(new_core), std::move(new_right), a - 1);
}

/// x, Tx, ..., T^steps x.
template <Symbol S>
std::vector<Configuration<S>> orbit(const Configuration<S>& x, const RuleTable<S>& rule,
                                    std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  std::vector<Configuration<S>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(x);
  for (std::int64_t n = 0; n < steps; ++n) out.push_back(step(out.back(), rule));
  return out;
}

/// Cells that T^t x_j can depend on.
inline Window dependence_cone(std::int64_t j, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  return {j, j + t};
}

// The configuration restricted to [lo, +inf). A one-sided rule maps this
// half-line to itself, so it is a closed finite state: a body word on
// [lo, lo + |body|) followed by a periodic tail. Kept canonical (shortest
// body, primitive tail) so that equal half-lines have equal keys.
template <Symbol S>
class HalfLine {
 public:
  HalfLine(const Configuration<S>& x, std::int64_t lo) : lo_(lo) {
    const std::int64_t b = std::max(lo, x.core_end());
    body_ = x.window_word({lo, b - 1});
    tail_ = x.window_word({b, b + static_cast<std::int64_t>(x.right_tail().size()) - 1});
    canonicalize();
  }

  std::int64_t lo() const { return lo_; }
  const Word<S>& body() const { return body_; }
  const Word<S>& tail() const { return tail_; }

  S get(std::int64_t i) const {
    const std::int64_t k = i - lo_;
    if (k < 0) throw std::out_of_range("cell left of half-line");
    const auto nb = static_cast<std::int64_t>(body_.size());
    if (k < nb) return body_[static_cast<std::size_t>(k)];
    return tail_[static_cast<std::size_t>((k - nb) % static_cast<std::int64_t>(tail_.size()))];
  }

  Word<S> window_word(Window w) const {
    Word<S> out;
    out.reserve(static_cast<std::size_t>(w.width()));
    for (std::int64_t i = w.lo; i <= w.hi; ++i) out.push_back(get(i));
    return out;
  }

  void step(const RuleTable<S>& rule) {
    const std::size_t nb = body_.size();
    for (std::size_t k = 0; k < nb; ++k) {
      body_[k] = rule(body_[k], k + 1 < nb ? body_[k + 1] : tail_[0]);
    }
    const S first = tail_[0];
    for (std::size_t k = 0; k < tail_.size(); ++k) {
      tail_[k] = rule(tail_[k], k + 1 < tail_.size() ? tail_[k + 1] : first);
    }
    canonicalize();
  }

  /// Replaces everything right of the first blocking symbol at index >= from
  /// by copies of it. Cells left of a blocking symbol never read past it, so
  /// the evolution of [lo, seal] is unchanged. Returns the seal index.
  std::optional<std::int64_t> seal(std::int64_t from, const std::vector<S>& blocking) {
    const std::int64_t start = std::max(from, lo_);
    const std::int64_t stop =
        lo_ + static_cast<std::int64_t>(body_.size() + tail_.size()) + std::max<std::int64_t>(0, start - lo_);
    for (std::int64_t i = start; i < stop; ++i) {
      const S s = get(i);
      if (std::find(blocking.begin(), blocking.end(), s) == blocking.end()) continue;
      body_ = window_word({lo_, i - 1});
      tail_ = {s};
      canonicalize();
      return i;
    }
    return std::nullopt;
  }

  /// Byte string identifying the half-line exactly.
  std::string key() const {
    std::string k;
    k.reserve(body_.size() + tail_.size() + 1);
    for (S s : body_) k.push_back(static_cast<char>(SymbolTraits<S>::index(s)));
    k.push_back(static_cast<char>(0x7f));
    for (S s : tail_) k.push_back(static_cast<char>(SymbolTraits<S>::index(s)));
    return k;
  }

  friend bool operator==(const HalfLine&, const HalfLine&) = default;

 private:
  void canonicalize() {
    reduce_to_primitive(tail_);
    while (!body_.empty() && body_.back() == tail_.back()) {
      body_.pop_back();
      rotate_right_one(tail_);
    }
  }

  std::int64_t lo_;
  Word<S> body_;
  Word<S> tail_;
};

// Rows T^0 x|W, ..., T^steps x|W.
template <Symbol S>
struct OrbitTrace {
  std::string rule;
  Window window;
  std::vector<Word<S>> rows;
  std::int64_t steps = 0;
};

template <Symbol S>
OrbitTrace<S> trace_table(const Configuration<S>& x, const RuleTable<S>& rule, Window window,
                          std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (window.lo > window.hi) throw std::invalid_argument("empty window");
  OrbitTrace<S> trace{rule.name(), window, {}, steps};
  trace.rows.reserve(static_cast<std::size_t>(steps) + 1);
  HalfLine<S> h(x, window.lo);
  for (std::int64_t n = 0; n <= steps; ++n) {
    trace.rows.push_back(h.window_word(window));
    if (n < steps) h.step(rule);
  }
  return trace;
}

/// T^n x_j for n = 0..steps.
template <Symbol S>
Word<S> column_trace(const Configuration<S>& x, const RuleTable<S>& rule, std::int64_t j,
                     std::int64_t steps) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  Word<S> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  HalfLine<S> h(x, j);
  for (std::int64_t n = 0; n <= steps; ++n) {
    out.push_back(h.get(j));
    if (n < steps) h.step(rule);
  }
  return out;
}

struct PeriodReport {
  std::int64_t preperiod = 0;
  std::int64_t period = 1;
  bool confirmed = false;
  std::int64_t horizon = 0;

  friend bool operator==(const PeriodReport&, const PeriodReport&) = default;
};

std::ostream& operator<<(std::ostream& os, const PeriodReport& r);

namespace detail {

/// Exact (preperiod, period) of a sequence known to satisfy
/// seq[t + cycle] = seq[t] for every t >= start; seq holds at least
/// start + cycle entries.
template <class T>
std::pair<std::int64_t, std::int64_t> minimize_period(const std::vector<T>& seq,
                                                      std::int64_t start, std::int64_t cycle) {
  auto at = [&](std::int64_t t) -> const T& {
    if (t < start) return seq[static_cast<std::size_t>(t)];
    return seq[static_cast<std::size_t>(start + (t - start) % cycle)];
  };
  std::int64_t period = cycle;
  for (std::int64_t p = 1; p < cycle; ++p) {
    if (cycle % p != 0) continue;
    bool ok = true;
    for (std::int64_t t = start; t < start + cycle && ok; ++t) ok = at(t) == at(t + p);
    if (ok) {
      period = p;
      break;
    }
  }
  std::int64_t pre = start;
  while (pre > 0 && at(pre - 1) == at(pre - 1 + period)) --pre;
  return {pre, period};
}

/// Shortest period with two full repetitions at the end of an observed
/// prefix; used when no state cycle was certified.
template <class T>
std::pair<std::int64_t, std::int64_t> best_effort_period(const std::vector<T>& seq) {
  const auto n = static_cast<std::int64_t>(seq.size());
  for (std::int64_t p = 1; 2 * p <= n; ++p) {
    bool ok = true;
    for (std::int64_t t = n - 2 * p; t + p < n && ok; ++t) {
      ok = seq[static_cast<std::size_t>(t)] == seq[static_cast<std::size_t>(t + p)];
    }
    if (!ok) continue;
    std::int64_t pre = n - 2 * p;
    while (pre > 0 && seq[static_cast<std::size_t>(pre - 1)] ==
                          seq[static_cast<std::size_t>(pre - 1 + p)]) {
      --pre;
    }
    return {pre, p};
  }
  return {0, n};
}

}  // namespace detail

// Eventual period of the window sequence n -> T^n x|W. The state is the
// half-line from window.lo, cut at the first blocking cell right of the
// window when there is one; a repeated state certifies the window's whole
// future, after which the window sequence's own (preperiod, period) is
// extracted exactly.
template <Symbol S>
PeriodReport detect_eventual_period(const Configuration<S>& x, const RuleTable<S>& rule,
                                    Window window, std::int64_t max_horizon) {
  if (max_horizon < 1) throw std::invalid_argument("max_horizon must be >= 1");
  if (window.lo > window.hi) throw std::invalid_argument("empty window");
  HalfLine<S> h(x, window.lo);
  h.seal(window.hi, rule.blocking_symbols());

  std::unordered_map<std::string, std::int64_t> first_seen;
  std::vector<Word<S>> windows;
  for (std::int64_t n = 0; n <= max_horizon; ++n) {
    windows.push_back(h.window_word(window));
    auto [it, inserted] = first_seen.emplace(h.key(), n);
    if (!inserted) {
      windows.pop_back();
      const auto [pre, period] = detail::minimize_period(windows, it->second, n - it->second);
      return {pre, period, true, n};
    }
    if (n < max_horizon) h.step(rule);
  }
  const auto [pre, period] = detail::best_effort_period(windows);
  return {pre, period, false, max_horizon};
}

enum class TraceFormat { kTable, kCsv };

template <Symbol S>
std::string render_trace(const OrbitTrace<S>& trace, TraceFormat format, GlyphStyle style) {
  std::ostringstream out;
  out << "# rule " << trace.rule << " | alphabet " << SymbolTraits<S>::kName << " | window ["
      << trace.window.lo << "," << trace.window.hi << "] | steps " << trace.steps << "\n";
  if (format == TraceFormat::kCsv) {
    out << "step";
    for (std::int64_t i = trace.window.lo; i <= trace.window.hi; ++i) out << "," << i;
    out << "\n";
    for (std::size_t n = 0; n < trace.rows.size(); ++n) {
      out << n;
      for (S s : trace.rows[n]) {
        out << ","
            << (style == GlyphStyle::kAscii ? SymbolTraits<S>::token(s) : SymbolTraits<S>::glyph(s));
      }
      out << "\n";
    }
    return out.str();
  }
  const std::size_t label_width = std::to_string(trace.steps).size() + 2;
  for (std::size_t n = 0; n < trace.rows.size(); ++n) {
    std::string label = "T^" + std::to_string(n);
    label.resize(label_width, ' ');
    out << label << " " << format_word(trace.rows[n], style, " ") << "\n";
  }
  return out.str();
}

}  // namespace skewca
