#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "skewca/symbols.hpp"

namespace skewca {

template <class S>
using Word = std::vector<S>;

// Closed interval of cell indices.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t width() const { return hi - lo + 1; }
  bool contains(std::int64_t i) const { return lo <= i && i <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

/// Length of the shortest u with w = u^k (failure-function test).
template <class T>
std::size_t primitive_period(std::span<const T> w) {
  const std::size_t n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> fail(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (k > 0 && !(w[i] == w[k])) k = fail[k];
    if (w[i] == w[k]) ++k;
    fail[i + 1] = k;
  }
  const std::size_t p = n - fail[n];
  return n % p == 0 ? p : n;
}

template <class T>
void reduce_to_primitive(std::vector<T>& w) {
  w.resize(primitive_period(std::span<const T>(w)));
}

template <class T>
void rotate_left_one(std::vector<T>& w) {
  std::rotate(w.begin(), w.begin() + 1, w.end());
}

template <class T>
void rotate_right_one(std::vector<T>& w) {
  std::rotate(w.rbegin(), w.rbegin() + 1, w.rend());
}

// A bi-infinite point that is spatially periodic outside a finite core:
//
//   ... L L L | core | R R R ...
//
// The core occupies [origin, origin + |core|); the left tail repeats so that
// its last letter sits at origin - 1 and the right tail starts at
// origin + |core|. Values are always stored in canonical form, so two
// configurations denoting the same point compare equal member-wise.
template <Symbol S>
class Configuration {
 public:
  Configuration(Word<S> left_tail, Word<S> core, Word<S> right_tail, std::int64_t origin = 0)
      : left_(std::move(left_tail)),
        core_(std::move(core)),
        right_(std::move(right_tail)),
        origin_(origin) {
    if (left_.empty() || right_.empty()) {
      throw std::invalid_argument("configuration tails must be nonempty");
    }
    canonicalize();
  }

  static Configuration uniform(S s) { return Configuration({s}, {}, {s}, 0); }

  /// Finite word placed at `origin` with constant tails on both sides.
  static Configuration finite(Word<S> core, S background, std::int64_t origin = 0) {
    return Configuration({background}, std::move(core), {background}, origin);
  }

  S get(std::int64_t i) const {
    const std::int64_t end = core_end();
    if (i >= origin_ && i < end) return core_[static_cast<std::size_t>(i - origin_)];
    if (i >= end) {
      return right_[static_cast<std::size_t>(
          floor_mod(i - end, static_cast<std::int64_t>(right_.size())))];
    }
    const auto n = static_cast<std::int64_t>(left_.size());
    return left_[static_cast<std::size_t>(n - 1 - floor_mod(origin_ - 1 - i, n))];
  }

  Word<S> window_word(Window w) const {
    Word<S> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(w.width(), 0)));
    for (std::int64_t i = w.lo; i <= w.hi; ++i) out.push_back(get(i));
    return out;
  }

  /// Point agreeing with this one left of `at`, then `middle`, then `tail`
  /// repeated forever.
  Configuration splice_right(std::int64_t at, const Word<S>& middle, Word<S> tail) const {
    const std::int64_t lo = std::min(origin_, at);
    Word<S> left = window_word({lo - static_cast<std::int64_t>(left_.size()), lo - 1});
    Word<S> core = window_word({lo, at - 1});
    core.insert(core.end(), middle.begin(), middle.end());
    return Configuration(std::move(left), std::move(core), std::move(tail), lo);
  }

  /// Mirror of splice_right: `tail` repeated to the left, then `middle`
  /// ending at `at`, then this point from at + 1 on.
  Configuration splice_left(std::int64_t at, const Word<S>& middle, Word<S> tail) const {
    const std::int64_t hi = std::max(core_end(), at + 1);
    Word<S> core = middle;
    Word<S> rest = window_word({at + 1, hi - 1});
    core.insert(core.end(), rest.begin(), rest.end());
    Word<S> right = window_word({hi, hi + static_cast<std::int64_t>(right_.size()) - 1});
    return Configuration(std::move(tail), std::move(core), std::move(right),
                         at + 1 - static_cast<std::int64_t>(middle.size()));
  }

  const Word<S>& left_tail() const { return left_; }
  const Word<S>& core() const { return core_; }
  const Word<S>& right_tail() const { return right_; }
  std::int64_t origin() const { return origin_; }
  std::int64_t core_begin() const { return origin_; }
  std::int64_t core_end() const { return origin_ + static_cast<std::int64_t>(core_.size()); }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  void canonicalize() {
    reduce_to_primitive(left_);
    reduce_to_primitive(right_);

    // Let the right tail reach as far left as the point allows.
    while (!core_.empty() && core_.back() == right_.back()) {
      core_.pop_back();
      rotate_right_one(right_);
    }
    if (core_.empty()) {
      // The seam may sit inside a region that both tails describe. Past
      // |L| + |R| matching cells the two tails are the same periodic
      // sequence, so the point is globally periodic.
      const std::size_t bound = left_.size() + right_.size();
      std::size_t moved = 0;
      while (left_.back() == right_.back() && moved <= bound) {
        rotate_right_one(left_);
        rotate_right_one(right_);
        --origin_;
        ++moved;
      }
      if (moved > bound) {
        // Put the seam at 0 so that R[0] = x_0.
        const auto p = static_cast<std::int64_t>(right_.size());
        const std::int64_t delta = floor_mod(-origin_, p);
        for (std::int64_t k = 0; k < delta; ++k) rotate_left_one(right_);
        origin_ = 0;
        left_ = right_;
      }
      return;
    }
    while (!core_.empty() && core_.front() == left_.front()) {
      core_.erase(core_.begin());
      rotate_left_one(left_);
      ++origin_;
    }
  }

  Word<S> left_;
  Word<S> core_;
  Word<S> right_;
  std::int64_t origin_ = 0;
};

/// sigma(x)_i = x_{i+1}.
template <Symbol S>
Configuration<S> shift(const Configuration<S>& x) {
  return Configuration<S>(x.left_tail(), x.core(), x.right_tail(), x.origin() - 1);
}

/// Inverse of shift.
template <Symbol S>
Configuration<S> unshift(const Configuration<S>& x) {
  return Configuration<S>(x.left_tail(), x.core(), x.right_tail(), x.origin() + 1);
}

// d(x, y) = 2^-i where i is the least |j| with x_j != y_j. Comparison stops
// at max_depth; `exponent` is empty when no difference was found there.
struct CantorDistance {
  std::optional<int> exponent;
  int max_depth = 0;

  bool is_zero_within_depth() const { return !exponent.has_value(); }
  double value() const { return exponent ? std::ldexp(1.0, -*exponent) : 0.0; }
  friend bool operator==(const CantorDistance&, const CantorDistance&) = default;
};

template <Symbol S>
CantorDistance cantor_distance(const Configuration<S>& x, const Configuration<S>& y,
                               int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  for (int i = 0; i <= max_depth; ++i) {
    if (!(x.get(i) == y.get(i)) || !(x.get(-i) == y.get(-i))) return {i, max_depth};
  }
  return {std::nullopt, max_depth};
}

}  // namespace skewca
