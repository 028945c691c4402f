#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "skewca/analysis.hpp"
#include "skewca/configuration.hpp"
#include "skewca/rules.hpp"

namespace skewca {

/// 0^(2^l + j) at [0, 2^l + j) in a blank background.
Configuration<A1Symbol> build_block_point(int l, std::int64_t j);

/// Blank, 0^(2^l), blank at [0, 2^l + 1] in the product alphabet.
Configuration<ProductSymbol> build_gate_point(int l);

/// Blank, 0^(2^(l-1)), blank, 0^(2^l), blank starting at cell 0.
Configuration<ProductSymbol> build_two_block_point(int l);

/// Index of the last cell of build_two_block_point(l).
std::int64_t two_block_end(int l);

/// Adds an empty arrow layer.
Configuration<ProductSymbol> lift_digits(const Configuration<A1Symbol>& x);

/// Stacks a constant phase under every cell.
Configuration<StackedSymbol> lift_to_stacked(const Configuration<ProductSymbol>& x, A3Symbol bottom);

// prefix at [0, k), blank at k, then blocks 0^(2^i) for i = 1..depth-1, each
// followed by a blank. Block i occupies [k + i + 2^i, k + i + 2^(i+1) - 1].
struct CascadeSpec {
  Word<ProductSymbol> prefix;
  int depth = 1;
};

Configuration<ProductSymbol> build_cascade_point(const CascadeSpec& spec);

/// Cell of the blank that closes the last block of a cascade with the given
/// prefix length and depth.
std::int64_t cascade_radius(std::int64_t prefix_length, int depth);

/// Smallest l >= 1 with 2^l > prefix_length and
/// 2 (3^(l-1) + 1) / 3^(l+1) <= 1 / 2^(m+2). Empty when no l <= max_level
/// qualifies, which is always the case for m >= 1: the left side never drops
/// below 2/9.
std::optional<int> threshold_level(int m, std::int64_t prefix_length, int max_level = 30);

enum class CertificateSource { kThreshold, kSearch };

struct CertificateSearchResult {
  int depth = 0;
  std::int64_t m_prime = 0;
  CertificateSource source = CertificateSource::kSearch;
  DiamMeanCertificate certificate;
};

// Certificate at resolution m for the cascade over `prefix`. Uses the level
// given by threshold_level when there is one, otherwise the shallowest depth
// (at most max_depth) whose certificate passes. The prefix must be free of
// arrows. Returns the last attempt when nothing passes.
CertificateSearchResult search_cascade_certificate(const Word<ProductSymbol>& prefix, int m,
                                                   std::int64_t horizon,
                                                   const RuleTable<ProductSymbol>& rule,
                                                   int max_depth = 12);

/// Certificate for the cascade of the given depth, radius set by cascade_radius.
CertificateSearchResult cascade_certificate_at_depth(const Word<ProductSymbol>& prefix, int m,
                                                     int depth, std::int64_t horizon,
                                                     const RuleTable<ProductSymbol>& rule);

/// w centred on [-(|w|-1)/2, (|w|-1)/2], once in a blank background and once
/// flanked by arrows on blank.
std::pair<Configuration<ProductSymbol>, Configuration<ProductSymbol>> build_divergence_pair(
    const Word<ProductSymbol>& w);

/// First t <= horizon with T^t x_j != T^t y_j.
template <Symbol S>
std::optional<std::int64_t> first_divergence(const Configuration<S>& x, const Configuration<S>& y,
                                             const RuleTable<S>& rule, std::int64_t j,
                                             std::int64_t horizon) {
  const Word<S> a = column_trace(x, rule, j, horizon);
  const Word<S> b = column_trace(y, rule, j, horizon);
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (!(a[t] == b[t])) return static_cast<std::int64_t>(t);
  }
  return std::nullopt;
}

// Pair of stacked points agreeing on [0, |w|] except for one arrow at |w|.
// The given word is first run in a blank background until its arrows have
// left [0, |w|); the word seen at that moment is the one used.
struct TsPair {
  Configuration<StackedSymbol> x;
  Configuration<StackedSymbol> y;
  Word<StackedSymbol> word;
  std::int64_t warmup_steps = 0;
};

TsPair build_ts_pair(const Word<StackedSymbol>& w, const RuleTable<StackedSymbol>& rule,
                     std::int64_t max_warmup = 100000);

}  // namespace skewca
