#include "skewca/constructions.hpp"

#include <stdexcept>
#include <string>

#include "skewca/engine.hpp"

namespace skewca {

namespace {

constexpr ProductSymbol kZeroCell{A1Symbol::kZero, A2Symbol::kEmpty};

std::int64_t pow2(int l) {
  if (l < 0 || l > 40) throw std::invalid_argument("level out of range");
  return std::int64_t{1} << l;
}

void append_zeros(Word<ProductSymbol>& w, std::int64_t count) {
  w.insert(w.end(), static_cast<std::size_t>(count), kZeroCell);
}

}  // namespace

Configuration<A1Symbol> build_block_point(int l, std::int64_t j) {
  if (j < 0) throw std::invalid_argument("j must be >= 0");
  Word<A1Symbol> core(static_cast<std::size_t>(pow2(l) + j), A1Symbol::kZero);
  return Configuration<A1Symbol>::finite(std::move(core), A1Symbol::kEmpty);
}

Configuration<ProductSymbol> build_gate_point(int l) {
  Word<ProductSymbol> core{kBlank};
  append_zeros(core, pow2(l));
  core.push_back(kBlank);
  return Configuration<ProductSymbol>::finite(std::move(core), kBlank);
}

Configuration<ProductSymbol> build_two_block_point(int l) {
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  Word<ProductSymbol> core{kBlank};
  append_zeros(core, pow2(l - 1));
  core.push_back(kBlank);
  append_zeros(core, pow2(l));
  core.push_back(kBlank);
  return Configuration<ProductSymbol>::finite(std::move(core), kBlank);
}

std::int64_t two_block_end(int l) { return pow2(l) + pow2(l - 1) + 2; }

Configuration<ProductSymbol> lift_digits(const Configuration<A1Symbol>& x) {
  auto lift = [](const Word<A1Symbol>& w) {
    Word<ProductSymbol> out;
    for (A1Symbol s : w) out.push_back({s, A2Symbol::kEmpty});
    return out;
  };
  return Configuration<ProductSymbol>(lift(x.left_tail()), lift(x.core()), lift(x.right_tail()),
                                      x.origin());
}

Configuration<StackedSymbol> lift_to_stacked(const Configuration<ProductSymbol>& x,
                                             A3Symbol bottom) {
  auto lift = [bottom](const Word<ProductSymbol>& w) {
    Word<StackedSymbol> out;
    for (ProductSymbol s : w) out.push_back({s, bottom});
    return out;
  };
  return Configuration<StackedSymbol>(lift(x.left_tail()), lift(x.core()), lift(x.right_tail()),
                                      x.origin());
}

Configuration<ProductSymbol> build_cascade_point(const CascadeSpec& spec) {
  if (spec.depth < 1) throw std::invalid_argument("depth must be >= 1");
  Word<ProductSymbol> core = spec.prefix;
  core.push_back(kBlank);
  for (int i = 0; i < spec.depth; ++i) {
    append_zeros(core, pow2(i));
    core.push_back(kBlank);
  }
  return Configuration<ProductSymbol>::finite(std::move(core), kBlank);
}

std::int64_t cascade_radius(std::int64_t prefix_length, int depth) {
  return prefix_length + depth - 1 + pow2(depth);
}

std::optional<int> threshold_level(int m, std::int64_t prefix_length, int max_level) {
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (m > 20 || max_level > 36) throw std::invalid_argument("level search out of range");
  for (int l = 1; l <= max_level; ++l) {
    if (pow2(l) <= prefix_length) continue;
    std::int64_t p = 1;  // 3^(l-1)
    for (int k = 1; k < l; ++k) p *= 3;
    // 2 (p + 1) 2^(m+2) <= 9 p, with both sides integers.
    if (p + 1 <= (9 * p) / (std::int64_t{1} << (m + 3))) return l;
  }
  return std::nullopt;
}

CertificateSearchResult cascade_certificate_at_depth(const Word<ProductSymbol>& prefix, int m,
                                                     int depth, std::int64_t horizon,
                                                     const RuleTable<ProductSymbol>& rule) {
  for (const auto& s : prefix) {
    if (s.has_arrow()) throw HypothesisError("cascade prefix carries an arrow");
  }
  const auto k = static_cast<std::int64_t>(prefix.size());
  CertificateSearchResult r;
  r.depth = depth;
  r.m_prime = cascade_radius(k, depth);
  r.certificate = diam_mean_certificate(build_cascade_point({prefix, depth}), rule, m, r.m_prime,
                                        horizon);
  return r;
}

CertificateSearchResult search_cascade_certificate(const Word<ProductSymbol>& prefix, int m,
                                                   std::int64_t horizon,
                                                   const RuleTable<ProductSymbol>& rule,
                                                   int max_depth) {
  const auto k = static_cast<std::int64_t>(prefix.size());
  if (const auto l = threshold_level(m, k)) {
    auto r = cascade_certificate_at_depth(prefix, m, *l + 1, horizon, rule);
    r.source = CertificateSource::kThreshold;
    return r;
  }
  CertificateSearchResult last;
  for (int depth = 1; depth <= max_depth; ++depth) {
    if (cascade_radius(k, depth) < m + 1) continue;
    last = cascade_certificate_at_depth(prefix, m, depth, horizon, rule);
    if (last.certificate.passed) break;
  }
  return last;
}

std::pair<Configuration<ProductSymbol>, Configuration<ProductSymbol>> build_divergence_pair(
    const Word<ProductSymbol>& w) {
  if (w.size() % 2 == 0) throw std::invalid_argument("word length must be odd");
  const auto origin = -static_cast<std::int64_t>(w.size() / 2);
  return {Configuration<ProductSymbol>({kBlank}, w, {kBlank}, origin),
          Configuration<ProductSymbol>({kBlankArrow}, w, {kBlankArrow}, origin)};
}

TsPair build_ts_pair(const Word<StackedSymbol>& w, const RuleTable<StackedSymbol>& rule,
                     std::int64_t max_warmup) {
  const StackedSymbol first{kBlank, A3Symbol::kB};
  if (w.empty() || !(w.front() == first)) {
    throw std::invalid_argument("word must start with a blank cell over phase b");
  }
  const StackedSymbol blank = SymbolTraits<StackedSymbol>::blank();
  const auto n = static_cast<std::int64_t>(w.size());

  HalfLine<StackedSymbol> h(Configuration<StackedSymbol>::finite(w, blank), 0);
  auto clear = [&] {
    for (std::int64_t i = 0; i < n; ++i) {
      if (h.get(i).top.has_arrow()) return false;
    }
    return true;
  };
  std::int64_t steps = 0;
  while (!clear()) {
    if (steps == max_warmup) throw std::runtime_error("arrows did not leave the word during warm-up");
    h.step(rule);
    ++steps;
  }

  TsPair pair{Configuration<StackedSymbol>::uniform(blank), Configuration<StackedSymbol>::uniform(blank),
              h.window_word({0, n - 1}), steps};
  Word<StackedSymbol> with_arrow = pair.word;
  with_arrow.push_back({kBlankArrow, A3Symbol::kA});
  pair.x = Configuration<StackedSymbol>::finite(with_arrow, blank);
  pair.y = Configuration<StackedSymbol>::finite(pair.word, blank);
  return pair;
}

}  // namespace skewca
