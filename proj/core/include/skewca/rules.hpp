#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "skewca/symbols.hpp"

namespace skewca {

// Local rules of the four automata. Every rule is one-sided radius 1: the new
// value of cell i reads only cells i and i+1.

/// Odometer-like digit rule: a digit increments mod 3 exactly when its right
/// neighbour is blank or Two; blanks never change.
A1Symbol rule_t1(A1Symbol center, A1Symbol right);

/// Digit layer follows rule_t1. An arrow standing on blank or Two moves one
/// cell left, any other arrow stays put, and arrows landing on the same cell
/// merge.
ProductSymbol rule_t(ProductSymbol center, ProductSymbol right);

/// Arrow layer updated literally as "copy the right neighbour's arrow bit
/// whenever either cell holds an arrow on blank or Two". Kept for the rule
/// audit only; it disagrees with rule_t on four entries.
ProductSymbol rule_t_shift_formula(ProductSymbol center, ProductSymbol right);

/// a is fixed, b and c swap.
A3Symbol rule_t3(A3Symbol center);

/// Top layer follows rule_t; the bottom layer takes a rule_t3 step unless the
/// centre carries an arrow, in which case it is frozen for that step.
StackedSymbol rule_ts(StackedSymbol center, StackedSymbol right);

// Dense lookup table over S x S. Tables are the runtime representation of a
// rule everywhere in the engine, so a single entry can be audited or
// overridden.
template <Symbol S>
class RuleTable {
 public:
  using Entry = std::tuple<S, S, S>;

  RuleTable(std::string name, const std::function<S(S, S)>& f) : name_(std::move(name)) {
    constexpr std::size_t n = SymbolTraits<S>::kCount;
    codes_.resize(n * n);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t r = 0; r < n; ++r) {
        codes_[c * n + r] = static_cast<std::uint8_t>(SymbolTraits<S>::index(
            f(SymbolTraits<S>::from_index(c), SymbolTraits<S>::from_index(r))));
      }
    }
  }

  S operator()(S center, S right) const {
    return SymbolTraits<S>::from_index(
        codes_[SymbolTraits<S>::index(center) * SymbolTraits<S>::kCount +
               SymbolTraits<S>::index(right)]);
  }

  /// Code-level lookup for tight kernels.
  std::uint8_t apply_code(std::uint8_t center, std::uint8_t right) const {
    return codes_[center * SymbolTraits<S>::kCount + right];
  }

  void set(S center, S right, S out) {
    codes_[SymbolTraits<S>::index(center) * SymbolTraits<S>::kCount +
           SymbolTraits<S>::index(right)] = static_cast<std::uint8_t>(SymbolTraits<S>::index(out));
  }

  /// Symbols s with rule(s, r) = s for every r: once present they never
  /// change and they hide everything to their right.
  std::vector<S> blocking_symbols() const {
    std::vector<S> out;
    for (S s : alphabet<S>()) {
      bool fixed = true;
      for (S r : alphabet<S>()) fixed = fixed && (*this)(s, r) == s;
      if (fixed) out.push_back(s);
    }
    return out;
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (S c : alphabet<S>()) {
      for (S r : alphabet<S>()) out.emplace_back(c, r, (*this)(c, r));
    }
    return out;
  }

  const std::string& name() const { return name_; }
  friend bool operator==(const RuleTable& a, const RuleTable& b) { return a.codes_ == b.codes_; }

 private:
  std::string name_;
  std::vector<std::uint8_t> codes_;
};

RuleTable<A1Symbol> t1_table();
RuleTable<ProductSymbol> t_table();
RuleTable<A3Symbol> t3_table();
RuleTable<StackedSymbol> ts_table();

enum class RuleId { kT1, kT, kT3, kTs };

std::optional<RuleId> parse_rule_id(std::string_view name);
std::string_view rule_name(RuleId id);

// The four rule tables as one value so that callers (the verify suite in
// particular) can run every check against a modified copy.
struct RuleSet {
  RuleTable<A1Symbol> t1 = t1_table();
  RuleTable<ProductSymbol> t = t_table();
  RuleTable<A3Symbol> t3 = t3_table();
  RuleTable<StackedSymbol> ts = ts_table();
};

/// Rows "center,right,output" in token text, one per table entry.
template <Symbol S>
std::string rule_table_csv(const RuleTable<S>& table);

}  // namespace skewca
