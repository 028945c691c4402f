#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace skewca {

// Digit layer: a blank plus the residues of Z/3.
enum class A1Symbol : std::uint8_t { kEmpty, kZero, kOne, kTwo };

// Arrow layer.
enum class A2Symbol : std::uint8_t { kEmpty, kArrow };

// Phase layer of the stacked automaton.
enum class A3Symbol : std::uint8_t { kA, kB, kC };

struct ProductSymbol {
  A1Symbol digit = A1Symbol::kEmpty;
  A2Symbol arrow = A2Symbol::kEmpty;

  constexpr bool has_arrow() const { return arrow == A2Symbol::kArrow; }
  friend constexpr bool operator==(ProductSymbol, ProductSymbol) = default;
};

struct StackedSymbol {
  ProductSymbol top;
  A3Symbol bottom = A3Symbol::kA;

  friend constexpr bool operator==(StackedSymbol, StackedSymbol) = default;
};

/// Residue of a non-blank digit. Blank maps to -1.
constexpr int residue(A1Symbol s) {
  return s == A1Symbol::kEmpty ? -1 : static_cast<int>(s) - 1;
}

constexpr A1Symbol digit_from_residue(int r) {
  return static_cast<A1Symbol>(((r % 3) + 3) % 3 + 1);
}

/// The digit layer lets a carry (or an arrow) through: blank or Two.
constexpr bool is_open(A1Symbol s) {
  return s == A1Symbol::kEmpty || s == A1Symbol::kTwo;
}

/// An arrow standing on an open digit moves one cell left on the next step.
constexpr bool arrow_advances(ProductSymbol s) {
  return s.has_arrow() && is_open(s.digit);
}

constexpr ProductSymbol kBlank{};
constexpr ProductSymbol kBlankArrow{A1Symbol::kEmpty, A2Symbol::kArrow};

// Per-alphabet metadata: dense indexing, text tokens and display glyphs.
// Token text is the bit-exact configuration format; glyphs are for human
// readable tables.
template <class S>
struct SymbolTraits;

template <>
struct SymbolTraits<A1Symbol> {
  static constexpr std::size_t kCount = 4;
  static constexpr std::string_view kName = "A1";
  static constexpr bool kSpaceSeparated = false;
  static constexpr std::size_t index(A1Symbol s) { return static_cast<std::size_t>(s); }
  static constexpr A1Symbol from_index(std::size_t i) { return static_cast<A1Symbol>(i); }
  static constexpr A1Symbol blank() { return A1Symbol::kEmpty; }
  static std::string token(A1Symbol s) { return std::string(1, "_012"[index(s)]); }
  static std::string glyph(A1Symbol s);
  static std::optional<A1Symbol> parse_token(std::string_view t);
};

template <>
struct SymbolTraits<A2Symbol> {
  static constexpr std::size_t kCount = 2;
  static constexpr std::string_view kName = "A2";
  static constexpr bool kSpaceSeparated = false;
  static constexpr std::size_t index(A2Symbol s) { return static_cast<std::size_t>(s); }
  static constexpr A2Symbol from_index(std::size_t i) { return static_cast<A2Symbol>(i); }
  static constexpr A2Symbol blank() { return A2Symbol::kEmpty; }
  static std::string token(A2Symbol s) { return std::string(1, "_<"[index(s)]); }
  static std::string glyph(A2Symbol s);
  static std::optional<A2Symbol> parse_token(std::string_view t);
};

template <>
struct SymbolTraits<ProductSymbol> {
  static constexpr std::size_t kCount = 8;
  static constexpr std::string_view kName = "A";
  static constexpr bool kSpaceSeparated = false;
  // Index order matches the text alphabet "_012<ABC".
  static constexpr std::size_t index(ProductSymbol s) {
    return static_cast<std::size_t>(s.digit) + (s.has_arrow() ? 4 : 0);
  }
  static constexpr ProductSymbol from_index(std::size_t i) {
    return {static_cast<A1Symbol>(i % 4), i >= 4 ? A2Symbol::kArrow : A2Symbol::kEmpty};
  }
  static constexpr ProductSymbol blank() { return kBlank; }
  static std::string token(ProductSymbol s) { return std::string(1, "_012<ABC"[index(s)]); }
  static std::string glyph(ProductSymbol s);
  static std::optional<ProductSymbol> parse_token(std::string_view t);
};

template <>
struct SymbolTraits<A3Symbol> {
  static constexpr std::size_t kCount = 3;
  static constexpr std::string_view kName = "A3";
  static constexpr bool kSpaceSeparated = false;
  static constexpr std::size_t index(A3Symbol s) { return static_cast<std::size_t>(s); }
  static constexpr A3Symbol from_index(std::size_t i) { return static_cast<A3Symbol>(i); }
  static constexpr A3Symbol blank() { return A3Symbol::kA; }
  static std::string token(A3Symbol s) { return std::string(1, "abc"[index(s)]); }
  static std::string glyph(A3Symbol s) { return token(s); }
  static std::optional<A3Symbol> parse_token(std::string_view t);
};

template <>
struct SymbolTraits<StackedSymbol> {
  static constexpr std::size_t kCount = 24;
  static constexpr std::string_view kName = "AS";
  static constexpr bool kSpaceSeparated = true;
  static constexpr std::size_t index(StackedSymbol s) {
    return SymbolTraits<ProductSymbol>::index(s.top) * 3 + static_cast<std::size_t>(s.bottom);
  }
  static constexpr StackedSymbol from_index(std::size_t i) {
    return {SymbolTraits<ProductSymbol>::from_index(i / 3), static_cast<A3Symbol>(i % 3)};
  }
  static constexpr StackedSymbol blank() { return {kBlank, A3Symbol::kA}; }
  static std::string token(StackedSymbol s) {
    return SymbolTraits<ProductSymbol>::token(s.top) + SymbolTraits<A3Symbol>::token(s.bottom);
  }
  static std::string glyph(StackedSymbol s) {
    return SymbolTraits<ProductSymbol>::glyph(s.top) + SymbolTraits<A3Symbol>::glyph(s.bottom);
  }
  static std::optional<StackedSymbol> parse_token(std::string_view t);
};

template <class S>
concept Symbol = requires(S s, std::size_t i) {
  { SymbolTraits<S>::kCount } -> std::convertible_to<std::size_t>;
  { SymbolTraits<S>::index(s) } -> std::convertible_to<std::size_t>;
  { SymbolTraits<S>::from_index(i) } -> std::convertible_to<S>;
  { SymbolTraits<S>::token(s) } -> std::convertible_to<std::string>;
};

template <Symbol S>
constexpr std::array<S, SymbolTraits<S>::kCount> alphabet() {
  std::array<S, SymbolTraits<S>::kCount> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = SymbolTraits<S>::from_index(i);
  return out;
}

}  // namespace skewca
