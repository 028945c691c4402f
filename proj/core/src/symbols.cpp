#include "skewca/symbols.hpp"

namespace skewca {

namespace {

template <class S>
std::optional<S> find_token(std::string_view t) {
  for (std::size_t i = 0; i < SymbolTraits<S>::kCount; ++i) {
    const S s = SymbolTraits<S>::from_index(i);
    if (SymbolTraits<S>::token(s) == t) return s;
  }
  return std::nullopt;
}

}  // namespace

std::string SymbolTraits<A1Symbol>::glyph(A1Symbol s) {
  static constexpr std::array<std::string_view, 4> kGlyphs{"∅", "0", "1", "2"};
  return std::string(kGlyphs[index(s)]);
}

std::optional<A1Symbol> SymbolTraits<A1Symbol>::parse_token(std::string_view t) {
  return find_token<A1Symbol>(t);
}

std::string SymbolTraits<A2Symbol>::glyph(A2Symbol s) {
  return s == A2Symbol::kArrow ? "←" : "∅";
}

std::optional<A2Symbol> SymbolTraits<A2Symbol>::parse_token(std::string_view t) {
  return find_token<A2Symbol>(t);
}

std::string SymbolTraits<ProductSymbol>::glyph(ProductSymbol s) {
  // Arrow-carrying digits are drawn circled so every cell stays one glyph wide.
  static constexpr std::array<std::string_view, 8> kGlyphs{"∅", "0", "1", "2",
                                                           "←", "⓪", "①", "②"};
  return std::string(kGlyphs[index(s)]);
}

std::optional<ProductSymbol> SymbolTraits<ProductSymbol>::parse_token(std::string_view t) {
  return find_token<ProductSymbol>(t);
}

std::optional<A3Symbol> SymbolTraits<A3Symbol>::parse_token(std::string_view t) {
  return find_token<A3Symbol>(t);
}

std::optional<StackedSymbol> SymbolTraits<StackedSymbol>::parse_token(std::string_view t) {
  if (t.size() != 2) return std::nullopt;
  auto top = SymbolTraits<ProductSymbol>::parse_token(t.substr(0, 1));
  auto bottom = SymbolTraits<A3Symbol>::parse_token(t.substr(1, 1));
  if (!top || !bottom) return std::nullopt;
  return StackedSymbol{*top, *bottom};
}

}  // namespace skewca
