#include <doctest.h>

#include "skewca/symbols.hpp"

using namespace skewca;

namespace {

template <Symbol S>
void check_token_round_trip() {
  for (S s : alphabet<S>()) {
    const auto t = SymbolTraits<S>::token(s);
    const auto back = SymbolTraits<S>::parse_token(t);
    REQUIRE(back.has_value());
    CHECK(*back == s);
    CHECK(SymbolTraits<S>::from_index(SymbolTraits<S>::index(s)) == s);
  }
}

}  // namespace

TEST_CASE("alphabet sizes") {
  CHECK(alphabet<A1Symbol>().size() == 4);
  CHECK(alphabet<A2Symbol>().size() == 2);
  CHECK(alphabet<ProductSymbol>().size() == 8);
  CHECK(alphabet<A3Symbol>().size() == 3);
  CHECK(alphabet<StackedSymbol>().size() == 24);
}

TEST_CASE("tokens round trip for every alphabet") {
  check_token_round_trip<A1Symbol>();
  check_token_round_trip<A2Symbol>();
  check_token_round_trip<ProductSymbol>();
  check_token_round_trip<A3Symbol>();
  check_token_round_trip<StackedSymbol>();
}

TEST_CASE("product tokens name digit and arrow") {
  CHECK(SymbolTraits<ProductSymbol>::token(kBlank) == "_");
  CHECK(SymbolTraits<ProductSymbol>::token(kBlankArrow) == "<");
  CHECK(SymbolTraits<ProductSymbol>::token({A1Symbol::kZero, A2Symbol::kArrow}) == "A");
  CHECK(SymbolTraits<ProductSymbol>::token({A1Symbol::kTwo, A2Symbol::kEmpty}) == "2");
  CHECK(SymbolTraits<StackedSymbol>::token({{A1Symbol::kOne, A2Symbol::kArrow}, A3Symbol::kC}) == "Bc");
}

TEST_CASE("unknown tokens are rejected") {
  CHECK_FALSE(SymbolTraits<A1Symbol>::parse_token("3").has_value());
  CHECK_FALSE(SymbolTraits<ProductSymbol>::parse_token("").has_value());
  CHECK_FALSE(SymbolTraits<StackedSymbol>::parse_token("_d").has_value());
}

TEST_CASE("residues and open digits") {
  CHECK(residue(A1Symbol::kEmpty) == -1);
  CHECK(residue(A1Symbol::kZero) == 0);
  CHECK(residue(A1Symbol::kTwo) == 2);
  for (int r = 0; r < 3; ++r) CHECK(residue(digit_from_residue(r)) == r);
  CHECK(is_open(A1Symbol::kEmpty));
  CHECK(is_open(A1Symbol::kTwo));
  CHECK_FALSE(is_open(A1Symbol::kZero));
  CHECK_FALSE(is_open(A1Symbol::kOne));
}

TEST_CASE("arrows advance only over open digits") {
  CHECK(arrow_advances(kBlankArrow));
  CHECK(arrow_advances({A1Symbol::kTwo, A2Symbol::kArrow}));
  CHECK_FALSE(arrow_advances({A1Symbol::kZero, A2Symbol::kArrow}));
  CHECK_FALSE(arrow_advances({A1Symbol::kOne, A2Symbol::kArrow}));
  CHECK_FALSE(arrow_advances(kBlank));
}
