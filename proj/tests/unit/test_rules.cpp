#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <string>

#include "skewca/rules.hpp"
#include "skewca/text_format.hpp"
#include "support.hpp"

using namespace skewca;

namespace {

ProductSymbol P(const char* t) { return *SymbolTraits<ProductSymbol>::parse_token(t); }
StackedSymbol S(const char* t) { return *SymbolTraits<StackedSymbol>::parse_token(t); }

}  // namespace

TEST_CASE("digit rule cases") {
  using enum A1Symbol;
  CHECK(rule_t1(kZero, kEmpty) == kOne);
  CHECK(rule_t1(kEmpty, kTwo) == kEmpty);
  CHECK(rule_t1(kTwo, kOne) == kTwo);
  CHECK(rule_t1(kTwo, kTwo) == kZero);
  CHECK(rule_t1(kOne, kZero) == kOne);
  CHECK(rule_t1(kOne, kEmpty) == kTwo);
}

TEST_CASE("arrow rule cases") {
  CHECK(rule_t(P("0"), P("<")) == P("B"));
  CHECK(rule_t(P("_"), P("0")) == P("_"));
  CHECK(rule_t(P("_"), P("<")) == P("<"));
  CHECK(rule_t(P("<"), P("_")) == P("_"));
  CHECK(rule_t(P("A"), P("0")) == P("A"));
  CHECK(rule_t(P("B"), P("0")) == P("B"));
  CHECK(rule_t(P("C"), P("_")) == P("0"));
}

TEST_CASE("arrow rule table matches the reference case table") {
  const auto table = t_table();
  std::istringstream in(skewca::testing::read_fixture("rule_t_display.csv"));
  std::string line;
  std::getline(in, line);
  CHECK(line == "center,right,output");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = P(line.substr(0, a).c_str());
    const auto r = P(line.substr(a + 1, b - a - 1).c_str());
    const auto o = P(line.substr(b + 1).c_str());
    INFO(line);
    CHECK(table(c, r) == o);
    ++rows;
  }
  CHECK(rows == 64);
}

TEST_CASE("literal shift formula disagrees with the case display on four entries") {
  int differ = 0;
  for (ProductSymbol c : alphabet<ProductSymbol>()) {
    for (ProductSymbol r : alphabet<ProductSymbol>()) {
      if (!(rule_t(c, r) == rule_t_shift_formula(c, r))) {
        ++differ;
        CHECK(arrow_advances(c));
        CHECK(r.has_arrow());
        CHECK_FALSE(arrow_advances(r));
      }
    }
  }
  CHECK(differ == 4);
}

TEST_CASE("digit layer of the arrow rule is the digit rule") {
  for (ProductSymbol c : alphabet<ProductSymbol>()) {
    for (ProductSymbol r : alphabet<ProductSymbol>()) {
      CHECK(rule_t(c, r).digit == rule_t1(c.digit, r.digit));
    }
  }
}

TEST_CASE("phase rule") {
  CHECK(rule_t3(A3Symbol::kA) == A3Symbol::kA);
  CHECK(rule_t3(A3Symbol::kB) == A3Symbol::kC);
  CHECK(rule_t3(A3Symbol::kC) == A3Symbol::kB);
  for (A3Symbol s : alphabet<A3Symbol>()) CHECK(rule_t3(rule_t3(s)) == s);
}

TEST_CASE("stacked rule freezes the phase under an arrow") {
  for (StackedSymbol r : alphabet<StackedSymbol>()) {
    const auto out = rule_ts(S("<b"), r);
    CHECK(out.top == rule_t(kBlankArrow, r.top));
    CHECK(out.bottom == A3Symbol::kB);
  }
  CHECK(rule_ts(S("0b"), S("0a")) == StackedSymbol{rule_t(P("0"), P("0")), A3Symbol::kC});
  CHECK(rule_ts(S("_a"), S("_a")) == S("_a"));
  CHECK(rule_ts(S("_c"), S("_a")) == S("_b"));
}

TEST_CASE("blocking symbols") {
  const auto t1 = t1_table().blocking_symbols();
  REQUIRE(t1.size() == 1);
  CHECK(t1[0] == A1Symbol::kEmpty);
  CHECK(t_table().blocking_symbols().empty());
}

TEST_CASE("rule ids and csv dump") {
  CHECK(parse_rule_id("t1") == RuleId::kT1);
  CHECK(parse_rule_id("ts") == RuleId::kTs);
  CHECK_FALSE(parse_rule_id("t9").has_value());
  CHECK(rule_name(RuleId::kT3) == "t3");
  const auto csv = rule_table_csv(t_table());
  CHECK(csv == skewca::testing::read_fixture("rule_t_display.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);
}

TEST_CASE("table overrides") {
  auto t = t_table();
  CHECK(t == t_table());
  t.set(P("0"), P("_"), P("2"));
  CHECK(t(P("0"), P("_")) == P("2"));
  CHECK_FALSE(t == t_table());
}
