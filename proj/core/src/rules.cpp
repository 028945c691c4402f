#include "skewca/rules.hpp"

#include <sstream>

namespace skewca {

A1Symbol rule_t1(A1Symbol center, A1Symbol right) {
  if (center == A1Symbol::kEmpty) return A1Symbol::kEmpty;
  return is_open(right) ? digit_from_residue(residue(center) + 1) : center;
}

ProductSymbol rule_t(ProductSymbol center, ProductSymbol right) {
  const bool arrives = arrow_advances(right);
  const bool stays = center.has_arrow() && !arrow_advances(center);
  return {rule_t1(center.digit, right.digit),
          arrives || stays ? A2Symbol::kArrow : A2Symbol::kEmpty};
}

ProductSymbol rule_t_shift_formula(ProductSymbol center, ProductSymbol right) {
  const bool shifts = arrow_advances(center) || arrow_advances(right);
  return {rule_t1(center.digit, right.digit), shifts ? right.arrow : center.arrow};
}

A3Symbol rule_t3(A3Symbol center) {
  switch (center) {
    case A3Symbol::kB:
      return A3Symbol::kC;
    case A3Symbol::kC:
      return A3Symbol::kB;
    default:
      return A3Symbol::kA;
  }
}

StackedSymbol rule_ts(StackedSymbol center, StackedSymbol right) {
  return {rule_t(center.top, right.top),
          center.top.has_arrow() ? center.bottom : rule_t3(center.bottom)};
}

RuleTable<A1Symbol> t1_table() { return {"t1", rule_t1}; }
RuleTable<ProductSymbol> t_table() { return {"t", rule_t}; }
RuleTable<A3Symbol> t3_table() {
  return {"t3", [](A3Symbol c, A3Symbol) { return rule_t3(c); }};
}
RuleTable<StackedSymbol> ts_table() { return {"ts", rule_ts}; }

std::optional<RuleId> parse_rule_id(std::string_view name) {
  if (name == "t1") return RuleId::kT1;
  if (name == "t") return RuleId::kT;
  if (name == "t3") return RuleId::kT3;
  if (name == "ts") return RuleId::kTs;
  return std::nullopt;
}

std::string_view rule_name(RuleId id) {
  switch (id) {
    case RuleId::kT1:
      return "t1";
    case RuleId::kT:
      return "t";
    case RuleId::kT3:
      return "t3";
    case RuleId::kTs:
      return "ts";
  }
  return "?";
}

template <Symbol S>
std::string rule_table_csv(const RuleTable<S>& table) {
  std::ostringstream out;
  out << "center,right,output\n";
  for (const auto& [c, r, o] : table.entries()) {
    out << SymbolTraits<S>::token(c) << ',' << SymbolTraits<S>::token(r) << ','
        << SymbolTraits<S>::token(o) << '\n';
  }
  return out.str();
}

template std::string rule_table_csv(const RuleTable<A1Symbol>&);
template std::string rule_table_csv(const RuleTable<ProductSymbol>&);
template std::string rule_table_csv(const RuleTable<A3Symbol>&);
template std::string rule_table_csv(const RuleTable<StackedSymbol>&);

}  // namespace skewca
