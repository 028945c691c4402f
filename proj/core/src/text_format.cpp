#include "skewca/text_format.hpp"

#include <charconv>

namespace skewca {

namespace {

template <Symbol S>
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Configuration<S> run() {
    Word<S> left = tail();
    expect('|');
    Word<S> core = cells_until('|');
    expect('|');
    Word<S> right = tail();
    std::int64_t origin = 0;
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      origin = integer();
    }
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
    return Configuration<S>(std::move(left), std::move(core), std::move(right), origin);
  }

  Word<S> word() {
    Word<S> w = cells_until('\0');
    if (pos_ != text_.size()) throw ParseError("trailing characters", pos_);
    return w;
  }

 private:
  Word<S> tail() {
    expect('(');
    const std::size_t start = pos_;
    Word<S> w = cells_until(')');
    if (pos_ >= text_.size()) throw ParseError("unterminated tail", pos_);
    if (w.empty()) throw ParseError("empty tail", start);
    expect(')');
    return w;
  }

  Word<S> cells_until(char stop) {
    Word<S> out;
    while (pos_ < text_.size() && text_[pos_] != stop) {
      const char c = text_[pos_];
      if (c == ' ') {
        ++pos_;
        continue;
      }
      if (c == '(' || c == ')' || c == '|' || c == '@') {
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
      }
      const std::size_t width = SymbolTraits<S>::kSpaceSeparated ? 2 : 1;
      const std::string_view tok = text_.substr(pos_, width);
      auto s = SymbolTraits<S>::parse_token(tok);
      if (!s) {
        throw ParseError("unknown symbol '" + std::string(tok) + "' for alphabet " +
                             std::string(SymbolTraits<S>::kName),
                         pos_);
      }
      out.push_back(*s);
      pos_ += width;
    }
    return out;
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first) throw ParseError("bad origin", pos_);
    pos_ += static_cast<std::size_t>(ptr - first);
    return v;
  }

  void expect(char c) {
    if (pos_ >= text_.size()) {
      throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
    }
    if (text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

template <Symbol S>
Configuration<S> parse_config(std::string_view text) {
  return Parser<S>(text).run();
}

template <Symbol S>
Word<S> parse_word(std::string_view text) {
  return Parser<S>(text).word();
}

template <Symbol S>
std::string format_word(const Word<S>& w, GlyphStyle style, std::string_view separator) {
  std::string out;
  const std::string_view sep =
      SymbolTraits<S>::kSpaceSeparated && separator.empty() ? std::string_view(" ") : separator;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += sep;
    out += style == GlyphStyle::kAscii ? SymbolTraits<S>::token(w[i]) : SymbolTraits<S>::glyph(w[i]);
  }
  return out;
}

template <Symbol S>
std::string format_config(const Configuration<S>& x) {
  std::string out = "(" + format_word(x.left_tail()) + ")|" + format_word(x.core()) + "|(" +
                    format_word(x.right_tail()) + ")";
  if (x.origin() != 0) out += "@" + std::to_string(x.origin());
  return out;
}

#define SKEWCA_INSTANTIATE(S)                                                         \
  template Configuration<S> parse_config<S>(std::string_view);                        \
  template Word<S> parse_word<S>(std::string_view);                                   \
  template std::string format_word<S>(const Word<S>&, GlyphStyle, std::string_view); \
  template std::string format_config<S>(const Configuration<S>&);

SKEWCA_INSTANTIATE(A1Symbol)
SKEWCA_INSTANTIATE(A2Symbol)
SKEWCA_INSTANTIATE(ProductSymbol)
SKEWCA_INSTANTIATE(A3Symbol)
SKEWCA_INSTANTIATE(StackedSymbol)

#undef SKEWCA_INSTANTIATE

}  // namespace skewca
