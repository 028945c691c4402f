#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "skewca/configuration.hpp"

namespace skewca {

// Configuration text grammar:
//
//   '(' TAIL ')' '|' CORE '|' '(' TAIL ')' [ '@' ORIGIN ]
//
// with one character per cell for A1, A and A3, and two-character tokens
// separated by spaces for the stacked alphabet. ORIGIN defaults to 0.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class GlyphStyle { kAscii, kUnicode };

template <Symbol S>
Configuration<S> parse_config(std::string_view text);

template <Symbol S>
std::string format_config(const Configuration<S>& x);

template <Symbol S>
Word<S> parse_word(std::string_view text);

/// Token text (kAscii) or display glyphs (kUnicode); stacked cells are
/// space separated in both styles.
template <Symbol S>
std::string format_word(const Word<S>& w, GlyphStyle style = GlyphStyle::kAscii,
                        std::string_view separator = "");

}  // namespace skewca
