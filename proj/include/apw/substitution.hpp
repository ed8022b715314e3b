#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apw/errors.hpp"

namespace apw {

// Letters are dense indices into the alphabet; words are byte vectors.
using Word = std::vector<std::uint8_t>;

// A uniform substitution over an indexed alphabet: every letter maps to an
// image of the same length m. Immutable once constructed.
class Substitution {
 public:
  // Text format: one rule per line, "SYMBOL -> IMAGE". Symbols are single
  // characters, or double-quoted for multi-character names. Lines whose
  // first non-space character is '#' and blank lines are skipped.
  static Substitution parse_spec(std::string_view text);
  static Substitution load_file(const std::string& path);

  Substitution(std::vector<std::string> symbols, std::vector<Word> images);

  std::uint32_t alphabet_size() const { return static_cast<std::uint32_t>(symbols_.size()); }
  std::uint32_t image_length() const { return m_; }  // m
  std::span<const std::uint8_t> image(std::uint8_t a) const {
    return {flat_.data() + static_cast<std::size_t>(a) * m_, m_};
  }
  const std::string& symbol(std::uint8_t a) const { return symbols_[a]; }
  std::optional<std::uint8_t> letter_of(std::string_view symbol) const;

  Word apply(std::span<const std::uint8_t> w) const;
  Word parse_word(std::string_view text) const;
  std::string render_word(std::span<const std::uint8_t> w) const;
  std::string to_spec() const;  // parses back to an equal substitution

  // entry(i, j) = number of occurrences of letter j in image(i)
  std::vector<std::uint64_t> incidence_matrix() const;

  struct Primitivity {
    bool primitive;
    std::uint32_t witness;  // least n with M^n > 0 entrywise; 0 when not primitive
  };
  // Boolean reachability on the incidence pattern, checked up to the
  // Wielandt bound r^2 - 2r + 2.
  Primitivity is_primitive() const;

  // Letters a with image(a)[0] == a, ascending. Each seeds a one-sided
  // fixed point when m >= 2.
  std::vector<std::uint8_t> fixed_point_seeds() const;

  bool operator==(const Substitution& other) const {
    return symbols_ == other.symbols_ && flat_ == other.flat_ && m_ == other.m_;
  }

 private:
  std::vector<std::string> symbols_;
  Word flat_;  // images back to back, m bytes each
  std::uint32_t m_ = 0;
};

}  // namespace apw
