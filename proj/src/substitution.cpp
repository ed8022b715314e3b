#include "apw/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace apw {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// A token is one symbol: either a bare single character or a quoted string.
struct Token {
  std::string text;
};

// Splits a rule line at the first unquoted "->".
bool split_arrow(std::string_view line, std::string_view& lhs, std::string_view& rhs) {
  bool in_quote = false;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    if (line[i] == '"') in_quote = !in_quote;
    if (!in_quote && line[i] == '-' && line[i + 1] == '>') {
      lhs = line.substr(0, i);
      rhs = line.substr(i + 2);
      return true;
    }
  }
  return false;
}

std::vector<Token> tokenize(std::string_view s, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (is_space(s[i])) {
      ++i;
      continue;
    }
    if (s[i] == '"') {
      std::size_t close = s.find('"', i + 1);
      if (close == std::string_view::npos)
        fail(Gate::ParseError, "line " + std::to_string(line_no) + ": unterminated quote");
      if (close == i + 1)
        fail(Gate::ParseError, "line " + std::to_string(line_no) + ": empty quoted symbol");
      out.push_back({std::string(s.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else {
      out.push_back({std::string(1, s[i])});
      ++i;
    }
  }
  return out;
}

bool symbol_needs_quotes(const std::string& sym) {
  if (sym.size() != 1) return true;
  char c = sym[0];
  return is_space(c) || c == '"' || c == '#' || c == '-';
}

}  // namespace

Substitution::Substitution(std::vector<std::string> symbols, std::vector<Word> images)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) fail(Gate::ParseError, "no rules");
  if (symbols_.size() > 256)
    fail(Gate::AlphabetTooLarge, "alphabet has " + std::to_string(symbols_.size()) +
                                     " symbols; at most 256 supported");
  if (images.size() != symbols_.size()) fail(Gate::ParseError, "images do not match alphabet");
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    for (std::size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j]) fail(Gate::DuplicateRule, "duplicate symbol " + symbols_[i]);
  if (images[0].empty()) fail(Gate::EmptyImage, "image of " + symbols_[0] + " is empty");
  m_ = static_cast<std::uint32_t>(images[0].size());
  flat_.reserve(static_cast<std::size_t>(m_) * symbols_.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].empty()) fail(Gate::EmptyImage, "image of " + symbols_[i] + " is empty");
    if (images[i].size() != m_)
      fail(Gate::NonUniform, "image of " + symbols_[i] + " has length " +
                                 std::to_string(images[i].size()) + ", expected " + std::to_string(m_));
    for (std::uint8_t b : images[i])
      if (b >= symbols_.size()) fail(Gate::UnknownLetter, "letter index out of range");
    flat_.insert(flat_.end(), images[i].begin(), images[i].end());
  }
}

Substitution Substitution::parse_spec(std::string_view text) {
  struct Rule {
    std::string lhs;
    std::vector<Token> rhs;
    std::size_t line_no;
  };
  std::vector<Rule> rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size() || line[first] == '#') continue;
    std::string_view lhs, rhs;
    if (!split_arrow(line, lhs, rhs))
      fail(Gate::ParseError, "line " + std::to_string(line_no) + ": expected SYMBOL -> IMAGE");
    auto lhs_toks = tokenize(lhs, line_no);
    if (lhs_toks.size() != 1)
      fail(Gate::ParseError,
           "line " + std::to_string(line_no) + ": left side must be a single symbol");
    rules.push_back({std::move(lhs_toks[0].text), tokenize(rhs, line_no), line_no});
  }
  if (rules.empty()) fail(Gate::ParseError, "no rules");

  // Alphabet order is first-appearance order of left-hand sides.
  std::vector<std::string> symbols;
  for (const Rule& r : rules) {
    if (std::find(symbols.begin(), symbols.end(), r.lhs) != symbols.end())
      fail(Gate::DuplicateRule, "line " + std::to_string(r.line_no) + ": duplicate rule for " + r.lhs);
    symbols.push_back(r.lhs);
  }
  if (symbols.size() > 256)
    fail(Gate::AlphabetTooLarge,
         "alphabet has " + std::to_string(symbols.size()) + " symbols; at most 256 supported");

  auto letter = [&](const std::string& sym) -> std::uint8_t {
    auto it = std::find(symbols.begin(), symbols.end(), sym);
    if (it == symbols.end()) fail(Gate::UnknownLetter, "symbol " + sym + " has no rule");
    return static_cast<std::uint8_t>(it - symbols.begin());
  };

  std::vector<Word> images;
  images.reserve(rules.size());
  for (const Rule& r : rules) {
    if (r.rhs.empty())
      fail(Gate::EmptyImage, "line " + std::to_string(r.line_no) + ": image of " + r.lhs + " is empty");
    Word img;
    img.reserve(r.rhs.size());
    for (const Token& t : r.rhs) img.push_back(letter(t.text));
    images.push_back(std::move(img));
  }
  return Substitution(std::move(symbols), std::move(images));
}

Substitution Substitution::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Gate::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Gate::IoError, "cannot read " + path);
  return parse_spec(buf.str());
}

std::optional<std::uint8_t> Substitution::letter_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == symbol) return static_cast<std::uint8_t>(i);
  return std::nullopt;
}

Word Substitution::apply(std::span<const std::uint8_t> w) const {
  Word out;
  out.reserve(w.size() * m_);
  for (std::uint8_t a : w) {
    auto img = image(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Word Substitution::parse_word(std::string_view text) const {
  Word out;
  for (const Token& t : tokenize(text, 1)) {
    auto a = letter_of(t.text);
    if (!a) fail(Gate::UnknownLetter, "symbol " + t.text + " not in alphabet");
    out.push_back(*a);
  }
  return out;
}

std::string Substitution::render_word(std::span<const std::uint8_t> w) const {
  bool plain = true;
  for (const std::string& s : symbols_)
    if (symbol_needs_quotes(s)) plain = false;
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string& sym = symbols_[w[i]];
    if (plain) {
      out += sym;
    } else {
      if (i) out += ' ';
      if (symbol_needs_quotes(sym))
        out += '"' + sym + '"';
      else
        out += sym;
    }
  }
  return out;
}

std::string Substitution::to_spec() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const std::string& sym = symbols_[i];
    if (symbol_needs_quotes(sym))
      out += '"' + sym + '"';
    else
      out += sym;
    out += " -> ";
    out += render_word(image(static_cast<std::uint8_t>(i)));
    out += '\n';
  }
  return out;
}

std::vector<std::uint64_t> Substitution::incidence_matrix() const {
  std::size_t r = symbols_.size();
  std::vector<std::uint64_t> mat(r * r, 0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::uint8_t b : image(static_cast<std::uint8_t>(i))) ++mat[i * r + b];
  return mat;
}

Substitution::Primitivity Substitution::is_primitive() const {
  std::size_t r = symbols_.size();
  std::size_t words = (r + 63) / 64;
  auto mat = incidence_matrix();

  // rows as bitsets: bit j of row i set iff letter j occurs in sigma^n(a_i)
  std::vector<std::uint64_t> base(r * words, 0), cur;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (mat[i * r + j]) base[i * words + j / 64] |= 1ull << (j % 64);
  cur = base;

  auto all_ones = [&](const std::vector<std::uint64_t>& rows) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t full = (w + 1) * 64 <= r ? ~0ull : (r % 64 ? (1ull << (r % 64)) - 1 : ~0ull);
        if (rows[i * words + w] != full) return false;
      }
    return true;
  };

  // Wielandt: a primitive pattern turns positive at some n <= r^2 - 2r + 2.
  // Cycling patterns repeat long before that; a seen-state check cuts them off.
  std::uint64_t limit = r >= 2 ? static_cast<std::uint64_t>(r) * r - 2 * r + 2 : 1;
  std::vector<std::vector<std::uint64_t>> seen;
  std::vector<std::uint64_t> next(r * words);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (all_ones(cur)) return {true, static_cast<std::uint32_t>(n)};
    if (std::find(seen.begin(), seen.end(), cur) != seen.end()) return {false, 0};
    if (seen.size() < 1024) seen.push_back(cur);
    std::fill(next.begin(), next.end(), 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = cur[i * words + w];
        while (bits) {
          std::size_t j = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
          bits &= bits - 1;
          for (std::size_t t = 0; t < words; ++t) next[i * words + t] |= base[j * words + t];
        }
      }
    cur.swap(next);
  }
  return {false, 0};
}

std::vector<std::uint8_t> Substitution::fixed_point_seeds() const {
  std::vector<std::uint8_t> out;
  for (std::size_t a = 0; a < symbols_.size(); ++a)
    if (image(static_cast<std::uint8_t>(a))[0] == a) out.push_back(static_cast<std::uint8_t>(a));
  return out;
}

}  // namespace apw
