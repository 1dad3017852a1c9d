#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; position is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(std::string const& msg, std::size_t pos);
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// Genus g >= 2 surface with n >= 0 boundary components.
class SurfaceParams {
 public:
  SurfaceParams(int g, int n);

  int g() const noexcept { return g_; }
  int n() const noexcept { return n_; }
  // Number of a-curves, 2g+n-2.
  int N() const noexcept { return 2 * g_ + n_ - 2; }

  friend auto operator<=>(SurfaceParams const&, SurfaceParams const&) = default;

 private:
  int g_;
  int n_;
};

enum class SymbolKind : std::uint8_t { B, Bk, A, C, Named };

class GeneratorSymbol {
 public:
  static GeneratorSymbol b();
  static GeneratorSymbol bk(int k);
  static GeneratorSymbol a(int i);
  // Indices are stored as given.
  static GeneratorSymbol c(int i, int j);
  // Indices are reduced cyclically into 1..N.
  static GeneratorSymbol c(int i, int j, int N);
  static GeneratorSymbol named(std::string label);

  SymbolKind kind() const noexcept { return kind_; }
  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }
  std::string const& label() const noexcept { return label_; }

  std::string to_string() const;

  friend bool operator==(GeneratorSymbol const&, GeneratorSymbol const&) = default;
  friend auto operator<=>(GeneratorSymbol const&, GeneratorSymbol const&) = default;

 private:
  GeneratorSymbol(SymbolKind kind, int i, int j, std::string label)
      : kind_(kind), i_(i), j_(j), label_(std::move(label)) {}

  SymbolKind kind_;
  int i_;
  int j_;
  std::string label_;
};

int normalize_index(int m, int N);

// Symbols are interned process-wide so letters stay a single integer.
using SymbolId = std::uint32_t;
SymbolId intern(GeneratorSymbol const& s);
GeneratorSymbol const& symbol_of(SymbolId id);

class Letter {
 public:
  Letter(GeneratorSymbol const& s, int sign = 1);
  Letter(SymbolId id, int sign);
  static Letter from_code(std::int32_t code) { return Letter(code); }

  SymbolId id() const noexcept {
    return static_cast<SymbolId>((code_ > 0 ? code_ : -code_) - 1);
  }
  int sign() const noexcept { return code_ > 0 ? 1 : -1; }
  GeneratorSymbol const& symbol() const { return symbol_of(id()); }
  Letter inverse() const noexcept { return Letter(-code_); }
  std::int32_t code() const noexcept { return code_; }
  std::string to_string() const;

  friend bool operator==(Letter, Letter) = default;
  friend auto operator<=>(Letter, Letter) = default;

 private:
  explicit Letter(std::int32_t code) : code_(code) {}
  std::int32_t code_;
};

class Word {
 public:
  using const_iterator = std::vector<Letter>::const_iterator;

  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const_iterator begin() const noexcept { return letters_.begin(); }
  const_iterator end() const noexcept { return letters_.end(); }
  std::vector<Letter> const& letters() const noexcept { return letters_; }

  Word slice(std::size_t pos, std::size_t len) const;
  Word pow(int k) const;

  friend Word operator*(Word const& u, Word const& v);
  friend bool operator==(Word const&, Word const&) = default;
  friend auto operator<=>(Word const&, Word const&) = default;

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept;
};

// Parse a whitespace separated word. With a surface context, indices are
// range checked and c-indices are reduced cyclically.
Word parse_word(std::string_view text,
                std::optional<SurfaceParams> ctx = std::nullopt);
GeneratorSymbol parse_symbol(std::string_view text,
                             std::optional<SurfaceParams> ctx = std::nullopt);
std::string print_word(Word const& w);

Word free_reduce(Word const& w);
Word invert(Word const& w);
// y x y^-1, freely reduced.
Word conjugate(Word const& y, Word const& x);
// Replace [pos, pos+len) by repl; no reduction.
Word substitute(Word const& w, std::size_t pos, std::size_t len,
                Word const& repl);
// Cyclic left rotation by k letters.
Word rotate(Word const& w, std::size_t k);
// Reduced and cyclically reduced.
Word cyclic_reduce(Word const& w);
// Sum of the exponents of s in w.
int exponent_sum(Word const& w, GeneratorSymbol const& s);

Word letter_word(GeneratorSymbol const& s, int sign = 1);

}  // namespace mcg
