#include "mcg/words.hpp"

#include <cctype>
#include <charconv>
#include <deque>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace mcg {

ParseError::ParseError(std::string const& msg, std::size_t pos)
    : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}

SurfaceParams::SurfaceParams(int g, int n) : g_(g), n_(n) {
  if (g < 2) {
    throw Error("genus must be at least 2, got " + std::to_string(g));
  }
  if (n < 0) {
    throw Error("boundary count must be non-negative, got " +
                std::to_string(n));
  }
}

int normalize_index(int m, int N) {
  int r = (m - 1) % N;
  if (r < 0) {
    r += N;
  }
  return r + 1;
}

GeneratorSymbol GeneratorSymbol::b() { return {SymbolKind::B, 0, 0, {}}; }

GeneratorSymbol GeneratorSymbol::bk(int k) {
  if (k < 1) {
    throw IndexError("b-index must be positive");
  }
  return {SymbolKind::Bk, k, 0, {}};
}

GeneratorSymbol GeneratorSymbol::a(int i) {
  if (i < 1) {
    throw IndexError("a-index must be positive");
  }
  return {SymbolKind::A, i, 0, {}};
}

GeneratorSymbol GeneratorSymbol::c(int i, int j) {
  if (i < 1 || j < 1) {
    throw IndexError("c-indices must be positive");
  }
  if (i == j) {
    throw IndexError("c-indices must differ: c{" + std::to_string(i) + "," +
                     std::to_string(j) + "}");
  }
  return {SymbolKind::C, i, j, {}};
}

GeneratorSymbol GeneratorSymbol::c(int i, int j, int N) {
  return c(normalize_index(i, N), normalize_index(j, N));
}

GeneratorSymbol GeneratorSymbol::named(std::string label) {
  return {SymbolKind::Named, 0, 0, std::move(label)};
}

std::string GeneratorSymbol::to_string() const {
  switch (kind_) {
    case SymbolKind::B:
      return "b";
    case SymbolKind::Bk:
      return "b" + std::to_string(i_);
    case SymbolKind::A:
      return "a" + std::to_string(i_);
    case SymbolKind::C:
      return "c{" + std::to_string(i_) + "," + std::to_string(j_) + "}";
    case SymbolKind::Named:
      return label_;
  }
  return {};
}

namespace {

struct Registry {
  std::shared_mutex mutex;
  std::deque<GeneratorSymbol> symbols;
  std::map<GeneratorSymbol, SymbolId> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

SymbolId intern(GeneratorSymbol const& s) {
  auto& r = registry();
  {
    std::shared_lock lock(r.mutex);
    if (auto it = r.ids.find(s); it != r.ids.end()) {
      return it->second;
    }
  }
  std::unique_lock lock(r.mutex);
  if (auto it = r.ids.find(s); it != r.ids.end()) {
    return it->second;
  }
  auto id = static_cast<SymbolId>(r.symbols.size());
  r.symbols.push_back(s);
  r.ids.emplace(s, id);
  return id;
}

GeneratorSymbol const& symbol_of(SymbolId id) {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  // deque never relocates existing elements on push_back
  return r.symbols.at(id);
}

Letter::Letter(GeneratorSymbol const& s, int sign) : Letter(intern(s), sign) {}

Letter::Letter(SymbolId id, int sign)
    : code_(sign > 0 ? static_cast<std::int32_t>(id) + 1
                     : -(static_cast<std::int32_t>(id) + 1)) {}

std::string Letter::to_string() const {
  auto s = symbol().to_string();
  if (sign() < 0) {
    s += '\'';
  }
  return s;
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) {
    throw IndexError("slice out of bounds");
  }
  return Word(std::vector<Letter>(letters_.begin() + pos,
                                  letters_.begin() + pos + len));
}

Word Word::pow(int k) const {
  if (k < 0) {
    return invert(*this).pow(-k);
  }
  std::vector<Letter> out;
  out.reserve(letters_.size() * static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) {
    out.insert(out.end(), letters_.begin(), letters_.end());
  }
  return Word(std::move(out));
}

Word operator*(Word const& u, Word const& v) {
  std::vector<Letter> out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return Word(std::move(out));
}

std::size_t WordHash::operator()(Word const& w) const noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  for (auto l : w) {
    h ^= static_cast<std::uint32_t>(l.code());
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool all_digits(std::string_view s) {
  if (s.empty()) {
    return false;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

int to_int(std::string_view s, std::size_t pos) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "'", pos);
  }
  return v;
}

void check_range(char what, int v, int hi, std::size_t pos) {
  if (v < 1 || v > hi) {
    throw IndexError(std::string("index ") + what + std::to_string(v) +
                     " out of range 1.." + std::to_string(hi) +
                     " at position " + std::to_string(pos));
  }
}

class WordParser {
 public:
  WordParser(std::string_view text, std::optional<SurfaceParams> ctx)
      : text_(text), ctx_(ctx) {}

  Word parse() {
    std::vector<Letter> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(letter());
      if (pos_ < text_.size() &&
          !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError("expected whitespace between letters", pos_);
      }
      skip_space();
    }
    return Word(std::move(out));
  }

  GeneratorSymbol single_symbol() {
    skip_space();
    auto s = atom();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after symbol", pos_);
    }
    return s;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Letter letter() {
    auto s = atom();
    int sign = 1;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      sign = -1;
      ++pos_;
    } else if (text_.substr(pos_).starts_with("^-1")) {
      sign = -1;
      pos_ += 3;
    }
    return Letter(s, sign);
  }

  GeneratorSymbol atom() {
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) {
      throw ParseError("expected generator", pos_);
    }
    if (text_.substr(pos_).starts_with("c{")) {
      return c_atom(start);
    }
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) {
      ++pos_;
    }
    auto tok = text_.substr(start, pos_ - start);
    if (tok == "b") {
      return GeneratorSymbol::b();
    }
    if ((tok[0] == 'a' || tok[0] == 'b') && all_digits(tok.substr(1))) {
      int v = to_int(tok.substr(1), start + 1);
      if (tok[0] == 'a') {
        if (ctx_) {
          check_range('a', v, ctx_->N(), start);
        }
        return GeneratorSymbol::a(v);
      }
      if (ctx_) {
        check_range('b', v, ctx_->g() - 1, start);
      }
      return GeneratorSymbol::bk(v);
    }
    return GeneratorSymbol::named(std::string(tok));
  }

  GeneratorSymbol c_atom(std::size_t start) {
    pos_ += 2;
    int i = integer();
    expect(',');
    int j = integer();
    expect('}');
    try {
      if (ctx_) {
        // one cyclic wrap past N is allowed, as in c{2g-2,2g-1} for n = 0
        int hi = ctx_->N() + 1;
        check_range('c', i, hi, start);
        check_range('c', j, hi, start);
        return GeneratorSymbol::c(i, j, ctx_->N());
      }
      return GeneratorSymbol::c(i, j);
    } catch (IndexError const& e) {
      throw IndexError(std::string(e.what()) + " at position " +
                       std::to_string(start));
    }
  }

  int integer() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) {
      throw ParseError("expected integer", pos_);
    }
    return to_int(text_.substr(start, pos_ - start), start);
  }

  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  std::string_view text_;
  std::optional<SurfaceParams> ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, std::optional<SurfaceParams> ctx) {
  return WordParser(text, ctx).parse();
}

GeneratorSymbol parse_symbol(std::string_view text,
                             std::optional<SurfaceParams> ctx) {
  return WordParser(text, ctx).single_symbol();
}

std::string print_word(Word const& w) {
  std::string out;
  for (auto l : w) {
    if (!out.empty()) {
      out += ' ';
    }
    out += l.to_string();
  }
  return out;
}

Word free_reduce(Word const& w) {
  std::vector<Letter> st;
  st.reserve(w.size());
  for (auto l : w) {
    if (!st.empty() && st.back() == l.inverse()) {
      st.pop_back();
    } else {
      st.push_back(l);
    }
  }
  return Word(std::move(st));
}

Word invert(Word const& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word conjugate(Word const& y, Word const& x) {
  return free_reduce(y * x * invert(y));
}

Word substitute(Word const& w, std::size_t pos, std::size_t len,
                Word const& repl) {
  if (pos > w.size() || len > w.size() - pos) {
    throw IndexError("substitution [" + std::to_string(pos) + ", " +
                     std::to_string(pos + len) + ") out of bounds for word of length " +
                     std::to_string(w.size()));
  }
  std::vector<Letter> out;
  out.reserve(w.size() - len + repl.size());
  out.insert(out.end(), w.begin(), w.begin() + pos);
  out.insert(out.end(), repl.begin(), repl.end());
  out.insert(out.end(), w.begin() + pos + len, w.end());
  return Word(std::move(out));
}

Word rotate(Word const& w, std::size_t k) {
  if (w.empty()) {
    return w;
  }
  k %= w.size();
  return w.slice(k, w.size() - k) * w.slice(0, k);
}

Word cyclic_reduce(Word const& w) {
  auto r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return r.slice(lo, hi - lo);
}

int exponent_sum(Word const& w, GeneratorSymbol const& s) {
  auto id = intern(s);
  int total = 0;
  for (auto l : w) {
    if (l.id() == id) {
      total += l.sign();
    }
  }
  return total;
}

Word letter_word(GeneratorSymbol const& s, int sign) {
  return Word{Letter(s, sign)};
}

}  // namespace mcg
