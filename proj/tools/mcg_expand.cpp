// Expands chain sources (readable derivations, one group element per line)
// into positional proof scripts that `mcg check` replays.
//
// Chain source format:
//   over <presentation>
//   chain <sym> <sym> ...            braid chain for certificates
//   let <NAME> = <expr>
//   script <name>
//   <expr>
//   = <expr> [@braid | @search <depth> | @use <id> ...]
//   end
// Expressions: letters, $NAME, (expr), (expr)^k, expr', [P | X] = P X P'.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mcg/braid.hpp"
#include "mcg/corpus.hpp"
#include "mcg/prover.hpp"

namespace {

using namespace mcg;

class ExprParser {
 public:
  ExprParser(std::string_view text, std::optional<SurfaceParams> ctx,
             std::map<std::string, Word> const& macros)
      : text_(text), ctx_(ctx), macros_(macros) {}

  Word parse() {
    auto w = sequence();
    skip();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return w;
  }

 private:
  [[noreturn]] void fail(std::string const& msg) {
    throw ParseError(msg + " in '" + std::string(text_) + "'", pos_);
  }

  void skip() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end_of_sequence() {
    skip();
    return pos_ >= text_.size() || text_[pos_] == ')' || text_[pos_] == ']' ||
           text_[pos_] == '|';
  }

  Word sequence() {
    Word out;
    while (!at_end_of_sequence()) {
      out = out * term();
    }
    return out;
  }

  Word term() {
    auto w = primary();
    while (pos_ < text_.size()) {
      if (text_[pos_] == '\'') {
        w = invert(w);
        ++pos_;
      } else if (text_[pos_] == '^') {
        ++pos_;
        bool neg = pos_ < text_.size() && text_[pos_] == '-';
        if (neg) {
          ++pos_;
        }
        auto start = pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
        if (start == pos_) {
          fail("expected exponent");
        }
        int k = std::stoi(std::string(text_.substr(start, pos_ - start)));
        w = w.pow(neg ? -k : k);
      } else {
        break;
      }
    }
    return w;
  }

  Word primary() {
    skip();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto w = sequence();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      auto p = sequence();
      expect('|');
      auto x = sequence();
      expect(']');
      return p * x * invert(p);
    }
    if (c == '$') {
      ++pos_;
      auto name = ident();
      auto it = macros_.find(name);
      if (it == macros_.end()) {
        fail("unknown macro $" + name);
      }
      return it->second;
    }
    if (c == '1' && (pos_ + 1 == text_.size() ||
                     !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    auto start = pos_;
    if (text_.substr(pos_).starts_with("c{")) {
      pos_ = text_.find('}', pos_);
      if (pos_ == std::string_view::npos) {
        fail("unterminated c{");
      }
      ++pos_;
    } else {
      ident();
    }
    return letter_word(parse_symbol(text_.substr(start, pos_ - start), ctx_));
  }

  std::string ident() {
    auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected identifier");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string_view text_;
  std::optional<SurfaceParams> ctx_;
  std::map<std::string, Word> const& macros_;
  std::size_t pos_ = 0;
};

struct Hint {
  enum class Kind { automatic, braid, search } kind = Kind::automatic;
  std::size_t depth = 0;
  std::set<std::string> use;
};

struct Expander {
  Presentation pres;
  std::vector<std::vector<GeneratorSymbol>> chains;
  bool verbose = false;

  std::vector<ProofStep> shifted(std::vector<ProofStep> steps,
                                 std::size_t offset) {
    for (auto& s : steps) {
      s.pos += offset;
    }
    return steps;
  }

  std::optional<std::vector<ProofStep>> direct(Word const& u, Word const& v,
                                               RelatorIndex const& index) {
    std::size_t cp = 0;
    while (cp < u.size() && cp < v.size() && u[cp] == v[cp]) {
      ++cp;
    }
    std::size_t cs = 0;
    while (cs < u.size() - cp && cs < v.size() - cp &&
           u[u.size() - 1 - cs] == v[v.size() - 1 - cs]) {
      ++cs;
    }
    for (std::size_t e = 0; e <= 24; ++e) {
      for (std::size_t a = 0; a <= e; ++a) {
        std::size_t b = e - a;
        if (a > cp || b > cs) {
          continue;
        }
        auto lo = cp - a;
        auto hu = u.size() - cs + b;
        auto hv = v.size() - cs + b;
        auto removed = u.slice(lo, hu - lo);
        auto repl = v.slice(lo, hv - lo);
        if (auto j = index.certify(removed, repl)) {
          return std::vector<ProofStep>{
              ProofStep::sub(lo, removed.size(), repl, *j)};
        }
      }
    }
    return std::nullopt;
  }

  std::pair<std::size_t, std::size_t> common(Word const& u, Word const& v) {
    std::size_t cp = 0;
    while (cp < u.size() && cp < v.size() && u[cp] == v[cp]) {
      ++cp;
    }
    std::size_t cs = 0;
    while (cs < u.size() - cp && cs < v.size() - cp &&
           u[u.size() - 1 - cs] == v[v.size() - 1 - cs]) {
      ++cs;
    }
    return {cp, cs};
  }

  static bool commutes(Letter x, Letter y, RelatorIndex const& index) {
    return x.id() != y.id() &&
           index.certify(Word{std::vector<Letter>{x, y}},
                         Word{std::vector<Letter>{y, x}})
               .has_value();
  }

  // Rewrites u into v one substitution at a time: pull the next letter of v
  // forward through letters it commutes with, cancel a letter against a
  // commuting inverse further on, apply a relator substitution that
  // extends the prefix shared with v, or conjugate by the next letter of v.
  std::optional<std::vector<ProofStep>> greedy(Word u, Word const& v,
                                               RelatorIndex const& index) {
    std::vector<ProofStep> out;
    auto apply = [&](ProofStep const& step) {
      auto next = check_step(pres, u, step);
      out.push_back(step);
      auto dels = reduction_steps(next);
      out.insert(out.end(), dels.begin(), dels.end());
      u = free_reduce(next);
    };
    auto swap_left = [&](std::size_t k) {
      Word removed{std::vector<Letter>{u[k - 1], u[k]}};
      Word repl{std::vector<Letter>{u[k], u[k - 1]}};
      apply(ProofStep::sub(k - 1, 2, repl, *index.certify(removed, repl)));
    };
    // first k > from with u[k] == want, movable left to position from
    auto reachable = [&](std::size_t from, Letter want) -> std::size_t {
      if (!commutes(u[from], want, index)) {
        return 0;
      }
      for (auto k = from + 1; k < u.size(); ++k) {
        if (u[k] == want) {
          return k;
        }
        if (!commutes(u[k], want, index)) {
          return 0;
        }
      }
      return 0;
    };
    for (int round = 0; round < 4000 && u != v; ++round) {
      auto [cp, cs] = common(u, v);
      if (cp < v.size() && cp < u.size()) {
        if (auto k = reachable(cp, v[cp]); k > 0) {
          swap_left(k);
          continue;
        }
      }
      bool moved = false;
      for (auto j = cp; j + 1 < u.size() && !moved; ++j) {
        if (auto k = reachable(j + 1, u[j].inverse()); k > j + 1) {
          swap_left(k);
          moved = true;
        }
      }
      if (moved) {
        continue;
      }
      for (std::size_t a = 0; a <= std::min<std::size_t>(cp, 12) && !moved;
           ++a) {
        auto lo = cp - a;
        for (std::size_t hu = cp; hu <= std::min(u.size(), cp + 48) && !moved;
             ++hu) {
          for (std::size_t hv = cp; hv <= std::min(v.size(), cp + 48); ++hv) {
            if (hu == lo && hv == lo) {
              continue;
            }
            auto removed = u.slice(lo, hu - lo);
            auto repl = v.slice(lo, hv - lo);
            auto j = index.certify(removed, repl);
            if (!j) {
              continue;
            }
            auto step = ProofStep::sub(lo, removed.size(), repl, *j);
            auto next = check_step(pres, u, step);
            if (common(free_reduce(next), v).first <= cp) {
              continue;
            }
            apply(step);
            moved = true;
            break;
          }
        }
      }
      // conjugate u[cp] by the wanted letter when they commute, so the
      // letter appears in place and its inverse moves one step right
      if (!moved && cp < v.size() && cp < u.size() &&
          commutes(v[cp], u[cp], index)) {
        Word removed{std::vector<Letter>{u[cp]}};
        Word repl{std::vector<Letter>{v[cp], u[cp], v[cp].inverse()}};
        if (auto j = index.certify(removed, repl)) {
          apply(ProofStep::sub(cp, 1, repl, *j));
          moved = true;
        }
      }
      if (!moved) {
        return std::nullopt;
      }
    }
    if (u != v) {
      return std::nullopt;
    }
    return out;
  }

  std::optional<std::vector<ProofStep>> braided(Word const& u, Word const& v) {
    auto [cp, cs] = common(u, v);
    auto um = u.slice(cp, u.size() - cp - cs);
    auto vm = v.slice(cp, v.size() - cp - cs);
    for (auto const& chain : chains) {
      try {
        if (auto s = braid_certificate(pres, chain, um, vm)) {
          return shifted(s->steps, cp);
        }
      } catch (Error const&) {
        // letters outside this chain
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<ProofStep>> searched(Word const& u, Word const& v,
                                                 std::vector<std::size_t> depths,
                                                 Hint const& hint) {
    auto [cp, cs] = common(u, v);
    SearchConfig cfg;
    cfg.max_states = 400000;
    if (!hint.use.empty()) {
      cfg.filter = [&](Relator const& r) { return hint.use.contains(r.id); };
    }
    for (auto d : depths) {
      for (std::size_t margin : {0u, 2u, 4u}) {
        for (int growth : {2, 6}) {
          auto lo = cp >= margin ? cp - margin : 0;
          auto hu = std::min(u.size(), u.size() - cs + margin);
          auto hv = std::min(v.size(), v.size() - cs + margin);
          auto uw = u.slice(lo, hu - lo);
          auto vw = v.slice(lo, hv - lo);
          cfg.max_depth = d;
          cfg.max_growth = growth;
          cfg.max_length = std::max(uw.size(), vw.size()) + 8;
          if (auto s = search_equal(pres, uw, vw, cfg)) {
            return shifted(s->steps, lo);
          }
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<ProofStep>> expand(Word const& u, Word const& v,
                                               Hint const& hint) {
    if (u == v) {
      return std::vector<ProofStep>{};
    }
    std::function<bool(Relator const&)> filter;
    if (!hint.use.empty()) {
      filter = [&](Relator const& r) { return hint.use.contains(r.id); };
    }
    RelatorIndex index(pres, filter);
    switch (hint.kind) {
      case Hint::Kind::braid:
        return braided(u, v);
      case Hint::Kind::search:
        return searched(u, v, {hint.depth}, hint);
      case Hint::Kind::automatic:
        break;
    }
    if (auto s = direct(u, v, index)) {
      return s;
    }
    if (auto s = braided(u, v)) {
      return s;
    }
    if (auto s = greedy(u, v, index)) {
      return s;
    }
    return searched(u, v, {2, 3}, hint);
  }
};

Hint parse_hint(std::string const& text) {
  Hint h;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "@braid") {
      h.kind = Hint::Kind::braid;
    } else if (tok == "@search") {
      h.kind = Hint::Kind::search;
      in >> h.depth;
    } else if (tok == "@use") {
      while (in >> tok) {
        h.use.insert(tok);
      }
    } else {
      throw Error("unknown hint " + tok);
    }
  }
  return h;
}

std::string trim(std::string s) {
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

int run(std::string const& src_path, std::string const& out_path,
        std::string const& corpus, bool verbose) {
  auto c = load_corpus(corpus);
  std::ifstream in(src_path);
  if (!in) {
    std::cerr << "cannot open " << src_path << "\n";
    return 2;
  }
  std::optional<Expander> ex;
  std::map<std::string, Word> macros;
  std::vector<ProofScript> done;
  std::optional<ProofScript> cur;
  Word current;
  int failures = 0;
  std::string line;
  std::size_t lineno = 0;
  auto eval = [&](std::string const& text) {
    return ExprParser(text, ex ? ex->pres.surface() : std::nullopt, macros)
        .parse();
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto t = trim(line);
    if (auto hash = t.find('#'); hash != std::string::npos) {
      t = trim(t.substr(0, hash));
    }
    if (t.empty()) {
      continue;
    }
    try {
      if (t.starts_with("over ")) {
        auto name = trim(t.substr(5));
        auto p = c.library.find(name);
        if (p == nullptr) {
          throw Error("unknown presentation " + name);
        }
        ex.emplace(Expander{*p, {}, verbose});
      } else if (t.starts_with("chain ")) {
        auto w = eval(t.substr(6));
        std::vector<GeneratorSymbol> chain;
        for (auto l : w) {
          chain.push_back(l.symbol());
        }
        ex->chains.push_back(chain);
      } else if (t.starts_with("let ")) {
        auto eq = t.find('=');
        macros[trim(t.substr(4, eq - 4))] = eval(t.substr(eq + 1));
      } else if (t.starts_with("script ")) {
        cur = ProofScript{trim(t.substr(7)), ex->pres.name(), {}, {}, {}};
        current = Word{};
      } else if (t == "end") {
        cur->end = current;
        auto report = check_script(ex->pres, *cur);
        if (!report.ok) {
          throw Error("generated script " + cur->name +
                      " does not check: " + report.reason);
        }
        auto w = free_reduce(cur->start * invert(cur->end));
        if (!w.empty()) {
          ex->pres.add_relator(cur->name, w, RelatorKind::lemma);
        }
        std::cerr << "ok " << cur->name << " (" << cur->steps.size()
                  << " steps)\n";
        done.push_back(*cur);
        cur.reset();
      } else if (cur && cur->steps.empty() && current.empty() &&
                 cur->start.empty() && !t.starts_with("=")) {
        cur->start = eval(t);
        cur->steps = reduction_steps(cur->start);
        current = free_reduce(cur->start);
      } else if (cur && t.starts_with("=")) {
        auto body = t.substr(1);
        Hint hint;
        if (auto at = body.find('@'); at != std::string::npos) {
          hint = parse_hint(body.substr(at));
          body = body.substr(0, at);
        }
        auto target = free_reduce(eval(body));
        auto steps = ex->expand(current, target, hint);
        if (!steps) {
          ++failures;
          std::cerr << src_path << ":" << lineno << ": cannot connect in "
                    << cur->name << "\n  from: " << print_word(current)
                    << "\n  to:   " << print_word(target) << "\n";
          // keep going from the target so later lines still get checked
          cur->steps.clear();
          cur->start = target;
          current = target;
          continue;
        }
        ProofScript seg{"seg", ex->pres.name(), current, *steps, target};
        auto words = replay(ex->pres, seg);
        auto last = words.back();
        cur->steps.insert(cur->steps.end(), steps->begin(), steps->end());
        auto dels = reduction_steps(last);
        cur->steps.insert(cur->steps.end(), dels.begin(), dels.end());
        if (free_reduce(last) != target) {
          throw Error("segment does not reach its target");
        }
        current = target;
      } else {
        throw Error("unrecognized line");
      }
    } catch (std::exception const& e) {
      std::cerr << src_path << ":" << lineno << ": " << e.what() << "\n";
      return 2;
    }
  }
  if (failures > 0) {
    std::cerr << failures << " unconnected step(s); nothing written\n";
    return 1;
  }
  std::ofstream out(out_path);
  out << "# generated by mcg-expand from "
      << std::filesystem::path(src_path).filename().string() << "\n";
  for (auto const& s : done) {
    out << "\n" << emit_script(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expand chain sources into positional proof scripts"};
  std::string src;
  std::string out;
  std::string corpus = mcg::corpus_dir();
  bool verbose = false;
  app.add_option("source", src, "chain source file")->required();
  app.add_option("-o,--output", out, "script file to write")->required();
  app.add_option("--corpus", corpus, "corpus directory with presentations/");
  app.add_flag("-v,--verbose", verbose);
  CLI11_PARSE(app, argc, argv);
  return run(src, out, corpus, verbose);
}
