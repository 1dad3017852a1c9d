#include "mcg/surface.hpp"

#include <map>

namespace mcg {

std::array<GeneratorSymbol, 4> const& surface_generators() {
  static std::array<GeneratorSymbol, 4> const gens{
      GeneratorSymbol::named("x0"), GeneratorSymbol::named("x1"),
      GeneratorSymbol::named("x2"), GeneratorSymbol::named("x3")};
  return gens;
}

Word const& surface_relator() {
  static Word const r = parse_word("x3 x2' x1 x0' x3' x2 x1' x0");
  return r;
}

namespace {

std::vector<Word> const& relator_rotations() {
  static std::vector<Word> const rots = [] {
    std::vector<Word> out;
    for (auto const& base : {surface_relator(), invert(surface_relator())}) {
      for (std::size_t k = 0; k < base.size(); ++k) {
        out.push_back(rotate(base, k));
      }
    }
    return out;
  }();
  return rots;
}

std::size_t surface_index(SymbolId id) {
  auto const& g = surface_generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (intern(g[i]) == id) {
      return i;
    }
  }
  throw Error("letter " + symbol_of(id).to_string() +
              " is not a surface generator");
}

}  // namespace

Word dehn_reduce(Word const& w0) {
  auto w = free_reduce(w0);
  auto const& rots = relator_rotations();
  std::size_t half = surface_relator().size() / 2;
  while (true) {
    bool changed = false;
    for (std::size_t p = 0; p < w.size() && !changed; ++p) {
      std::size_t best = 0;
      Word const* best_rot = nullptr;
      for (auto const& r : rots) {
        std::size_t m = 0;
        while (m < r.size() && p + m < w.size() && w[p + m] == r[m]) {
          ++m;
        }
        if (m > best) {
          best = m;
          best_rot = &r;
        }
      }
      if (best > half) {
        auto repl = invert(best_rot->slice(best, best_rot->size() - best));
        w = free_reduce(substitute(w, p, best, repl));
        changed = true;
      }
    }
    if (!changed) {
      return w;
    }
  }
}

SurfaceAutomorphism::SurfaceAutomorphism() {
  for (std::size_t i = 0; i < 4; ++i) {
    images_[i] = letter_word(surface_generators()[i]);
  }
}

SurfaceAutomorphism::SurfaceAutomorphism(std::array<Word, 4> images)
    : images_(std::move(images)) {
  for (auto const& w : images_) {
    for (auto l : w) {
      surface_index(l.id());
    }
  }
}

Word SurfaceAutomorphism::apply(Word const& w) const {
  std::vector<Letter> out;
  for (auto l : w) {
    auto const& img = images_[surface_index(l.id())];
    auto piece = l.sign() > 0 ? img : invert(img);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return free_reduce(Word(std::move(out)));
}

SurfaceAutomorphism operator*(SurfaceAutomorphism const& f,
                              SurfaceAutomorphism const& h) {
  std::array<Word, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = f.apply(h.images_[i]);
  }
  return SurfaceAutomorphism(std::move(out));
}

bool is_certified(SurfaceAutomorphism const& f) {
  auto img = cyclic_reduce(f.apply(surface_relator()));
  if (img.size() != surface_relator().size()) {
    return false;
  }
  for (auto const& r : relator_rotations()) {
    if (r == img) {
      return true;
    }
  }
  return false;
}

SurfaceAutomorphism conjugation_by(Word const& gamma) {
  std::array<Word, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = conjugate(gamma, letter_word(surface_generators()[i]));
  }
  return SurfaceAutomorphism(std::move(out));
}

namespace {

SurfaceAutomorphism table(char const* x0, char const* x1, char const* x2,
                          char const* x3) {
  return SurfaceAutomorphism(
      {parse_word(x0), parse_word(x1), parse_word(x2), parse_word(x3)});
}

struct TwistPair {
  SurfaceAutomorphism forward;
  SurfaceAutomorphism inverse;
};

std::map<GeneratorSymbol, TwistPair> build_twists() {
  std::map<GeneratorSymbol, TwistPair> t;
  t.emplace(GeneratorSymbol::a(1),
            TwistPair{table("x0", "x1 x0'", "x2 x0'", "x3 x0'"),
                      table("x0", "x1 x0", "x2 x0", "x3 x0")});
  t.emplace(GeneratorSymbol::b(),
            TwistPair{table("x1", "x1 x0' x1", "x2", "x3"),
                      table("x0 x1' x0", "x0", "x2", "x3")});
  t.emplace(GeneratorSymbol::a(2),
            TwistPair{table("x0", "x2", "x2 x1' x2", "x3"),
                      table("x0", "x1 x2' x1", "x1", "x3")});
  // b1 sends x2 to x3, following the pattern of b and a2; fixing x2 would
  // not preserve R.
  t.emplace(GeneratorSymbol::bk(1),
            TwistPair{table("x0", "x1", "x3", "x3 x2' x3"),
                      table("x0", "x1", "x2 x3' x2", "x2")});
  t.emplace(GeneratorSymbol::c(1, 2),
            TwistPair{table("x0", "x1", "x2", "x3 x2' x1 x0'"),
                      table("x0", "x1", "x2", "x3 x0 x1' x2")});
  for (auto const& [g, pair] : t) {
    auto round = pair.forward * pair.inverse;
    auto back = pair.inverse * pair.forward;
    for (std::size_t i = 0; i < 4; ++i) {
      auto x = letter_word(surface_generators()[i]);
      if (round.image(i) != x || back.image(i) != x) {
        throw Error("inverse action table for " + g.to_string() +
                    " fails the round trip");
      }
    }
  }
  return t;
}

std::map<GeneratorSymbol, TwistPair> const& twists() {
  static auto const t = build_twists();
  return t;
}

}  // namespace

SurfaceAutomorphism twist_action(GeneratorSymbol const& g, int sign) {
  auto it = twists().find(g);
  if (it == twists().end()) {
    throw Error("no surface action for " + g.to_string());
  }
  return sign > 0 ? it->second.forward : it->second.inverse;
}

SurfaceAutomorphism word_action(Word const& w) {
  SurfaceAutomorphism f;
  for (auto l : w) {
    f = f * twist_action(l.symbol(), l.sign());
  }
  return f;
}

bool automorphisms_equal(SurfaceAutomorphism const& f,
                         SurfaceAutomorphism const& h) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (!dehn_reduce(f.image(i) * invert(h.image(i))).empty()) {
      return false;
    }
  }
  return true;
}

std::vector<Word> surface_words_up_to(std::size_t n) {
  std::vector<Letter> letters;
  for (auto const& g : surface_generators()) {
    letters.emplace_back(g, 1);
    letters.emplace_back(g, -1);
  }
  std::vector<Word> out{Word{}};
  std::size_t layer = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    auto end = out.size();
    for (auto i = layer; i < end; ++i) {
      for (auto l : letters) {
        auto const& w = out[i];
        if (!w.empty() && w[w.size() - 1] == l.inverse()) {
          continue;
        }
        out.push_back(w * Word{l});
      }
    }
    layer = end;
  }
  return out;
}

std::optional<Word> is_inner(SurfaceAutomorphism const& f, std::size_t bound) {
  for (auto const& gamma : surface_words_up_to(bound)) {
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i) {
      auto x = letter_word(surface_generators()[i]);
      ok = dehn_reduce(f.image(i) * gamma * invert(x) * invert(gamma)).empty();
    }
    if (ok) {
      return gamma;
    }
  }
  return std::nullopt;
}

}  // namespace mcg
