#pragma once

#include <random>
#include <vector>

#include "mcg/words.hpp"

namespace mcg::test {

inline Word W(char const* text) { return parse_word(text); }

inline std::vector<Letter> signed_letters(
    std::vector<GeneratorSymbol> const& alphabet) {
  std::vector<Letter> out;
  for (auto const& g : alphabet) {
    out.emplace_back(g, 1);
    out.emplace_back(g, -1);
  }
  return out;
}

// Uniform length in [0, max_len], letters uniform, not reduced.
inline Word random_word(std::mt19937& rng,
                        std::vector<GeneratorSymbol> const& alphabet,
                        std::size_t max_len) {
  auto letters = signed_letters(alphabet);
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<Letter> out;
  for (auto n = len(rng); n > 0; --n) {
    out.push_back(letters[pick(rng)]);
  }
  return Word(std::move(out));
}

// All freely reduced words of length <= n, shortest first.
inline std::vector<Word> reduced_words(
    std::vector<GeneratorSymbol> const& alphabet, std::size_t n) {
  auto letters = signed_letters(alphabet);
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    auto end = out.size();
    for (auto i = begin; i < end; ++i) {
      for (auto l : letters) {
        Word const w = out[i];
        if (!w.empty() && w[w.size() - 1] == l.inverse()) {
          continue;
        }
        out.push_back(w * Word{l});
      }
    }
    begin = end;
  }
  return out;
}

inline std::vector<GeneratorSymbol> symbols(char const* text) {
  std::vector<GeneratorSymbol> out;
  for (auto l : parse_word(text)) {
    out.push_back(l.symbol());
  }
  return out;
}

}  // namespace mcg::test
