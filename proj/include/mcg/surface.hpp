#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mcg/words.hpp"

namespace mcg {

// x0, x1, x2, x3: generators of the fundamental group of the closed genus-2
// surface, subject to R = x3 x2' x1 x0' x3' x2 x1' x0.
std::array<GeneratorSymbol, 4> const& surface_generators();
Word const& surface_relator();

// Dehn's algorithm: replace the leftmost longest piece of length >= 5 of a
// rotation of R or R' by the inverse of its complement, reduce, repeat.
Word dehn_reduce(Word const& w);

class SurfaceAutomorphism {
 public:
  SurfaceAutomorphism();  // identity
  explicit SurfaceAutomorphism(std::array<Word, 4> images);

  Word const& image(std::size_t i) const { return images_.at(i); }
  std::array<Word, 4> const& images() const noexcept { return images_; }
  // Image of an arbitrary surface word, freely reduced.
  Word apply(Word const& w) const;

  // (f * h)(x) = f(h(x))
  friend SurfaceAutomorphism operator*(SurfaceAutomorphism const& f,
                                       SurfaceAutomorphism const& h);

 private:
  std::array<Word, 4> images_;
};

// The image of R is a cyclic conjugate of R or R' in the free group.
bool is_certified(SurfaceAutomorphism const& f);

SurfaceAutomorphism conjugation_by(Word const& gamma);

// Actions of a1, b, a2, b1, c{1,2}; sign -1 gives the inverse action.
SurfaceAutomorphism twist_action(GeneratorSymbol const& g, int sign = 1);
SurfaceAutomorphism word_action(Word const& w);

bool automorphisms_equal(SurfaceAutomorphism const& f,
                         SurfaceAutomorphism const& h);

// First conjugator of reduced length <= bound, in shortlex order.
std::optional<Word> is_inner(SurfaceAutomorphism const& f, std::size_t bound);

// All reduced words over x0..x3 of length <= n, in shortlex order.
std::vector<Word> surface_words_up_to(std::size_t n);

}  // namespace mcg
