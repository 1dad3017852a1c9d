#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcg/presentations.hpp"
#include "mcg/prover.hpp"
#include "mcg/words.hpp"

namespace mcg {

// Letter +i / -i stands for sigma_i / sigma_i^-1.
using BraidWord = std::vector<int>;

// Named generators s1 .. s{strands-1}.
std::vector<GeneratorSymbol> sigma_chain(int strands);

// Artin presentation of B_strands over sigma_chain: braid relators for
// adjacent generators, commutators otherwise.
Presentation braid_presentation(int strands);

// sigma_i is chain[i-1]; throws on letters outside the chain.
BraidWord to_braid_word(Word const& w, std::vector<GeneratorSymbol> const& chain);
Word from_braid_word(BraidWord const& b,
                     std::vector<GeneratorSymbol> const& chain);

// Dehornoy handle reduction; the result is empty iff b is trivial.
BraidWord handle_reduce(BraidWord b);

bool braid_equal(Word const& w1, Word const& w2,
                 std::vector<GeneratorSymbol> const& chain);
bool braid_oracle_equal(Word const& w1, Word const& w2, int strands);

// Relator-substitution script from w1 to w2 over p, where the chain
// generators satisfy the braid and commutation relators of p. Empty when
// w1 and w2 differ as braids.
std::optional<ProofScript> braid_certificate(
    Presentation const& p, std::vector<GeneratorSymbol> const& chain,
    Word const& w1, Word const& w2, std::string name = "braid");

}  // namespace mcg
