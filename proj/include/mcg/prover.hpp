#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mcg/presentations.hpp"
#include "mcg/words.hpp"

namespace mcg {

enum class StepKind { relator_sub, free_insert, free_cancel };

struct Justification {
  std::string id;
  bool inv = false;
  std::size_t rot = 0;
  friend bool operator==(Justification const&, Justification const&) = default;
};

struct ProofStep {
  StepKind kind = StepKind::relator_sub;
  std::size_t pos = 0;
  std::size_t len = 0;
  Word replacement;
  Justification just;  // relator_sub only

  static ProofStep sub(std::size_t pos, std::size_t len, Word repl,
                       Justification j);
  static ProofStep ins(std::size_t pos, Letter g);
  static ProofStep del(std::size_t pos);

  friend bool operator==(ProofStep const&, ProofStep const&) = default;
};

struct ProofScript {
  std::string name;
  std::string presentation;
  Word start;
  std::vector<ProofStep> steps;
  Word end;
};

class StepError : public Error {
 public:
  using Error::Error;
};

// The relator word certifying a justification: rotation of R or R^-1.
Word justification_word(Presentation const& p, Justification const& j);

// Apply one step; throws StepError when it is not certified.
Word check_step(Presentation const& p, Word const& w, ProofStep const& s);

struct CheckReport {
  bool ok = false;
  std::optional<std::size_t> failing_step;
  std::string reason;
  Word final_word;
};

CheckReport check_script(Presentation const& p, ProofScript const& s);

// Words reached by replaying the steps, starting with s.start.
std::vector<Word> replay(Presentation const& p, ProofScript const& s);

// Finds the relator rotation certifying removed -> repl, if any.
class RelatorIndex {
 public:
  explicit RelatorIndex(
      Presentation const& p,
      std::function<bool(Relator const&)> filter = nullptr);

  std::optional<Justification> certify(Word const& removed,
                                       Word const& repl) const;

  struct Entry {
    std::size_t relator;
    bool inv;
    std::size_t rot;
    Word cyc;
  };
  // Rotations of the relators and their inverses, by first letter.
  std::vector<Entry> const& starting_with(Letter l) const;
  std::vector<Relator const*> const& relators() const noexcept {
    return relators_;
  }

 private:
  std::vector<Relator const*> relators_;
  std::unordered_map<Word, Justification, WordHash> by_word_;
  std::unordered_map<std::int32_t, std::vector<Entry>> by_first_;
};

// Steps deleting adjacent inverse pairs until w is reduced.
std::vector<ProofStep> reduction_steps(Word const& w);

// Steps taking the last replayed word back to start.
std::vector<ProofStep> reverse_steps(Presentation const& p, Word const& start,
                                     std::vector<ProofStep> const& steps);

struct SearchConfig {
  std::size_t max_depth = 6;
  std::size_t max_length = 40;
  // Largest allowed increase in length for one substitution.
  int max_growth = 2;
  std::size_t max_states = 200000;
  std::function<bool(Relator const&)> filter;
};

std::optional<ProofScript> search_equal(Presentation const& p, Word const& w1,
                                        Word const& w2,
                                        SearchConfig const& cfg = {});

struct RelatorStatus {
  std::string id;
  bool ok = false;
  std::string method;  // "script", "search" or "none"
  std::string reason;
};

struct HomomorphismReport {
  bool ok = false;
  std::vector<RelatorStatus> relators;
};

Word apply_map(Word const& w, std::map<GeneratorSymbol, Word> const& images);

HomomorphismReport verify_homomorphism(
    Presentation const& src, std::map<GeneratorSymbol, Word> const& images,
    Presentation const& tgt,
    std::map<std::string, ProofScript> const& certificates,
    SearchConfig const& fallback = {});

// Script text format.
using SurfaceLookup =
    std::function<std::optional<SurfaceParams>(std::string const&)>;
std::vector<ProofScript> parse_scripts(std::string_view text,
                                       SurfaceLookup const& surface = nullptr);
std::string emit_script(ProofScript const& s);
std::string emit_step(ProofStep const& s);

// Named presentations: loaded files plus constructible built-ins
// ("gervais(g,n,mode)", "birman-hilden(2,0)", "braid(m)").
class PresentationLibrary {
 public:
  void add(Presentation p);
  Presentation const* find(std::string const& name) const;
  std::optional<SurfaceParams> surface_of(std::string const& name) const;

 private:
  std::map<std::string, Presentation> loaded_;
  mutable std::map<std::string, Presentation> builtin_;
};

// base plus one lemma relator start * end^-1 per script over base.
Presentation with_lemmas(Presentation const& base,
                         std::vector<ProofScript> const& scripts);

struct ScriptResult {
  std::string name;
  bool ok = false;
  std::optional<std::size_t> failing_step;
  std::string reason;
  double elapsed_ms = 0;
  std::vector<std::string> cited_lemmas;
};

// Checks every script against its presentation augmented by the lemmas of
// all scripts over the same presentation. A script passes only if its own
// steps check and every lemma it cites (transitively, acyclically) passes.
// Results are sorted by name.
std::vector<ScriptResult> check_corpus(PresentationLibrary const& lib,
                                       std::vector<ProofScript> const& scripts,
                                       unsigned threads = 1);

struct Mutant {
  std::string description;
  std::size_t step;
  ProofScript script;
};

// Single-step perturbations (pos +-1, inversion flip, next justification).
// Perturbations that leave the rewritten word unchanged are not mutants.
std::vector<Mutant> single_step_mutants(Presentation const& p,
                                        ProofScript const& s);

}  // namespace mcg
