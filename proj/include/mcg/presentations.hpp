#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcg/words.hpp"

namespace mcg {

enum class IntersectionClass { disjoint, once, other };
enum class TableMode { conservative, full };

std::string to_string(IntersectionClass c);
std::string to_string(TableMode m);
TableMode parse_table_mode(std::string_view s);

struct GoodTriple {
  int i;
  int j;
  int k;
  friend auto operator<=>(GoodTriple const&, GoodTriple const&) = default;
};

enum class RelatorKind {
  handle,
  braid,
  star,
  lantern,
  imported,
  extension1,
  extension2,
  extension3,
  extension_central,
  amalgam_y1,
  amalgam_y2,
  amalgam_y3,
  lemma
};

std::string to_string(RelatorKind k);
// Kind implied by the shape of a relator id; unknown shapes are "imported".
RelatorKind kind_for_id(std::string_view id);

struct Relator {
  std::string id;
  Word word;
  RelatorKind kind;
};

class Presentation {
 public:
  explicit Presentation(std::string name);

  std::string const& name() const noexcept { return name_; }
  std::vector<GeneratorSymbol> const& generators() const noexcept {
    return generators_;
  }
  std::vector<Relator> const& relators() const noexcept { return relators_; }

  void add_generator(GeneratorSymbol const& s);
  void add_relator(std::string id, Word w,
                   std::optional<RelatorKind> kind = std::nullopt);
  bool has_generator(GeneratorSymbol const& s) const;
  bool has_generator(SymbolId id) const;

  // Exact id, then the canonical form of symbolic ids (braid(x,y) in
  // either order, any rotation of star(i,j,k)).
  Relator const* find(std::string_view id) const;
  Relator const& at(std::string_view id) const;

  // Surface context implied by the b_k and a_i generators; none when some
  // c generator has an index beyond N.
  std::optional<SurfaceParams> surface() const;

 private:
  std::string canonical_id(std::string_view id) const;

  std::string name_;
  std::vector<GeneratorSymbol> generators_;
  std::vector<Relator> relators_;
  std::unordered_map<SymbolId, std::size_t> generator_index_;
  std::unordered_map<std::string, std::size_t> relator_index_;
};

// Throws unless s is b, b_k (k < g), a_i (i <= N) or a normalized c_{i,j}.
void require_gervais_symbol(GeneratorSymbol const& s, SurfaceParams p);

IntersectionClass intersection_class(GeneratorSymbol const& x,
                                     GeneratorSymbol const& y, SurfaceParams p,
                                     TableMode mode = TableMode::full);

std::vector<GoodTriple> good_triples(SurfaceParams p, bool dedup = false);
bool is_good_triple(GoodTriple t, int N);

Word star_relator(GoodTriple t, SurfaceParams p);
Word handle_relator(int k, SurfaceParams p);
// Commutator for disjoint pairs, x y x y' x' y' for pairs meeting once.
Word braid_relator(GeneratorSymbol const& x, GeneratorSymbol const& y,
                   IntersectionClass c);

enum class LanternForm { first, second };
// a_i c_ij c_jk a_k = c_ik a_j X a_j X' (first) or c_ik X' a_j X a_j
// (second), X = b a_i a_k b; c_ll factors are omitted.
Word lantern_relator(GoodTriple t, SurfaceParams p, LanternForm form);

std::string braid_id(GeneratorSymbol const& x, GeneratorSymbol const& y);
std::string star_id(GoodTriple t);

std::vector<GeneratorSymbol> gervais_generators(SurfaceParams p);

struct GervaisOptions {
  TableMode mode = TableMode::full;
  bool dedup_stars = true;
  // Adds lantern(i,j,k) and lantern-b(i,j,k) for good triples of distinct
  // indices.
  bool lanterns = false;
};

Presentation gervais(SurfaceParams p, GervaisOptions opts = {});
Presentation birman_hilden_2_0();

struct CentralData {
  GeneratorSymbol symbol;
  // Keyed by produced relator id; relation lhs = rhs * z^e.
  std::map<std::string, int> exponents;
};

struct ExtensionData {
  // (r, l) -> r l r' expressed over L.
  std::map<std::pair<GeneratorSymbol, GeneratorSymbol>, Word> action;
  // R-relator id -> its lift expressed over L.
  std::map<std::string, Word> lifted;
  std::optional<CentralData> central;
};

Presentation extension_presentation(Presentation const& L,
                                    Presentation const& R,
                                    ExtensionData const& data,
                                    std::string name = "extension");

struct AmalgamData {
  GeneratorSymbol t1;
  Word y1;
  // stab-word s -> t1 s t1' expressed over stab.
  std::vector<std::pair<Word, Word>> y2;
  Word w;       // over stab and t1
  Word w_stab;  // over stab
};

Presentation amalgam_presentation(Presentation const& stab,
                                  AmalgamData const& data,
                                  std::string name = "amalgam");

std::string emit_presentation(Presentation const& p);
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(std::string const& path);

}  // namespace mcg
