#include "mcg/instances.hpp"

#include "mcg/surface.hpp"

namespace mcg {

Presentation surface_group() {
  Presentation p("surface-group(2)");
  for (auto const& g : surface_generators()) {
    p.add_generator(g);
  }
  p.add_relator("surface", surface_relator(), RelatorKind::imported);
  return p;
}

namespace {

std::vector<GeneratorSymbol> twist_generators() {
  return {GeneratorSymbol::a(1), GeneratorSymbol::b(), GeneratorSymbol::a(2),
          GeneratorSymbol::bk(1), GeneratorSymbol::c(1, 2)};
}

}  // namespace

Presentation genus2_twists() {
  SurfaceParams s(2, 0);
  Presentation p("genus2-twists");
  auto gens = twist_generators();
  for (auto const& g : gens) {
    p.add_generator(g);
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      auto c = intersection_class(gens[i], gens[j], s);
      p.add_relator(braid_id(gens[i], gens[j]),
                    braid_relator(gens[i], gens[j], c), RelatorKind::braid);
    }
  }
  p.add_relator("star(1,1,2)",
                parse_word("a1 a1 a2 b").pow(3) * parse_word("c{1,2}' c{1,2}'"),
                RelatorKind::star);
  return p;
}

ExtensionData genus2_boundary_data() {
  ExtensionData d;
  auto const& xs = surface_generators();
  for (auto const& r : twist_generators()) {
    auto f = twist_action(r);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      d.action[{r, xs[i]}] = f.image(i);
    }
  }
  auto const twists = genus2_twists();
  for (auto const& rel : twists.relators()) {
    d.lifted[rel.id] = Word{};
  }
  d.lifted["star(1,1,2)"] = parse_word("x2 x1' x0");
  auto c31 = GeneratorSymbol::c(3, 1);
  d.central = CentralData{c31,
                          {{"ext1(c{1,2},x3)", 1}, {"ext2(star(1,1,2))", 1}}};
  return d;
}

Presentation genus2_boundary_extension() {
  return extension_presentation(surface_group(), genus2_twists(),
                                genus2_boundary_data(), "extension(2,1)");
}

AmalgamInstance genus3_amalgam() {
  SurfaceParams s(3, 1);
  auto w = [&](char const* text) { return parse_word(text, s); };
  auto t1 = w("b2 c{4,5} a4 b2");
  auto t2 = w("b a4 a2 b");
  AmalgamData d{GeneratorSymbol::named("t1"), {}, {}, {}, {}};
  d.y1 = w("a4' a4' c{4,5}' c{4,5}' a3 a5");
  auto r = w("c{3,4} c{3,4} b2 c{3,4} c{3,4} b2");
  auto p = w("b a4 a4 b");
  auto p_image = w("b' a4' c{4,5}' c{4,5}'") * r * w("a4 b");
  // curves disjoint from b2, a4 and c{4,5}
  for (auto const* g : {"a1", "a2", "a3", "a5", "b1"}) {
    d.y2.emplace_back(w(g), w(g));
  }
  d.y2.emplace_back(w("b"), w("b' a4' b2 a4 b"));
  d.y2.emplace_back(w("a4"), w("b' a4' c{4,5} a4 b"));
  d.y2.emplace_back(p, p_image);
  // t1 p' t1' = t1^2 p t1^-2
  d.y2.emplace_back(p_image, d.y1 * p * invert(d.y1));
  auto t = letter_word(d.t1);
  d.w = t * t2 * t * t2 * t;
  d.w_stab = d.y1 * t2 * d.y1;
  return {gervais(s, {.lanterns = true}), std::move(d), std::move(t1),
          std::move(t2)};
}

}  // namespace mcg
