#include "mcg/presentations.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace mcg {

std::string to_string(IntersectionClass c) {
  switch (c) {
    case IntersectionClass::disjoint:
      return "disjoint";
    case IntersectionClass::once:
      return "once";
    case IntersectionClass::other:
      return "other";
  }
  return {};
}

std::string to_string(TableMode m) {
  return m == TableMode::full ? "full" : "conservative";
}

TableMode parse_table_mode(std::string_view s) {
  if (s == "full") {
    return TableMode::full;
  }
  if (s == "conservative") {
    return TableMode::conservative;
  }
  throw Error("unknown table mode '" + std::string(s) + "'");
}

std::string to_string(RelatorKind k) {
  switch (k) {
    case RelatorKind::handle:
      return "handle";
    case RelatorKind::braid:
      return "braid";
    case RelatorKind::star:
      return "star";
    case RelatorKind::lantern:
      return "lantern-derived";
    case RelatorKind::imported:
      return "imported";
    case RelatorKind::extension1:
      return "extension-type-1";
    case RelatorKind::extension2:
      return "extension-type-2";
    case RelatorKind::extension3:
      return "extension-type-3";
    case RelatorKind::extension_central:
      return "extension-central";
    case RelatorKind::amalgam_y1:
      return "amalgam-Y1";
    case RelatorKind::amalgam_y2:
      return "amalgam-Y2";
    case RelatorKind::amalgam_y3:
      return "amalgam-Y3";
    case RelatorKind::lemma:
      return "lemma";
  }
  return {};
}

RelatorKind kind_for_id(std::string_view id) {
  static std::vector<std::pair<std::string_view, RelatorKind>> const prefixes{
      {"handle(", RelatorKind::handle},
      {"braid(", RelatorKind::braid},
      {"star(", RelatorKind::star},
      {"lantern", RelatorKind::lantern},
      {"ext1(", RelatorKind::extension1},
      {"ext2(", RelatorKind::extension2},
      {"ext3(", RelatorKind::extension3},
      {"central(", RelatorKind::extension_central},
      {"Y1", RelatorKind::amalgam_y1},
      {"Y2", RelatorKind::amalgam_y2},
      {"Y3", RelatorKind::amalgam_y3}};
  for (auto const& [prefix, kind] : prefixes) {
    if (id.starts_with(prefix)) {
      return kind;
    }
  }
  return RelatorKind::imported;
}

Presentation::Presentation(std::string name) : name_(std::move(name)) {
  if (name_.empty() ||
      name_.find_first_of(" \t\n") != std::string::npos) {
    throw Error("presentation name must be a non-empty token");
  }
}

void Presentation::add_generator(GeneratorSymbol const& s) {
  auto id = intern(s);
  if (generator_index_.contains(id)) {
    throw Error("duplicate generator " + s.to_string());
  }
  generator_index_.emplace(id, generators_.size());
  generators_.push_back(s);
}

bool Presentation::has_generator(GeneratorSymbol const& s) const {
  return generator_index_.contains(intern(s));
}

bool Presentation::has_generator(SymbolId id) const {
  return generator_index_.contains(id);
}

void Presentation::add_relator(std::string id, Word w,
                               std::optional<RelatorKind> kind) {
  if (id.empty() || id.find_first_of(" \t\n") != std::string::npos) {
    throw Error("relator id must be a non-empty token: '" + id + "'");
  }
  if (relator_index_.contains(id)) {
    throw Error("duplicate relator id " + id);
  }
  for (auto l : w) {
    if (!has_generator(l.id())) {
      throw Error("relator " + id + " uses foreign symbol " +
                  l.symbol().to_string());
    }
  }
  auto idx = relators_.size();
  auto canon = canonical_id(id);
  relator_index_.emplace(id, idx);
  if (canon != id) {
    relator_index_.emplace(canon, idx);
  }
  auto k = kind.value_or(kind_for_id(id));
  relators_.push_back({std::move(id), std::move(w), k});
}

namespace {

// Split "name(x,y,...)" at top-level commas.
std::optional<std::pair<std::string, std::vector<std::string>>> split_call(
    std::string_view id) {
  auto open = id.find('(');
  if (open == std::string_view::npos || !id.ends_with(")")) {
    return std::nullopt;
  }
  std::vector<std::string> args;
  int depth = 0;
  std::string cur;
  for (auto c : id.substr(open + 1, id.size() - open - 2)) {
    if (c == '{') {
      ++depth;
    } else if (c == '}') {
      --depth;
    }
    if (c == ',' && depth == 0) {
      args.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  args.push_back(cur);
  return std::make_pair(std::string(id.substr(0, open)), args);
}

GoodTriple least_rotation(GoodTriple t) {
  return std::min({t, GoodTriple{t.j, t.k, t.i}, GoodTriple{t.k, t.i, t.j}});
}

}  // namespace

std::string Presentation::canonical_id(std::string_view id) const {
  auto call = split_call(id);
  if (!call) {
    return std::string(id);
  }
  auto const& [head, args] = *call;
  try {
    if (head == "braid" && args.size() == 2) {
      auto ctx = surface();
      auto x = parse_symbol(args[0], ctx);
      auto y = parse_symbol(args[1], ctx);
      auto ix = generator_index_.find(intern(x));
      auto iy = generator_index_.find(intern(y));
      bool swap = (ix != generator_index_.end() && iy != generator_index_.end())
                      ? iy->second < ix->second
                      : y < x;
      return swap ? braid_id(y, x) : braid_id(x, y);
    }
    if (head == "star" && args.size() == 3) {
      GoodTriple t{std::stoi(args[0]), std::stoi(args[1]), std::stoi(args[2])};
      return star_id(least_rotation(t));
    }
  } catch (std::exception const&) {
    return std::string(id);
  }
  return std::string(id);
}

Relator const* Presentation::find(std::string_view id) const {
  if (auto it = relator_index_.find(std::string(id));
      it != relator_index_.end()) {
    return &relators_[it->second];
  }
  if (auto it = relator_index_.find(canonical_id(id));
      it != relator_index_.end()) {
    return &relators_[it->second];
  }
  return nullptr;
}

Relator const& Presentation::at(std::string_view id) const {
  auto r = find(id);
  if (r == nullptr) {
    throw Error("unknown relator id " + std::string(id) + " in " + name_);
  }
  return *r;
}

std::optional<SurfaceParams> Presentation::surface() const {
  int max_b = 0;
  int max_a = 0;
  for (auto const& s : generators_) {
    if (s.kind() == SymbolKind::Bk) {
      max_b = std::max(max_b, s.i());
    } else if (s.kind() == SymbolKind::A) {
      max_a = std::max(max_a, s.i());
    }
  }
  int g = max_b + 1;
  int n = max_a - 2 * g + 2;
  if (max_a == 0 || g < 2 || n < 0) {
    return std::nullopt;
  }
  SurfaceParams p(g, n);
  // a c-curve outside 1..N means this is not a Gervais alphabet
  for (auto const& s : generators_) {
    if (s.kind() == SymbolKind::C && std::max(s.i(), s.j()) > p.N()) {
      return std::nullopt;
    }
  }
  return p;
}

void require_gervais_symbol(GeneratorSymbol const& s, SurfaceParams p) {
  bool ok = false;
  switch (s.kind()) {
    case SymbolKind::B:
      ok = true;
      break;
    case SymbolKind::Bk:
      ok = s.i() >= 1 && s.i() <= p.g() - 1;
      break;
    case SymbolKind::A:
      ok = s.i() >= 1 && s.i() <= p.N();
      break;
    case SymbolKind::C:
      ok = s.i() >= 1 && s.i() <= p.N() && s.j() >= 1 && s.j() <= p.N() &&
           s.i() != s.j();
      break;
    case SymbolKind::Named:
      ok = false;
      break;
  }
  if (!ok) {
    throw Error(s.to_string() + " is not in the alphabet of G(" +
                std::to_string(p.g()) + "," + std::to_string(p.n()) + ")");
  }
}

namespace {

// l lies strictly inside the cyclic arc running from i up to j.
bool strictly_inside(int l, int i, int j, int N) {
  for (int m = normalize_index(i + 1, N); m != j; m = normalize_index(m + 1, N)) {
    if (m == l) {
      return true;
    }
  }
  return false;
}

// Punctures enclosed by c_{i,j}: i, i+1, ..., j-1 cyclically.
std::set<int> hole_set(GeneratorSymbol const& c, int N) {
  std::set<int> h;
  for (int m = c.i(); m != c.j(); m = normalize_index(m + 1, N)) {
    h.insert(m);
  }
  return h;
}

int kind_rank(GeneratorSymbol const& s) { return static_cast<int>(s.kind()); }

}  // namespace

IntersectionClass intersection_class(GeneratorSymbol const& x0,
                                     GeneratorSymbol const& y0, SurfaceParams p,
                                     TableMode mode) {
  require_gervais_symbol(x0, p);
  require_gervais_symbol(y0, p);
  if (x0 == y0) {
    throw Error("intersection class of " + x0.to_string() + " with itself");
  }
  auto const& x = kind_rank(x0) <= kind_rank(y0) ? x0 : y0;
  auto const& y = kind_rank(x0) <= kind_rank(y0) ? y0 : x0;
  using K = SymbolKind;
  using IC = IntersectionClass;
  int N = p.N();
  switch (x.kind()) {
    case K::B:
      return y.kind() == K::A ? IC::once : IC::disjoint;
    case K::Bk:
      if (y.kind() == K::Bk) {
        return IC::disjoint;
      }
      if (y.kind() == K::A) {
        return y.i() == 2 * x.i() ? IC::once : IC::disjoint;
      }
      return (y.i() == 2 * x.i() || y.j() == 2 * x.i()) ? IC::once
                                                          : IC::disjoint;
    case K::A:
      if (y.kind() == K::A) {
        return IC::disjoint;
      }
      return strictly_inside(x.i(), y.i(), y.j(), N) ? IC::other
                                                     : IC::disjoint;
    case K::C: {
      if (mode == TableMode::conservative) {
        return IC::other;
      }
      auto hx = hole_set(x, N);
      auto hy = hole_set(y, N);
      bool x_in_y = std::includes(hy.begin(), hy.end(), hx.begin(), hx.end());
      bool y_in_x = std::includes(hx.begin(), hx.end(), hy.begin(), hy.end());
      bool apart = std::none_of(hx.begin(), hx.end(),
                                [&](int m) { return hy.contains(m); });
      return (x_in_y || y_in_x || apart) ? IC::disjoint : IC::other;
    }
    case K::Named:
      break;
  }
  throw Error("unreachable intersection case");
}

bool is_good_triple(GoodTriple t, int N) {
  auto in = [N](int v) { return v >= 1 && v <= N; };
  if (!in(t.i) || !in(t.j) || !in(t.k)) {
    return false;
  }
  if (t.i == t.j && t.j == t.k) {
    return false;
  }
  return (t.i <= t.j && t.j <= t.k) || (t.j <= t.k && t.k <= t.i) ||
         (t.k <= t.i && t.i <= t.j);
}

std::vector<GoodTriple> good_triples(SurfaceParams p, bool dedup) {
  std::vector<GoodTriple> out;
  int N = p.N();
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      for (int k = 1; k <= N; ++k) {
        GoodTriple t{i, j, k};
        if (!is_good_triple(t, N)) {
          continue;
        }
        if (dedup && least_rotation(t) != t) {
          continue;
        }
        out.push_back(t);
      }
    }
  }
  return out;
}

namespace {

Word c_word(int i, int j, int N) {
  if (i == j) {
    return {};
  }
  return letter_word(GeneratorSymbol::c(i, j, N));
}

Word a_word(int i) { return letter_word(GeneratorSymbol::a(i)); }
Word b_word() { return letter_word(GeneratorSymbol::b()); }

}  // namespace

Word star_relator(GoodTriple t, SurfaceParams p) {
  int N = p.N();
  if (!is_good_triple(t, N)) {
    throw Error("not a good triple: " + star_id(t));
  }
  auto lhs = c_word(t.i, t.j, N) * c_word(t.j, t.k, N) * c_word(t.k, t.i, N);
  auto rhs = (a_word(t.i) * a_word(t.j) * a_word(t.k) * b_word()).pow(3);
  return lhs * invert(rhs);
}

Word handle_relator(int k, SurfaceParams p) {
  if (k < 1 || k > p.g() - 1) {
    throw IndexError("handle index " + std::to_string(k) + " out of range 1.." +
                     std::to_string(p.g() - 1));
  }
  int N = p.N();
  return c_word(2 * k, 2 * k + 1, N) * invert(c_word(2 * k - 1, 2 * k, N));
}

Word braid_relator(GeneratorSymbol const& x, GeneratorSymbol const& y,
                   IntersectionClass c) {
  auto X = letter_word(x);
  auto Y = letter_word(y);
  switch (c) {
    case IntersectionClass::disjoint:
      return X * Y * invert(X) * invert(Y);
    case IntersectionClass::once:
      return X * Y * X * invert(Y) * invert(X) * invert(Y);
    case IntersectionClass::other:
      break;
  }
  throw Error("no braid relator for curves of class other");
}

Word lantern_relator(GoodTriple t, SurfaceParams p, LanternForm form) {
  int N = p.N();
  if (!is_good_triple(t, N)) {
    throw Error("not a good triple for a lantern relator");
  }
  auto X = b_word() * a_word(t.i) * a_word(t.k) * b_word();
  auto lhs = a_word(t.i) * c_word(t.i, t.j, N) * c_word(t.j, t.k, N) *
             a_word(t.k);
  auto aj = a_word(t.j);
  auto rhs = form == LanternForm::first
                 ? c_word(t.i, t.k, N) * aj * X * aj * invert(X)
                 : c_word(t.i, t.k, N) * invert(X) * aj * X * aj;
  return lhs * invert(rhs);
}

std::string braid_id(GeneratorSymbol const& x, GeneratorSymbol const& y) {
  return "braid(" + x.to_string() + "," + y.to_string() + ")";
}

std::string star_id(GoodTriple t) {
  return "star(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," +
         std::to_string(t.k) + ")";
}

std::vector<GeneratorSymbol> gervais_generators(SurfaceParams p) {
  std::vector<GeneratorSymbol> gens{GeneratorSymbol::b()};
  for (int k = 1; k <= p.g() - 1; ++k) {
    gens.push_back(GeneratorSymbol::bk(k));
  }
  for (int i = 1; i <= p.N(); ++i) {
    gens.push_back(GeneratorSymbol::a(i));
  }
  for (int i = 1; i <= p.N(); ++i) {
    for (int j = 1; j <= p.N(); ++j) {
      if (i != j) {
        gens.push_back(GeneratorSymbol::c(i, j));
      }
    }
  }
  return gens;
}

Presentation gervais(SurfaceParams p, GervaisOptions opts) {
  Presentation out("gervais(" + std::to_string(p.g()) + "," +
                   std::to_string(p.n()) + "," + to_string(opts.mode) +
                   (opts.lanterns ? ",lanterns)" : ")"));
  auto gens = gervais_generators(p);
  for (auto const& s : gens) {
    out.add_generator(s);
  }
  for (int k = 1; k <= p.g() - 1; ++k) {
    out.add_relator("handle(" + std::to_string(k) + ")", handle_relator(k, p),
                    RelatorKind::handle);
  }
  for (std::size_t u = 0; u < gens.size(); ++u) {
    for (std::size_t v = u + 1; v < gens.size(); ++v) {
      auto c = intersection_class(gens[u], gens[v], p, opts.mode);
      if (c == IntersectionClass::other) {
        continue;
      }
      out.add_relator(braid_id(gens[u], gens[v]),
                      braid_relator(gens[u], gens[v], c), RelatorKind::braid);
    }
  }
  for (auto t : good_triples(p, opts.dedup_stars)) {
    out.add_relator(star_id(t), star_relator(t, p), RelatorKind::star);
  }
  if (opts.lanterns) {
    for (auto t : good_triples(p, false)) {
      if (t.i == t.j || t.j == t.k || t.k == t.i) {
        continue;
      }
      auto suffix = "(" + std::to_string(t.i) + "," + std::to_string(t.j) +
                    "," + std::to_string(t.k) + ")";
      out.add_relator("lantern" + suffix,
                      lantern_relator(t, p, LanternForm::first),
                      RelatorKind::lantern);
      out.add_relator("lantern-b" + suffix,
                      lantern_relator(t, p, LanternForm::second),
                      RelatorKind::lantern);
    }
  }
  return out;
}

Presentation birman_hilden_2_0() {
  Presentation out("birman-hilden(2,0)");
  std::vector<Word> tau;
  for (int i = 1; i <= 5; ++i) {
    auto s = GeneratorSymbol::named("tau" + std::to_string(i));
    out.add_generator(s);
    tau.push_back(letter_word(s));
  }
  auto t = [&](int i) { return tau[static_cast<std::size_t>(i - 1)]; };
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 2; j <= 5; ++j) {
      out.add_relator(
          "bh-i(" + std::to_string(i) + "," + std::to_string(j) + ")",
          t(i) * t(j) * invert(t(i)) * invert(t(j)));
    }
  }
  for (int i = 1; i <= 4; ++i) {
    out.add_relator("bh-ii(" + std::to_string(i) + ")",
                    t(i) * t(i + 1) * t(i) * invert(t(i + 1)) * invert(t(i)) *
                        invert(t(i + 1)));
  }
  auto chain = t(1) * t(2) * t(3) * t(4) * t(5);
  out.add_relator("bh-iii", chain.pow(6));
  auto e = t(1) * t(2) * t(3) * t(4) * t(5) * t(5) * t(4) * t(3) * t(2) * t(1);
  out.add_relator("bh-iv", e.pow(2));
  for (int i = 1; i <= 5; ++i) {
    out.add_relator("bh-v(" + std::to_string(i) + ")",
                    e * t(i) * invert(e) * invert(t(i)));
  }
  return out;
}

namespace {

void require_over(Presentation const& P, Word const& w,
                  std::optional<SymbolId> extra, std::string const& what) {
  for (auto l : w) {
    if (!P.has_generator(l.id()) && (!extra || *extra != l.id())) {
      throw Error(what + " uses foreign symbol " + l.symbol().to_string());
    }
  }
}

}  // namespace

Presentation extension_presentation(Presentation const& L,
                                    Presentation const& R,
                                    ExtensionData const& data,
                                    std::string name) {
  Presentation out(std::move(name));
  for (auto const& s : L.generators()) {
    out.add_generator(s);
  }
  for (auto const& s : R.generators()) {
    out.add_generator(s);
  }
  std::optional<SymbolId> z;
  if (data.central) {
    out.add_generator(data.central->symbol);
    z = intern(data.central->symbol);
  }
  std::set<std::string> used_exponents;
  auto with_central = [&](std::string const& id, Word const& rhs) {
    if (!data.central) {
      return rhs;
    }
    auto it = data.central->exponents.find(id);
    if (it == data.central->exponents.end()) {
      return rhs;
    }
    used_exponents.insert(id);
    return rhs * letter_word(data.central->symbol).pow(it->second);
  };

  for (auto const& r : R.generators()) {
    for (auto const& l : L.generators()) {
      auto it = data.action.find({r, l});
      if (it == data.action.end()) {
        throw Error("missing action entry for (" + r.to_string() + ", " +
                    l.to_string() + ")");
      }
      auto id = "ext1(" + r.to_string() + "," + l.to_string() + ")";
      require_over(L, it->second, z, id);
      auto lhs = letter_word(r) * letter_word(l) * invert(letter_word(r));
      out.add_relator(id, lhs * invert(with_central(id, it->second)),
                      RelatorKind::extension1);
    }
  }
  for (auto const& rel : R.relators()) {
    auto it = data.lifted.find(rel.id);
    if (it == data.lifted.end()) {
      throw Error("missing lifted value for R-relator " + rel.id);
    }
    auto id = "ext2(" + rel.id + ")";
    require_over(L, it->second, z, id);
    out.add_relator(id, rel.word * invert(with_central(id, it->second)),
                    RelatorKind::extension2);
  }
  for (auto const& rel : L.relators()) {
    auto id = "ext3(" + rel.id + ")";
    out.add_relator(id, rel.word * invert(with_central(id, Word{})),
                    RelatorKind::extension3);
  }
  if (data.central) {
    for (auto const& s : out.generators()) {
      if (s == data.central->symbol) {
        continue;
      }
      auto zw = letter_word(data.central->symbol);
      auto sw = letter_word(s);
      out.add_relator("central(" + s.to_string() + ")",
                      zw * sw * invert(zw) * invert(sw),
                      RelatorKind::extension_central);
    }
    for (auto const& [id, e] : data.central->exponents) {
      if (!used_exponents.contains(id)) {
        throw Error("exponent table names unknown relator " + id);
      }
    }
  }
  return out;
}

Presentation amalgam_presentation(Presentation const& stab,
                                  AmalgamData const& data, std::string name) {
  Presentation out(std::move(name));
  for (auto const& s : stab.generators()) {
    out.add_generator(s);
  }
  out.add_generator(data.t1);
  for (auto const& rel : stab.relators()) {
    out.add_relator(rel.id, rel.word, rel.kind);
  }
  auto t = letter_word(data.t1);
  require_over(stab, data.y1, std::nullopt, "Y1 value");
  out.add_relator("Y1", t * t * invert(data.y1), RelatorKind::amalgam_y1);
  if (data.y2.empty()) {
    throw Error("missing Y2 rows");
  }
  int row = 1;
  for (auto const& [s, image] : data.y2) {
    require_over(stab, s, std::nullopt, "Y2 key");
    require_over(stab, image, std::nullopt, "Y2 value");
    out.add_relator("Y2(" + std::to_string(row++) + ")",
                    t * s * invert(t) * invert(image),
                    RelatorKind::amalgam_y2);
  }
  require_over(stab, data.w, intern(data.t1), "Y3 word");
  require_over(stab, data.w_stab, std::nullopt, "Y3 value");
  out.add_relator("Y3", data.w * invert(data.w_stab), RelatorKind::amalgam_y3);
  return out;
}

std::string emit_presentation(Presentation const& p) {
  std::string out = "presentation " + p.name() + "\n";
  for (auto const& s : p.generators()) {
    out += "gen " + s.to_string() + "\n";
  }
  for (auto const& r : p.relators()) {
    out += "rel " + r.id + " :";
    if (!r.word.empty()) {
      out += " " + print_word(r.word);
    }
    out += "\n";
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Presentation> out;
  std::size_t lineno = 0;
  auto fail = [&](std::string const& msg) -> ParseError {
    return ParseError("line " + std::to_string(lineno) + ": " + msg, 0);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::string_view v(line);
    v.remove_prefix(first);
    try {
      if (v.starts_with("presentation ")) {
        if (out) {
          throw fail("second presentation header");
        }
        auto name = v.substr(13);
        while (!name.empty() && name.back() == ' ') {
          name.remove_suffix(1);
        }
        out.emplace(std::string(name));
      } else if (!out) {
        throw fail("expected 'presentation <name>' header");
      } else if (v.starts_with("gen ")) {
        out->add_generator(parse_symbol(v.substr(4)));
      } else if (v.starts_with("rel ")) {
        auto rest = v.substr(4);
        auto colon = rest.find(" :");
        if (colon == std::string_view::npos) {
          throw fail("expected 'rel <id> : <word>'");
        }
        auto id = rest.substr(0, colon);
        auto word = parse_word(rest.substr(colon + 2), out->surface());
        out->add_relator(std::string(id), word);
      } else {
        throw fail("unrecognized line");
      }
    } catch (ParseError const&) {
      throw;
    } catch (Error const& e) {
      throw fail(e.what());
    }
  }
  if (!out) {
    throw ParseError("empty presentation file", 0);
  }
  return *out;
}

Presentation load_presentation(std::string const& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

}  // namespace mcg
