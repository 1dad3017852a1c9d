#include "mcg/braid.hpp"

#include <cstdlib>
#include <functional>
#include <map>

namespace mcg {

std::vector<GeneratorSymbol> sigma_chain(int strands) {
  if (strands < 2) {
    throw Error("a braid group needs at least two strands");
  }
  std::vector<GeneratorSymbol> out;
  for (int i = 1; i < strands; ++i) {
    out.push_back(GeneratorSymbol::named("s" + std::to_string(i)));
  }
  return out;
}

Presentation braid_presentation(int strands) {
  auto chain = sigma_chain(strands);
  Presentation p("braid(" + std::to_string(strands) + ")");
  for (auto const& g : chain) {
    p.add_generator(g);
  }
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      auto c = j == i + 1 ? IntersectionClass::once : IntersectionClass::disjoint;
      p.add_relator(braid_id(chain[i], chain[j]),
                    braid_relator(chain[i], chain[j], c), RelatorKind::braid);
    }
  }
  return p;
}

BraidWord to_braid_word(Word const& w,
                        std::vector<GeneratorSymbol> const& chain) {
  std::map<SymbolId, int> index;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    index.emplace(intern(chain[i]), static_cast<int>(i) + 1);
  }
  BraidWord out;
  for (auto l : w) {
    auto it = index.find(l.id());
    if (it == index.end()) {
      throw Error("letter " + l.symbol().to_string() +
                  " is not a braid generator");
    }
    out.push_back(l.sign() * it->second);
  }
  return out;
}

Word from_braid_word(BraidWord const& b,
                     std::vector<GeneratorSymbol> const& chain) {
  std::vector<Letter> out;
  for (int x : b) {
    out.emplace_back(chain.at(static_cast<std::size_t>(std::abs(x) - 1)),
                     x > 0 ? 1 : -1);
  }
  return Word(std::move(out));
}

namespace {

struct HandleSink {
  std::function<void(std::size_t pos, BraidWord const& removed,
                     BraidWord const& repl)>
      sub;
  std::function<void(std::size_t pos)> del;
};

// End position of the handle finishing leftmost, with its start. Such a
// handle never contains a nested sigma_{i+1}-handle.
std::optional<std::pair<std::size_t, std::size_t>> leftmost_handle(
    BraidWord const& w) {
  for (std::size_t t = 1; t < w.size(); ++t) {
    int i = std::abs(w[t]);
    for (std::size_t s = t; s-- > 0;) {
      int j = std::abs(w[s]);
      if (j == i - 1) {
        break;
      }
      if (j == i) {
        if (w[s] == -w[t]) {
          return std::make_pair(s, t);
        }
        break;
      }
    }
  }
  return std::nullopt;
}

constexpr std::size_t kStepCap = 50'000'000;

BraidWord reduce_with(BraidWord w, HandleSink const* sink) {
  std::size_t work = 0;
  while (auto h = leftmost_handle(w)) {
    auto s = h->first;
    int e = w[s] > 0 ? 1 : -1;
    int i = std::abs(w[s]);
    std::size_t q = s;
    while (true) {
      if (++work > kStepCap) {
        throw Error("handle reduction exceeded its work bound");
      }
      int next = w[q + 1];
      if (next == -e * i) {
        if (sink) {
          sink->del(q);
        }
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(q),
                w.begin() + static_cast<std::ptrdiff_t>(q) + 2);
        break;
      }
      int j = std::abs(next);
      int d = next > 0 ? 1 : -1;
      BraidWord removed{w[q], next};
      if (std::abs(j - i) >= 2) {
        BraidWord repl{next, e * i};
        if (sink) {
          sink->sub(q, removed, repl);
        }
        w[q] = next;
        w[q + 1] = e * i;
        q += 1;
      } else if (j == i + 1) {
        BraidWord repl{-e * (i + 1), d * i, e * (i + 1), e * i};
        if (sink) {
          sink->sub(q, removed, repl);
        }
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(q),
                w.begin() + static_cast<std::ptrdiff_t>(q) + 2);
        w.insert(w.begin() + static_cast<std::ptrdiff_t>(q), repl.begin(),
                 repl.end());
        q += 3;
      } else {
        throw Error("malformed handle during reduction");
      }
    }
  }
  return w;
}

}  // namespace

BraidWord handle_reduce(BraidWord b) { return reduce_with(std::move(b), nullptr); }

bool braid_equal(Word const& w1, Word const& w2,
                 std::vector<GeneratorSymbol> const& chain) {
  return handle_reduce(to_braid_word(w1 * invert(w2), chain)).empty();
}

bool braid_oracle_equal(Word const& w1, Word const& w2, int strands) {
  return braid_equal(w1, w2, sigma_chain(strands));
}

std::optional<ProofScript> braid_certificate(
    Presentation const& p, std::vector<GeneratorSymbol> const& chain,
    Word const& w1, Word const& w2, std::string name) {
  if (!braid_equal(w1, w2, chain)) {
    return std::nullopt;
  }
  ProofScript script{std::move(name), p.name(), w1, {}, w2};
  // w1 -> w1 w2' w2 by nested insertions, then reduce the prefix w1 w2'.
  auto q = w1.size();
  for (std::size_t k = w2.size(); k-- > 0;) {
    script.steps.push_back(ProofStep::ins(q + (w2.size() - 1 - k),
                                          w2[k].inverse()));
  }
  RelatorIndex index(p);
  HandleSink sink;
  sink.sub = [&](std::size_t pos, BraidWord const& removed,
                 BraidWord const& repl) {
    auto rw = from_braid_word(removed, chain);
    auto pw = from_braid_word(repl, chain);
    auto j = index.certify(rw, pw);
    if (!j) {
      throw Error("no braid relator certifies " + print_word(rw) + " -> " +
                  print_word(pw) + " in " + p.name());
    }
    script.steps.push_back(ProofStep::sub(pos, rw.size(), pw, *j));
  };
  sink.del = [&](std::size_t pos) {
    script.steps.push_back(ProofStep::del(pos));
  };
  auto rest = reduce_with(to_braid_word(w1 * invert(w2), chain), &sink);
  if (!rest.empty()) {
    return std::nullopt;
  }
  return script;
}

}  // namespace mcg
