#include "mcg/reps.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace mcg {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t d) {
  IntMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = 1;
  }
  return m;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) {
    return false;
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if ((*this)(i, j) != (i == j ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

IntMatrix operator*(IntMatrix const& x, IntMatrix const& y) {
  if (x.cols_ != y.rows_) {
    throw Error("matrix dimension mismatch");
  }
  IntMatrix out(x.rows_, y.cols_);
  for (std::size_t i = 0; i < x.rows_; ++i) {
    for (std::size_t k = 0; k < x.cols_; ++k) {
      auto const& v = x(i, k);
      if (v == 0) {
        continue;
      }
      for (std::size_t j = 0; j < y.cols_; ++j) {
        out(i, j) += v * y(k, j);
      }
    }
  }
  return out;
}

IntMatrix operator-(IntMatrix const& x, IntMatrix const& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
    throw Error("matrix dimension mismatch");
  }
  IntMatrix out = x;
  for (std::size_t i = 0; i < out.a_.size(); ++i) {
    out.a_[i] -= y.a_[i];
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) {
        out += ' ';
      }
      out += (*this)(i, j).str();
    }
    out += '\n';
  }
  return out;
}

// Basis: e_t, f_t for t = 0..g-1 at 2t, 2t+1, then boundary classes
// beta_1..beta_{n-1}; beta_n = -(beta_1 + ... + beta_{n-1}).
//   [b] = e_0, [a_1] = f_0, [b_k] = f_k
//   hole 2k-1 -> e_k, hole 2k -> -e_k, hole 2g-2+t -> beta_t
//   [a_l] = f_0 + sum of holes m < l
//   [c_{i,j}] = sum of holes i, i+1, ..., j-1 (cyclic)
CurveClassTable::CurveClassTable(SurfaceParams p)
    : p_(p),
      dim_(static_cast<std::size_t>(2 * p.g() + std::max(p.n() - 1, 0))) {
  J_.assign(dim_, std::vector<long>(dim_, 0));
  for (int t = 0; t < p.g(); ++t) {
    auto e = static_cast<std::size_t>(2 * t);
    J_[e + 1][e] = 1;
    J_[e][e + 1] = -1;
  }
  auto unit = [&](std::size_t idx, long s) {
    IntVector v(dim_, 0);
    v[idx] = s;
    return v;
  };
  auto add = [](IntVector& x, IntVector const& y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += y[i];
    }
  };
  int g = p.g();
  int N = p.N();
  std::vector<IntVector> hole(static_cast<std::size_t>(N + 1));
  for (int m = 1; m <= N; ++m) {
    auto& h = hole[static_cast<std::size_t>(m)];
    if (m <= 2 * g - 2) {
      int k = (m + 1) / 2;
      h = unit(static_cast<std::size_t>(2 * k), m % 2 == 1 ? 1 : -1);
    } else {
      int t = m - (2 * g - 2);
      if (t < p.n()) {
        h = unit(static_cast<std::size_t>(2 * g + t - 1), 1);
      } else {
        h = IntVector(dim_, 0);
        for (int s = 1; s < p.n(); ++s) {
          h[static_cast<std::size_t>(2 * g + s - 1)] = -1;
        }
      }
    }
  }
  classes_[intern(GeneratorSymbol::b())] = unit(0, 1);
  for (int k = 1; k < g; ++k) {
    classes_[intern(GeneratorSymbol::bk(k))] =
        unit(static_cast<std::size_t>(2 * k + 1), 1);
  }
  IntVector a = unit(1, 1);
  for (int l = 1; l <= N; ++l) {
    classes_[intern(GeneratorSymbol::a(l))] = a;
    add(a, hole[static_cast<std::size_t>(l)]);
  }
  for (int i = 1; i <= N; ++i) {
    for (int j = 1; j <= N; ++j) {
      if (i == j) {
        continue;
      }
      IntVector c(dim_, 0);
      for (int m = i; m != j; m = normalize_index(m + 1, N)) {
        add(c, hole[static_cast<std::size_t>(m)]);
      }
      classes_[intern(GeneratorSymbol::c(i, j))] = c;
    }
  }
}

bool CurveClassTable::contains(GeneratorSymbol const& s) const {
  return classes_.contains(intern(s));
}

IntVector const& CurveClassTable::class_of(GeneratorSymbol const& s) const {
  auto it = classes_.find(intern(s));
  if (it == classes_.end()) {
    throw Error("no homology class for " + s.to_string());
  }
  return it->second;
}

long CurveClassTable::pairing(IntVector const& x, IntVector const& y) const {
  long total = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      total += x[i] * J_[i][j] * y[j];
    }
  }
  return total;
}

namespace {

// (J a) as a row functional: x -> <x, a>.
std::vector<long> functional(CurveClassTable const& t, IntVector const& a) {
  std::vector<long> f(t.dimension(), 0);
  for (std::size_t i = 0; i < t.dimension(); ++i) {
    for (std::size_t j = 0; j < t.dimension(); ++j) {
      f[i] += t.form()[i][j] * a[j];
    }
  }
  return f;
}

// m <- T m where T x = x + sign <x,a> a.
void left_apply(IntMatrix& m, IntVector const& a, std::vector<long> const& f,
                int sign) {
  std::size_t d = m.rows();
  for (std::size_t col = 0; col < d; ++col) {
    BigInt s = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (f[i] != 0) {
        s += f[i] * m(i, col);
      }
    }
    if (s == 0) {
      continue;
    }
    if (sign < 0) {
      s = -s;
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (a[i] != 0) {
        m(i, col) += a[i] * s;
      }
    }
  }
}

}  // namespace

IntMatrix twist_matrix(GeneratorSymbol const& g, TransvectionRep const& rep,
                       int sign) {
  auto const& a = rep.table().class_of(g);
  auto m = IntMatrix::identity(rep.dimension());
  left_apply(m, a, functional(rep.table(), a), sign);
  return m;
}

IntMatrix word_matrix(Word const& w, TransvectionRep const& rep) {
  auto m = IntMatrix::identity(rep.dimension());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    auto const& a = rep.table().class_of(it->symbol());
    left_apply(m, a, functional(rep.table(), a), it->sign());
  }
  return m;
}

Refutation refute_equal(Word const& w1, Word const& w2,
                        TransvectionRep const& rep) {
  return word_matrix(w1, rep) == word_matrix(w2, rep) ? Refutation::inconclusive
                                                      : Refutation::refuted;
}

namespace {

using Small = std::vector<std::uint16_t>;

Small mul_mod(Small const& x, Small const& y, std::size_t d, unsigned p) {
  Small out(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      unsigned s = 0;
      for (std::size_t k = 0; k < d; ++k) {
        s = (s + static_cast<unsigned>(x[i * d + k]) * y[k * d + j]) % p;
      }
      out[i * d + j] = static_cast<std::uint16_t>(s);
    }
  }
  return out;
}

struct SmallHash {
  std::size_t operator()(Small const& s) const noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    for (auto v : s) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::uint64_t mod_p_closure(std::vector<IntMatrix> const& gens, unsigned p,
                            std::uint64_t cap) {
  if (p < 2 || p > 255) {
    throw Error("closure modulus must be a prime below 256");
  }
  for (unsigned q = 2; q * q <= p; ++q) {
    if (p % q == 0) {
      throw Error("closure modulus " + std::to_string(p) + " is not prime");
    }
  }
  if (gens.empty()) {
    return 1;
  }
  std::size_t d = gens.front().rows();
  std::vector<Small> small;
  for (auto const& g : gens) {
    if (g.rows() != d || g.cols() != d) {
      throw Error("closure generators must share one square dimension");
    }
    Small s(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        BigInt r = g(i, j) % p;
        if (r < 0) {
          r += p;
        }
        s[i * d + j] = static_cast<std::uint16_t>(r);
      }
    }
    small.push_back(std::move(s));
  }
  Small id(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    id[i * d + i] = 1;
  }
  std::unordered_set<Small, SmallHash> seen{id};
  std::deque<Small> queue{id};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (auto const& g : small) {
      auto next = mul_mod(cur, g, d, p);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw CapExceeded("closure exceeds " + std::to_string(cap) +
                            " elements");
        }
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

std::vector<BigInt> smith_invariants(std::vector<std::vector<BigInt>> m,
                                     std::size_t cols) {
  std::size_t rows = m.size();
  std::vector<BigInt> diag;
  std::size_t t = 0;
  auto abs_big = [](BigInt const& v) { return v < 0 ? BigInt(-v) : v; };
  while (t < rows && t < cols) {
    // smallest nonzero entry of the remaining block
    std::size_t pr = rows;
    std::size_t pc = cols;
    BigInt best = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (best == 0 || abs_big(m[i][j]) < best)) {
          best = abs_big(m[i][j]);
          pr = i;
          pc = j;
        }
      }
    }
    if (best == 0) {
      break;
    }
    std::swap(m[t], m[pr]);
    for (std::size_t i = 0; i < rows; ++i) {
      std::swap(m[i][t], m[i][pc]);
    }
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) {
        continue;
      }
      BigInt q = m[i][t] / m[t][t];
      for (std::size_t j = t; j < cols; ++j) {
        m[i][j] -= q * m[t][j];
      }
      clean = clean && m[i][t] == 0;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) {
        continue;
      }
      BigInt q = m[t][j] / m[t][t];
      for (std::size_t i = t; i < rows; ++i) {
        m[i][j] -= q * m[i][t];
      }
      clean = clean && m[t][j] == 0;
    }
    if (!clean) {
      continue;  // a smaller remainder now exists; pivot again
    }
    diag.push_back(abs_big(m[t][t]));
    ++t;
  }
  // Diagonal to divisibility chain: (x, y) -> (gcd, lcm).
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  }
  std::vector<BigInt> out;
  for (auto const& v : diag) {
    if (v != 1) {
      out.push_back(v);
    }
  }
  for (std::size_t r = diag.size(); r < cols; ++r) {
    out.push_back(0);
  }
  return out;
}

std::vector<BigInt> abelianization(Presentation const& p) {
  std::map<SymbolId, std::size_t> col;
  for (auto const& s : p.generators()) {
    col.emplace(intern(s), col.size());
  }
  std::vector<std::vector<BigInt>> m;
  for (auto const& r : p.relators()) {
    std::vector<BigInt> row(col.size(), 0);
    for (auto l : r.word) {
      row[col.at(l.id())] += l.sign();
    }
    m.push_back(std::move(row));
  }
  return smith_invariants(std::move(m), col.size());
}

std::string format_factors(std::vector<BigInt> const& f) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += f[i].str();
  }
  return out + "]";
}

}  // namespace mcg
