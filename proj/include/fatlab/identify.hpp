#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatlab/liealg.hpp"
#include "fatlab/matrix.hpp"
#include "fatlab/poly.hpp"
#include "fatlab/rational.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab {

/// One simple summand in canonical low-rank-normalized form. When only the
/// (dimension, rank) pair is known, B_n and C_n cannot be told apart for
/// n >= 3; such factors carry bc_ambiguous and compare equal to either.
struct SimpleFactor {
  char series = 'A';
  int rank = 0;
  bool bc_ambiguous = false;

  std::string to_string() const {
    if (bc_ambiguous) return "B" + std::to_string(rank) + "|C" + std::to_string(rank);
    return std::string(1, series) + std::to_string(rank);
  }
};

inline bool factors_compatible(const SimpleFactor& a, const SimpleFactor& b) {
  if (a.rank != b.rank) return false;
  if (a.series == b.series) return true;
  const bool bc = (a.series == 'B' || a.series == 'C') && (b.series == 'B' || b.series == 'C');
  return bc && (a.bc_ambiguous || b.bc_ambiguous);
}

/// Isomorphism type of a compact algebra: simple factors plus a torus.
struct TypeSum {
  bool identified = true;
  std::vector<SimpleFactor> factors;
  int torus_rank = 0;

  int rank() const {
    int r = torus_rank;
    for (const SimpleFactor& f : factors) r += f.rank;
    return r;
  }

  void sort_canonical() {
    std::sort(factors.begin(), factors.end(), [](const SimpleFactor& a, const SimpleFactor& b) {
      if (a.series != b.series) return a.series < b.series;
      return a.rank < b.rank;
    });
  }

  std::string to_string() const {
    if (!identified) return "unidentified";
    std::string s;
    for (const SimpleFactor& f : factors) {
      if (!s.empty()) s += "+";
      s += f.to_string();
    }
    for (int i = 0; i < torus_rank; ++i) {
      if (!s.empty()) s += "+";
      s += "T";
    }
    return s.empty() ? "0" : s;
  }
};

/// Multiset comparison, tolerant of B/C ambiguity on either side.
inline bool same_type(const TypeSum& a, const TypeSum& b) {
  if (!a.identified || !b.identified) return false;
  if (a.torus_rank != b.torus_rank || a.factors.size() != b.factors.size()) return false;
  std::vector<bool> used(b.factors.size(), false);
  for (const SimpleFactor& fa : a.factors) {
    bool matched = false;
    for (size_t i = 0; i < b.factors.size(); ++i) {
      if (used[i] || !factors_compatible(fa, b.factors[i])) continue;
      used[i] = true;
      matched = true;
      break;
    }
    if (!matched) return false;
  }
  return true;
}

namespace detail {

/// Low-rank normalization: B1,C1 -> A1; C2 -> B2; D1 -> T; D2 -> A1+A1;
/// D3 -> A3; rank 0 drops.
inline void push_normalized(TypeSum& out, char series, int rank) {
  if (rank <= 0) return;
  if ((series == 'B' || series == 'C') && rank == 1) series = 'A';
  if (series == 'C' && rank == 2) series = 'B';
  if (series == 'D') {
    if (rank == 1) {
      out.torus_rank += 1;
      return;
    }
    if (rank == 2) {
      out.factors.push_back({'A', 1, false});
      out.factors.push_back({'A', 1, false});
      return;
    }
    if (rank == 3) series = 'A';
  }
  out.factors.push_back({series, rank, false});
}

/// (dimension, rank) lookup across the simple series. For 2r^2 + r with
/// r >= 3 the factor is flagged B/C-ambiguous.
inline std::optional<SimpleFactor> simple_type_from_dim_rank(int d, int r) {
  if (r >= 1 && d == r * (r + 2)) return SimpleFactor{'A', r, false};
  if (r == 2 && d == 10) return SimpleFactor{'B', 2, false};
  if (r >= 3 && d == 2 * r * r + r) return SimpleFactor{'B', r, true};
  if (r >= 4 && d == 2 * r * r - r) return SimpleFactor{'D', r, false};
  if (r == 2 && d == 14) return SimpleFactor{'G', 2, false};
  if (r == 4 && d == 52) return SimpleFactor{'F', 4, false};
  if (r == 6 && d == 78) return SimpleFactor{'E', 6, false};
  if (r == 7 && d == 133) return SimpleFactor{'E', 7, false};
  if (r == 8 && d == 248) return SimpleFactor{'E', 8, false};
  return std::nullopt;
}

/// Divides a vector by its rational content, leaving coprime integer entries.
inline void normalize_content(std::vector<Rat>& v, Rat* factor_out = nullptr) {
  mpz_class num_gcd(0), den_lcm(1);
  for (const Rat& x : v) {
    if (x == 0) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_class d = x.get_den(), g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  if (num_gcd == 0) {
    if (factor_out) *factor_out = 1;
    return;
  }
  const Rat content = Rat(num_gcd) / Rat(den_lcm);
  for (Rat& x : v) x /= content;
  if (factor_out) *factor_out = content;
}

inline Mat killing_matrix(const LieAlgebra& g) {
  const int d = g.dim();
  Mat k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rat acc(0);
      // tr(ad_i ad_j) = sum_r sum_m c[i][r][m] c[j][m][r]
      for (int r = 0; r < d; ++r)
        for (const SparseTerm& t : g.bracket_basis(i, r)) {
          const Rat v = g.structure_constant(j, t.index, r);
          if (v != 0) acc += t.coeff * v;
        }
      k(i, j) = acc;
      k(j, i) = acc;
    }
  return k;
}

/// Eigenspaces of an operator whose eigenvalues are rational and whose action
/// is diagonalizable; nullopt when that cannot be certified exactly.
inline std::optional<std::vector<Mat>> rational_eigensplit(const Mat& op, DetRng& rng) {
  const int d = op.rows();
  std::vector<Rat> found_roots;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Rat> kv(d);
    for (int i = 0; i < d; ++i) kv[i] = Rat(rng.next_int(-4, 4));
    IncrementalSpan span(d);
    std::vector<Rat> cur = kv;
    UPoly minpoly;
    for (int deg = 0; deg <= d; ++deg) {
      if (const auto coords = span.add(cur)) {
        std::vector<Rat> pc(deg + 1, Rat(0));
        pc[deg] = 1;
        for (int j = 0; j < deg; ++j) pc[j] = -(*coords)[j];
        minpoly = UPoly(std::move(pc));
        break;
      }
      cur = op.apply(cur);
    }
    if (minpoly.is_zero()) return std::nullopt;
    const auto roots = rational_roots(minpoly);
    if (!roots || static_cast<int>(roots->size()) != minpoly.degree()) return std::nullopt;
    for (const Rat& r : *roots)
      if (std::find(found_roots.begin(), found_roots.end(), r) == found_roots.end()) found_roots.push_back(r);

    std::vector<Mat> blocks;
    int total = 0;
    for (const Rat& lambda : found_roots) {
      Mat shifted = op;
      for (int i = 0; i < d; ++i) shifted(i, i) -= lambda;
      Mat e = span_canonical(kernel(shifted));
      if (e.cols() == 0) continue;
      total += e.cols();
      blocks.push_back(std::move(e));
    }
    if (total == d) return blocks;
    // some eigenvalue is still missing from the sampled minimal polynomials
  }
  return std::nullopt;
}

/// The operator B^{-1} kappa: acts as a scalar on every simple ideal (both
/// forms are invariant), so its eigenspaces pre-split ideals whose trace and
/// Killing forms have different ratios.
inline Mat ratio_operator(const LieAlgebra& g) {
  const int d = g.dim();
  Mat work = g.form().hcat(killing_matrix(g));
  rref(work);
  Mat s(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) s(r, c) = work(r, d + c);
  return s;
}

/// Dimension of one simple factor.
inline int simple_factor_dimension(const SimpleFactor& f) {
  switch (f.series) {
    case 'A': return f.rank * (f.rank + 2);
    case 'B':
    case 'C': return 2 * f.rank * f.rank + f.rank;
    case 'D': return 2 * f.rank * f.rank - f.rank;
    case 'G': return 14;
    case 'F': return 52;
    case 'E':
      if (f.rank == 6) return 78;
      if (f.rank == 7) return 133;
      if (f.rank == 8) return 248;
      break;
    default: break;
  }
  throw std::invalid_argument("simple_factor_dimension: unknown series " + f.to_string());
}

/// Dimensions of the simple types at a given rank.
inline std::vector<int> simple_dims_at_rank(int r) {
  std::vector<int> dims{r * (r + 2)};        // A_r
  if (r >= 2) dims.push_back(2 * r * r + r);  // B_r / C_r
  if (r >= 4) dims.push_back(2 * r * r - r);  // D_r
  if (r == 2) dims.push_back(14);             // G2
  if (r == 4) dims.push_back(52);             // F4
  if (r == 6) dims.push_back(78);
  if (r == 7) dims.push_back(133);
  if (r == 8) dims.push_back(248);
  return dims;
}

/// Whether (d, r) admits a decomposition into two or more simple summands.
/// When it does not, a semisimple algebra with that dimension and rank is
/// simple by counting alone.
inline bool composite_partition_exists(int d, int r, int min_rank = 1, int parts = 0) {
  if (d == 0 && r == 0) return parts >= 2;
  if (d <= 0 || r <= 0) return false;
  for (int rho = min_rank; rho <= r; ++rho)
    for (int s : simple_dims_at_rank(rho))
      if (s <= d && composite_partition_exists(d - s, r - rho, rho, parts + 1)) return true;
  return false;
}

// Modular arithmetic for the fast simplicity certificate below.
constexpr uint64_t kCertPrime = 9223372036854775783ull;  // 2^63 - 25

inline uint64_t cert_mul(uint64_t a, uint64_t b) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % kCertPrime);
}

inline uint64_t cert_sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + (kCertPrime - b); }

inline uint64_t cert_inv(uint64_t a) {
  uint64_t r = 1, e = kCertPrime - 2;
  while (e) {
    if (e & 1) r = cert_mul(r, a);
    a = cert_mul(a, a);
    e >>= 1;
  }
  return r;
}

/// Rational matrix reduced mod the certificate prime, row-major; nullopt when
/// a denominator vanishes mod p.
inline std::optional<std::vector<uint64_t>> cert_reduce(const Mat& m) {
  std::vector<uint64_t> out(static_cast<size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const Rat& v = m(i, j);
      const uint64_t den = mpz_fdiv_ui(v.get_den_mpz_t(), kCertPrime);
      if (den == 0) return std::nullopt;
      const uint64_t num = mpz_fdiv_ui(v.get_num_mpz_t(), kCertPrime);
      out[static_cast<size_t>(i) * m.cols() + j] = cert_mul(num, cert_inv(den));
    }
  return out;
}

/// Row elimination mod p that can report the coordinates of a dependent
/// vector over the previously accepted ones.
struct CertSpan {
  int dim;
  std::vector<std::vector<uint64_t>> rows;   // reduced, pivot-normalized
  std::vector<std::vector<uint64_t>> exprs;  // row as combination of accepted vectors
  std::vector<int> pivots;

  explicit CertSpan(int d) : dim(d) {}

  // Returns coords over the accepted vectors when v is dependent, otherwise
  // accepts v and returns nullopt.
  std::optional<std::vector<uint64_t>> add(std::vector<uint64_t> v) {
    std::vector<uint64_t> combo(rows.size(), 0);
    for (size_t j = 0; j < rows.size(); ++j) {
      const uint64_t c = v[pivots[j]];
      if (c == 0) continue;
      combo[j] = c;
      for (int t = 0; t < dim; ++t) v[t] = cert_sub(v[t], cert_mul(c, rows[j][t]));
    }
    int piv = -1;
    for (int t = 0; t < dim && piv < 0; ++t)
      if (v[t] != 0) piv = t;
    if (piv < 0) {
      std::vector<uint64_t> coords(rows.size(), 0);
      for (size_t j = 0; j < rows.size(); ++j)
        if (combo[j] != 0)
          for (size_t i = 0; i < exprs[j].size(); ++i)
            coords[i] = (coords[i] + cert_mul(combo[j], exprs[j][i])) % kCertPrime;
      return coords;
    }
    std::vector<uint64_t> expr(count_accepted() + 1, 0);
    expr[expr.size() - 1] = 1;
    for (size_t j = 0; j < rows.size(); ++j)
      if (combo[j] != 0)
        for (size_t i = 0; i < exprs[j].size(); ++i)
          expr[i] = cert_sub(expr[i], cert_mul(combo[j], exprs[j][i]));
    const uint64_t inv = cert_inv(v[piv]);
    for (int t = 0; t < dim; ++t) v[t] = cert_mul(v[t], inv);
    for (uint64_t& e : expr) e = cert_mul(e, inv);
    rows.push_back(std::move(v));
    exprs.push_back(std::move(expr));
    pivots.push_back(piv);
    return std::nullopt;
  }

  size_t count_accepted() const { return rows.size(); }
};

/// Fast rigorous simplicity certificate. The commutant of a random pair of
/// ad-operators contains the commutant of the whole adjoint representation,
/// and reducing the (integer-clearable) commutant equations mod a prime can
/// only enlarge their kernel. A one-dimensional kernel mod p therefore pins
/// the rational commutant to the scalars, which makes the adjoint
/// representation irreducible and the algebra simple. A larger kernel decides
/// nothing; the caller falls back to the exact split.
inline bool cert_simple_modp(const AlgebraPtr& a, DetRng& rng) {
  const int d = a->dim();
  if (d <= 0) return false;
  std::vector<Rat> x(d), y(d);
  for (int i = 0; i < d; ++i) x[i] = Rat(rng.next_int(-4, 4));
  for (int i = 0; i < d; ++i) y[i] = Rat(rng.next_int(-4, 4));
  const auto ax = cert_reduce(a->ad(x));
  const auto ay = cert_reduce(a->ad(y));
  if (!ax || !ay) return false;
  const auto sd = static_cast<size_t>(d);

  auto mat_vec = [&](const std::vector<uint64_t>& m, const std::vector<uint64_t>& v) {
    std::vector<uint64_t> out(sd, 0);
    for (size_t r = 0; r < sd; ++r) {
      unsigned __int128 acc = 0;
      for (size_t c = 0; c < sd; ++c) acc += static_cast<unsigned __int128>(m[r * sd + c]) * v[c] % kCertPrime;
      out[r] = static_cast<uint64_t>(acc % kCertPrime);
    }
    return out;
  };
  auto mat_mat = [&](const std::vector<uint64_t>& l, const std::vector<uint64_t>& r) {
    std::vector<uint64_t> out(sd * sd, 0);
    for (size_t i = 0; i < sd; ++i)
      for (size_t k = 0; k < sd; ++k) {
        const uint64_t lv = l[i * sd + k];
        if (lv == 0) continue;
        for (size_t j = 0; j < sd; ++j)
          out[i * sd + j] = (out[i * sd + j] + cert_mul(lv, r[k * sd + j])) % kCertPrime;
      }
    return out;
  };

  std::vector<uint64_t> v0(sd);
  for (size_t i = 0; i < sd; ++i) {
    const long t = rng.next_int(-4, 4);
    v0[i] = t >= 0 ? static_cast<uint64_t>(t) : kCertPrime - static_cast<uint64_t>(-t);
  }

  std::vector<std::vector<uint64_t>> basis{v0};
  std::vector<std::vector<uint64_t>> words{[&] {
    std::vector<uint64_t> id(sd * sd, 0);
    for (size_t i = 0; i < sd; ++i) id[i * sd + i] = 1;
    return id;
  }()};
  CertSpan span(d);
  span.add(v0);
  CertSpan constraints(d);
  size_t next_to_expand = 0;
  while (next_to_expand < basis.size()) {
    const size_t i = next_to_expand++;
    for (const auto* op : {&*ax, &*ay}) {
      std::vector<uint64_t> u = mat_vec(*op, basis[i]);
      std::vector<uint64_t> wu = mat_mat(*op, words[i]);
      if (const auto coords = span.add(u)) {
        for (size_t j = 0; j < coords->size(); ++j) {
          const uint64_t c = (*coords)[j];
          if (c == 0) continue;
          for (size_t t = 0; t < sd * sd; ++t) wu[t] = cert_sub(wu[t], cert_mul(c, words[j][t]));
        }
        // each row of the residual word is one linear constraint on w0
        for (size_t r = 0; r < sd; ++r)
          constraints.add(std::vector<uint64_t>(wu.begin() + static_cast<long>(r * sd),
                                                wu.begin() + static_cast<long>((r + 1) * sd)));
      } else {
        basis.push_back(std::move(u));
        words.push_back(std::move(wu));
      }
    }
  }
  if (static_cast<int>(basis.size()) != d) return false;  // orbit must span for injectivity
  return static_cast<int>(constraints.count_accepted()) == d - 1;
}

/// Splits a compact semisimple algebra into its simple ideals, as subspace
/// bases. Stage one splits by the ratio operator; equal-ratio blocks are then
/// split via the commutant of two generating ad-operators, whose eigenspaces
/// are the ideals. Exact throughout; nullopt when certification fails.
inline std::optional<std::vector<Mat>> split_simple_ideals(const AlgebraPtr& a, uint64_t seed, int depth = 0) {
  const int d = a->dim();
  if (d == 0) return std::vector<Mat>{};
  if (depth > 6) return std::nullopt;
  DetRng rng(seed * 1000003 + depth * 77 + 13);

  // stage one: ratio pre-split (skip when the operator is already scalar)
  const Mat s = ratio_operator(*a);
  bool scalar = true;
  for (int i = 0; i < d && scalar; ++i)
    for (int j = 0; j < d; ++j)
      if (s(i, j) != ((i == j) ? s(0, 0) : Rat(0))) {
        scalar = false;
        break;
      }
  if (!scalar) {
    const auto blocks = rational_eigensplit(s, rng);
    if (!blocks) return std::nullopt;
    if (blocks->size() > 1) {
      std::vector<Mat> out;
      for (const Mat& block : *blocks) {
        const Subspace bs{a, block};
        if (!is_bracket_closed(bs)) return std::nullopt;
        const auto inner = split_simple_ideals(subspace_algebra(bs), seed + 17, depth + 1);
        if (!inner) return std::nullopt;
        for (const Mat& ib : *inner) out.push_back(span_canonical(block * ib));
      }
      return out;
    }
  }

  // stage two: single ratio block. If no multiset of simple types fits the
  // (dimension, rank) pair, the block is simple by counting; the rank is a
  // randomized upper estimate, so a miss only leads to an honest failure in
  // the type lookup, never to a wrong split.
  if (!composite_partition_exists(d, generic_rank(*a, seed + 5, 8))) return std::vector<Mat>{Mat::identity(d)};

  // fast certificate first: a scalar mod-p commutant already proves simplicity
  for (int attempt = 0; attempt < 2; ++attempt)
    if (cert_simple_modp(a, rng)) return std::vector<Mat>{Mat::identity(d)};

  // commutant of two generating ad-operators
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Rat> x(d), y(d);
    for (int i = 0; i < d; ++i) x[i] = Rat(rng.next_int(-4, 4));
    for (int i = 0; i < d; ++i) y[i] = Rat(rng.next_int(-4, 4));

    // generation check: the Lie closure of span{x, y} must be everything
    {
      Subspace sp = make_subspace(a, Mat::from_columns(d, {x, y}));
      for (int it = 0; it < d && sp.dim() < d; ++it) {
        const Subspace next = subspace_sum(sp, bracket_span(sp, sp));
        if (next.dim() == sp.dim()) break;
        sp = next;
      }
      if (sp.dim() < d) continue;
    }

    const Mat ax = a->ad(x), ay = a->ad(y);

    // Orbit of a random vector under words in {ax, ay}. Each kept vector
    // carries the matrix W with vector = W * v0, so a commuting T is pinned
    // down by w0 = T v0 alone. Vector/word pairs are scaled jointly to keep
    // entries small.
    std::vector<Rat> v0(d);
    for (int i = 0; i < d; ++i) v0[i] = Rat(rng.next_int(-4, 4));
    std::vector<std::vector<Rat>> basis_vecs{v0};
    std::vector<Mat> words{Mat::identity(d)};
    std::vector<Mat> constraints;
    IncrementalSpan span(d);
    span.add(v0);
    size_t next_to_expand = 0;
    while (next_to_expand < basis_vecs.size()) {
      const size_t i = next_to_expand++;
      for (const Mat* op : {&ax, &ay}) {
        std::vector<Rat> u = op->apply(basis_vecs[i]);
        Mat wu = (*op) * words[i];
        Rat content(1);
        normalize_content(u, &content);
        if (content != 1 && content != 0) wu = wu.scaled(Rat(1) / content);
        if (const auto coords = span.add(u)) {
          Mat c = wu;
          for (size_t j = 0; j < coords->size(); ++j)
            if ((*coords)[j] != 0) c = c - words[j].scaled((*coords)[j]);
          if (!c.is_zero()) constraints.push_back(std::move(c));
        } else {
          basis_vecs.push_back(std::move(u));
          words.push_back(std::move(wu));
        }
      }
    }
    if (static_cast<int>(basis_vecs.size()) != d) continue;  // orbit did not span

    Mat stacked(static_cast<int>(constraints.size()) * d, d);
    for (size_t t = 0; t < constraints.size(); ++t)
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) stacked(static_cast<int>(t) * d + r, c) = constraints[t](r, c);
    const Mat w0_space = kernel(stacked);
    const int k = w0_space.cols();
    if (k < 1) continue;
    if (k == 1) return std::vector<Mat>{Mat::identity(d)};  // commutant is scalar: simple

    // generic commutant element
    std::vector<Rat> w0(d, Rat(0));
    for (int j = 0; j < k; ++j) {
      const Rat c = Rat(rng.next_int(1, 19));
      for (int i = 0; i < d; ++i) w0[i] += c * w0_space(i, j);
    }
    // T maps basis_vecs[i] to words[i] * w0; solve T on the standard basis.
    Mat rhs(d, d);
    for (int i = 0; i < d; ++i) rhs.set_column(i, words[i].apply(w0));
    Mat work = Mat::from_columns(d, basis_vecs).transpose().hcat(rhs.transpose());
    rref(work);
    Mat tmat(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) tmat(c, r) = work(r, d + c);

    const auto blocks = rational_eigensplit(tmat, rng);
    if (!blocks || blocks->size() < 2) continue;

    std::vector<Mat> out;
    bool good = true;
    for (const Mat& block : *blocks) {
      const Subspace bs{a, block};
      if (!is_bracket_closed(bs) || !is_ideal(bs)) {
        good = false;
        break;
      }
      const auto inner = split_simple_ideals(subspace_algebra(bs), seed + 101 * (attempt + 1), depth + 1);
      if (!inner) {
        good = false;
        break;
      }
      for (const Mat& ib : *inner) out.push_back(span_canonical(block * ib));
    }
    if (good) return out;
  }
  return std::nullopt;
}

}  // namespace detail

/// Isomorphism type computed from structure alone: center split, exact
/// simple-ideal decomposition, then (dimension, rank) lookup per ideal.
inline TypeSum identify_computed(const AlgebraPtr& g, uint64_t seed = 2) {
  TypeSum out;
  const int d = g->dim();
  if (d == 0) return out;

  const Subspace z = center(g);
  const Subspace ss = derived_subspace(g);
  if (z.dim() + ss.dim() != d || intersect(z, ss).dim() != 0) {
    out.identified = false;
    return out;
  }
  out.torus_rank = z.dim();
  if (ss.dim() == 0) return out;

  const AlgebraPtr ssa = subspace_algebra(ss, "ss");
  const auto blocks = detail::split_simple_ideals(ssa, seed);
  if (!blocks) {
    out.identified = false;
    return out;
  }
  for (const Mat& block : *blocks) {
    const AlgebraPtr ba = subspace_algebra(Subspace{ssa, block});
    const int bd = ba->dim();
    std::optional<SimpleFactor> f;
    for (int extra = 0; extra < 3 && !f; ++extra)
      f = detail::simple_type_from_dim_rank(bd, generic_rank(*ba, seed + 31 * extra + 1, 6 + 2 * extra));
    if (!f) {
      out.identified = false;
      return out;
    }
    out.factors.push_back(*f);
  }
  out.sort_canonical();
  return out;
}

/// Isomorphism type. Constructed algebras resolve by name; everything else
/// falls through to the computed path.
inline TypeSum identify(const AlgebraPtr& g, uint64_t seed = 2) {
  TypeSum out;
  switch (g->family) {
    case Family::T:
      out.torus_rank = g->dim();
      return out;
    case Family::SU:
      detail::push_normalized(out, 'A', g->params[0] - 1);
      return out;
    case Family::U:
      detail::push_normalized(out, 'A', g->params[0] - 1);
      out.torus_rank += 1;
      return out;
    case Family::SO: {
      const int n = g->params[0];
      if (n % 2 == 0)
        detail::push_normalized(out, 'D', n / 2);
      else
        detail::push_normalized(out, 'B', (n - 1) / 2);
      out.sort_canonical();
      return out;
    }
    case Family::SP:
      detail::push_normalized(out, 'C', g->params[0]);
      return out;
    case Family::G2:
      out.factors.push_back({'G', 2, false});
      return out;
    case Family::Sum:
      if (!g->parts.empty()) {
        for (const AlgebraPtr& p : g->parts) {
          const TypeSum sub = identify(p, seed);
          if (!sub.identified) {
            out.identified = false;
            return out;
          }
          out.torus_rank += sub.torus_rank;
          for (const SimpleFactor& f : sub.factors) out.factors.push_back(f);
        }
        out.sort_canonical();
        return out;
      }
      return identify_computed(g, seed);
  }
  return identify_computed(g, seed);
}

/// Dimension of the algebra a type sum describes.
inline int type_dimension(const TypeSum& t) {
  if (!t.identified) throw std::invalid_argument("type_dimension: unidentified type");
  int d = t.torus_rank;
  for (const SimpleFactor& f : t.factors) d += detail::simple_factor_dimension(f);
  return d;
}

/// Concatenation of two type sums.
inline TypeSum type_sum(const TypeSum& a, const TypeSum& b) {
  TypeSum out;
  out.identified = a.identified && b.identified;
  out.torus_rank = a.torus_rank + b.torus_rank;
  out.factors = a.factors;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  out.sort_canonical();
  return out;
}

}  // namespace fatlab
