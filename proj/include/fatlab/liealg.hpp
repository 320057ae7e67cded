#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatlab/matrix.hpp"
#include "fatlab/rational.hpp"

namespace fatlab {

/// Gaussian rational a + b*i.
struct CRat {
  Rat re, im;
  CRat() : re(0), im(0) {}
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  static CRat real(Rat r) { return CRat(std::move(r), Rat(0)); }
  static CRat imag(Rat i) { return CRat(Rat(0), std::move(i)); }
  bool is_zero() const { return re == 0 && im == 0; }
  CRat operator+(const CRat& o) const { return CRat(re + o.re, im + o.im); }
  CRat operator-(const CRat& o) const { return CRat(re - o.re, im - o.im); }
  CRat operator*(const CRat& o) const { return CRat(re * o.re - im * o.im, re * o.im + im * o.re); }
  CRat conj() const { return CRat(re, -im); }
  CRat operator-() const { return CRat(-re, -im); }
  bool operator==(const CRat& o) const { return re == o.re && im == o.im; }
};

/// Sparse complex-rational square matrix; the defining-representation side of
/// every constructor, used to derive structure constants and embeddings.
class CSp {
 public:
  explicit CSp(int n = 0) : n_(n) {}

  int size() const { return n_; }
  const std::map<int, std::map<int, CRat>>& rows() const { return rows_; }

  void add(int r, int c, const CRat& v) {
    if (r < 0 || c < 0 || r >= n_ || c >= n_) throw std::invalid_argument("CSp::add: index out of range");
    if (v.is_zero()) return;
    CRat& slot = rows_[r][c];
    slot = slot + v;
    if (slot.is_zero()) {
      rows_[r].erase(c);
      if (rows_[r].empty()) rows_.erase(r);
    }
  }

  CRat at(int r, int c) const {
    auto it = rows_.find(r);
    if (it == rows_.end()) return CRat();
    auto jt = it->second.find(c);
    return jt == it->second.end() ? CRat() : jt->second;
  }

  CSp operator*(const CSp& o) const {
    if (n_ != o.n_) throw std::invalid_argument("CSp multiply: size mismatch");
    CSp out(n_);
    for (const auto& [r, row] : rows_)
      for (const auto& [k, v] : row) {
        auto it = o.rows_.find(k);
        if (it == o.rows_.end()) continue;
        for (const auto& [c, w] : it->second) out.add(r, c, v * w);
      }
    return out;
  }

  CSp operator-(const CSp& o) const {
    CSp out = *this;
    for (const auto& [r, row] : o.rows_)
      for (const auto& [c, v] : row) out.add(r, c, -v);
    return out;
  }

  CSp commutator(const CSp& o) const { return (*this) * o - o * (*this); }

  Rat trace_product_real(const CSp& o) const {
    Rat acc(0);
    for (const auto& [r, row] : rows_)
      for (const auto& [k, v] : row) {
        const CRat w = o.at(k, r);
        if (!w.is_zero()) acc += v.re * w.re - v.im * w.im;
      }
    return acc;
  }

  CRat trace() const {
    CRat acc;
    for (const auto& [r, row] : rows_) {
      auto it = row.find(r);
      if (it != row.end()) acc = acc + it->second;
    }
    return acc;
  }

  bool is_real() const {
    for (const auto& [r, row] : rows_)
      for (const auto& [c, v] : row)
        if (v.im != 0) return false;
    return true;
  }

  /// Copy placed in a larger matrix at diagonal offset.
  CSp embedded(int new_size, int offset) const {
    CSp out(new_size);
    for (const auto& [r, row] : rows_)
      for (const auto& [c, v] : row) out.add(r + offset, c + offset, v);
    return out;
  }

  /// Realification C^n -> R^2n: X + iY maps to [[X, -Y], [Y, X]].
  CSp realified() const {
    CSp out(2 * n_);
    for (const auto& [r, row] : rows_)
      for (const auto& [c, v] : row) {
        if (v.re != 0) {
          out.add(r, c, CRat::real(v.re));
          out.add(r + n_, c + n_, CRat::real(v.re));
        }
        if (v.im != 0) {
          out.add(r, c + n_, CRat::real(-v.im));
          out.add(r + n_, c, CRat::real(v.im));
        }
      }
    return out;
  }

 private:
  int n_;
  std::map<int, std::map<int, CRat>> rows_;
};

struct SparseTerm {
  int index;
  Rat coeff;
};
using SparseVec = std::vector<SparseTerm>;

enum class Family { T, SU, SO, SP, U, G2, Sum };

class LieAlgebra;
using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

struct Realization {
  enum class Kind { None, Real, Complex } kind = Kind::None;
  int size = 0;
  std::vector<CSp> mats;
};

/// Finite-dimensional Lie algebra presented by exact structure constants and
/// an invariant negative-definite bilinear form (trace form of the defining
/// representation for the matrix families).
class LieAlgebra {
 public:
  LieAlgebra(int dim, Mat b, std::vector<SparseVec> table, std::string name)
      : dim_(dim), b_(std::move(b)), table_(std::move(table)), name_(std::move(name)) {
    if (b_.rows() != dim_ || b_.cols() != dim_) throw std::invalid_argument("LieAlgebra: form shape mismatch");
    if (static_cast<int>(table_.size()) != dim_ * dim_ && dim_ > 0)
      throw std::invalid_argument("LieAlgebra: bracket table shape mismatch");
  }

  int dim() const { return dim_; }
  const Mat& form() const { return b_; }
  const std::string& name() const { return name_; }

  Family family = Family::Sum;
  std::vector<int> params;            // e.g. {n}
  std::vector<AlgebraPtr> parts;      // for direct sums
  std::vector<int> part_offsets;      // coordinate offsets of the parts
  Realization realization;

  const SparseVec& bracket_basis(int i, int j) const { return table_[static_cast<size_t>(i) * dim_ + j]; }

  /// Raw structure constant c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
  Rat structure_constant(int i, int j, int k) const {
    for (const SparseTerm& t : bracket_basis(i, j))
      if (t.index == k) return t.coeff;
    return Rat(0);
  }

  std::vector<Rat> bracket(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
      throw std::invalid_argument("bracket: coordinate size mismatch");
    std::vector<Rat> out(dim_, Rat(0));
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const Rat xy = x[i] * y[j];
        for (const SparseTerm& t : bracket_basis(i, j)) out[t.index] += xy * t.coeff;
      }
    }
    return out;
  }

  Rat form_value(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
      throw std::invalid_argument("form_value: coordinate size mismatch");
    Rat acc(0);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim_; ++j)
        if (y[j] != 0 && b_(i, j) != 0) acc += x[i] * b_(i, j) * y[j];
    }
    return acc;
  }

  /// ad_x as a dense matrix.
  Mat ad(const std::vector<Rat>& x) const {
    Mat m(dim_, dim_);
    for (int j = 0; j < dim_; ++j) {
      std::vector<Rat> ej(dim_, Rat(0));
      ej[j] = 1;
      const std::vector<Rat> col = bracket(x, ej);
      m.set_column(j, col);
    }
    return m;
  }

 private:
  int dim_;
  Mat b_;
  std::vector<SparseVec> table_;
  std::string name_;
};

/// Element of a specific algebra; owner identity is checked on mixed ops.
struct Vec {
  AlgebraPtr owner;
  std::vector<Rat> coords;
};

inline void require_same_owner(const Vec& x, const Vec& y) {
  if (x.owner != y.owner) throw std::invalid_argument("vector owners differ");
}

inline Vec bracket(const Vec& x, const Vec& y) {
  require_same_owner(x, y);
  return Vec{x.owner, x.owner->bracket(x.coords, y.coords)};
}

inline Rat form_value(const Vec& x, const Vec& y) {
  require_same_owner(x, y);
  return x.owner->form_value(x.coords, y.coords);
}

inline Vec basis_vec(const AlgebraPtr& g, int i) {
  std::vector<Rat> c(g->dim(), Rat(0));
  c.at(i) = 1;
  return Vec{g, std::move(c)};
}

// ---------------------------------------------------------------------------
// Basis layouts of the matrix families.
//
// su(n): for each pair j<k in lexicographic order the two elements
//          P_jk = -(i/2)(E_jk + E_kj),  Q_jk = -(1/2)(E_jk - E_kj),
//        then the diagonals H_j = -(i/2)(E_jj - E_{j+1,j+1}), j = 1..n-1.
//        At n = 2 this is the (-i/2)*Pauli basis (e1, e2, e3).
// u(n):  su(n) basis followed by the central z = i*I_n (u(1) is just z).
// so(n): L_jk = E_jk - E_kj for j<k, lexicographic.
// sp(n): quaternionic anti-Hermitian matrices as 2n x 2n complex blocks
//        [[A, B], [-conj(B), conj(A)]], A anti-Hermitian, B symmetric; basis
//        groups: diag(E_jk - E_kj), diag(i(E_jk + E_kj)), diag(iE_jj),
//        offdiag(E_jk + E_kj resp. E_jj), offdiag(i * same), pairs lex.
// ---------------------------------------------------------------------------
namespace layout {

inline int pair_index(int n, int j, int k) {
  // index of (j,k), j<k, in lexicographic enumeration of pairs from {0..n-1}
  return j * (2 * n - j - 1) / 2 + (k - j - 1);
}

inline int su_dim(int n) { return n * n - 1; }
inline int so_dim(int n) { return n * (n - 1) / 2; }
inline int sp_dim(int n) { return n * (2 * n + 1); }

inline CSp su_basis_mat(int n, int idx) {
  CSp m(n);
  const int npairs = n * (n - 1) / 2;
  if (idx < 2 * npairs) {
    // recover (j,k) from pair index t
    const int t = idx / 2;
    int base = 0, j = 0;
    while (base + (n - 1 - j) <= t) {
      base += n - 1 - j;
      ++j;
    }
    const int k = j + 1 + (t - base);
    if (idx % 2 == 0) {  // P_jk
      m.add(j, k, CRat::imag(rat(-1, 2)));
      m.add(k, j, CRat::imag(rat(-1, 2)));
    } else {  // Q_jk
      m.add(j, k, CRat::real(rat(-1, 2)));
      m.add(k, j, CRat::real(rat(1, 2)));
    }
  } else {
    const int j = idx - 2 * npairs;
    m.add(j, j, CRat::imag(rat(-1, 2)));
    m.add(j + 1, j + 1, CRat::imag(rat(1, 2)));
  }
  return m;
}

/// Coordinates of an anti-Hermitian traceless matrix in the su(n) basis.
inline std::vector<Rat> su_coords(int n, const CSp& m) {
  const int npairs = n * (n - 1) / 2;
  std::vector<Rat> c(su_dim(n), Rat(0));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const CRat v = m.at(j, k);
      const int t = pair_index(n, j, k);
      c[2 * t] = -2 * v.im;
      c[2 * t + 1] = -2 * v.re;
    }
  Rat running(0);
  for (int j = 0; j < n - 1; ++j) {
    const CRat d = m.at(j, j);
    if (d.re != 0) throw std::invalid_argument("su_coords: matrix not anti-Hermitian");
    running += d.im;
    c[2 * npairs + j] = -2 * running;
  }
  // trace check
  CRat tr = m.trace();
  if (tr.re != 0 || tr.im != 0) throw std::invalid_argument("su_coords: matrix not traceless");
  return c;
}

inline CSp so_basis_mat(int n, int idx) {
  CSp m(n);
  int base = 0, j = 0;
  while (base + (n - 1 - j) <= idx) {
    base += n - 1 - j;
    ++j;
  }
  const int k = j + 1 + (idx - base);
  m.add(j, k, CRat::real(Rat(1)));
  m.add(k, j, CRat::real(Rat(-1)));
  return m;
}

inline std::vector<Rat> so_coords(int n, const CSp& m) {
  std::vector<Rat> c(so_dim(n), Rat(0));
  for (const auto& [r, row] : m.rows())
    for (const auto& [col, v] : row) {
      if (v.im != 0) throw std::invalid_argument("so_coords: complex entry");
      if (r < col) c[pair_index(n, r, col)] = v.re;
      if (r == col && v.re != 0) throw std::invalid_argument("so_coords: nonzero diagonal");
    }
  return c;
}

// sp(n) basis groups; see header comment. Group offsets within the basis:
inline int sp_npairs(int n) { return n * (n - 1) / 2; }
inline int sp_group_offset(int n, int group) {
  const int np = sp_npairs(n), ns = n * (n + 1) / 2;
  switch (group) {
    case 0: return 0;                 // diag real antisym, np
    case 1: return np;                // diag imag sym (off-diag), np
    case 2: return 2 * np;            // diag i E_jj, n
    case 3: return 2 * np + n;        // off-block real sym, ns
    case 4: return 2 * np + n + ns;   // off-block imag sym, ns
    default: throw std::logic_error("sp_group_offset");
  }
}

inline int sym_pair_index(int n, int j, int k) {
  // index of (j,k), j<=k, lexicographic
  return j * (2 * n - j + 1) / 2 + (k - j);
}

inline CSp sp_basis_mat(int n, int idx) {
  CSp m(2 * n);
  const int np = sp_npairs(n), ns = n * (n + 1) / 2;
  auto add_diag_block = [&](int j, int k, const CRat& v) {
    m.add(j, k, v);
    m.add(j + n, k + n, v.conj());
  };
  if (idx < np) {  // diag block E_jk - E_kj
    int base = 0, j = 0;
    while (base + (n - 1 - j) <= idx) {
      base += n - 1 - j;
      ++j;
    }
    const int k = j + 1 + (idx - base);
    add_diag_block(j, k, CRat::real(Rat(1)));
    add_diag_block(k, j, CRat::real(Rat(-1)));
  } else if (idx < 2 * np) {  // diag block i(E_jk + E_kj)
    int t = idx - np, base = 0, j = 0;
    while (base + (n - 1 - j) <= t) {
      base += n - 1 - j;
      ++j;
    }
    const int k = j + 1 + (t - base);
    add_diag_block(j, k, CRat::imag(Rat(1)));
    add_diag_block(k, j, CRat::imag(Rat(1)));
  } else if (idx < 2 * np + n) {  // diag block i E_jj
    const int j = idx - 2 * np;
    add_diag_block(j, j, CRat::imag(Rat(1)));
  } else if (idx < 2 * np + n + ns) {  // off block real symmetric
    int t = idx - (2 * np + n), base = 0, j = 0;
    while (base + (n - j) <= t) {
      base += n - j;
      ++j;
    }
    const int k = j + (t - base);
    // B = E_jk + E_kj (or E_jj); place [[0, B], [-conj(B), 0]]
    m.add(j, k + n, CRat::real(Rat(1)));
    m.add(k + n, j, CRat::real(Rat(-1)));
    if (j != k) {
      m.add(k, j + n, CRat::real(Rat(1)));
      m.add(j + n, k, CRat::real(Rat(-1)));
    }
  } else {  // off block imaginary symmetric
    int t = idx - (2 * np + n + ns), base = 0, j = 0;
    while (base + (n - j) <= t) {
      base += n - j;
      ++j;
    }
    const int k = j + (t - base);
    m.add(j, k + n, CRat::imag(Rat(1)));
    m.add(k + n, j, CRat::imag(Rat(1)));
    if (j != k) {
      m.add(k, j + n, CRat::imag(Rat(1)));
      m.add(j + n, k, CRat::imag(Rat(1)));
    }
  }
  return m;
}

inline std::vector<Rat> sp_coords(int n, const CSp& m) {
  const int np = sp_npairs(n), ns = n * (n + 1) / 2;
  std::vector<Rat> c(sp_dim(n), Rat(0));
  for (int j = 0; j < n; ++j) {
    const CRat d = m.at(j, j);
    if (d.re != 0) throw std::invalid_argument("sp_coords: A block not anti-Hermitian");
    c[2 * np + j] = d.im;
    for (int k = j + 1; k < n; ++k) {
      const CRat v = m.at(j, k);
      c[pair_index(n, j, k)] = v.re;
      c[np + pair_index(n, j, k)] = v.im;
    }
  }
  for (int j = 0; j < n; ++j)
    for (int k = j; k < n; ++k) {
      const CRat v = m.at(j, k + n);
      c[2 * np + n + sym_pair_index(n, j, k)] = v.re;
      c[2 * np + n + ns + sym_pair_index(n, j, k)] = v.im;
    }
  return c;
}

}  // namespace layout

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

namespace detail {

/// Builds structure constants and the trace form from a matrix realization
/// plus a coordinate-extraction function.
template <typename CoordsFn>
inline AlgebraPtr algebra_from_realization(std::vector<CSp> mats, Realization::Kind kind, int size,
                                           CoordsFn&& coords_of, std::string name, Family fam,
                                           std::vector<int> params) {
  const int dim = static_cast<int>(mats.size());
  Mat b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const Rat v = mats[i].trace_product_real(mats[j]);
      b(i, j) = v;
      b(j, i) = v;
    }
  std::vector<SparseVec> table(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const CSp comm = mats[i].commutator(mats[j]);
      const std::vector<Rat> c = coords_of(comm);
      SparseVec sv, svneg;
      for (int k = 0; k < dim; ++k)
        if (c[k] != 0) {
          sv.push_back({k, c[k]});
          svneg.push_back({k, -c[k]});
        }
      table[static_cast<size_t>(i) * dim + j] = std::move(sv);
      table[static_cast<size_t>(j) * dim + i] = std::move(svneg);
    }
  auto alg = std::make_shared<LieAlgebra>(dim, std::move(b), std::move(table), std::move(name));
  alg->family = fam;
  alg->params = std::move(params);
  alg->realization.kind = kind;
  alg->realization.size = size;
  alg->realization.mats = std::move(mats);
  return alg;
}

}  // namespace detail

/// Abelian torus t(k), B = -I.
inline AlgebraPtr make_t(int k) {
  if (k < 0) throw std::invalid_argument("make_t: negative rank");
  Mat b(k, k);
  for (int i = 0; i < k; ++i) b(i, i) = -1;
  auto alg = std::make_shared<LieAlgebra>(k, std::move(b), std::vector<SparseVec>(static_cast<size_t>(k) * k),
                                          "t(" + std::to_string(k) + ")");
  alg->family = Family::T;
  alg->params = {k};
  return alg;
}

inline AlgebraPtr make_su(int n) {
  if (n < 2) throw std::invalid_argument("make_su: requires n >= 2");
  std::vector<CSp> mats;
  for (int i = 0; i < layout::su_dim(n); ++i) mats.push_back(layout::su_basis_mat(n, i));
  return detail::algebra_from_realization(
      std::move(mats), Realization::Kind::Complex, n, [n](const CSp& m) { return layout::su_coords(n, m); },
      "su(" + std::to_string(n) + ")", Family::SU, {n});
}

inline AlgebraPtr make_so(int n) {
  if (n < 2) throw std::invalid_argument("make_so: requires n >= 2");
  std::vector<CSp> mats;
  for (int i = 0; i < layout::so_dim(n); ++i) mats.push_back(layout::so_basis_mat(n, i));
  return detail::algebra_from_realization(
      std::move(mats), Realization::Kind::Real, n, [n](const CSp& m) { return layout::so_coords(n, m); },
      "so(" + std::to_string(n) + ")", Family::SO, {n});
}

inline AlgebraPtr make_sp(int n) {
  if (n < 1) throw std::invalid_argument("make_sp: requires n >= 1");
  std::vector<CSp> mats;
  for (int i = 0; i < layout::sp_dim(n); ++i) mats.push_back(layout::sp_basis_mat(n, i));
  return detail::algebra_from_realization(
      std::move(mats), Realization::Kind::Complex, 2 * n, [n](const CSp& m) { return layout::sp_coords(n, m); },
      "sp(" + std::to_string(n) + ")", Family::SP, {n});
}

inline AlgebraPtr make_u(int n) {
  if (n < 1) throw std::invalid_argument("make_u: requires n >= 1");
  std::vector<CSp> mats;
  if (n >= 2)
    for (int i = 0; i < layout::su_dim(n); ++i) mats.push_back(layout::su_basis_mat(n, i));
  CSp z(n);
  for (int j = 0; j < n; ++j) z.add(j, j, CRat::imag(Rat(1)));
  mats.push_back(z);
  auto coords = [n](const CSp& m) {
    const CRat tr = m.trace();
    if (tr.re != 0) throw std::invalid_argument("u coords: matrix not anti-Hermitian");
    const Rat c = tr.im / n;
    CSp rest = m;
    for (int j = 0; j < n; ++j) rest.add(j, j, CRat::imag(-c));
    std::vector<Rat> out;
    if (n >= 2) out = layout::su_coords(n, rest);
    out.push_back(c);
    return out;
  };
  return detail::algebra_from_realization(std::move(mats), Realization::Kind::Complex, n, coords,
                                          "u(" + std::to_string(n) + ")", Family::U, {n});
}

/// Derivations of the 7-dimensional cross product inside so(7): the linear
/// conditions D(e_a x e_b) = D e_a x e_b + e_a x D e_b over the so(7) basis.
/// Returns the kernel as columns in so(7) coordinates (expected dim 14).
Mat g2_derivation_kernel();

AlgebraPtr make_g2();

inline AlgebraPtr make_direct_sum(const std::vector<AlgebraPtr>& parts) {
  int dim = 0;
  std::vector<int> offsets;
  for (const AlgebraPtr& p : parts) {
    offsets.push_back(dim);
    dim += p->dim();
  }
  Mat b(dim, dim);
  std::vector<SparseVec> table(static_cast<size_t>(dim) * dim);
  std::string name;
  for (size_t t = 0; t < parts.size(); ++t) {
    const LieAlgebra& p = *parts[t];
    const int off = offsets[t];
    for (int i = 0; i < p.dim(); ++i)
      for (int j = 0; j < p.dim(); ++j) {
        b(off + i, off + j) = p.form()(i, j);
        SparseVec sv;
        for (const SparseTerm& term : p.bracket_basis(i, j)) sv.push_back({term.index + off, term.coeff});
        table[static_cast<size_t>(off + i) * dim + (off + j)] = std::move(sv);
      }
    if (t) name += "+";
    name += p.name();
  }
  if (parts.empty()) name = "0";
  auto alg = std::make_shared<LieAlgebra>(dim, std::move(b), std::move(table), std::move(name));
  alg->family = Family::Sum;
  alg->parts = parts;
  alg->part_offsets = offsets;
  // Block-diagonal realization when all parts share a realization kind.
  bool all_real = !parts.empty(), all_complex = !parts.empty();
  int size = 0;
  for (const AlgebraPtr& p : parts) {
    all_real = all_real && p->realization.kind == Realization::Kind::Real;
    all_complex = all_complex && p->realization.kind == Realization::Kind::Complex;
    size += p->realization.size;
  }
  if (all_real || all_complex) {
    alg->realization.kind = all_real ? Realization::Kind::Real : Realization::Kind::Complex;
    alg->realization.size = size;
    int moff = 0;
    for (const AlgebraPtr& p : parts) {
      for (const CSp& m : p->realization.mats) alg->realization.mats.push_back(m.embedded(size, moff));
      moff += p->realization.size;
    }
  }
  return alg;
}

/// Dispatcher mirroring the constructor grammar: "su", "so", "sp", "u", "t",
/// "g2". Direct sums go through make_direct_sum.
inline AlgebraPtr make_algebra(const std::string& type, const std::vector<int>& params) {
  auto need1 = [&]() {
    if (params.size() != 1) throw std::invalid_argument("make_algebra: '" + type + "' takes one parameter");
    return params[0];
  };
  if (type == "su") return make_su(need1());
  if (type == "so") return make_so(need1());
  if (type == "sp") return make_sp(need1());
  if (type == "u") return make_u(need1());
  if (type == "t") return make_t(need1());
  if (type == "g2") {
    if (!params.empty()) throw std::invalid_argument("make_algebra: g2 takes no parameters");
    return make_g2();
  }
  throw std::invalid_argument("make_algebra: unknown type '" + type + "'");
}

// ---------------------------------------------------------------------------
// Structure audit
// ---------------------------------------------------------------------------

struct AlgebraViolation {
  std::string identity;  // antisymmetry | jacobi | form-symmetry | form-definiteness | form-invariance
  std::vector<int> indices;
  std::string detail;
};

struct AlgebraReport {
  bool ok = true;
  std::vector<AlgebraViolation> violations;
  void fail(std::string identity, std::vector<int> indices, std::string detail) {
    ok = false;
    if (violations.size() < 16) violations.push_back({std::move(identity), std::move(indices), std::move(detail)});
  }
};

/// Exact audit: bracket antisymmetry, the Jacobi identity, symmetry,
/// negative-definiteness and ad-invariance of the form.
inline AlgebraReport check_algebra(const LieAlgebra& g) {
  AlgebraReport report;
  const int n = g.dim();

  auto sparse_equal_neg = [](const SparseVec& a, const SparseVec& b) {
    if (a.size() != b.size()) return false;
    // both are built index-sorted by construction; tolerate arbitrary order
    std::map<int, Rat> m;
    for (const SparseTerm& t : a) m[t.index] = t.coeff;
    for (const SparseTerm& t : b) {
      auto it = m.find(t.index);
      if (it == m.end() || it->second != -t.coeff) return false;
    }
    return true;
  };

  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      if (!sparse_equal_neg(g.bracket_basis(i, j), g.bracket_basis(j, i)))
        report.fail("antisymmetry", {i, j}, "c[i][j] != -c[j][i]");
    }

  // Jacobi via sparse accumulation over basis triples.
  std::vector<Rat> acc(n, Rat(0));
  for (int i = 0; i < n && report.violations.size() < 16; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        for (Rat& v : acc) v = 0;
        bool touched = false;
        auto add_nested = [&](int a, int b, int c) {
          // [e_a, [e_b, e_c]]
          for (const SparseTerm& inner : g.bracket_basis(b, c))
            for (const SparseTerm& outer : g.bracket_basis(a, inner.index)) {
              acc[outer.index] += inner.coeff * outer.coeff;
              touched = true;
            }
        };
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        if (!touched) continue;
        for (int t = 0; t < n; ++t)
          if (acc[t] != 0) {
            report.fail("jacobi", {i, j, k}, "cyclic sum has nonzero component " + std::to_string(t));
            break;
          }
      }

  bool symmetric = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.form()(i, j) != g.form()(j, i)) {
        report.fail("form-symmetry", {i, j}, "B not symmetric");
        symmetric = false;
      }

  // The definiteness classifier requires a symmetric input.
  if (n > 0 && symmetric && classify_symmetric_form(g.form()).kind != FormClass::NegDef)
    report.fail("form-definiteness", {}, "B is not negative definite");

  // Invariance B([x,y],z) + B(y,[x,z]) = 0 on basis triples.
  for (int i = 0; i < n && report.violations.size() < 16; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        Rat v(0);
        for (const SparseTerm& t : g.bracket_basis(i, j)) v += t.coeff * g.form()(t.index, k);
        for (const SparseTerm& t : g.bracket_basis(i, k)) v += t.coeff * g.form()(j, t.index);
        if (v != 0) {
          report.fail("form-invariance", {i, j, k}, "B([e_i,e_j],e_k) + B(e_j,[e_i,e_k]) != 0");
          break;
        }
      }

  return report;
}

}  // namespace fatlab

#include "fatlab/g2_basis.hpp"

namespace fatlab {

inline Mat g2_derivation_kernel() {
  // Octonion cross product via the calibration triples; f is totally
  // antisymmetric with f_abc = +1 on each listed (a,b,c).
  static const int triples[7][3] = {{0, 1, 2}, {0, 3, 4}, {0, 6, 5}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 5, 4}};
  Rat f[7][7][7] = {};
  for (const auto& t : triples) {
    const int a = t[0], b = t[1], c = t[2];
    f[a][b][c] = f[b][c][a] = f[c][a][b] = 1;
    f[b][a][c] = f[a][c][b] = f[c][b][a] = -1;
  }
  const int so7 = layout::so_dim(7);
  // D in so(7) by coordinates d_t on L_{jk}; D e_a = sum over basis action.
  auto d_entry = [&](int t, int row, int col) {
    // (L_{jk})_{row,col}
    int base = 0, j = 0, idx = t;
    while (base + (7 - 1 - j) <= idx) {
      base += 7 - 1 - j;
      ++j;
    }
    const int k = j + 1 + (idx - base);
    if (row == j && col == k) return Rat(1);
    if (row == k && col == j) return Rat(-1);
    return Rat(0);
  };
  // Equations: for a<b, component c: sum_t d_t * coeff = 0, where
  // coeff = sum_e [ f_abe (L_t)_{c e} - f_{e b c} (L_t)_{e a} - f_{a e c} (L_t)_{e b} ]
  // from D(e_a x e_b) - (D e_a) x e_b - e_a x (D e_b) = 0.
  Mat eqs(21 * 7, so7);
  int eq = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b)
      for (int c = 0; c < 7; ++c, ++eq)
        for (int t = 0; t < so7; ++t) {
          Rat coeff(0);
          for (int e = 0; e < 7; ++e) {
            if (f[a][b][e] != 0) coeff += f[a][b][e] * d_entry(t, c, e);
            if (f[e][b][c] != 0) coeff -= f[e][b][c] * d_entry(t, e, a);
            if (f[a][e][c] != 0) coeff -= f[a][e][c] * d_entry(t, e, b);
          }
          eqs(eq, t) = coeff;
        }
  return span_canonical(kernel(eqs));
}

inline AlgebraPtr make_g2() {
  const Mat basis = g2_committed_basis();
  const AlgebraPtr so7 = make_so(7);
  const int dim = basis.cols();
  const SpanSolver solver(basis);
  Mat b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const Rat v = so7->form_value(basis.column(i), basis.column(j));
      b(i, j) = v;
      b(j, i) = v;
    }
  std::vector<SparseVec> table(static_cast<size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const std::vector<Rat> br = so7->bracket(basis.column(i), basis.column(j));
      const auto coords = solver.coords(br);
      if (!coords) throw std::logic_error("make_g2: committed basis is not bracket-closed");
      SparseVec sv, svneg;
      for (int k = 0; k < dim; ++k)
        if ((*coords)[k] != 0) {
          sv.push_back({k, (*coords)[k]});
          svneg.push_back({k, -(*coords)[k]});
        }
      table[static_cast<size_t>(i) * dim + j] = std::move(sv);
      table[static_cast<size_t>(j) * dim + i] = std::move(svneg);
    }
  auto alg = std::make_shared<LieAlgebra>(dim, std::move(b), std::move(table), "g2");
  alg->family = Family::G2;
  alg->params = {};
  alg->realization.kind = Realization::Kind::Real;
  alg->realization.size = 7;
  for (int i = 0; i < dim; ++i) {
    CSp m(7);
    const std::vector<Rat> col = basis.column(i);
    for (int t = 0; t < so7->dim(); ++t) {
      if (col[t] == 0) continue;
      int base = 0, j = 0;
      while (base + (6 - j) <= t) {
        base += 6 - j;
        ++j;
      }
      const int k = j + 1 + (t - base);
      m.add(j, k, CRat::real(col[t]));
      m.add(k, j, CRat::real(-col[t]));
    }
    alg->realization.mats.push_back(m);
  }
  return alg;
}

}  // namespace fatlab
