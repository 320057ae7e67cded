#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatlab/liealg.hpp"
#include "fatlab/matrix.hpp"
#include "fatlab/rational.hpp"

namespace fatlab {

/// Linear subspace of a fixed algebra; basis columns kept in canonical
/// reduced echelon form so equal subspaces compare equal.
struct Subspace {
  AlgebraPtr owner;
  Mat basis;  // owner->dim() rows

  int dim() const { return basis.cols(); }
};

inline Subspace make_subspace(AlgebraPtr owner, const Mat& spanning) {
  if (spanning.rows() != owner->dim()) throw std::invalid_argument("make_subspace: ambient dimension mismatch");
  return Subspace{std::move(owner), span_canonical(spanning)};
}

inline Subspace full_subspace(const AlgebraPtr& g) { return make_subspace(g, Mat::identity(g->dim())); }
inline Subspace zero_subspace(const AlgebraPtr& g) { return Subspace{g, Mat(g->dim(), 0)}; }

inline void require_same_owner(const Subspace& a, const Subspace& b) {
  if (a.owner != b.owner) throw std::invalid_argument("subspace owners differ");
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
  require_same_owner(a, b);
  return Subspace{a.owner, span_intersect(a.basis, b.basis)};
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_owner(a, b);
  return Subspace{a.owner, span_sum(a.basis, b.basis)};
}

inline bool subspace_contains(const Subspace& outer, const Subspace& inner) {
  require_same_owner(outer, inner);
  if (inner.dim() == 0) return true;
  if (outer.dim() == 0) return false;
  const SpanSolver solver(outer.basis);
  for (int c = 0; c < inner.basis.cols(); ++c)
    if (!solver.contains(inner.basis.column(c))) return false;
  return true;
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) {
  require_same_owner(a, b);
  return a.basis == b.basis;  // both canonical
}

/// Proper factorization test: h and l are proper subspaces of g whose span
/// fills g.
inline bool is_factorization(const AlgebraPtr& g, const Subspace& h, const Subspace& l) {
  if (h.owner != g || l.owner != g) throw std::invalid_argument("is_factorization: mismatched ambient");
  const int d = g->dim();
  return h.dim() < d && l.dim() < d && subspace_sum(h, l).dim() == d;
}

/// {x in owner : B(x, y) = 0 for all y in s}.
inline Subspace orthogonal_complement(const Subspace& s) {
  const int d = s.owner->dim();
  if (s.dim() == 0) return full_subspace(s.owner);
  Mat conditions(s.dim(), d);
  for (int c = 0; c < s.dim(); ++c) {
    const std::vector<Rat> by = s.owner->form().apply(s.basis.column(c));
    for (int j = 0; j < d; ++j) conditions(c, j) = by[j];
  }
  return make_subspace(s.owner, kernel(conditions));
}

/// {x in a : B(x, y) = 0 for all y in b}; b need not lie inside a.
inline Subspace orthogonal_complement_in(const Subspace& a, const Subspace& b) {
  require_same_owner(a, b);
  if (b.dim() == 0 || a.dim() == 0) return a;
  // x = A c; conditions (basis_b^T B A) c = 0
  Mat cond(b.dim(), a.dim());
  for (int r = 0; r < b.dim(); ++r) {
    const std::vector<Rat> by = a.owner->form().apply(b.basis.column(r));
    for (int c = 0; c < a.dim(); ++c) {
      Rat acc(0);
      for (int i = 0; i < a.owner->dim(); ++i)
        if (by[i] != 0 && a.basis(i, c) != 0) acc += by[i] * a.basis(i, c);
      cond(r, c) = acc;
    }
  }
  const Mat coeffs = kernel(cond);
  return make_subspace(a.owner, a.basis * coeffs);
}

/// Span of all brackets [x, y], x in a, y in b.
inline Subspace bracket_span(const Subspace& a, const Subspace& b) {
  require_same_owner(a, b);
  std::vector<std::vector<Rat>> vals;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) vals.push_back(a.owner->bracket(a.basis.column(i), b.basis.column(j)));
  return make_subspace(a.owner, Mat::from_columns(a.owner->dim(), vals));
}

inline bool is_bracket_closed(const Subspace& s) {
  if (s.dim() == 0) return true;
  const SpanSolver solver(s.basis);
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      if (!solver.contains(s.owner->bracket(s.basis.column(i), s.basis.column(j)))) return false;
  return true;
}

inline bool is_ideal(const Subspace& s) {
  if (s.dim() == 0) return true;
  const SpanSolver solver(s.basis);
  const int d = s.owner->dim();
  for (int i = 0; i < d; ++i) {
    std::vector<Rat> ei(d, Rat(0));
    ei[i] = 1;
    for (int j = 0; j < s.dim(); ++j)
      if (!solver.contains(s.owner->bracket(ei, s.basis.column(j)))) return false;
  }
  return true;
}

/// {x in owner : [x, y] = 0 for all y in s}.
inline Subspace centralizer(const Subspace& s) {
  const int d = s.owner->dim();
  if (s.dim() == 0) return full_subspace(s.owner);
  Mat stacked(d * s.dim(), d);
  for (int c = 0; c < s.dim(); ++c) {
    const Mat ad_y = s.owner->ad(s.basis.column(c));
    // [x, y] = -ad_y x
    for (int r = 0; r < d; ++r)
      for (int j = 0; j < d; ++j) stacked(c * d + r, j) = ad_y(r, j);
  }
  return make_subspace(s.owner, kernel(stacked));
}

inline Subspace center(const AlgebraPtr& g) { return centralizer(full_subspace(g)); }

inline Subspace derived_subspace(const AlgebraPtr& g) {
  const Subspace full = full_subspace(g);
  return bracket_span(full, full);
}

/// Largest ideal of the owner contained in s: the fixpoint of
/// n_{k+1} = {x in n_k : [g, x] subset of n_k}.
inline Subspace maximal_common_ideal(const Subspace& s) {
  Subspace n = s;
  const int d = s.owner->dim();
  while (n.dim() > 0) {
    const SpanSolver solver(n.basis);
    const Mat t = solver.annihilator();  // (d - s) x d
    if (t.rows() == 0) return n;         // n is everything
    // conditions: t * ad(e_i) * N * c = 0 for all i
    Mat cond(t.rows() * d, n.dim());
    for (int i = 0; i < d; ++i) {
      std::vector<Rat> ei(d, Rat(0));
      ei[i] = 1;
      for (int c = 0; c < n.dim(); ++c) {
        const std::vector<Rat> br = s.owner->bracket(ei, n.basis.column(c));
        const std::vector<Rat> res = t.apply(br);
        for (int r = 0; r < t.rows(); ++r) cond(i * t.rows() + r, c) = res[r];
      }
    }
    const Mat coeffs = kernel(cond);
    if (coeffs.cols() == n.dim()) return n;  // stable
    n = make_subspace(s.owner, n.basis * coeffs);
  }
  return n;
}

/// B-orthogonal complement of an ideal, which is again an ideal when the
/// form is invariant and definite; both properties are verified.
inline Subspace complement_ideal(const Subspace& n) {
  if (!is_ideal(n)) throw std::invalid_argument("complement_ideal: input is not an ideal");
  const Subspace c = orthogonal_complement(n);
  if (!is_ideal(c) || intersect(c, n).dim() != 0 || c.dim() + n.dim() != n.owner->dim())
    throw std::invalid_argument("complement_ideal: complement is not a complementary ideal");
  return c;
}

/// Abstract copy of a bracket-closed subspace: structure constants in the
/// subspace basis, form pulled back from the owner.
inline AlgebraPtr subspace_algebra(const Subspace& s, const std::string& name = "") {
  if (!is_bracket_closed(s)) throw std::invalid_argument("subspace_algebra: subspace is not bracket-closed");
  const int dim = s.dim();
  Mat b(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const Rat v = s.owner->form_value(s.basis.column(i), s.basis.column(j));
      b(i, j) = v;
      b(j, i) = v;
    }
  std::vector<SparseVec> table(static_cast<size_t>(dim) * dim);
  if (dim > 0) {
    const SpanSolver solver(s.basis);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        const auto coords = solver.coords(s.owner->bracket(s.basis.column(i), s.basis.column(j)));
        SparseVec sv, svneg;
        for (int k = 0; k < dim; ++k)
          if ((*coords)[k] != 0) {
            sv.push_back({k, (*coords)[k]});
            svneg.push_back({k, -(*coords)[k]});
          }
        table[static_cast<size_t>(i) * dim + j] = std::move(sv);
        table[static_cast<size_t>(j) * dim + i] = std::move(svneg);
      }
  }
  auto alg = std::make_shared<LieAlgebra>(dim, std::move(b), std::move(table),
                                          name.empty() ? s.owner->name() + "-sub" : name);
  alg->family = Family::Sum;
  return alg;
}

/// Rank of a compact algebra: dim ker(ad_x) at a generic element, taken as
/// the minimum over deterministic random samples.
inline int generic_rank(const LieAlgebra& g, uint64_t seed = 11, int samples = 6) {
  const int d = g.dim();
  if (d == 0) return 0;
  DetRng rng(seed);
  int best = d;
  for (int s = 0; s < samples; ++s) {
    std::vector<Rat> x(d);
    for (int i = 0; i < d; ++i) x[i] = rng.next_rat();
    best = std::min(best, d - rank(g.ad(x)));
    if (best == 0) break;  // cannot happen for compact g, but stay defensive
  }
  return best;
}

// ---------------------------------------------------------------------------
// Embeddings: injective homomorphisms of an abstract algebra into an ambient
// one, always verified exactly against the source structure constants.
// ---------------------------------------------------------------------------

struct Embedding {
  AlgebraPtr sub;
  AlgebraPtr ambient;
  Mat matrix;  // ambient->dim() x sub->dim()

  Subspace image() const { return make_subspace(ambient, matrix); }

  std::vector<Rat> apply(const std::vector<Rat>& x) const { return matrix.apply(x); }
};

/// Wraps a candidate matrix after checking injectivity and exact bracket
/// preservation on basis pairs.
inline Embedding embed_verified(AlgebraPtr sub, AlgebraPtr ambient, Mat m) {
  if (m.rows() != ambient->dim() || m.cols() != sub->dim())
    throw std::invalid_argument("embedding: matrix shape mismatch");
  if (rank(m) != sub->dim()) throw std::invalid_argument("embedding: not injective");
  for (int i = 0; i < sub->dim(); ++i)
    for (int j = i + 1; j < sub->dim(); ++j) {
      std::vector<Rat> br(sub->dim(), Rat(0));
      for (const SparseTerm& t : sub->bracket_basis(i, j)) br[t.index] = t.coeff;
      const std::vector<Rat> lhs = m.apply(br);
      const std::vector<Rat> rhs = ambient->bracket(m.column(i), m.column(j));
      if (lhs != rhs) throw std::invalid_argument("embedding: does not preserve brackets");
    }
  return Embedding{std::move(sub), std::move(ambient), std::move(m)};
}

namespace detail {

/// Ambient coordinates of a realization matrix, dispatched on family.
inline std::vector<Rat> ambient_coords(const LieAlgebra& ambient, const CSp& m) {
  switch (ambient.family) {
    case Family::SU: return layout::su_coords(ambient.params[0], m);
    case Family::SO: return layout::so_coords(ambient.params[0], m);
    case Family::SP: return layout::sp_coords(ambient.params[0], m);
    case Family::U: {
      const int n = ambient.params[0];
      const CRat tr = m.trace();
      if (tr.re != 0) throw std::invalid_argument("ambient_coords: not anti-Hermitian");
      const Rat c = tr.im / n;
      CSp rest = m;
      for (int j = 0; j < n; ++j) rest.add(j, j, CRat::imag(-c));
      std::vector<Rat> out;
      if (n >= 2) out = layout::su_coords(n, rest);
      out.push_back(c);
      return out;
    }
    default:
      throw std::invalid_argument("ambient_coords: ambient family has no direct coordinate extraction");
  }
}

inline Mat embedding_from_mats(const LieAlgebra& sub, const LieAlgebra& ambient, const std::vector<CSp>& mats) {
  Mat m(ambient.dim(), sub.dim());
  for (int i = 0; i < sub.dim(); ++i) m.set_column(i, ambient_coords(ambient, mats[i]));
  return m;
}

}  // namespace detail

/// Upper-left block placement for a sub of the same matrix family, e.g.
/// so(k) in so(n) acting on the first k coordinates, or su(k) in su(n).
/// A torus summand t(1) after a block sum maps to a completion element:
/// for su ambients i*diag((n-k) on the block, -k off it), for so ambients a
/// rotation of the first two leftover coordinates.
inline Embedding embed_block_upper_left(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  const Realization& amb_real = ambient->realization;
  if (amb_real.kind == Realization::Kind::None)
    throw std::invalid_argument("embed_block_upper_left: ambient has no matrix realization");
  const int n = amb_real.size;

  std::vector<std::pair<AlgebraPtr, bool>> parts;  // (part, is_torus_completion)
  if (sub->family == Family::Sum) {
    for (const AlgebraPtr& p : sub->parts) parts.push_back({p, p->family == Family::T});
  } else {
    parts.push_back({sub, false});
  }

  std::vector<CSp> mats;
  int offset = 0;
  for (const auto& [part, is_torus] : parts) {
    if (is_torus) {
      if (part->dim() != 1)
        throw std::invalid_argument("embed_block_upper_left: only t(1) torus completions are supported");
      CSp c(n);
      if (ambient->family == Family::SU || ambient->family == Family::U) {
        // traceless completion around the occupied block
        const int k = offset;
        if (k == 0 || k >= n) throw std::invalid_argument("embed_block_upper_left: no room for torus completion");
        for (int j = 0; j < k; ++j) c.add(j, j, CRat::imag(Rat(n - k)));
        for (int j = k; j < n; ++j) c.add(j, j, CRat::imag(Rat(-k)));
      } else if (ambient->family == Family::SO) {
        if (offset + 2 > n) throw std::invalid_argument("embed_block_upper_left: no room for so torus completion");
        c.add(offset, offset + 1, CRat::real(Rat(1)));
        c.add(offset + 1, offset, CRat::real(Rat(-1)));
        offset += 2;
      } else {
        throw std::invalid_argument("embed_block_upper_left: torus completion unsupported for this ambient");
      }
      mats.push_back(c);
      continue;
    }
    const Realization& r = part->realization;
    if (r.kind == Realization::Kind::None)
      throw std::invalid_argument("embed_block_upper_left: part '" + part->name() + "' has no matrix realization");
    if (r.kind == Realization::Kind::Complex &&
        !(ambient->family == Family::SU || ambient->family == Family::U || ambient->family == Family::SP))
      throw std::invalid_argument("embed_block_upper_left: complex part in real ambient");
    if (offset + r.size > n) throw std::invalid_argument("embed_block_upper_left: blocks exceed ambient size");
    if (ambient->family == Family::SP) {
      if (part->family != Family::SP)
        throw std::invalid_argument("embed_block_upper_left: sp ambient takes sp parts only");
      // sp(k) in sp(n): the 2k x 2k blocks split across the n|n block corners
      const int k = part->params[0], nn = ambient->params[0];
      for (const CSp& pm : r.mats) {
        CSp big(2 * nn);
        for (const auto& [row, rowmap] : pm.rows())
          for (const auto& [col, v] : rowmap) {
            const int rr = (row < k) ? row + offset : row - k + nn + offset;
            const int cc = (col < k) ? col + offset : col - k + nn + offset;
            big.add(rr, cc, v);
          }
        mats.push_back(big);
      }
      offset += k;
      continue;
    }
    for (const CSp& pm : r.mats) mats.push_back(pm.embedded(n, offset));
    offset += r.size;
  }
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, mats));
}

/// sp(n) inside su(2n): the quaternionic matrices reread as complex ones.
inline Embedding embed_defining_sp_in_su(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  if (sub->family != Family::SP || ambient->family != Family::SU || ambient->params[0] != 2 * sub->params[0])
    throw std::invalid_argument("embed_defining_sp_in_su: expects sp(n) into su(2n)");
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, sub->realization.mats));
}

/// Embeds an algebra through its stored matrix realization, e.g. the g2
/// derivation algebra, realized by real 7x7 matrices, into so(7). The
/// realization size must match the ambient's defining size.
inline Embedding embed_realization(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  if (sub->realization.kind == Realization::Kind::None)
    throw std::invalid_argument("embed_realization: source has no matrix realization");
  if (sub->realization.size != ambient->realization.size)
    throw std::invalid_argument("embed_realization: realization sizes differ");
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, sub->realization.mats));
}

/// t(1) as a diagonal torus of su(n) or u(n): z maps to -(i/2) diag(weights).
inline Embedding embed_diagonal_torus(const AlgebraPtr& sub, const AlgebraPtr& ambient,
                                      const std::vector<Rat>& weights) {
  if (sub->family != Family::T || sub->dim() != 1)
    throw std::invalid_argument("embed_diagonal_torus: source must be t(1)");
  const int n = ambient->realization.size;
  if (static_cast<int>(weights.size()) != n) throw std::invalid_argument("embed_diagonal_torus: weight count");
  CSp m(n);
  for (int j = 0; j < n; ++j) m.add(j, j, CRat::imag(-weights[j] / 2));
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, {m}));
}

/// su(2) on the extreme coordinate pair (first, last) of su(n).
inline Embedding embed_highest_root_su2(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  if (sub->family != Family::SU || sub->params[0] != 2 || ambient->family != Family::SU)
    throw std::invalid_argument("embed_highest_root_su2: expects su(2) into su(n)");
  const int n = ambient->params[0];
  CSp p(n), q(n), h(n);
  p.add(0, n - 1, CRat::imag(rat(-1, 2)));
  p.add(n - 1, 0, CRat::imag(rat(-1, 2)));
  q.add(0, n - 1, CRat::real(rat(-1, 2)));
  q.add(n - 1, 0, CRat::real(rat(1, 2)));
  h.add(0, 0, CRat::imag(rat(-1, 2)));
  h.add(n - 1, n - 1, CRat::imag(rat(1, 2)));
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, {p, q, h}));
}

/// Realification: a complex-realized algebra acting on R^{2m}, placed in
/// so(2m) when the realization is anti-Hermitian (X + iY -> [[X,-Y],[Y,X]]).
inline Embedding embed_realify(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  const Realization& r = sub->realization;
  if (r.kind != Realization::Kind::Complex)
    throw std::invalid_argument("embed_realify: source needs a complex realization");
  if (ambient->family != Family::SO || ambient->params[0] != 2 * r.size)
    throw std::invalid_argument("embed_realify: ambient must be so(2m)");
  std::vector<CSp> mats;
  for (const CSp& m : r.mats) mats.push_back(m.realified());
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, mats));
}

/// t(1) generated by the complex structure J = realify(i I_m) inside so(2m).
inline Embedding embed_complex_structure_torus(const AlgebraPtr& sub, const AlgebraPtr& ambient) {
  if (sub->family != Family::T || sub->dim() != 1)
    throw std::invalid_argument("embed_complex_structure_torus: source must be t(1)");
  if (ambient->family != Family::SO || ambient->params[0] % 2 != 0)
    throw std::invalid_argument("embed_complex_structure_torus: ambient must be so(2m)");
  const int m = ambient->params[0] / 2;
  CSp j(m);
  for (int t = 0; t < m; ++t) j.add(t, t, CRat::imag(Rat(1)));
  return embed_verified(sub, ambient, detail::embedding_from_mats(*sub, *ambient, {j.realified()}));
}

/// Composition: inner maps a into b, outer maps b into c.
inline Embedding embed_compose(const Embedding& outer, const Embedding& inner) {
  if (inner.ambient != outer.sub) throw std::invalid_argument("embed_compose: middle algebra mismatch");
  return Embedding{inner.sub, outer.ambient, outer.matrix * inner.matrix};
}

/// Direct sum of embeddings with a common ambient; the combined map is
/// re-verified, which catches non-commuting images.
inline Embedding embed_direct_sum(const std::vector<Embedding>& parts) {
  if (parts.empty()) throw std::invalid_argument("embed_direct_sum: no parts");
  std::vector<AlgebraPtr> subs;
  Mat m = parts[0].matrix;
  subs.push_back(parts[0].sub);
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i].ambient != parts[0].ambient) throw std::invalid_argument("embed_direct_sum: ambient mismatch");
    m = m.hcat(parts[i].matrix);
    subs.push_back(parts[i].sub);
  }
  return embed_verified(make_direct_sum(subs), parts[0].ambient, std::move(m));
}

}  // namespace fatlab
