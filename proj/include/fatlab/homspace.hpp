#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fatlab/identify.hpp"
#include "fatlab/liealg.hpp"
#include "fatlab/matrix.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab {

/// Reductive decomposition k = h + m with m the B-orthogonal complement;
/// invariance of B makes m an h-module, which is verified on construction.
struct ReductivePair {
  AlgebraPtr k;
  Subspace h;
  Subspace m;
  AlgebraPtr h_algebra;  // abstract copy with structure in the h basis

  /// Coordinates of v split as (h part, m part), in the h resp. m bases.
  std::pair<std::vector<Rat>, std::vector<Rat>> split(const std::vector<Rat>& v) const {
    const SpanSolver solver(h.basis.hcat(m.basis));
    const auto coords = solver.coords(v);
    if (!coords) throw std::logic_error("ReductivePair::split: vector outside k");
    std::vector<Rat> hc(coords->begin(), coords->begin() + h.dim());
    std::vector<Rat> mc(coords->begin() + h.dim(), coords->end());
    return {std::move(hc), std::move(mc)};
  }

  /// h-coordinates of the h-component of v.
  std::vector<Rat> project_to_h(const std::vector<Rat>& v) const { return split(v).first; }
};

inline ReductivePair make_reductive_pair(const AlgebraPtr& k, const Subspace& h) {
  if (h.owner != k) throw std::invalid_argument("make_pair: subspace owner mismatch");
  if (!is_bracket_closed(h)) throw std::invalid_argument("make_pair: h is not a subalgebra");
  Subspace m = orthogonal_complement(h);
  if (intersect(h, m).dim() != 0 || h.dim() + m.dim() != k->dim())
    throw std::invalid_argument("make_pair: form is degenerate on h");
  // reductivity: [h, m] inside m
  if (!subspace_contains(m, bracket_span(h, m))) throw std::invalid_argument("make_pair: [h, m] escapes m");
  AlgebraPtr ha = subspace_algebra(h, k->name() + "|h");
  return ReductivePair{k, h, std::move(m), std::move(ha)};
}

/// Symmetric pair: [m, m] inside h.
inline bool is_symmetric_pair(const ReductivePair& p) {
  if (p.m.dim() == 0) return true;
  return subspace_contains(p.h, bracket_span(p.m, p.m));
}

/// Rank with a two-route cross-check: the generic-centralizer rank must agree
/// with the rank of the identified isomorphism type whenever the latter is
/// available. Disagreement faults loudly rather than guessing.
inline int checked_rank(const AlgebraPtr& g, uint64_t seed = 11) {
  const int r = generic_rank(*g, seed);
  const TypeSum t = identify(g, seed);
  if (t.identified && t.rank() != r) throw std::runtime_error("rank cross-check failed for " + g->name());
  return r;
}

inline bool is_maximal_rank_pair(const ReductivePair& p, uint64_t seed = 11) {
  return checked_rank(p.h_algebra, seed) == checked_rank(p.k, seed);
}

/// Invariant connection on the bundle induced by a homomorphism lambda from
/// h to the structure algebra g: a linear map on k restricting to lambda on
/// h and equivariant under h. The canonical one annihilates m.
struct InvariantConnection {
  ReductivePair pair;
  AlgebraPtr g;
  Mat lambda_h;    // g dim x h dim
  Mat lambda_full;  // g dim x k dim

  std::vector<Rat> apply(const std::vector<Rat>& v) const { return lambda_full.apply(v); }

  /// Curvature on horizontal directions: for X, Y in m (m coordinates),
  /// Omega(X, Y) = [L X, L Y] - L([X, Y]); with the canonical connection this
  /// is -lambda([X, Y]_h).
  std::vector<Rat> curvature_m(const std::vector<Rat>& xm, const std::vector<Rat>& ym) const {
    const std::vector<Rat> x = pair.m.basis.apply(xm);
    const std::vector<Rat> y = pair.m.basis.apply(ym);
    const std::vector<Rat> lx = apply(x), ly = apply(y);
    std::vector<Rat> out = g->bracket(lx, ly);
    const std::vector<Rat> lb = apply(pair.k->bracket(x, y));
    for (size_t i = 0; i < out.size(); ++i) out[i] -= lb[i];
    return out;
  }
};

/// Verifies that a matrix is a Lie homomorphism from a to b (kernels allowed).
inline void require_hom(const LieAlgebra& a, const LieAlgebra& b, const Mat& m, const char* what) {
  if (m.rows() != b.dim() || m.cols() != a.dim()) throw std::invalid_argument(std::string(what) + ": shape mismatch");
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i + 1; j < a.dim(); ++j) {
      std::vector<Rat> br(a.dim(), Rat(0));
      for (const SparseTerm& t : a.bracket_basis(i, j)) br[t.index] = t.coeff;
      if (m.apply(br) != b.bracket(m.column(i), m.column(j)))
        throw std::invalid_argument(std::string(what) + ": not a homomorphism");
    }
}

/// The connection with horizontal space m: annihilates m, restricts to
/// lambda on h. Equivariance over h holds by reductivity and is verified.
inline InvariantConnection canonical_connection(const ReductivePair& pair, const AlgebraPtr& g,
                                                const Mat& lambda_h) {
  require_hom(*pair.h_algebra, *g, lambda_h, "canonical_connection");
  const int kd = pair.k->dim();
  Mat full(g->dim(), kd);
  for (int c = 0; c < kd; ++c) {
    std::vector<Rat> v(kd, Rat(0));
    v[c] = 1;
    full.set_column(c, lambda_h.apply(pair.project_to_h(v)));
  }
  InvariantConnection conn{pair, g, lambda_h, std::move(full)};
  // equivariance on basis pairs: L([x, y]) = [L x, L y] for x in h, y in k
  for (int i = 0; i < pair.h.dim(); ++i) {
    const std::vector<Rat> x = pair.h.basis.column(i);
    const std::vector<Rat> lx = conn.apply(x);
    for (int j = 0; j < kd; ++j) {
      std::vector<Rat> y(kd, Rat(0));
      y[j] = 1;
      if (conn.apply(pair.k->bracket(x, y)) != g->bracket(lx, conn.apply(y)))
        throw std::invalid_argument("canonical_connection: equivariance failed");
    }
  }
  return conn;
}

/// Basis of the space of equivariant horizontal modifications: linear maps
/// T from m to g with T([x, y]) = [lambda(x), T(y)] for x in h, y in m.
/// Every invariant connection for (pair, lambda) is canonical + such a T.
inline std::vector<Mat> equivariant_extensions(const ReductivePair& pair, const AlgebraPtr& g,
                                               const Mat& lambda_h) {
  require_hom(*pair.h_algebra, *g, lambda_h, "equivariant_extensions");
  const int md = pair.m.dim(), gd = g->dim();
  if (md == 0) return {};
  const SpanSolver msolver(pair.m.basis);
  // unknowns T(r, c), r < gd, c < md, flattened r * md + c
  std::vector<std::vector<Rat>> rows;
  for (int i = 0; i < pair.h.dim(); ++i) {
    const std::vector<Rat> x = pair.h.basis.column(i);
    std::vector<Rat> ei(pair.h.dim(), Rat(0));
    ei[i] = 1;
    const std::vector<Rat> lx = lambda_h.apply(ei);
    const Mat ad_lx = g->ad(lx);
    for (int j = 0; j < md; ++j) {
      const std::vector<Rat> y = pair.m.basis.column(j);
      const auto bc = msolver.coords(pair.k->bracket(x, y));
      if (!bc) throw std::logic_error("equivariant_extensions: reductivity violated");
      // for each g-row r: sum_c T(r, c) bc[c] - sum_s ad_lx(r, s) T(s, j) = 0
      for (int r = 0; r < gd; ++r) {
        std::vector<Rat> row(static_cast<size_t>(gd) * md, Rat(0));
        for (int c = 0; c < md; ++c)
          if ((*bc)[c] != 0) row[static_cast<size_t>(r) * md + c] += (*bc)[c];
        for (int s = 0; s < gd; ++s)
          if (ad_lx(r, s) != 0) row[static_cast<size_t>(s) * md + j] -= ad_lx(r, s);
        rows.push_back(std::move(row));
      }
    }
  }
  Mat system(static_cast<int>(rows.size()), gd * md);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < gd * md; ++c) system(static_cast<int>(r), c) = rows[r][c];
  const Mat sol = kernel(system);
  std::vector<Mat> out;
  for (int k = 0; k < sol.cols(); ++k) {
    Mat t(gd, md);
    for (int r = 0; r < gd; ++r)
      for (int c = 0; c < md; ++c) t(r, c) = sol(static_cast<size_t>(r) * md + c, k);
    out.push_back(std::move(t));
  }
  return out;
}

/// Holonomy algebra of the connection: the span of all curvature values,
/// closed under the image of the connection form and under its own brackets.
inline Subspace holonomy_algebra(const InvariantConnection& conn) {
  const int md = conn.pair.m.dim();
  std::vector<std::vector<Rat>> vals;
  for (int i = 0; i < md; ++i)
    for (int j = i + 1; j < md; ++j) {
      std::vector<Rat> xi(md, Rat(0)), yj(md, Rat(0));
      xi[i] = 1;
      yj[j] = 1;
      vals.push_back(conn.curvature_m(xi, yj));
    }
  Subspace s = make_subspace(conn.g, Mat::from_columns(conn.g->dim(), vals));
  const Subspace lh = make_subspace(conn.g, conn.lambda_h);
  for (int it = 0; it <= conn.g->dim(); ++it) {
    Subspace next = subspace_sum(s, bracket_span(s, s));
    next = subspace_sum(next, bracket_span(lh, next));
    if (next.dim() == s.dim()) return s;
    s = std::move(next);
  }
  return s;
}

}  // namespace fatlab
