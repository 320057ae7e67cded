#pragma once

// Shared generators for the test suites: deterministic random pencils, exact
// rational orthogonal rotations, and reductive-pair instances satisfying the
// span premise k = h + l by construction.

#include <vector>

#include "fatlab/fatness.hpp"
#include "fatlab/homspace.hpp"
#include "fatlab/liealg.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab::testsupport {

inline Mat random_skew(DetRng& rng, int m) {
  Mat f(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Rat v = rng.next_rat();
      f(i, j) = v;
      f(j, i) = -v;
    }
  return f;
}

inline SkewPencil random_pencil(DetRng& rng, int m, int v) {
  SkewPencil p;
  p.xbasis = Mat::identity(v);
  p.ybasis = Mat::identity(m);
  for (int a = 0; a < v; ++a) p.forms.push_back(random_skew(rng, m));
  return p;
}

/// Exact orthogonal matrix: a product of Givens rotations whose sine/cosine
/// pairs come from Pythagorean parametrization, so Q^T Q = I holds in exact
/// arithmetic.
inline Mat rational_rotation(DetRng& rng, int n, int layers = 3) {
  Mat q = Mat::identity(n);
  if (n < 2) return q;
  for (int layer = 0; layer < layers; ++layer) {
    const int i = static_cast<int>(rng.next_int(0, n - 1));
    int j = static_cast<int>(rng.next_int(0, n - 2));
    if (j >= i) ++j;
    const Rat p = Rat(rng.next_int(1, 5));
    const Rat s = Rat(rng.next_int(1, 5));
    const Rat c2 = (p * p - s * s) / (p * p + s * s);
    const Rat s2 = 2 * p * s / (p * p + s * s);
    Mat g = Mat::identity(n);
    g(i, i) = c2;
    g(j, j) = c2;
    g(i, j) = -s2;
    g(j, i) = s2;
    q = q * g;
  }
  return q;
}

/// Congruence transport of every form by an invertible change of the
/// horizontal basis.
inline SkewPencil rotate_horizontal(const SkewPencil& p, const Mat& q) {
  SkewPencil out = p;
  for (Mat& f : out.forms) f = q.transpose() * f * q;
  return out;
}

/// Invertible recombination of the parameter directions: new form a is
/// sum_b m(b, a) * old form b.
inline SkewPencil mix_parameters(const SkewPencil& p, const Mat& m) {
  SkewPencil out = p;
  for (int a = 0; a < p.u_dim(); ++a) {
    Mat f(p.m_dim(), p.m_dim());
    for (int b = 0; b < p.u_dim(); ++b)
      if (!(m(b, a) == 0)) f = f + p.forms[b].scaled(m(b, a));
    out.forms[a] = f;
  }
  return out;
}

inline SkewPencil scale_pencil(const SkewPencil& p, const Rat& c) {
  SkewPencil out = p;
  for (Mat& f : out.forms) f = f.scaled(c);
  return out;
}

/// A reductive pair plus a transversal subspace l with k = h + l guaranteed:
/// l is spanned by the m-basis perturbed into h by random rational
/// combinations, which keeps the span full while varying h cap l.
struct LemmaInstance {
  ReductivePair pair;
  Subspace l;
};

inline LemmaInstance lemma_instance(int family, std::uint64_t seed) {
  DetRng rng(seed);
  AlgebraPtr k;
  Subspace h;
  if (family % 2 == 0) {
    k = make_so(5);
    h = make_subspace(k, embed_block_upper_left(make_so(4), k).matrix);
  } else {
    k = make_su(2);
    h = make_subspace(k, embed_diagonal_torus(make_t(1), k, {Rat(1), Rat(-1)}).matrix);
  }
  LemmaInstance inst{make_reductive_pair(k, h), Subspace{}};
  const Mat& mb = inst.pair.m.basis;
  const Mat& hb = inst.pair.h.basis;
  Mat cols(k->dim(), mb.cols());
  for (int c = 0; c < mb.cols(); ++c) {
    std::vector<Rat> v = mb.column(c);
    for (int hc = 0; hc < hb.cols(); ++hc) {
      const Rat w = rng.next_rat();
      if (w == 0) continue;
      const auto hcol = hb.column(hc);
      for (int r = 0; r < k->dim(); ++r) v[r] += w * hcol[r];
    }
    cols.set_column(c, v);
  }
  inst.l = make_subspace(k, cols);
  return inst;
}

}  // namespace fatlab::testsupport
