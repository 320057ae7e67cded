#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "fatlab/homspace.hpp"
#include "fatlab/liealg.hpp"
#include "fatlab/matrix.hpp"
#include "fatlab/poly.hpp"
#include "fatlab/rational.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab {

/// A family of skew forms F(u) = sum_a u_a F_a on the horizontal space,
/// parametrized by coordinates of a u-space. xbasis records the vectors
/// realizing each parameter direction inside the ambient algebra, ybasis the
/// horizontal vectors the forms act on; both are kept for reporting, the
/// decision procedures read `forms` alone.
struct SkewPencil {
  std::vector<Mat> forms;  // u_dim skew matrices, each m_dim x m_dim
  Mat xbasis;              // ambient dim x u_dim
  Mat ybasis;              // ambient dim x m_dim

  int u_dim() const { return static_cast<int>(forms.size()); }
  int m_dim() const { return forms.empty() ? ybasis.cols() : forms[0].rows(); }

  Mat form_at(const std::vector<Rat>& u) const {
    if (static_cast<int>(u.size()) != u_dim()) throw std::invalid_argument("form_at: arity mismatch");
    Mat f(m_dim(), m_dim());
    for (int a = 0; a < u_dim(); ++a)
      if (u[a] != 0) f = f + forms[a].scaled(u[a]);
    return f;
  }
};

enum class Fatness { Fat, NotFat, Undetermined };

inline const char* fatness_name(Fatness f) {
  switch (f) {
    case Fatness::Fat: return "fat";
    case Fatness::NotFat: return "not-fat";
    default: return "undetermined";
  }
}

/// Decision record. `exact` states that the verdict itself carries an exact
/// certificate; `witness_exact` states that witness_u exactly degenerates the
/// pencil (then witness_kernel is a nonzero exact kernel vector of
/// F(witness_u)). A not-fat verdict over an irrational degeneracy keeps
/// exact=true without an exact witness: either cert_neg and cert_pos are
/// rational u-points whose exact Pfaffians have opposite signs, so a
/// degenerate direction lies between them, or detail records a positive Sturm
/// root count; witness_u is then only a float approximation.
struct FatnessVerdict {
  Fatness verdict = Fatness::Undetermined;
  std::string method;
  std::string detail;
  bool exact = false;
  std::vector<Rat> witness_u;
  std::vector<Rat> witness_kernel;
  bool witness_exact = false;
  std::vector<Rat> cert_neg, cert_pos;
  double min_sigma = -1.0;
};

struct FatnessConfig {
  double tau_fat = 1e-8;   // smallest normalized sigma_min still accepted as fat
  double tau_deg = 1e-12;  // below this the search reports a numeric degeneracy
  int starts = 32;
  int iterations = 500;
  std::uint64_t seed = 0;
};

namespace detail {

/// Newton interpolation through (x_i, y_i) with distinct x_i.
inline UPoly interpolate_upoly(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  const size_t n = xs.size();
  if (ys.size() != n || n == 0) throw std::invalid_argument("interpolate_upoly: bad point set");
  std::vector<Rat> dd = ys;  // divided differences, built in place
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  UPoly acc = UPoly::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;)
    acc = acc * UPoly({-xs[i], Rat(1)}) + UPoly::constant(dd[i]);
  return acc;
}

/// Clears denominators and the numerator gcd, keeping orientation.
inline std::vector<Rat> primitive_direction(const std::vector<Rat>& v) {
  mpz_class den(1), num(0);
  for (const Rat& r : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
  std::vector<Rat> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * Rat(den);
  for (const Rat& r : out) mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), r.get_num().get_mpz_t());
  if (num > 1)
    for (Rat& r : out) r /= Rat(num);
  return out;
}

inline FatnessVerdict exact_not_fat(std::string method, std::string detail, std::vector<Rat> u,
                                    const SkewPencil& p) {
  FatnessVerdict v;
  v.verdict = Fatness::NotFat;
  v.method = std::move(method);
  v.detail = std::move(detail);
  v.exact = true;
  v.witness_exact = true;
  v.witness_u = primitive_direction(u);
  const Mat ker = kernel(p.form_at(v.witness_u));
  if (ker.cols() == 0) throw std::logic_error("exact_not_fat: witness does not degenerate the pencil");
  v.witness_kernel = primitive_direction(ker.column(0));
  return v;
}

inline FatnessVerdict exact_fat(std::string method, std::string detail) {
  FatnessVerdict v;
  v.verdict = Fatness::Fat;
  v.method = std::move(method);
  v.detail = std::move(detail);
  v.exact = true;
  return v;
}

}  // namespace detail

/// Exact fatness of a single direction: F(u) nondegenerate on the horizontal
/// space. Throws on the zero direction, for which the question is vacuous.
inline bool is_u_fat(const SkewPencil& pencil, const std::vector<Rat>& u) {
  bool nonzero = false;
  for (const Rat& c : u) nonzero = nonzero || c != 0;
  if (!nonzero) throw std::invalid_argument("is_u_fat: zero direction");
  if (pencil.m_dim() == 0) return true;
  if (pencil.m_dim() % 2 != 0) return false;
  return determinant(pencil.form_at(u)) != 0;
}

namespace detail {

struct SpherePoint {
  std::vector<double> u;
  double sigma = std::numeric_limits<double>::infinity();
};

inline double min_sigma_and_grad(const std::vector<Eigen::MatrixXd>& forms, const Eigen::VectorXd& u,
                                 Eigen::VectorXd* grad) {
  const int m = static_cast<int>(forms[0].rows());
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (size_t a = 0; a < forms.size(); ++a) f += u(static_cast<int>(a)) * forms[a];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(f, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int last = m - 1;
  if (grad) {
    const Eigen::VectorXd left = svd.matrixU().col(last);
    const Eigen::VectorXd right = svd.matrixV().col(last);
    grad->resize(static_cast<int>(forms.size()));
    for (size_t a = 0; a < forms.size(); ++a)
      (*grad)(static_cast<int>(a)) = left.dot(forms[a] * right);
  }
  return svd.singularValues()(last);
}

/// Multi-start projected subgradient descent of sigma_min(F(u)) over the unit
/// sphere. Deterministic for a fixed seed; runs sequentially.
inline std::vector<SpherePoint> sphere_search(const std::vector<Eigen::MatrixXd>& forms,
                                              const FatnessConfig& cfg) {
  const int v = static_cast<int>(forms.size());
  DetRng rng(cfg.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<SpherePoint> ends;
  for (int start = 0; start < cfg.starts; ++start) {
    Eigen::VectorXd u(v);
    if (start < v) {
      u.setZero();
      u(start) = 1.0;  // axis starts catch coordinate-plane degeneracies early
    } else {
      for (int a = 0; a < v; ++a) u(a) = rng.next_gaussian();
      if (u.norm() < 1e-12) u(0) = 1.0;
    }
    u.normalize();
    SpherePoint best{std::vector<double>(u.data(), u.data() + v), min_sigma_and_grad(forms, u, nullptr)};
    double step = 0.2;
    Eigen::VectorXd grad(v);
    for (int it = 0; it < cfg.iterations; ++it) {
      const double sigma = min_sigma_and_grad(forms, u, &grad);
      if (sigma < best.sigma) {
        best.sigma = sigma;
        best.u.assign(u.data(), u.data() + v);
      }
      if (sigma < cfg.tau_deg * 1e-2) break;
      // project the subgradient onto the tangent space of the sphere
      Eigen::VectorXd tang = grad - grad.dot(u) * u;
      const double norm = tang.norm();
      if (norm < 1e-15) {
        // stationary; restart direction from the ambient gradient sign
        for (int a = 0; a < v; ++a) tang(a) = rng.next_gaussian();
        tang -= tang.dot(u) * u;
        if (tang.norm() < 1e-12) break;
        tang.normalize();
      } else {
        tang /= norm;
      }
      u = (u - step * tang).normalized();
      step = 0.2 / (1.0 + it / 50.0);
    }
    ends.push_back(std::move(best));
  }
  std::sort(ends.begin(), ends.end(), [](const SpherePoint& a, const SpherePoint& b) { return a.sigma < b.sigma; });
  return ends;
}

/// Rationalization candidates for a float direction, from coarse to fine.
inline std::vector<std::vector<Rat>> rationalize_direction(const std::vector<double>& u) {
  std::vector<std::vector<Rat>> out;
  double amax = 0;
  for (double x : u) amax = std::max(amax, std::fabs(x));
  if (amax == 0) return out;
  for (unsigned long cap : {10ul, 1000ul, 1000000ul}) {
    std::vector<Rat> cand(u.size()), snapped(u.size());
    bool any = false, any_snap = false;
    for (size_t i = 0; i < u.size(); ++i) {
      const double scaled = u[i] / amax;
      cand[i] = rationalize(scaled, cap);
      snapped[i] = std::fabs(scaled) < 1e-6 ? Rat(0) : cand[i];
      any = any || cand[i] != 0;
      any_snap = any_snap || snapped[i] != 0;
    }
    if (any) out.push_back(primitive_direction(cand));
    if (any_snap && snapped != cand) out.push_back(primitive_direction(snapped));
  }
  // dedupe
  std::vector<std::vector<Rat>> uniq;
  for (auto& c : out)
    if (std::find(uniq.begin(), uniq.end(), c) == uniq.end()) uniq.push_back(std::move(c));
  return uniq;
}

}  // namespace detail

/// Decides whether every nonzero direction of the u-space is fat. Stages:
/// trivial dimensions, the zero pencil, exact Pfaffian analysis whenever the
/// parameter space is a line or a plane or the horizontal space has dimension
/// at most 4, then a certified float search. Float evidence of degeneracy is
/// upgraded to an exact certificate (witness or Pfaffian sign change)
/// whenever possible; only a fat verdict from the float stage stays
/// heuristic, and a near-degenerate direction that resists certification
/// comes back Undetermined.
inline FatnessVerdict decide_fat(const SkewPencil& pencil, const FatnessConfig& cfg = {}) {
  const int v = pencil.u_dim();
  const int m = pencil.m_dim();

  if (v == 0) return detail::exact_fat("vacuous-u", "no nonzero directions to test");
  if (m == 0) return detail::exact_fat("zero-horizontal", "forms on a zero-dimensional space are nondegenerate");
  if (m % 2 != 0) {
    std::vector<Rat> e1(v, Rat(0));
    e1[0] = 1;
    return detail::exact_not_fat("odd-horizontal", "skew forms on odd-dimensional spaces are degenerate",
                                 std::move(e1), pencil);
  }
  bool all_zero = true;
  for (const Mat& f : pencil.forms) all_zero = all_zero && f.is_zero();
  if (all_zero) {
    std::vector<Rat> e1(v, Rat(0));
    e1[0] = 1;
    return detail::exact_not_fat("zero-pencil", "every form in the pencil vanishes", std::move(e1), pencil);
  }

  if (v == 1) {
    if (determinant(pencil.forms[0]) != 0)
      return detail::exact_fat("single-form-det", "the single form has nonzero determinant");
    return detail::exact_not_fat("single-form-det", "the single form is degenerate", {Rat(1)}, pencil);
  }

  if (m == 2) {
    // Pf is a linear form in u; with at least two parameters it has a kernel.
    std::vector<Rat> coeff(v);
    for (int a = 0; a < v; ++a) coeff[a] = pencil.forms[a](0, 1);
    Mat row(1, v);
    for (int a = 0; a < v; ++a) row(0, a) = coeff[a];
    const Mat ker = kernel(row);
    return detail::exact_not_fat("linear-pfaffian", "kernel direction of the linear Pfaffian",
                                 ker.column(0), pencil);
  }

  if (v == 2) {
    // Binary pencil: Pf(u1 F0 + u2 F1) is a binary form of degree m/2. Its
    // real projective zeros are exactly the degenerate directions.
    const Rat at_e1 = pfaffian(pencil.forms[0]);
    if (at_e1 == 0)
      return detail::exact_not_fat("binary-pfaffian", "Pfaffian vanishes on the first axis",
                                   {Rat(1), Rat(0)}, pencil);
    // q(t) = Pf(t F0 + F1), degree exactly m/2 since its leading coefficient
    // is Pf(F0); interpolated from exact Pfaffian values.
    const int d = m / 2;
    std::vector<Rat> xs, ys;
    for (int i = 0; i <= d; ++i) {
      xs.push_back(Rat(i));
      ys.push_back(pfaffian(pencil.forms[0].scaled(Rat(i)) + pencil.forms[1]));
    }
    const UPoly q = detail::interpolate_upoly(xs, ys);
    if (const auto roots = rational_roots(q); roots && !roots->empty())
      return detail::exact_not_fat("binary-pfaffian", "rational root of the restricted Pfaffian",
                                   {roots->front(), Rat(1)}, pencil);
    // The affine chart covers all remaining projective directions, since the
    // point at infinity was already checked through Pf(F0).
    const int nreal = count_real_roots(q);
    if (nreal == 0)
      return detail::exact_fat("binary-pfaffian", "Sturm count: restricted Pfaffian has no real roots");
    const RootIsolation iso = isolate_one_real_root(q);
    if (iso.exact_root)
      return detail::exact_not_fat("binary-pfaffian", "isolated rational root of the restricted Pfaffian",
                                   {*iso.exact_root, Rat(1)}, pencil);
    FatnessVerdict out;
    out.verdict = Fatness::NotFat;
    out.method = "binary-pfaffian";
    out.exact = true;
    out.witness_exact = false;
    {
      std::ostringstream os;
      os << "Sturm count " << nreal << " real roots; squarefree Pfaffian restriction changes sign on ["
         << rat_to_string(iso.bracket->lo) << ", " << rat_to_string(iso.bracket->hi) << "]";
      out.detail = os.str();
    }
    out.cert_neg = {iso.bracket->lo, Rat(1)};
    out.cert_pos = {iso.bracket->hi, Rat(1)};
    if (rat_sign(iso.bracket->value_lo) > 0) std::swap(out.cert_neg, out.cert_pos);
    const double t = refine_bracket_to_double(q, *iso.bracket);
    out.witness_u = {rationalize(t, 1000000ul), Rat(1)};
    return out;
  }

  if (m == 4) {
    // Pf is a quadratic form in u; fat iff it is definite.
    std::vector<std::vector<std::vector<Rat>>> entry(m, std::vector<std::vector<Rat>>(m, std::vector<Rat>(v)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < v; ++a) entry[i][j][a] = pencil.forms[a](i, j);
    const MPoly pf = pencil_pfaffian(entry, m, v);
    if (pf.is_zero()) {
      std::vector<Rat> e1(v, Rat(0));
      e1[0] = 1;
      return detail::exact_not_fat("quadratic-pfaffian", "Pfaffian of the pencil is identically zero",
                                   std::move(e1), pencil);
    }
    const Mat gram = pf.gram_matrix();
    const FormClassification cls = classify_symmetric_form(gram);
    if (cls.kind == FormClass::PosDef || cls.kind == FormClass::NegDef)
      return detail::exact_fat("quadratic-pfaffian", "Pfaffian quadratic form is definite");
    if (cls.kind == FormClass::PosSemi || cls.kind == FormClass::NegSemi || cls.kind == FormClass::Zero)
      return detail::exact_not_fat("quadratic-pfaffian", "isotropic kernel vector of the Pfaffian form",
                                   cls.kernel_vectors.front(), pencil);
    // Indefinite: hunt an exact isotropic direction on the segment between
    // the certified positive and negative vectors, else certify by signs.
    const std::vector<Rat>& pos = cls.positive_vector;
    const std::vector<Rat>& neg = cls.negative_vector;
    std::vector<Rat> diff(v);
    for (int a = 0; a < v; ++a) diff[a] = neg[a] - pos[a];
    const Rat qa = pf.eval(diff);
    Rat cross(0);
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < v; ++j) cross += gram(i, j) * pos[i] * diff[j];
    const UPoly seg({pf.eval(pos), cross * 2, qa});  // Pf(pos + s diff)
    if (const auto roots = rational_roots(seg); roots && !roots->empty()) {
      std::vector<Rat> w(v);
      for (int a = 0; a < v; ++a) w[a] = pos[a] + roots->front() * diff[a];
      return detail::exact_not_fat("quadratic-pfaffian", "rational isotropic direction of the Pfaffian form",
                                   std::move(w), pencil);
    }
    FatnessVerdict out;
    out.verdict = Fatness::NotFat;
    out.method = "quadratic-pfaffian";
    out.detail = "indefinite Pfaffian form; sign-change certificate between the stored directions";
    out.exact = true;
    out.witness_exact = false;
    out.cert_pos = pos;
    out.cert_neg = neg;
    if (rat_sign(pf.eval(pos)) < 0) std::swap(out.cert_pos, out.cert_neg);
    const RootIsolation iso = isolate_one_real_root(seg);
    double s = 0.5;
    if (iso.exact_root)
      s = rat_to_double(*iso.exact_root);
    else if (iso.bracket)
      s = refine_bracket_to_double(seg, *iso.bracket);
    std::vector<Rat> w(v);
    for (int a = 0; a < v; ++a) w[a] = rationalize(rat_to_double(pos[a]) + s * rat_to_double(diff[a]), 1000000ul);
    out.witness_u = std::move(w);
    return out;
  }

  if ((m / 2) % 2 == 1) {
    // Odd Pfaffian degree: on any parameter plane the Pfaffian restricts to
    // an odd binary form, which always has a real projective zero. Decide
    // exactly on the first coordinate plane and pad the witness back up.
    SkewPencil sub;
    sub.forms = {pencil.forms[0], pencil.forms[1]};
    if (pencil.xbasis.cols() >= 2)
      sub.xbasis = Mat::from_columns(pencil.xbasis.rows(), {pencil.xbasis.column(0), pencil.xbasis.column(1)});
    sub.ybasis = pencil.ybasis;
    FatnessVerdict out = decide_fat(sub, cfg);
    if (out.verdict != Fatness::NotFat)
      throw std::logic_error("decide_fat: odd-degree restriction failed to produce a real zero");
    out.method = "odd-degree-plane";
    for (std::vector<Rat>* vec : {&out.witness_u, &out.cert_neg, &out.cert_pos})
      if (!vec->empty()) vec->resize(v, Rat(0));
    return out;
  }

  // Float stage. Normalize the pencil by its largest entry for conditioning;
  // all exact recheck work uses the raw pencil.
  Rat scale(0);
  for (const Mat& f : pencil.forms)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Rat a = f(i, j);
        if (a < 0) a = -a;
        if (a > scale) scale = a;
      }
  std::vector<Eigen::MatrixXd> fd(v, Eigen::MatrixXd::Zero(m, m));
  for (int a = 0; a < v; ++a)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) fd[a](i, j) = rat_to_double(pencil.forms[a](i, j) / scale);

  const std::vector<detail::SpherePoint> ends = detail::sphere_search(fd, cfg);
  const detail::SpherePoint& best = ends.front();

  FatnessVerdict out;
  out.method = "sphere-search";
  out.min_sigma = best.sigma;

  if (best.sigma < cfg.tau_fat) {
    // Candidate degeneracy: try to verify a rationalization exactly.
    for (const auto& cand : detail::rationalize_direction(best.u)) {
      if (determinant(pencil.form_at(cand)) == 0) {
        FatnessVerdict ver = detail::exact_not_fat(
            "sphere-search", "rationalized search minimum verified by exact determinant", cand, pencil);
        ver.min_sigma = best.sigma;
        return ver;
      }
    }
    // Exact witness failed; hunt a Pfaffian sign change among rational points
    // near the visited minima.
    std::vector<std::pair<std::vector<Rat>, int>> signed_points;
    auto consider = [&](const std::vector<Rat>& pt) {
      const int s = rat_sign(pfaffian(pencil.form_at(pt)));
      if (s != 0) signed_points.emplace_back(pt, s);
    };
    for (const detail::SpherePoint& e : ends)
      for (const auto& cand : detail::rationalize_direction(e.u)) consider(cand);
    for (const auto& [ppos, spos] : signed_points)
      for (const auto& [pneg, sneg] : signed_points) {
        if (spos <= 0 || sneg >= 0) continue;
        bool antipodal = true;
        for (int a = 0; a < v; ++a) antipodal = antipodal && ppos[a] == -pneg[a];
        if (antipodal) continue;  // the connecting segment would cross zero
        out.verdict = Fatness::NotFat;
        out.exact = true;
        out.witness_exact = false;
        out.cert_pos = ppos;
        out.cert_neg = pneg;
        out.detail = "exact Pfaffian sign change between rationalized search points";
        out.witness_u.resize(v);
        for (int a = 0; a < v; ++a) out.witness_u[a] = rationalize(best.u[a], 1000000ul);
        return out;
      }
    out.verdict = Fatness::Undetermined;
    out.exact = false;
    {
      std::ostringstream os;
      os << "search reached sigma_min " << best.sigma << " below tau_fat but no exact certificate was found";
      out.detail = os.str();
    }
    out.witness_u.resize(v);
    for (int a = 0; a < v; ++a) out.witness_u[a] = rationalize(best.u[a], 1000000ul);
    return out;
  }

  out.verdict = Fatness::Fat;
  out.exact = false;
  {
    std::ostringstream os;
    os << "multi-start search kept sigma_min at " << best.sigma << " across " << cfg.starts << " starts";
    out.detail = os.str();
  }
  return out;
}

/// Pencil of the bundle induced by a connection, over the directions B-normal
/// to l inside g: entries B_g(X_a, Omega(y_i, y_j)) on the horizontal basis.
namespace detail {
inline SkewPencil pencil_from_xcols(const InvariantConnection& conn, const Mat& xcols) {
  const int md = conn.pair.m.dim();
  const int ud = xcols.cols();
  // Curvature table over horizontal basis pairs, in g coordinates.
  std::vector<std::vector<std::vector<Rat>>> omega(md, std::vector<std::vector<Rat>>(md));
  for (int i = 0; i < md; ++i)
    for (int j = i + 1; j < md; ++j) {
      std::vector<Rat> ei(md, Rat(0)), ej(md, Rat(0));
      ei[i] = 1;
      ej[j] = 1;
      omega[i][j] = conn.curvature_m(ei, ej);
    }
  SkewPencil p;
  p.xbasis = xcols;
  p.ybasis = conn.pair.m.basis;
  for (int a = 0; a < ud; ++a) {
    const std::vector<Rat> x = xcols.column(a);
    Mat f(md, md);
    for (int i = 0; i < md; ++i)
      for (int j = i + 1; j < md; ++j) {
        const Rat val = conn.g->form_value(x, omega[i][j]);
        f(i, j) = val;
        f(j, i) = -val;
      }
    p.forms.push_back(std::move(f));
  }
  return p;
}
}  // namespace detail

inline SkewPencil build_pencil(const InvariantConnection& conn, const Subspace& l) {
  if (l.owner != conn.g) throw std::invalid_argument("build_pencil: l must live in the structure algebra");
  return detail::pencil_from_xcols(conn, orthogonal_complement(l).basis);
}

/// Reduction of the fatness pencil to the image W of the structure map: valid
/// whenever B is nondegenerate on W and g = W + l, and then the pencil over
/// the complement of W cap l inside W has the same fatness verdict as the
/// full pencil over the complement of l in g.
struct ReducedPencil {
  bool valid = false;
  std::string reason;
  SkewPencil pencil;
};

inline ReducedPencil reduce_pencil_to_h(const InvariantConnection& conn, const Subspace& l) {
  if (l.owner != conn.g) throw std::invalid_argument("reduce_pencil_to_h: l must live in the structure algebra");
  ReducedPencil out;
  const Subspace w = make_subspace(conn.g, conn.lambda_h);
  if (intersect(w, orthogonal_complement(w)).dim() != 0) {
    out.reason = "form degenerates on the image of the structure map";
    return out;
  }
  if (subspace_sum(w, l).dim() != conn.g->dim()) {
    out.reason = "image of the structure map plus l does not fill the structure algebra";
    return out;
  }
  out.valid = true;
  out.pencil = detail::pencil_from_xcols(conn, orthogonal_complement_in(w, intersect(w, l)).basis);
  return out;
}

/// The two equivalent forms of the pointwise fatness test, stated on a
/// reductive pair with the identity structure map. Both pencils pair the
/// h-component of horizontal brackets against a space of directions:
/// condition 1 uses the B-complement of l in the whole algebra, condition 2
/// its projection, the complement of h cap l inside h. They decide the same
/// fatness question whenever h + l fills the algebra.
inline SkewPencil lemma1_condition(const ReductivePair& pair, const Subspace& l, int which) {
  require_same_owner(pair.h, l);
  Mat xcols;
  if (which == 1)
    xcols = orthogonal_complement(l).basis;
  else if (which == 2)
    xcols = orthogonal_complement_in(pair.h, intersect(pair.h, l)).basis;
  else
    throw std::invalid_argument("lemma1_condition: which must be 1 or 2");

  const int md = pair.m.dim();
  const int ud = xcols.cols();
  SkewPencil p;
  p.xbasis = xcols;
  p.ybasis = pair.m.basis;
  // h-embedded projections of horizontal brackets, computed once
  std::vector<std::vector<std::vector<Rat>>> brh(md, std::vector<std::vector<Rat>>(md));
  for (int i = 0; i < md; ++i)
    for (int j = i + 1; j < md; ++j) {
      const std::vector<Rat> br = pair.k->bracket(pair.m.basis.column(i), pair.m.basis.column(j));
      brh[i][j] = pair.h.basis.apply(pair.project_to_h(br));
    }
  for (int a = 0; a < ud; ++a) {
    const std::vector<Rat> x = xcols.column(a);
    Mat f(md, md);
    for (int i = 0; i < md; ++i)
      for (int j = i + 1; j < md; ++j) {
        const Rat val = pair.k->form_value(x, brh[i][j]);
        f(i, j) = val;
        f(j, i) = -val;
      }
    p.forms.push_back(std::move(f));
  }
  return p;
}

struct Lemma1Report {
  bool premise = false;  // h + l = k
  FatnessVerdict via_complement;  // condition 1
  FatnessVerdict via_projection;  // condition 2
  bool comparable = false;        // both verdicts determined
  bool disagree = false;
};

inline Lemma1Report check_lemma1_equivalence(const ReductivePair& pair, const Subspace& l,
                                             const FatnessConfig& cfg = {}) {
  Lemma1Report r;
  r.premise = subspace_sum(pair.h, l).dim() == pair.k->dim();
  r.via_complement = decide_fat(lemma1_condition(pair, l, 1), cfg);
  r.via_projection = decide_fat(lemma1_condition(pair, l, 2), cfg);
  r.comparable = r.via_complement.verdict != Fatness::Undetermined &&
                 r.via_projection.verdict != Fatness::Undetermined;
  r.disagree = r.comparable && r.via_complement.verdict != r.via_projection.verdict;
  return r;
}

}  // namespace fatlab
