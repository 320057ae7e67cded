#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fatlab/matrix.hpp"
#include "fatlab/rational.hpp"

namespace fatlab {

/// Univariate polynomial with exact coefficients, ascending order.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const Rat& v) { return UPoly({v}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Rat> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return UPoly(std::move(d));
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (Rat& x : r.c_) x = -x;
    return r;
  }

  UPoly operator+(const UPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UPoly(std::move(r));
  }

  UPoly operator-(const UPoly& o) const { return *this + (-o); }

  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UPoly(std::move(r));
  }

  /// Remainder of this / d over the rationals.
  UPoly rem(const UPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("UPoly::rem: division by zero polynomial");
    std::vector<Rat> r = c_;
    const int dd = d.degree();
    while (static_cast<int>(r.size()) - 1 >= dd) {
      const Rat f = r.back() / d.c_.back();
      const size_t shift = r.size() - 1 - dd;
      for (int i = 0; i <= dd; ++i) r[shift + i] -= f * d.c_[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
      if (r.empty()) break;
    }
    return UPoly(std::move(r));
  }

  UPoly gcd(const UPoly& o) const {
    UPoly a = *this, b = o;
    while (!b.is_zero()) {
      UPoly r = a.rem(b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      const Rat lead = a.leading();
      for (Rat& x : a.c_) x /= lead;
    }
    return a;
  }

  UPoly squarefree_part() const {
    if (degree() < 1) return *this;
    const UPoly g = gcd(derivative());
    if (g.degree() < 1) return *this;
    // Exact division by the gcd.
    std::vector<Rat> q(static_cast<size_t>(degree() - g.degree()) + 1, Rat(0));
    std::vector<Rat> r = c_;
    while (static_cast<int>(r.size()) - 1 >= g.degree() && !r.empty()) {
      const int shift = static_cast<int>(r.size()) - 1 - g.degree();
      const Rat f = r.back() / g.c_.back();
      q[shift] = f;
      for (int i = 0; i <= g.degree(); ++i) r[shift + i] -= f * g.c_[i];
      while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return UPoly(std::move(q));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

namespace detail {
inline int sign_at_plus_inf(const UPoly& p) { return p.is_zero() ? 0 : rat_sign(p.leading()); }
inline int sign_at_minus_inf(const UPoly& p) {
  if (p.is_zero()) return 0;
  const int s = rat_sign(p.leading());
  return (p.degree() % 2 == 0) ? s : -s;
}
inline int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}
}  // namespace detail

/// Sturm chain of the squarefree part.
inline std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain;
  UPoly a = p.squarefree_part();
  if (a.is_zero()) return chain;
  chain.push_back(a);
  UPoly b = a.derivative();
  while (!b.is_zero()) {
    chain.push_back(b);
    const size_t n = chain.size();
    b = -(chain[n - 2].rem(chain[n - 1]));
  }
  return chain;
}

/// Number of distinct real roots of p.
inline int count_real_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
  if (p.degree() < 1) return 0;
  const std::vector<UPoly> chain = sturm_chain(p);
  std::vector<int> lo, hi;
  lo.reserve(chain.size());
  hi.reserve(chain.size());
  for (const UPoly& q : chain) {
    lo.push_back(detail::sign_at_minus_inf(q));
    hi.push_back(detail::sign_at_plus_inf(q));
  }
  return detail::count_sign_changes(lo) - detail::count_sign_changes(hi);
}

/// Number of distinct real roots of p in (a, b].
inline int count_real_roots_in(const UPoly& p, const Rat& a, const Rat& b) {
  const std::vector<UPoly> chain = sturm_chain(p);
  std::vector<int> at_a, at_b;
  for (const UPoly& q : chain) {
    at_a.push_back(rat_sign(q.eval(a)));
    at_b.push_back(rat_sign(q.eval(b)));
  }
  return detail::count_sign_changes(at_a) - detail::count_sign_changes(at_b);
}

/// Exact bound: all real roots of p lie in [-bound, bound].
inline Rat cauchy_root_bound(const UPoly& p) {
  if (p.degree() < 1) return Rat(1);
  Rat worst(0);
  const Rat lead = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rat q = abs(p.coeffs()[i]) / lead;
    if (q > worst) worst = q;
  }
  return worst + 1;
}

/// A certified bracket around a real root: q(lo) and q(hi) have opposite
/// signs for the squarefree part q of the polynomial in question.
struct RootBracket {
  Rat lo, hi;
  Rat value_lo, value_hi;
};

/// Isolates one real root of p into a sign-change bracket, or returns the
/// root itself when a bracket endpoint happens to hit it exactly.
struct RootIsolation {
  std::optional<Rat> exact_root;
  std::optional<RootBracket> bracket;
};

inline RootIsolation isolate_one_real_root(const UPoly& p) {
  RootIsolation out;
  const UPoly q = p.squarefree_part();
  if (count_real_roots(q) == 0) return out;
  Rat lo = -cauchy_root_bound(q), hi = cauchy_root_bound(q);
  // Shrink [lo, hi] keeping at least one root inside, until endpoint signs differ.
  for (int step = 0; step < 512; ++step) {
    const Rat vlo = q.eval(lo), vhi = q.eval(hi);
    if (vlo == 0) {
      out.exact_root = lo;
      return out;
    }
    if (vhi == 0) {
      out.exact_root = hi;
      return out;
    }
    if (rat_sign(vlo) != rat_sign(vhi)) {
      out.bracket = RootBracket{lo, hi, vlo, vhi};
      return out;
    }
    const Rat mid = (lo + hi) / 2;
    if (count_real_roots_in(q, lo, mid) > 0)
      hi = mid;
    else
      lo = mid;
  }
  throw std::logic_error("isolate_one_real_root: bisection failed to certify a bracket");
}

/// Narrows a bracket until its width drops below 2^-48, for float reporting.
inline double refine_bracket_to_double(const UPoly& p, RootBracket b) {
  const UPoly q = p.squarefree_part();
  const Rat width_target = Rat(1, 1) / Rat(281474976710656L);  // 2^-48
  while (b.hi - b.lo > width_target) {
    const Rat mid = (b.lo + b.hi) / 2;
    const Rat vm = q.eval(mid);
    if (vm == 0) return rat_to_double(mid);
    if (rat_sign(vm) == rat_sign(b.value_lo)) {
      b.lo = mid;
      b.value_lo = vm;
    } else {
      b.hi = mid;
      b.value_hi = vm;
    }
  }
  return rat_to_double((b.lo + b.hi) / 2);
}

/// Attempts to find an exact rational root by rationalizing bracket
/// refinements; returns nullopt when the isolated root is irrational or has
/// a large denominator.
inline std::optional<Rat> find_rational_root(const UPoly& p) {
  const UPoly q = p.squarefree_part();
  if (q.degree() >= 1 && q.eval(Rat(0)) == 0) return Rat(0);
  RootIsolation iso = isolate_one_real_root(q);
  if (iso.exact_root) return iso.exact_root;
  if (!iso.bracket) return std::nullopt;
  const double approx = refine_bracket_to_double(q, *iso.bracket);
  for (unsigned long cap : {10UL, 1000UL, 1000000UL}) {
    const Rat cand = rationalize(approx, cap);
    if (q.eval(cand) == 0) return cand;
  }
  return std::nullopt;
}

namespace detail {

/// Exact synthetic division of p by (x - r); p(r) must be zero.
inline UPoly deflate_root(const UPoly& p, const Rat& r) {
  const std::vector<Rat>& c = p.coeffs();
  std::vector<Rat> q(c.size() - 1, Rat(0));
  Rat carry(0);
  for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i) {
    carry = c[i] + carry * r;
    q[i - 1] = carry;
  }
  return UPoly(std::move(q));
}

inline std::optional<std::vector<mpz_class>> divisors_bounded(mpz_class n, const mpz_class& bound) {
  if (n < 0) n = -n;
  if (n == 0 || n > bound) return std::nullopt;
  std::vector<mpz_class> divs;
  for (mpz_class i = 1; i * i <= n; ++i)
    if (n % i == 0) {
      divs.push_back(i);
      if (i * i != n) divs.push_back(n / i);
    }
  return divs;
}

}  // namespace detail

/// All rational roots of p (each once). Returns nullopt when the coefficient
/// divisor search exceeds its bound, never a wrong or incomplete list.
inline std::optional<std::vector<Rat>> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  UPoly q = p.squarefree_part();
  std::vector<Rat> roots;
  while (q.degree() >= 1) {
    if (q.coeffs()[0] == 0) {
      roots.push_back(Rat(0));
      q = detail::deflate_root(q, Rat(0));
      continue;
    }
    if (q.degree() == 1) {
      roots.push_back(-q.coeffs()[0] / q.coeffs()[1]);
      break;
    }
    if (q.degree() == 2) {
      const Rat a = q.coeffs()[2], b = q.coeffs()[1], c = q.coeffs()[0];
      const Rat disc = b * b - 4 * a * c;
      if (disc < 0) break;
      // rational square root exists iff numerator and denominator are squares
      mpz_class num = disc.get_num(), den = disc.get_den();
      if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) break;
      mpz_class rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      const Rat s = Rat(rn) / Rat(rd);
      roots.push_back((-b + s) / (2 * a));
      if (s != 0) roots.push_back((-b - s) / (2 * a));
      break;
    }
    // degree >= 3: integer model and divisor candidates
    mpz_class denlcm(1);
    for (const Rat& c : q.coeffs()) {
      mpz_class d = c.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), denlcm.get_mpz_t(), d.get_mpz_t());
      denlcm = denlcm / g * d;
    }
    std::vector<mpz_class> ic;
    for (const Rat& c : q.coeffs()) {
      const Rat v = c * Rat(denlcm);
      ic.push_back(v.get_num());
    }
    const mpz_class bound = mpz_class("1000000000000");
    const auto p_divs = detail::divisors_bounded(ic.front(), bound);
    const auto q_divs = detail::divisors_bounded(ic.back(), bound);
    if (!p_divs || !q_divs) return std::nullopt;
    std::optional<Rat> found;
    for (const mpz_class& pn : *p_divs) {
      for (const mpz_class& qd : *q_divs) {
        for (int sign : {1, -1}) {
          const Rat cand = Rat(sign * pn) / Rat(qd);
          if (q.eval(cand) == 0) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;  // no rational root remains
    roots.push_back(*found);
    q = detail::deflate_root(q, *found);
  }
  return roots;
}

/// Sparse multivariate polynomial used for symbolic Pfaffians of pencils.
class MPoly {
 public:
  using Key = std::vector<int>;

  explicit MPoly(int nvars = 0) : nvars_(nvars) {}

  static MPoly constant(int nvars, const Rat& v) {
    MPoly p(nvars);
    if (v != 0) p.terms_[Key(nvars, 0)] = v;
    return p;
  }

  static MPoly variable(int nvars, int index) {
    MPoly p(nvars);
    Key k(nvars, 0);
    k[index] = 1;
    p.terms_[k] = 1;
    return p;
  }

  /// Homogeneous linear form sum_i c[i] * x_i.
  static MPoly linear_form(const std::vector<Rat>& c) {
    MPoly p(static_cast<int>(c.size()));
    for (size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Key k(c.size(), 0);
      k[i] = 1;
      p.terms_[k] = c[i];
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, Rat>& terms() const { return terms_; }

  int total_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) {
      int s = 0;
      for (int e : k) s += e;
      if (s > d) d = s;
    }
    return d;
  }

  MPoly operator+(const MPoly& o) const {
    check(o);
    MPoly r = *this;
    for (const auto& [k, v] : o.terms_) {
      Rat& slot = r.terms_[k];
      slot += v;
      if (slot == 0) r.terms_.erase(k);
    }
    return r;
  }

  MPoly operator-(const MPoly& o) const {
    check(o);
    MPoly r = *this;
    for (const auto& [k, v] : o.terms_) {
      Rat& slot = r.terms_[k];
      slot -= v;
      if (slot == 0) r.terms_.erase(k);
    }
    return r;
  }

  MPoly operator*(const MPoly& o) const {
    check(o);
    MPoly r(nvars_);
    for (const auto& [ka, va] : terms_)
      for (const auto& [kb, vb] : o.terms_) {
        Key k(nvars_);
        for (int i = 0; i < nvars_; ++i) k[i] = ka[i] + kb[i];
        Rat& slot = r.terms_[k];
        slot += va * vb;
        if (slot == 0) r.terms_.erase(k);
      }
    return r;
  }

  MPoly scaled(const Rat& s) const {
    MPoly r(nvars_);
    if (s == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * s;
    return r;
  }

  Rat eval(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("MPoly::eval: arity mismatch");
    Rat acc(0);
    for (const auto& [k, v] : terms_) {
      Rat t = v;
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < k[i]; ++e) t *= x[i];
      acc += t;
    }
    return acc;
  }

  Rat coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  /// For a binary form, the univariate dehomogenization p(t, 1).
  UPoly dehomogenize_binary() const {
    if (nvars_ != 2) throw std::invalid_argument("dehomogenize_binary: needs 2 variables");
    std::vector<Rat> c(total_degree() + 1, Rat(0));
    for (const auto& [k, v] : terms_) c[k[0]] += v;
    return UPoly(std::move(c));
  }

  /// For a quadratic form, the symmetric Gram matrix.
  Mat gram_matrix() const {
    Mat g(nvars_, nvars_);
    for (const auto& [k, v] : terms_) {
      int i = -1, j = -1;
      for (int t = 0; t < nvars_; ++t) {
        if (k[t] == 2 && i < 0) {
          i = j = t;
        } else if (k[t] == 1) {
          (i < 0 ? i : j) = t;
        } else if (k[t] != 0) {
          throw std::invalid_argument("gram_matrix: polynomial is not quadratic");
        }
      }
      if (i < 0 || j < 0) throw std::invalid_argument("gram_matrix: polynomial is not quadratic");
      if (i == j) {
        g(i, i) = v;
      } else {
        g(i, j) = v / 2;
        g(j, i) = v / 2;
      }
    }
    return g;
  }

 private:
  void check(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("MPoly: arity mismatch");
  }
  int nvars_;
  std::map<Key, Rat> terms_;
};

/// Pfaffian of a skew matrix whose entries are linear forms in u-variables,
/// expanded along the first row with subset memoization. entry(i, j) must
/// equal -entry(j, i); m must stay small (guarded at 16).
inline MPoly pencil_pfaffian(const std::vector<std::vector<std::vector<Rat>>>& entry, int m, int nvars) {
  if (m > 16) throw std::invalid_argument("pencil_pfaffian: matrix too large for symbolic expansion");
  if (m % 2 != 0) return MPoly(nvars);
  if (m == 0) return MPoly::constant(nvars, Rat(1));
  std::map<std::uint32_t, MPoly> memo;
  struct Rec {
    const std::vector<std::vector<std::vector<Rat>>>& e;
    int nvars;
    std::map<std::uint32_t, MPoly>& memo;
    MPoly run(std::uint32_t mask) {
      if (mask == 0) return MPoly::constant(nvars, Rat(1));
      auto it = memo.find(mask);
      if (it != memo.end()) return it->second;
      std::vector<int> idx;
      for (int i = 0; i < 32; ++i)
        if (mask & (1u << i)) idx.push_back(i);
      const int first = idx[0];
      MPoly acc(nvars);
      int sign = 1;
      for (size_t t = 1; t < idx.size(); ++t) {
        const int j = idx[t];
        const std::uint32_t rest = mask & ~(1u << first) & ~(1u << j);
        const MPoly lin = MPoly::linear_form(e[first][j]);
        if (!lin.is_zero()) {
          MPoly sub = run(rest);
          MPoly term = lin * sub;
          acc = (sign > 0) ? acc + term : acc - term;
        }
        sign = -sign;
      }
      memo.emplace(mask, acc);
      return acc;
    }
  } rec{entry, nvars, memo};
  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
  return rec.run(full);
}

}  // namespace fatlab
