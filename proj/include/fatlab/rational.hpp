#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fatlab {

/// Exact scalar used everywhere outside the float sphere-search stage.
/// Arbitrary-precision rational, always kept in canonical form.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q" with arbitrary-precision integers.
inline Rat parse_rat(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rat: empty string");
  try {
    Rat q(text);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parse_rat: malformed rational '" + text + "'");
  }
}

/// Canonical "p" or "p/q" spelling; denominator printed only when != 1.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline int rat_sign(const Rat& q) { return sgn(q); }

/// Deterministic 64-bit generator (splitmix64). Used instead of
/// std::uniform_int_distribution so streams are identical across toolchains.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("DetRng: zero bound");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % bound;
  }

  /// Uniform integer in [lo, hi] inclusive.
  long next_int(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("DetRng: empty range");
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Small random rational with numerator in [-9, 9] and denominator in {1, 2, 3}.
  Rat next_rat() { return rat(next_int(-9, 9), next_int(1, 3)); }

  /// Nonzero variant of next_rat.
  Rat next_rat_nonzero() {
    Rat q = next_rat();
    while (q == 0) q = next_rat();
    return q;
  }

  double next_unit_double() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  /// Standard normal via Box-Muller on deterministic uniforms.
  double next_gaussian() {
    double u1 = next_unit_double();
    while (u1 <= 1e-300) u1 = next_unit_double();
    const double u2 = next_unit_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Continued-fraction rationalization of x with denominator <= max_den.
inline Rat rationalize(double x, unsigned long max_den) {
  if (max_den == 0) throw std::invalid_argument("rationalize: zero denominator cap");
  const bool neg = x < 0;
  double v = neg ? -x : x;
  // Convergents p/q of the continued fraction of v.
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int step = 0; step < 64; ++step) {
    if (v > 9e17) break;
    const long long a = static_cast<long long>(v);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > static_cast<long long>(max_den) && q1 > 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = v - static_cast<double>(a);
    if (frac < 1e-15) break;
    v = 1.0 / frac;
  }
  if (q1 == 0) return Rat(0);
  Rat result(static_cast<long>(p1), static_cast<long>(q1));
  result.canonicalize();
  return neg ? Rat(-result) : result;
}

inline std::string vec_to_string(const std::vector<Rat>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v[i]);
  }
  return out + "]";
}

}  // namespace fatlab
