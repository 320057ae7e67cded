#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fatlab/homspace.hpp"
#include "fatlab/identify.hpp"
#include "fatlab/subalg.hpp"
#include "fatlab/tables.hpp"

namespace fatlab {

/// Conventional series name of a constructed algebra: su(n) -> A(n-1),
/// so(2k+1) -> B(k), so(2k) -> D(k), sp(n) -> C(n), u(n) -> A(n-1)+T,
/// tori -> T, direct sums join their parts.
inline std::string natural_type_string(const AlgebraPtr& a) {
  auto series = [](char s, int r) { return std::string(1, s) + std::to_string(r); };
  switch (a->family) {
    case Family::T: {
      const int k = a->dim();
      if (k == 0) return "0";
      std::string s = "T";
      for (int i = 1; i < k; ++i) s += "+T";
      return s;
    }
    case Family::SU: {
      const int n = a->params[0];
      return n >= 2 ? series('A', n - 1) : "0";
    }
    case Family::SO: {
      const int n = a->params[0];
      if (n <= 1) return "0";
      if (n == 2) return "T";
      return n % 2 ? series('B', n / 2) : series('D', n / 2);
    }
    case Family::SP:
      return series('C', a->params[0]);
    case Family::U: {
      const int n = a->params[0];
      return n >= 2 ? series('A', n - 1) + "+T" : "T";
    }
    case Family::G2:
      return "G2";
    case Family::Sum: {
      if (a->parts.empty()) return a->dim() == 0 ? "0" : "?";
      std::string s;
      for (const AlgebraPtr& p : a->parts) {
        const std::string ps = natural_type_string(p);
        if (ps == "0") continue;
        if (!s.empty()) s += "+";
        s += ps;
      }
      return s.empty() ? "0" : s;
    }
  }
  return "?";
}

/// Spelling of an identified type with rank-1 and rank-2 factors respelled
/// through the exceptional isomorphisms A1 = B1 = C1 and B2 = C2 to match a
/// preferred series, so intersections inside sp-type algebras read C1, C2.
inline std::string hinted_type_string(const TypeSum& t, char hint) {
  if (!t.identified) return "unidentified";
  std::string s;
  for (const SimpleFactor& f : t.factors) {
    std::string piece = f.to_string();
    if ((hint == 'B' || hint == 'C') && f.rank == 1 && (f.series == 'A' || f.bc_ambiguous))
      piece = std::string(1, hint) + "1";
    if (hint == 'C' && f.rank == 2 && (f.series == 'B' || f.series == 'C'))
      piece = "C2";
    if (!s.empty()) s += "+";
    s += piece;
  }
  for (int i = 0; i < t.torus_rank; ++i) {
    if (!s.empty()) s += "+";
    s += "T";
  }
  return s.empty() ? "0" : s;
}

struct Condition {
  std::string id;      // "a" .. "e"
  std::string title;
  std::string status;  // "pass" | "fail" | "not-applicable"
  std::string detail;
};

struct ConditionReport {
  std::vector<Condition> conditions;
  bool all_pass = true;  // no condition failed (not-applicable is fine)
  std::string conclusion;
};

/// The necessary conditions a fat canonical-connection bundle must satisfy,
/// evaluated in order on the connection data and the fiber subalgebra l:
///   (a) g = lambda(h) + l as a span;
///   (b) (lambda(h), lambda(h) cap l) is a Berard-Bergery pair, degenerate
///       fibers of dimension <= 1 passing vacuously;
///   (c) the base pair (k, h) is symmetric and of maximal rank;
///   (d) with n' the largest common ideal of lambda(h) and the intersection,
///       h = h' + n' and g = h' + n split as direct sums, n the largest
///       ideal of g inside l;
///   (e) when g is simple the bundle collapses to the homogeneous case, so
///       lambda(h) must be all of g.
/// h_name names lambda(h) in the report when the caller knows the natural
/// spelling of the source algebra; empty falls back to the identified type.
inline ConditionReport verify_necessary_conditions(const InvariantConnection& conn, const Subspace& l,
                                                   int nmax = 12, uint64_t seed = 2,
                                                   const std::string& h_name_hint = "") {
  if (l.owner != conn.g) throw std::invalid_argument("verify_necessary_conditions: l must live in g");
  ConditionReport rep;
  auto add = [&](std::string id, std::string title, bool applicable, bool pass, std::string detail) {
    rep.conditions.push_back({std::move(id), std::move(title),
                              applicable ? (pass ? "pass" : "fail") : "not-applicable", std::move(detail)});
    if (applicable && !pass) {
      rep.all_pass = false;
      if (rep.conclusion.empty()) rep.conclusion = rep.conditions.back().detail;
    }
  };

  const AlgebraPtr& g = conn.g;
  const Subspace hh = make_subspace(g, conn.lambda_h);  // lambda(h) inside g
  const Subspace hl = intersect(hh, l);

  // (a) span factorization
  {
    const int sum = subspace_sum(hh, l).dim();
    std::ostringstream d;
    d << "dim(lambda(h) + l) = " << sum << " of " << g->dim();
    add("a", "g = lambda(h) + l", true, sum == g->dim(), d.str());
  }

  // (b) table membership of (lambda(h), lambda(h) cap l)
  {
    const bool faithful = rank(conn.lambda_h) == conn.pair.h.dim();
    const std::string h_name = (faithful && !h_name_hint.empty())
                                   ? h_name_hint
                                   : identify(subspace_algebra(hh), seed).to_string();
    const char hint = h_name.empty() ? ' ' : h_name[0];
    const int fiber_dim = hh.dim() - hl.dim();
    if (fiber_dim <= 1) {
      std::ostringstream d;
      d << "fiber of dimension " << fiber_dim << ": degenerate case, no table constraint";
      add("b", "(h, h cap l) is a Berard-Bergery pair", true, true, d.str());
    } else {
      const TypeSum t_hl = identify(subspace_algebra(hl), seed);
      const std::string pair_name = "(" + h_name + ", " + hinted_type_string(t_hl, hint) + ")";
      const TypeSum t_h = identify(subspace_algebra(hh), seed);
      const BbMatch m = is_bb_pair(t_h, t_hl, nmax);
      if (m.matched) {
        std::ostringstream d;
        d << "pair " << pair_name << " matches case (" << m.via.bb_case << ") row " << m.via.row;
        if (m.via.n > 0) d << " at n = " << m.via.n;
        if (m.via.slope_dependent) d << " (slope-dependent circle)";
        add("b", "(h, h cap l) is a Berard-Bergery pair", true, true, d.str());
      } else {
        add("b", "(h, h cap l) is a Berard-Bergery pair", true, false,
            "pair " + pair_name + " not in Table 2 => no fat canonical-connection bundle");
      }
    }
  }

  // (c) symmetric base of maximal rank
  {
    const bool sym = is_symmetric_pair(conn.pair);
    const bool maxrank = is_maximal_rank_pair(conn.pair, seed);
    std::ostringstream d;
    d << "symmetric = " << (sym ? "yes" : "no") << ", maximal rank = " << (maxrank ? "yes" : "no");
    add("c", "K/H is a symmetric space of maximal rank", true, sym && maxrank, d.str());
  }

  // (d) ideal decompositions h = h' + n' and g = h' + n
  {
    const AlgebraPtr h_alg = subspace_algebra(hh);
    Subspace hl_in_h = zero_subspace(h_alg);
    if (hh.dim() > 0) {
      const SpanSolver solver(hh.basis);
      Mat coords(hh.dim(), hl.dim());
      for (int c = 0; c < hl.dim(); ++c) {
        const auto co = solver.coords(hl.basis.column(c));
        if (!co) throw std::logic_error("verify_necessary_conditions: intersection escapes lambda(h)");
        coords.set_column(c, *co);
      }
      hl_in_h = make_subspace(h_alg, coords);
    }
    const Subspace nprime = maximal_common_ideal(hl_in_h);
    const Subspace hprime_in_h = complement_ideal(nprime);
    const Subspace hprime = make_subspace(g, hh.basis * hprime_in_h.basis);
    const Subspace n = maximal_common_ideal(l);
    const bool direct = intersect(hprime, n).dim() == 0 && subspace_sum(hprime, n).dim() == g->dim();
    std::ostringstream d;
    d << "dim n' = " << nprime.dim() << ", dim h' = " << hprime.dim() << ", dim n = " << n.dim()
      << "; g = h' + n " << (direct ? "splits" : "fails to split");
    add("d", "h = h' + n' and g = h' + n", true, direct, d.str());
  }

  // (e) simple g forces G = H
  {
    const TypeSum t_g = identify(g, seed);
    const bool simple = t_g.identified && t_g.factors.size() == 1 && t_g.torus_rank == 0;
    if (!simple) {
      add("e", "simple g forces G = H", false, true, "g = " + t_g.to_string() + " is not simple");
    } else {
      std::ostringstream d;
      d << "dim lambda(h) = " << hh.dim() << " of dim g = " << g->dim()
        << (hh.dim() == g->dim() ? ": G = H" : ": G != H");
      add("e", "simple g forces G = H", true, hh.dim() == g->dim(), d.str());
    }
  }

  if (rep.all_pass) rep.conclusion = "all necessary conditions hold";
  return rep;
}

}  // namespace fatlab
