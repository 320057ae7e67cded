#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fatlab/homspace.hpp"
#include "fatlab/identify.hpp"
#include "fatlab/liealg.hpp"
#include "fatlab/subalg.hpp"

namespace fatlab {

/// Canonical serialization of the two classification tables. The copy under
/// data/tables.json must stay byte-identical to this string; a unit test pins
/// the FNV-1a-64 checksum of both.
inline const std::string& tables_json_text() {
  static const std::string text = R"json({
  "schema_version": 1,
  "table1": [
    {"row": 1, "g": "A(2n-1)", "h": "C(n)", "emb_h": "phi1", "l": "A(2n-2)", "emb_l": "phi1+N", "hl": "C(n-1)", "min_n": 2, "constructible": true},
    {"row": 2, "g": "A(2n-1)", "h": "C(n)", "emb_h": "phi1", "l": "A(2n-2)+T", "emb_l": "phi1+N", "hl": "C(n-1)+T", "min_n": 2, "constructible": true},
    {"row": 3, "g": "B(3)", "h": "G(2)", "emb_h": "phi2", "l": "B(2)", "emb_l": "phi1+2N", "hl": "A(1)", "constructible": true},
    {"row": 4, "g": "B(3)", "h": "G(2)", "emb_h": "phi2", "l": "B(2)+T", "emb_l": "phi1+2N", "hl": "A(1)+T", "constructible": true},
    {"row": 5, "g": "B(3)", "h": "G(2)", "emb_h": "phi2", "l": "D(3)", "emb_l": "phi1+N", "hl": "A(2)", "constructible": true},
    {"row": 6, "g": "D(n+1)", "h": "B(n)", "emb_h": "phi1+N", "l": "A(n)", "emb_l": "phi1+phin", "hl": "A(n-1)", "min_n": 3, "constructible": true},
    {"row": 7, "g": "D(n+1)", "h": "B(n)", "emb_h": "phi1+N", "l": "A(n)+T", "emb_l": "phi1+phin", "hl": "A(n-1)+T", "min_n": 3, "constructible": true},
    {"row": 8, "g": "D(2n)", "h": "B(2n-1)", "emb_h": "phi1+N", "l": "C(n)", "emb_l": "phi1+phi1", "hl": "C(n-1)", "min_n": 2, "constructible": true},
    {"row": 9, "g": "D(2n)", "h": "B(2n-1)", "emb_h": "phi1+N", "l": "C(n)+T", "emb_l": "phi1+phi1", "hl": "C(n-1)+T", "min_n": 2, "constructible": true},
    {"row": 10, "g": "D(2n)", "h": "B(2n-1)", "emb_h": "phi1+N", "l": "C(n)+A(1)", "emb_l": "phi1+phi1", "hl": "C(n-1)+A(1)", "min_n": 2, "constructible": true},
    {"row": 11, "g": "D(8)", "h": "B(7)", "emb_h": "phi1+N", "l": "B(4)", "emb_l": "phi4", "hl": "B(3)", "constructible": false},
    {"row": 12, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "B(2)", "emb_l": "phi1+3N", "hl": "A(1)", "constructible": false},
    {"row": 13, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "B(2)+T", "emb_l": "phi1+3N", "hl": "A(1)+T", "constructible": false},
    {"row": 14, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "B(2)+A(1)", "emb_l": "phi1+3N", "hl": "A(1)+A(1)", "constructible": false},
    {"row": 15, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "D(3)", "emb_l": "phi1+2N", "hl": "A(2)", "constructible": false},
    {"row": 16, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "D(3)+T", "emb_l": "phi1+2N", "hl": "A(2)+T", "constructible": false},
    {"row": 17, "g": "D(4)", "h": "B(3)", "emb_h": "phi3", "l": "B(3)", "emb_l": "phi1+N", "hl": "G(2)", "constructible": false}
  ],
  "table2": [
    {"row": 1, "case": "A", "h": "A(n-2)+R+A(1)", "hl": "A(n-2)+R+R1", "min_n": 2},
    {"row": 2, "case": "A", "h": "B(n-2)+A(1)+A(1)", "hl": "B(n-2)+A(1)+R1", "min_n": 2},
    {"row": 3, "case": "A", "h": "C(n-1)+A(1)", "hl": "C(n-1)+R1", "min_n": 2},
    {"row": 4, "case": "A", "h": "D(n-2)+A(1)+A(1)", "hl": "D(n-2)+A(1)+R1", "min_n": 3},
    {"row": 5, "case": "A", "h": "A(5)+A(1)", "hl": "A(5)+R1"},
    {"row": 6, "case": "A", "h": "D(6)+A(1)", "hl": "D(6)+R1"},
    {"row": 7, "case": "A", "h": "E(7)+A(1)", "hl": "E(7)+R1"},
    {"row": 8, "case": "A", "h": "C(3)+A(1)", "hl": "C(3)+R1"},
    {"row": 9, "case": "A", "h": "~A(1)+A(1)", "hl": "~A(1)+R1"},
    {"row": 10, "case": "A", "h": "A(1)+~A(1)", "hl": "A(1)+R1"},
    {"row": 11, "case": "C", "h": "A(n-4)+R+A(3)", "hl": "A(n-4)+R+~C(2)", "min_n": 4},
    {"row": 12, "case": "C", "h": "B(n-4)+D(4)", "hl": "B(n-4)+~B(3)", "min_n": 4},
    {"row": 13, "case": "C", "h": "C(n-2)+C(2)", "hl": "C(n-2)+A(1)+A(1)", "min_n": 3},
    {"row": 14, "case": "C", "h": "D(n-4)+D(4)", "hl": "D(n-4)+~B(3)", "min_n": 5},
    {"row": 15, "case": "C", "h": "R+D(5)", "hl": "R+B(4)"},
    {"row": 16, "case": "C", "h": "A(1)+D(6)", "hl": "A(1)+B(5)"},
    {"row": 17, "case": "C", "h": "D(8)", "hl": "B(7)"},
    {"row": 18, "case": "C", "h": "B(4)", "hl": "D(4)"},
    {"row": 19, "case": "D", "h": "A(n-2)+R+A(1)", "hl": "A(n-2)+Ra", "min_n": 2},
    {"row": 20, "case": "D", "h": "R+A(1)+A(1)", "hl": "A(1)+Ra"}
  ]
}
)json";
  return text;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Linear expression a*n + b for symbolic ranks.
struct LinExpr {
  int a = 0, b = 0;
  int eval(int n) const { return a * n + b; }
  bool has_n() const { return a != 0; }
};

/// One summand of a symbolic type: a simple series with a rank expression, or
/// a torus spelled T, R, R1 or Ra. Bars mark highest/lowest-root copies and
/// torus spellings record slopes; both are kept for display and flags only,
/// matching ignores them.
struct SymTerm {
  bool torus = false;
  std::string torus_spelling;  // "T", "R", "R1", "Ra"
  bool bar = false;
  char series = 'A';
  LinExpr rank;
};

struct SymbolicSum {
  std::string text;
  std::vector<SymTerm> terms;

  bool has_n() const {
    for (const SymTerm& t : terms)
      if (!t.torus && t.rank.has_n()) return true;
    return false;
  }

  bool slope_torus() const {
    for (const SymTerm& t : terms)
      if (t.torus && t.torus_spelling == "Ra") return true;
    return false;
  }

  TypeSum instantiate(int n) const {
    TypeSum out;
    for (const SymTerm& t : terms) {
      if (t.torus) {
        out.torus_rank += 1;
        continue;
      }
      const int r = t.rank.eval(n);
      if (r < 0) throw std::invalid_argument("SymbolicSum: negative rank in " + text);
      detail::push_normalized(out, t.series, r);
    }
    out.sort_canonical();
    return out;
  }

  /// Natural spelling with n substituted, e.g. "C2+T"; keeps bars and torus
  /// decorations, drops rank-0 summands.
  std::string display(int n) const {
    std::string s;
    for (const SymTerm& t : terms) {
      std::string piece;
      if (t.torus) {
        piece = t.torus_spelling;
      } else {
        const int r = t.rank.eval(n);
        if (r == 0) continue;
        piece = (t.bar ? "~" : "") + std::string(1, t.series) + std::to_string(r);
      }
      if (!s.empty()) s += "+";
      s += piece;
    }
    return s.empty() ? "0" : s;
  }
};

namespace detail {

inline LinExpr parse_linexpr(const std::string& s) {
  LinExpr e;
  size_t i = 0;
  auto read_int = [&]() {
    int sign = 1;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) sign = (s[i++] == '-') ? -1 : 1;
    int v = 0;
    bool any = false;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
      v = v * 10 + (s[i++] - '0');
      any = true;
    }
    return std::make_pair(sign * v, any);
  };
  auto [first, has_first] = read_int();
  if (i < s.size() && s[i] == 'n') {
    ++i;
    e.a = has_first ? first : (first < 0 ? -1 : 1);
    if (!has_first) e.a = 1;
    auto [second, has_second] = read_int();
    e.b = has_second ? second : 0;
  } else {
    e.b = has_first ? first : 0;
    if (!has_first) throw std::invalid_argument("parse_linexpr: empty expression");
  }
  if (i != s.size()) throw std::invalid_argument("parse_linexpr: trailing characters in '" + s + "'");
  return e;
}

}  // namespace detail

inline SymbolicSum parse_symbolic_sum(const std::string& text) {
  SymbolicSum out;
  out.text = text;
  size_t pos = 0;
  while (pos <= text.size()) {
    // split on '+' at parenthesis depth 0 only; ranks may contain "n+1"
    size_t next = text.size();
    int depth = 0;
    for (size_t i = pos; i < text.size(); ++i) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') --depth;
      if (text[i] == '+' && depth == 0) {
        next = i;
        break;
      }
    }
    std::string part = text.substr(pos, next - pos);
    if (part.empty()) throw std::invalid_argument("parse_symbolic_sum: empty term in '" + text + "'");
    SymTerm term;
    if (part == "T" || part == "R" || part == "R1" || part == "Ra") {
      term.torus = true;
      term.torus_spelling = part;
    } else {
      size_t i = 0;
      if (part[i] == '~') {
        term.bar = true;
        ++i;
      }
      if (i >= part.size() || part[i] < 'A' || part[i] > 'G')
        throw std::invalid_argument("parse_symbolic_sum: bad series in '" + part + "'");
      term.series = part[i++];
      if (i >= part.size() || part[i] != '(' || part.back() != ')')
        throw std::invalid_argument("parse_symbolic_sum: missing rank in '" + part + "'");
      term.rank = detail::parse_linexpr(part.substr(i + 1, part.size() - i - 2));
    }
    out.terms.push_back(std::move(term));
    if (next == text.size()) break;
    pos = next + 1;
  }
  return out;
}

/// Convenience for concrete type strings such as "C(3)+A(1)".
inline TypeSum parse_type(const std::string& text) { return parse_symbolic_sum(text).instantiate(0); }

struct Table1Row {
  int row = 0;
  SymbolicSum g, h, l, hl;
  std::string emb_h, emb_l;
  bool has_n = false;
  int min_n = 0;
  bool constructible = false;
};

struct Table2Row {
  int row = 0;
  char bb_case = 'A';
  SymbolicSum h, hl;
  bool has_n = false;
  int min_n = 0;
};

struct Tables {
  int schema_version = 0;
  std::vector<Table1Row> t1;
  std::vector<Table2Row> t2;
};

namespace detail {

inline Tables load_tables() {
  const nlohmann::json j = nlohmann::json::parse(tables_json_text());
  Tables out;
  out.schema_version = j.at("schema_version").get<int>();
  for (const auto& r : j.at("table1")) {
    Table1Row row;
    row.row = r.at("row").get<int>();
    row.g = parse_symbolic_sum(r.at("g").get<std::string>());
    row.h = parse_symbolic_sum(r.at("h").get<std::string>());
    row.l = parse_symbolic_sum(r.at("l").get<std::string>());
    row.hl = parse_symbolic_sum(r.at("hl").get<std::string>());
    row.emb_h = r.at("emb_h").get<std::string>();
    row.emb_l = r.at("emb_l").get<std::string>();
    row.constructible = r.at("constructible").get<bool>();
    row.has_n = row.g.has_n() || row.h.has_n() || row.l.has_n() || row.hl.has_n();
    if (row.has_n != r.contains("min_n"))
      throw std::logic_error("tables data: min_n presence disagrees with symbolic parameters");
    row.min_n = row.has_n ? r.at("min_n").get<int>() : 0;
    out.t1.push_back(std::move(row));
  }
  for (const auto& r : j.at("table2")) {
    Table2Row row;
    row.row = r.at("row").get<int>();
    row.bb_case = r.at("case").get<std::string>().at(0);
    row.h = parse_symbolic_sum(r.at("h").get<std::string>());
    row.hl = parse_symbolic_sum(r.at("hl").get<std::string>());
    row.has_n = row.h.has_n() || row.hl.has_n();
    if (row.has_n != r.contains("min_n"))
      throw std::logic_error("tables data: min_n presence disagrees with symbolic parameters");
    row.min_n = row.has_n ? r.at("min_n").get<int>() : 0;
    out.t2.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline const Tables& tables() {
  static const Tables t = detail::load_tables();
  return t;
}

struct Table1Instance {
  TypeSum g, h, l, hl;
  std::string display;
};

struct Table2Instance {
  TypeSum h, hl;
  std::string display;
  bool slope_dependent = false;
};

inline Table1Instance instantiate(const Table1Row& row, int n) {
  if (row.has_n && n < row.min_n)
    throw std::invalid_argument("instantiate: restriction n >= " + std::to_string(row.min_n) + " violated");
  const int nn = row.has_n ? n : 0;
  Table1Instance out;
  out.g = row.g.instantiate(nn);
  out.h = row.h.instantiate(nn);
  out.l = row.l.instantiate(nn);
  out.hl = row.hl.instantiate(nn);
  out.display = "(" + row.g.display(nn) + ", " + row.h.display(nn) + ", " + row.l.display(nn) + ", " +
                row.hl.display(nn) + ")";
  return out;
}

inline Table2Instance instantiate(const Table2Row& row, int n) {
  if (row.has_n && n < row.min_n)
    throw std::invalid_argument("instantiate: restriction n >= " + std::to_string(row.min_n) + " violated");
  const int nn = row.has_n ? n : 0;
  Table2Instance out;
  out.h = row.h.instantiate(nn);
  out.hl = row.hl.instantiate(nn);
  out.display = "(" + row.h.display(nn) + ", " + row.hl.display(nn) + ")";
  out.slope_dependent = row.h.slope_torus() || row.hl.slope_torus();
  return out;
}

/// One candidate pair the membership query compares against: a base-table
/// instantiation or a generated case-(B)/(E) variant.
struct BbCandidate {
  TypeSum h, hl;
  char bb_case = 'A';      // 'A','C','D' base, 'B','E' generated, 'X' injected
  int row = 0, n = 0;      // source row (first factor for case E)
  int row2 = 0, n2 = 0;    // second factor for case E
  bool slope_dependent = false;
  std::string display;
};

namespace detail {

/// All candidate pairs up to the parameter bound: base rows, case-(B) rows
/// (case (A) with the R1 summand removed from the intersection), and case-(E)
/// rows (two case-(B) pairs glued along a diagonal A1). Injected extra rows
/// are treated as fixed base rows.
inline std::vector<BbCandidate> bb_candidates(int nmax, const std::vector<Table2Row>& extra = {}) {
  std::vector<BbCandidate> out;
  std::vector<BbCandidate> bcase;  // case-(B) pairs feed the case-(E) product
  auto add_base = [&](const Table2Row& row) {
    std::vector<int> ns;
    if (row.has_n) {
      for (int n = row.min_n; n <= nmax; ++n) ns.push_back(n);
    } else {
      ns.push_back(0);
    }
    for (int n : ns) {
      const Table2Instance inst = instantiate(row, n);
      out.push_back({inst.h, inst.hl, row.bb_case, row.row, n, 0, 0, inst.slope_dependent, inst.display});
      if (row.bb_case == 'A') {
        // case (B): remove the R1 circle from the intersection
        TypeSum hl = inst.hl;
        if (hl.torus_rank < 1) throw std::logic_error("case-A row without a circle in the intersection");
        hl.torus_rank -= 1;
        BbCandidate b{inst.h, hl, 'B', row.row, n, 0, 0, false,
                      "(" + row.h.display(n) + ", " + row.hl.display(n) + " minus R1)"};
        bcase.push_back(b);
        out.push_back(std::move(b));
      }
    }
  };
  for (const Table2Row& row : tables().t2) add_base(row);
  for (const Table2Row& row : extra) add_base(row);
  // case (E): glue two case-(B) pairs (A1 + h', h') and (A1 + h'', h'')
  // into (A1 + h' + A1 + h'', A1 + h' + h''); the diagonal-A1 variant is the
  // row-9/10 case-(B) pair, so it is covered by the product.
  const size_t nb = bcase.size();
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = i; j < nb; ++j) {
      TypeSum a1;
      a1.factors.push_back({'A', 1, false});
      BbCandidate e;
      e.h = type_sum(bcase[i].h, bcase[j].h);
      e.hl = type_sum(a1, type_sum(bcase[i].hl, bcase[j].hl));
      e.bb_case = 'E';
      e.row = bcase[i].row;
      e.n = bcase[i].n;
      e.row2 = bcase[j].row;
      e.n2 = bcase[j].n;
      e.display = "(E: rows " + std::to_string(e.row) + "," + std::to_string(e.row2) + ")";
      out.push_back(std::move(e));
    }
  return out;
}

}  // namespace detail

struct BbMatch {
  bool matched = false;
  BbCandidate via;
  explicit operator bool() const { return matched; }
};

/// Membership of a normalized pair among the Bérard-Bergery pairs, searching
/// base rows first, then the generated case-(B)/(E) variants. A positive
/// verdict through a slope-decorated row is flagged slope_dependent.
inline BbMatch is_bb_pair(const TypeSum& h, const TypeSum& hl, int nmax = 12,
                          const std::vector<Table2Row>& extra = {}) {
  BbMatch m;
  std::vector<BbCandidate> cands = detail::bb_candidates(nmax, extra);
  std::stable_sort(cands.begin(), cands.end(), [](const BbCandidate& a, const BbCandidate& b) {
    auto order = [](char c) { return c == 'B' ? 4 : c == 'E' ? 5 : c == 'X' ? 3 : 0; };
    return order(a.bb_case) < order(b.bb_case);
  });
  for (const BbCandidate& c : cands) {
    if (!same_type(h, c.h) || !same_type(hl, c.hl)) continue;
    m.matched = true;
    m.via = c;
    return m;
  }
  return m;
}

struct Collision {
  int t1_row = 0;
  int n = 0;
  std::string pair;
  BbCandidate via;
};

struct DisjointReport {
  int pairs_checked = 0;
  std::vector<Collision> collisions;
  std::string note;
};

/// Enumerates every (h, h cap l) pair from Table 1 instantiations up to the
/// bound and reports any that the Bérard-Bergery membership query accepts.
inline DisjointReport tables_disjoint(int nmax, const std::vector<Table2Row>& extra = {}) {
  DisjointReport rep;
  if (nmax < 2) {
    rep.note = "bound below every row restriction; zero pairs checked";
    return rep;
  }
  const std::vector<BbCandidate> cands = detail::bb_candidates(nmax, extra);
  for (const Table1Row& row : tables().t1) {
    std::vector<int> ns;
    if (row.has_n) {
      for (int n = row.min_n; n <= nmax; ++n) ns.push_back(n);
    } else {
      ns.push_back(0);
    }
    for (int n : ns) {
      const Table1Instance inst = instantiate(row, n);
      ++rep.pairs_checked;
      for (const BbCandidate& c : cands) {
        if (!same_type(inst.h, c.h) || !same_type(inst.hl, c.hl)) continue;
        rep.collisions.push_back(
            {row.row, n, "(" + row.h.display(n) + ", " + row.hl.display(n) + ")", c});
        break;
      }
    }
  }
  return rep;
}

/// Result of building one Table 1 row as concrete algebras and checking the
/// factorization and intersection type exactly.
struct SpotReport {
  int row = 0, n = 0;
  bool applicable = true;
  std::string skipped;  // "symbolic-only" for spinor rows
  bool pass = false;
  std::string message;
  int g_dim = 0, h_dim = 0, l_dim = 0, sum_dim = 0, inter_dim = 0;
  std::string inter_type, expect_hl;
};

namespace detail {

struct SpotBuild {
  AlgebraPtr g;
  Subspace h, l;
};

/// Concrete realizations of the constructible rows. The +T and +A1 summands
/// of l are realized as the centralizer of the main block, whose dimension
/// and type are re-verified downstream through the l-column type check.
inline SpotBuild spot_build(const Table1Row& row, int n) {
  switch (row.row) {
    case 1:
    case 2: {
      AlgebraPtr g = make_su(2 * n);
      Subspace h = make_subspace(g, embed_defining_sp_in_su(make_sp(n), g).matrix);
      Subspace lm = make_subspace(g, embed_block_upper_left(make_su(2 * n - 1), g).matrix);
      Subspace l = (row.row == 2) ? subspace_sum(lm, centralizer(lm)) : lm;
      return {g, h, l};
    }
    case 3:
    case 4:
    case 5: {
      AlgebraPtr g = make_so(7);
      Subspace h = make_subspace(g, embed_realization(make_g2(), g).matrix);
      Subspace lm = make_subspace(
          g, embed_block_upper_left(make_so(row.row == 5 ? 6 : 5), g).matrix);
      Subspace l = (row.row == 4) ? subspace_sum(lm, centralizer(lm)) : lm;
      return {g, h, l};
    }
    case 6:
    case 7: {
      AlgebraPtr g = make_so(2 * n + 2);
      Subspace h = make_subspace(g, embed_block_upper_left(make_so(2 * n + 1), g).matrix);
      Subspace lm = make_subspace(g, embed_realify(make_su(n + 1), g).matrix);
      Subspace l = (row.row == 7) ? subspace_sum(lm, centralizer(lm)) : lm;
      return {g, h, l};
    }
    case 8:
    case 9:
    case 10: {
      AlgebraPtr g = make_so(4 * n);
      AlgebraPtr su = make_su(2 * n);
      Subspace h = make_subspace(g, embed_block_upper_left(make_so(4 * n - 1), g).matrix);
      const Embedding sp_in_su = embed_defining_sp_in_su(make_sp(n), su);
      const Embedding su_in_so = embed_realify(su, g);
      Subspace lm = make_subspace(g, embed_compose(su_in_so, sp_in_su).matrix);
      Subspace l = lm;
      if (row.row == 9) l = subspace_sum(lm, make_subspace(g, embed_complex_structure_torus(make_t(1), g).matrix));
      if (row.row == 10) l = subspace_sum(lm, centralizer(lm));
      return {g, h, l};
    }
    default:
      throw std::logic_error("spot_build: row marked constructible without a recipe");
  }
}

}  // namespace detail

/// Builds one Table 1 row concretely and checks, with exact arithmetic, that
/// g = h + l is a factorization with proper parts, that l has the type the
/// row states, and that h cap l has the stated type and dimension.
inline SpotReport numeric_spot_check(int row_index, int n, uint64_t seed = 11) {
  const Tables& tb = tables();
  const Table1Row* row = nullptr;
  for (const Table1Row& r : tb.t1)
    if (r.row == row_index) row = &r;
  if (!row) throw std::invalid_argument("numeric_spot_check: no such row");
  SpotReport rep;
  rep.row = row_index;
  rep.n = row->has_n ? n : 0;
  if (!row->constructible) {
    rep.applicable = false;
    rep.skipped = "symbolic-only";
    return rep;
  }
  if (row->has_n && n < row->min_n)
    throw std::invalid_argument("numeric_spot_check: restriction n >= " + std::to_string(row->min_n) +
                                " violated");
  const Table1Instance inst = instantiate(*row, rep.n);
  const detail::SpotBuild b = detail::spot_build(*row, rep.n);
  rep.g_dim = b.g->dim();
  rep.h_dim = b.h.dim();
  rep.l_dim = b.l.dim();
  std::ostringstream msg;
  bool ok = true;

  if (!is_bracket_closed(b.h) || !is_bracket_closed(b.l)) {
    ok = false;
    msg << "a factor is not a subalgebra; ";
  }
  rep.sum_dim = subspace_sum(b.h, b.l).dim();
  if (!is_factorization(b.g, b.h, b.l)) {
    ok = false;
    msg << "not a proper factorization (sum " << rep.sum_dim << " of " << rep.g_dim << "); ";
  }

  const Subspace inter = intersect(b.h, b.l);
  rep.inter_dim = inter.dim();
  rep.expect_hl = inst.hl.to_string();
  if (rep.inter_dim != type_dimension(inst.hl)) {
    ok = false;
    msg << "intersection dim " << rep.inter_dim << " != " << type_dimension(inst.hl) << "; ";
  }
  const TypeSum t_inter = identify(subspace_algebra(inter), seed);
  rep.inter_type = t_inter.to_string();
  if (!same_type(t_inter, inst.hl)) {
    ok = false;
    msg << "intersection type " << rep.inter_type << " != " << rep.expect_hl << "; ";
  }
  const TypeSum t_l = identify(subspace_algebra(b.l), seed);
  if (!same_type(t_l, inst.l)) {
    ok = false;
    msg << "l type " << t_l.to_string() << " != " << inst.l.to_string() << "; ";
  }

  rep.pass = ok;
  rep.message = ok ? inst.display + " verified" : msg.str();
  return rep;
}

}  // namespace fatlab
