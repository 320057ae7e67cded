#include <catch_amalgamated.hpp>
#include <fstream>
#include <sstream>

#include "fatlab/tables.hpp"

using namespace fatlab;

TEST_CASE("embedded table data is pinned byte-exactly") {
  const Tables& tb = tables();
  REQUIRE(tb.schema_version == 1);
  REQUIRE(tb.t1.size() == 17);
  REQUIRE(tb.t2.size() == 20);
  REQUIRE(fnv1a64(tables_json_text()) == 8343684969241771894ull);

  // the shipped data file is the same bytes as the embedded source of truth
  std::ifstream in(std::string(FATLAB_SOURCE_DIR) + "/data/tables.json", std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  REQUIRE(buf.str() == tables_json_text());
}

TEST_CASE("symbolic sums re-parse to themselves") {
  const Tables& tb = tables();
  auto roundtrip = [](const SymbolicSum& s) {
    const SymbolicSum again = parse_symbolic_sum(s.text);
    REQUIRE(again.text == s.text);
    REQUIRE(again.terms.size() == s.terms.size());
    for (size_t i = 0; i < s.terms.size(); ++i) {
      REQUIRE(again.terms[i].torus == s.terms[i].torus);
      REQUIRE(again.terms[i].torus_spelling == s.terms[i].torus_spelling);
      REQUIRE(again.terms[i].bar == s.terms[i].bar);
      REQUIRE(again.terms[i].series == s.terms[i].series);
      REQUIRE(again.terms[i].rank.a == s.terms[i].rank.a);
      REQUIRE(again.terms[i].rank.b == s.terms[i].rank.b);
    }
  };
  for (const Table1Row& r : tb.t1) {
    roundtrip(r.g);
    roundtrip(r.h);
    roundtrip(r.l);
    roundtrip(r.hl);
  }
  for (const Table2Row& r : tb.t2) {
    roundtrip(r.h);
    roundtrip(r.hl);
  }
}

TEST_CASE("instantiation: display strings, normalization, n restrictions") {
  const Tables& tb = tables();
  Table1Instance r1n2 = instantiate(tb.t1[0], 2);
  REQUIRE(r1n2.display == "(A3, C2, A2, C1)");
  REQUIRE(r1n2.h.to_string() == "B2");   // C2 respelled by normalization
  REQUIRE(r1n2.hl.to_string() == "A1");  // C1 respelled
  REQUIRE_THROWS_AS(instantiate(tb.t1[0], 1), std::invalid_argument);

  Table2Instance t2r3 = instantiate(tb.t2[2], 3);
  REQUIRE(t2r3.display == "(C2+A1, C2+R1)");
  REQUIRE_FALSE(t2r3.slope_dependent);

  Table2Instance t2r19 = instantiate(tb.t2[18], 2);
  REQUIRE(t2r19.display == "(R+A1, Ra)");
  REQUIRE(t2r19.slope_dependent);

  // fixed rows ignore the parameter
  Table1Instance r3a = instantiate(tb.t1[2], 0);
  Table1Instance r3b = instantiate(tb.t1[2], 9);
  REQUIRE(r3a.display == r3b.display);
}

TEST_CASE("instantiated types are normalization fixpoints") {
  const Tables& tb = tables();
  for (const Table1Row& r : tb.t1) {
    const int n = r.has_n ? r.min_n : 0;
    const Table1Instance inst = instantiate(r, n);
    for (const TypeSum* t : {&inst.g, &inst.h, &inst.l, &inst.hl}) {
      REQUIRE(t->identified);
      // re-folding the factors through the normalizer reproduces the sum
      TypeSum again;
      again.identified = true;
      again.torus_rank = t->torus_rank;
      for (const SimpleFactor& f : t->factors) detail::push_normalized(again, f.series, f.rank);
      again.sort_canonical();
      REQUIRE(again.to_string() == t->to_string());
      REQUIRE(same_type(again, *t));
    }
  }
}

TEST_CASE("membership across the five case families") {
  BbMatch m1 = is_bb_pair(parse_type("C(3)+A(1)"), parse_type("C(3)+R1"));
  REQUIRE(m1.matched);
  REQUIRE(m1.via.bb_case == 'A');

  REQUIRE_FALSE(is_bb_pair(parse_type("C(2)"), parse_type("C(1)")).matched);

  BbMatch m3 = is_bb_pair(parse_type("B(4)"), parse_type("D(4)"));
  REQUIRE(m3.matched);
  REQUIRE(m3.via.bb_case == 'C');
  REQUIRE(m3.via.row == 18);

  BbMatch m4 = is_bb_pair(parse_type("C(3)+A(1)"), parse_type("C(3)"));
  REQUIRE(m4.matched);
  REQUIRE(m4.via.bb_case == 'B');

  BbMatch m5 = is_bb_pair(parse_type("C(3)+A(1)+A(1)+A(1)"), parse_type("C(3)+A(1)+A(1)"));
  REQUIRE(m5.matched);
  REQUIRE(m5.via.bb_case == 'E');

  BbMatch m6 = is_bb_pair(parse_type("A(1)+A(1)"), parse_type("A(1)+T"));
  REQUIRE(m6.matched);
  REQUIRE(m6.via.bb_case == 'A');

  BbMatch m7 = is_bb_pair(parse_type("A(2)+T+A(1)"), parse_type("A(2)+T"));
  REQUIRE(m7.matched);
  REQUIRE(m7.via.bb_case == 'D');
  REQUIRE(m7.via.slope_dependent);

  // the missing-pair message driver: the su(4) counterexample pair
  REQUIRE_FALSE(is_bb_pair(parse_type("C(2)"), parse_type("C(1)+T")).matched);
}

TEST_CASE("tables are disjoint; an injected fake is caught exactly once") {
  DisjointReport rep = tables_disjoint(12);
  REQUIRE(rep.pairs_checked == 85);
  REQUIRE(rep.collisions.empty());

  Table2Row fake;
  fake.row = 99;
  fake.bb_case = 'X';
  fake.h = parse_symbolic_sum("C(2)");
  fake.hl = parse_symbolic_sum("C(1)");
  DisjointReport rep2 = tables_disjoint(12, {fake});
  REQUIRE(rep2.collisions.size() == 1);
  REQUIRE(rep2.collisions[0].t1_row == 1);
  REQUIRE(rep2.collisions[0].n == 2);
  REQUIRE(rep2.collisions[0].via.bb_case == 'X');

  // monotone in the bound: the same collision persists at a larger bound
  DisjointReport rep3 = tables_disjoint(14, {fake});
  bool found = false;
  for (const Collision& c : rep3.collisions)
    if (c.t1_row == 1 && c.n == 2 && c.via.bb_case == 'X') found = true;
  REQUIRE(found);
  REQUIRE(rep3.collisions.size() >= rep2.collisions.size());
  REQUIRE(rep3.pairs_checked > rep.pairs_checked);

  DisjointReport rep0 = tables_disjoint(1);
  REQUIRE(rep0.pairs_checked == 0);
  REQUIRE_FALSE(rep0.note.empty());
  REQUIRE(rep0.collisions.empty());
}

TEST_CASE("numeric spot checks at the smallest admissible parameters") {
  struct Case {
    int row, n;
  };
  const Case cases[] = {{1, 2}, {2, 2}, {3, 0}, {4, 0}, {5, 0}, {6, 3},
                        {7, 3}, {8, 2}, {9, 2}, {10, 2}, {11, 0}};
  for (const Case& c : cases) {
    SpotReport sr = numeric_spot_check(c.row, c.n);
    INFO("row " << c.row << " n " << c.n << ": " << sr.message << sr.skipped);
    if (c.row == 11) {
      REQUIRE_FALSE(sr.applicable);
      REQUIRE(sr.skipped == "symbolic-only");
    } else {
      REQUIRE(sr.applicable);
      REQUIRE(sr.pass);
    }
  }

  SpotReport r1 = numeric_spot_check(1, 2);
  REQUIRE(r1.g_dim == 15);
  REQUIRE(r1.h_dim == 10);
  REQUIRE(r1.l_dim == 8);
  REQUIRE(r1.inter_dim == 3);
  REQUIRE(r1.inter_type == "A1");

  SpotReport r10 = numeric_spot_check(10, 2);
  REQUIRE(r10.g_dim == 28);
  REQUIRE(r10.inter_dim == 6);
  REQUIRE(r10.inter_type == "A1+A1");

  REQUIRE_THROWS_AS(numeric_spot_check(1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(numeric_spot_check(77, 2), std::invalid_argument);
}

TEST_CASE("spot checks at n = 3 for the quaternionic rows") {
  for (int row : {8, 9, 10}) {
    SpotReport sr = numeric_spot_check(row, 3);
    INFO("row " << row << ": " << sr.message);
    REQUIRE(sr.applicable);
    REQUIRE(sr.pass);
    REQUIRE(sr.g_dim == 66);
  }
}

// Full parameter sweep of every constructible row. The larger instantiations
// take minutes, so the sweep runs only when requested by tag.
TEST_CASE("constructible rows pass for all admissible n up to 6", "[.slow]") {
  const Tables& tb = tables();
  for (const Table1Row& r : tb.t1) {
    if (!r.constructible) continue;
    if (!r.has_n) {
      SpotReport sr = numeric_spot_check(r.row, 0);
      INFO("row " << r.row << ": " << sr.message);
      REQUIRE(sr.pass);
      continue;
    }
    for (int n = r.min_n; n <= 6; ++n) {
      SpotReport sr = numeric_spot_check(r.row, n);
      INFO("row " << r.row << " n " << n << ": " << sr.message);
      REQUIRE(sr.pass);
    }
  }
}
