#include <catch_amalgamated.hpp>
#include <cmath>

#include "fatlab/poly.hpp"
#include "support.hpp"

using namespace fatlab;
using namespace fatlab::testsupport;

namespace {

UPoly up(std::vector<Rat> ascending) { return UPoly(std::move(ascending)); }

}  // namespace

TEST_CASE("UPoly arithmetic, remainder, gcd, squarefree part") {
  // p = (x - 1)^2 (x + 2) = x^3 - 3x + 2
  UPoly p = up({2, -3, 0, 1});
  REQUIRE(p.degree() == 3);
  REQUIRE(p.eval(Rat(1)) == 0);
  REQUIRE(p.eval(Rat(-2)) == 0);
  REQUIRE(p.eval(Rat(2)) == 4);

  UPoly d = p.derivative();  // 3x^2 - 3
  REQUIRE(d.degree() == 2);
  REQUIRE(d.eval(Rat(1)) == 0);

  // gcd(p, p') picks up the double root x = 1
  UPoly g = p.gcd(d);
  REQUIRE(g.degree() == 1);
  REQUIRE(g.eval(Rat(1)) == 0);

  UPoly sf = p.squarefree_part();  // (x - 1)(x + 2), up to scale
  REQUIRE(sf.degree() == 2);
  REQUIRE(sf.eval(Rat(1)) == 0);
  REQUIRE(sf.eval(Rat(-2)) == 0);
  REQUIRE(sf.eval(Rat(0)) != 0);

  UPoly r = p.rem(up({-1, 1}));  // remainder mod (x - 1) is p(1) = 0
  REQUIRE(r.is_zero());
}

TEST_CASE("Sturm root counting") {
  // (x^2 - 2)(x^2 - 3): four real roots
  UPoly p = up({6, 0, -5, 0, 1});
  REQUIRE(count_real_roots(p) == 4);
  REQUIRE(count_real_roots_in(p, Rat(0), Rat(2)) == 2);  // sqrt2, sqrt3 < 2? no: sqrt3 > 1.7 so both in (0,2)
  REQUIRE(count_real_roots_in(p, Rat(-2), Rat(0)) == 2);

  REQUIRE(count_real_roots(up({1, 0, 1})) == 0);      // x^2 + 1
  REQUIRE(count_real_roots(up({0, 0, 1})) == 1);      // x^2, squarefree collapse
  REQUIRE(count_real_roots(up({-1, 0, 0, 1})) == 1);  // x^3 - 1
}

TEST_CASE("cauchy bound dominates every real root") {
  UPoly p = up({6, 0, -5, 0, 1});
  const Rat b = cauchy_root_bound(p);
  REQUIRE(count_real_roots_in(p, -b, b) == 4);
}

TEST_CASE("isolation and refinement reach sqrt(2)") {
  UPoly p = up({-2, 0, 1});
  auto iso = isolate_one_real_root(p);
  REQUIRE(iso.bracket.has_value());
  REQUIRE_FALSE(iso.exact_root.has_value());
  const double x = refine_bracket_to_double(p, *iso.bracket);
  REQUIRE(std::abs(x * x - 2.0) < 1e-9);
}

TEST_CASE("rational root extraction") {
  // (2x - 1)(x + 3)(x^2 + 1)
  UPoly p = up({-1, 2}) * up({3, 1}) * up({1, 0, 1});
  auto roots = rational_roots(p);
  REQUIRE(roots.has_value());
  REQUIRE(roots->size() == 2);
  const bool has_half = (*roots)[0] == Rat(1, 2) || (*roots)[1] == Rat(1, 2);
  const bool has_m3 = (*roots)[0] == Rat(-3) || (*roots)[1] == Rat(-3);
  REQUIRE(has_half);
  REQUIRE(has_m3);

  auto none = rational_roots(up({-2, 0, 1}));  // x^2 - 2
  REQUIRE(none.has_value());
  REQUIRE(none->empty());

  REQUIRE_FALSE(find_rational_root(up({1, 0, 1})).has_value());
  auto fr = find_rational_root(up({0, 1}));
  REQUIRE(fr.has_value());
  REQUIRE(*fr == 0);
}

TEST_CASE("deflate_root divides out a known root") {
  UPoly p = up({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
  UPoly q = detail::deflate_root(p, Rat(2));
  REQUIRE(q.degree() == 2);
  REQUIRE(q.eval(Rat(1)) == 0);
  REQUIRE(q.eval(Rat(3)) == 0);
}

TEST_CASE("MPoly evaluation, gram matrix, binary dehomogenization") {
  // q = x0^2 + 4 x0 x1 - 3 x1^2
  MPoly x0 = MPoly::variable(2, 0), x1 = MPoly::variable(2, 1);
  MPoly q = x0 * x0 + (x0 * x1).scaled(Rat(4)) - (x1 * x1).scaled(Rat(3));
  REQUIRE(q.total_degree() == 2);
  REQUIRE(q.eval({Rat(1), Rat(2)}) == Rat(1 + 8 - 12));

  Mat g = q.gram_matrix();
  REQUIRE(g(0, 0) == 1);
  REQUIRE(g(1, 1) == -3);
  REQUIRE(g(0, 1) == 2);
  REQUIRE(g(1, 0) == 2);

  UPoly u = q.dehomogenize_binary();  // t^2 + 4t - 3
  REQUIRE(u.degree() == 2);
  REQUIRE(u.eval(Rat(0)) == -3);
  REQUIRE(u.eval(Rat(1)) == 2);

  MPoly lin = MPoly::linear_form({Rat(2), Rat(-1)});
  REQUIRE(lin.eval({Rat(3), Rat(4)}) == 2);
}

TEST_CASE("pencil_pfaffian matches the scalar pfaffian pointwise") {
  DetRng rng(404);
  for (int m : {2, 4, 6}) {
    const int v = 3;
    // random linear skew pencil F(u) = sum_a u_a F_a
    std::vector<Mat> forms;
    for (int a = 0; a < v; ++a) forms.push_back(random_skew(rng, m));
    std::vector<std::vector<std::vector<Rat>>> entry(
        m, std::vector<std::vector<Rat>>(m, std::vector<Rat>(v, Rat(0))));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < v; ++a) entry[i][j][a] = forms[a](i, j);
    MPoly pf = pencil_pfaffian(entry, m, v);
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<Rat> u(v);
      for (int a = 0; a < v; ++a) u[a] = rng.next_rat();
      Mat f(m, m);
      for (int a = 0; a < v; ++a)
        if (!(u[a] == 0)) f = f + forms[a].scaled(u[a]);
      REQUIRE(pf.eval(u) == pfaffian(f));
    }
  }
}

TEST_CASE("pencil_pfaffian degree and degenerate shapes") {
  std::vector<std::vector<std::vector<Rat>>> e2(
      2, std::vector<std::vector<Rat>>(2, std::vector<Rat>(1, Rat(0))));
  e2[0][1][0] = Rat(5);
  e2[1][0][0] = Rat(-5);
  MPoly p2 = pencil_pfaffian(e2, 2, 1);
  REQUIRE(p2.eval({Rat(1)}) == 5);
  REQUIRE(p2.total_degree() == 1);

  REQUIRE(pencil_pfaffian({}, 0, 2).eval({Rat(3), Rat(4)}) == 1);
  std::vector<std::vector<std::vector<Rat>>> e3(
      3, std::vector<std::vector<Rat>>(3, std::vector<Rat>(1, Rat(0))));
  REQUIRE(pencil_pfaffian(e3, 3, 1).is_zero());
}
