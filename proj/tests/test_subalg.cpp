#include <catch_amalgamated.hpp>

#include "fatlab/subalg.hpp"
#include "support.hpp"

using namespace fatlab;

TEST_CASE("subspace calculus: sum, intersection, complements") {
  auto so5 = make_so(5);
  auto h = make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix);
  REQUIRE(h.dim() == 6);

  auto hperp = orthogonal_complement(h);
  REQUIRE(hperp.dim() == 4);
  REQUIRE(intersect(h, hperp).dim() == 0);
  REQUIRE(subspace_sum(h, hperp).dim() == 10);
  REQUIRE(subspace_contains(full_subspace(so5), h));
  REQUIRE_FALSE(subspace_contains(h, full_subspace(so5)));
  REQUIRE(subspace_equal(h, h));

  auto inner = make_subspace(so5, embed_block_upper_left(make_so(3), so5).matrix);
  REQUIRE(inner.dim() == 3);
  REQUIRE(subspace_contains(h, inner));
  auto rel = orthogonal_complement_in(h, inner);
  REQUIRE(rel.dim() == 3);
  REQUIRE(subspace_sum(rel, inner).dim() == 6);
}

TEST_CASE("bracket closure and ideals") {
  auto so5 = make_so(5);
  auto h = make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix);
  REQUIRE(is_bracket_closed(h));
  REQUIRE_FALSE(is_ideal(h));  // so(5) is simple
  REQUIRE_FALSE(is_bracket_closed(orthogonal_complement(h)));  // symmetric pair: [m,m] lands in h
  REQUIRE(bracket_span(h, h).dim() == 6);

  auto sum = make_direct_sum({make_su(2), make_t(1)});
  Mat first(4, 3);
  for (int i = 0; i < 3; ++i) first(i, i) = 1;
  auto ideal = make_subspace(sum, first);
  REQUIRE(is_ideal(ideal));
  REQUIRE(maximal_common_ideal(ideal).dim() == 3);
  auto comp = complement_ideal(ideal);
  REQUIRE(comp.dim() == 1);
  REQUIRE(intersect(ideal, comp).dim() == 0);
}

TEST_CASE("maximal_common_ideal of a non-ideal subalgebra") {
  auto so5 = make_so(5);
  auto h = make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix);
  REQUIRE(maximal_common_ideal(h).dim() == 0);

  auto sum = make_direct_sum({make_su(2), make_su(2)});
  // diagonal su(2) plus the first factor: the largest ideal inside is the first factor
  Mat cols(6, 3 + 3);
  for (int i = 0; i < 3; ++i) {
    cols(i, i) = 1;                // first factor
    cols(i, 3 + i) = 1;            // diagonal part
    cols(3 + i, 3 + i) = 1;
  }
  auto s = make_subspace(sum, cols);
  REQUIRE(s.dim() == 6);  // spans everything here; shrink to a genuine test
  Mat cols2(6, 4);
  for (int i = 0; i < 3; ++i) cols2(i, i) = 1;
  cols2(0, 3) = 1;
  cols2(3, 3) = 1;  // first factor + one diagonal direction
  auto s2 = make_subspace(sum, cols2);
  REQUIRE(maximal_common_ideal(s2).dim() == 3);
}

TEST_CASE("is_factorization and the su(4) = sp(2) + (su(3)+t(1)) example") {
  auto su4 = make_su(4);
  auto h = make_subspace(su4, embed_defining_sp_in_su(make_sp(2), su4).matrix);
  auto lm = make_subspace(su4, embed_block_upper_left(make_su(3), su4).matrix);
  auto l = subspace_sum(lm, centralizer(lm));
  REQUIRE(h.dim() == 10);
  REQUIRE(l.dim() == 9);
  REQUIRE(is_factorization(su4, h, l));
  // inclusion-exclusion holds exactly for any factorization
  REQUIRE(h.dim() + l.dim() - intersect(h, l).dim() == su4->dim());
  REQUIRE(intersect(h, lm).dim() == 3);

  REQUIRE_FALSE(is_factorization(su4, full_subspace(su4), l));  // h must be proper
  REQUIRE_FALSE(is_factorization(su4, h, h));                   // span falls short
  REQUIRE(is_factorization(su4, h, full_subspace(su4)) == false);
  REQUIRE_THROWS_AS(is_factorization(make_su(3), h, l), std::invalid_argument);
}

TEST_CASE("centralizer dimensions for block embeddings") {
  auto su4 = make_su(4);
  auto su3_in = make_subspace(su4, embed_block_upper_left(make_su(3), su4).matrix);
  REQUIRE(centralizer(su3_in).dim() == 1);

  auto so7 = make_so(7);
  auto so5_in = make_subspace(so7, embed_block_upper_left(make_so(5), so7).matrix);
  REQUIRE(centralizer(so5_in).dim() == 1);

  REQUIRE(center(make_u(2)).dim() == 1);
  REQUIRE(center(make_su(3)).dim() == 0);
  REQUIRE(center(make_t(3)).dim() == 3);
}

TEST_CASE("subspace_algebra produces a checked abstract copy") {
  auto so5 = make_so(5);
  auto h = make_subspace(so5, embed_block_upper_left(make_so(4), so5).matrix);
  auto habs = subspace_algebra(h, "h");
  REQUIRE(habs->dim() == 6);
  REQUIRE(check_algebra(*habs).ok);
  REQUIRE_THROWS_AS(subspace_algebra(make_subspace(so5, orthogonal_complement(h).basis)),
                    std::invalid_argument);
}

TEST_CASE("generic_rank oracles") {
  REQUIRE(generic_rank(*make_su(2)) == 1);
  REQUIRE(generic_rank(*make_su(3)) == 2);
  REQUIRE(generic_rank(*make_su(4)) == 3);
  REQUIRE(generic_rank(*make_so(5)) == 2);
  REQUIRE(generic_rank(*make_so(7)) == 3);
  REQUIRE(generic_rank(*make_sp(2)) == 2);
  REQUIRE(generic_rank(*make_g2()) == 2);
  REQUIRE(generic_rank(*make_t(3)) == 3);
  REQUIRE(generic_rank(*make_direct_sum({make_su(2), make_t(2)})) == 3);
}

TEST_CASE("embeddings are verified homomorphisms with the expected images") {
  auto su4 = make_su(4);
  auto sp2 = make_sp(2);
  auto e1 = embed_defining_sp_in_su(sp2, su4);
  REQUIRE(e1.matrix.rows() == 15);
  REQUIRE(e1.matrix.cols() == 10);
  REQUIRE(rank(e1.matrix) == 10);

  auto so7 = make_so(7);
  auto g2 = make_g2();
  auto e2 = embed_realization(g2, so7);
  REQUIRE(rank(e2.matrix) == 14);

  auto so6 = make_so(6);
  auto su3 = make_su(3);
  auto e3 = embed_realify(su3, so6);
  REQUIRE(rank(e3.matrix) == 8);

  auto su2 = make_su(2);
  auto e4 = embed_highest_root_su2(su2, make_su(3));
  REQUIRE(rank(e4.matrix) == 3);

  auto t1 = make_t(1);
  auto e5 = embed_diagonal_torus(t1, su2, {Rat(1), Rat(-1)});
  REQUIRE(rank(e5.matrix) == 1);

  // composition goes sub -> mid -> ambient
  auto so4 = make_so(4);
  auto so5 = make_so(5);
  auto mid = embed_block_upper_left(so4, so5);
  auto outer = embed_block_upper_left(so5, so7);
  auto both = embed_compose(outer, mid);
  REQUIRE(both.matrix.rows() == 21);
  REQUIRE(both.matrix.cols() == 6);
  REQUIRE(rank(both.matrix) == 6);
}

TEST_CASE("embedding constructors reject mismatched shapes") {
  REQUIRE_THROWS_AS(embed_block_upper_left(make_so(6), make_so(5)), std::invalid_argument);
  REQUIRE_THROWS_AS(embed_diagonal_torus(make_t(2), make_su(2), {Rat(1)}), std::invalid_argument);
  REQUIRE_THROWS_AS(embed_realization(make_t(1), make_so(7)), std::invalid_argument);
}
