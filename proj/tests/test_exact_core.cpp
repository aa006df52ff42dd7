#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgk/group.hpp"

using namespace dgk;

TEST_CASE("rationals are canonical with positive denominator") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-1, -2) == rat(1, 2));
  CHECK(rat(3, -6) == rat(-1, 2));
  CHECK(rat_str(rat(3, -6)) == "-1/2");
  CHECK(parse_rat("7/21") == rat(1, 3));
}

TEST_CASE("exact rational square roots") {
  CHECK(*rat_sqrt_exact(rat(4)) == rat(2));
  CHECK(*rat_sqrt_exact(rat(9, 16)) == rat(3, 4));
  CHECK(!rat_sqrt_exact(rat(2)).has_value());
  CHECK(!rat_sqrt_exact(rat(-4)).has_value());
  CHECK(*rat_sqrt_exact(rat(0)) == rat(0));
}

TEST_CASE("gaussian rational arithmetic and involution") {
  GQ a(rat(1, 2), rat(3));
  GQ b(rat(2), rat(-1));
  CHECK((a * b).re == rat(4));           // 1/2*2 - 3*(-1)
  CHECK((a * b).im == rat(11, 2));       // 1/2*(-1) + 3*2
  CHECK(a.conj().im == rat(-3));
  CHECK((a * a.conj()).im == rat(0));
  CHECK(a.norm_sq() == rat(37, 4));
  CHECK(*GQ(rat(3), rat(4)).abs_exact() == rat(5));
  CHECK(!GQ(rat(1), rat(1)).abs_exact().has_value());
}

TEST_CASE("matrix product, determinant, inverse are exact") {
  QMatrix a{{rat(2), rat(1)}, {rat(0), rat(1, 2)}};
  QMatrix b{{rat(1), rat(0)}, {rat(1), rat(1)}};
  QMatrix ab = a * b;
  CHECK(ab == QMatrix{{rat(3), rat(1)}, {rat(1, 2), rat(1, 2)}});
  CHECK(a.det() == rat(1));
  CHECK(ab.det() == rat(1));
  CHECK((a * a.inverse()).is_identity());
  QMatrix big{{rat(4, 3), rat(7), rat(-2)},
              {rat(0), rat(1, 5), rat(3)},
              {rat(1), rat(1), rat(1)}};
  CHECK((big * big.inverse()).is_identity());
  CHECK_THROWS_AS(QMatrix(2, 2).inverse(), SingularMatrixError);
}

TEST_CASE("table groups satisfy the group axioms") {
  check_group_axioms(*TableGroup::cyclic(5));
  check_group_axioms(*TableGroup::symmetric3());
  auto z6 = TableGroup::cyclic(6);
  auto a = z6->element(2), b = z6->element(5);
  CHECK(std::get<TablePayload>(z6->op(a, b).payload).index == 1);
  CHECK(z6->op(a, z6->inv(a)) == z6->identity());
}

TEST_CASE("mod-ring group: op, inverse, canonical residues") {
  ModRingGroup g(7);
  check_group_axioms(g);
  auto x = g.element(3, 2);
  auto y = g.element(2, 0);
  // (3,2)(2,0) = (6, 2)
  auto p = std::get<ModPairPayload>(g.op(x, y).payload);
  CHECK(p.a == 6);
  CHECK(p.x == 2);
  CHECK(g.op(x, g.inv(x)) == g.identity());
  CHECK(std::get<ModPairPayload>(g.element(-4, 9).payload).a == 3);
  CHECK(std::get<ModPairPayload>(g.element(-4, 9).payload).x == 2);
  CHECK_THROWS(g.element(0, 1));
}

TEST_CASE("psl sign canonicalization picks the positive leading entry") {
  MatrixGroup g("psl2", 2, true);
  QMatrix m{{rat(-2), rat(-1)}, {rat(0), rat(-1, 2)}};
  auto e = g.element(m);
  CHECK(e.matrix()(0, 0) == rat(2));
  // -I and I collapse to the same element
  CHECK(g.element(-QMatrix::identity(2)) == g.identity());
  // a matrix with zero leading entry flips on the first nonzero entry
  QMatrix n{{rat(0), rat(-1)}, {rat(1), rat(0)}};
  CHECK(g.element(n).matrix()(0, 1) == rat(1));
}

TEST_CASE("matrix group ops respect canonicalization") {
  MatrixGroup g("psl2", 2, true);
  auto a = g.element(QMatrix{{rat(2), rat(1)}, {rat(0), rat(1, 2)}});
  auto b = g.element(QMatrix{{rat(1), rat(0)}, {rat(1), rat(1)}});
  auto p = g.op(a, b);
  CHECK(p.matrix() == QMatrix{{rat(3), rat(1)}, {rat(1, 2), rat(1, 2)}});
  CHECK(g.op(p, g.inv(p)) == g.identity());
  MatrixGroup gl("gl2", 2, false);
  CHECK_THROWS_AS(gl.element(QMatrix(2, 2)), SingularMatrixError);
}

TEST_CASE("semidirect product group: op, inverse, validation") {
  auto z2 = TableGroup::cyclic(2);
  auto z3 = TableGroup::cyclic(3);
  // inversion action of the nontrivial element
  std::vector<std::vector<int>> inv_action = {{0, 1, 2}, {0, 2, 1}};
  SemidirectGroup g(z2, z3, inv_action);
  check_group_axioms(g);
  auto a = g.element(1, 1);
  auto b = g.element(1, 2);
  // (1,1)(1,2) = (0, 1 + phi_1(2)) = (0, 1+1) = (0,2)
  auto p = std::get<SemiPayload>(g.op(a, b).payload);
  CHECK(p.h == 0);
  CHECK(p.k == 2);
  CHECK(g.op(a, g.inv(a)) == g.identity());
  // a non-homomorphic action must be rejected
  std::vector<std::vector<int>> bad = {{0, 1, 2}, {0, 1, 2}};
  bad[1] = {1, 0, 2};  // not an automorphism fixing the identity
  CHECK_THROWS(SemidirectGroup(z2, z3, bad));
}

TEST_CASE("element ownership is enforced across groups") {
  auto z2 = TableGroup::cyclic(2);
  auto z3 = TableGroup::cyclic(3);
  CHECK_THROWS_AS(z3->op(z2->element(1), z3->element(1)), OwnershipError);
}

TEST_CASE("payload keys are canonical and injective on samples") {
  ModRingGroup g(5);
  CHECK(g.element(2, 3).key() == g.element(7, -2).key());
  CHECK(g.element(2, 3).key() != g.element(3, 2).key());
  MatrixGroup m("m", 2, true);
  CHECK(m.element(QMatrix::identity(2)).key() ==
        m.element(-QMatrix::identity(2)).key());
}
