#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dgk/examples.hpp"

using namespace dgk;

namespace {

bool has_note_containing(const VerificationReport& rep, const std::string& needle) {
  return std::any_of(rep.notes.begin(), rep.notes.end(), [&](const std::string& n) {
    return n.find(needle) != std::string::npos;
  });
}

VerifyOptions quick() {
  VerifyOptions opt;
  opt.max_triples = 20000;
  opt.seed = 7;
  return opt;
}

}  // namespace

TEST_CASE("the example registry lists every builder and rejects unknowns") {
  auto names = list_examples();
  for (const char* n : {"semidirect", "unital-ring", "sl2-heisenberg", "axb-psl2",
                        "gl2-scalars", "sanov", "group-case"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK_THROWS_AS(build_example("no-such-example", {}), DomainError);
  CHECK_THROWS_AS(build_example("semidirect-z2", {}), DomainError);
  CHECK_THROWS(build_unital_ring(1));
  CHECK_THROWS_AS(build_axb(0), DomainError);
  CHECK_THROWS_AS(build_sanov(0, 0), DomainError);
}

TEST_CASE("semidirect product: right action is the twist, left action is constant") {
  auto inst = build_semidirect("z2", "z3", "inversion");
  const auto& p = *inst.pair;
  for (const auto& h : inst.h_window())
    for (const auto& k : inst.k_window()) {
      REQUIRE(p.in_omega(h, k));     // Omega is everything here
      CHECK(p.act_left(h, k) == h);  // h <| k = h
      // h |> k = phi_h(k): hk = (h |> k) h in the ambient group
      CHECK(p.group().op(h, k) == p.group().op(p.act_right(h, k), h));
    }
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());
  CHECK(rep.line("full-omega").failed == 0);
  CHECK(rep.line("claimed-action-agreement").failed == 0);
}

TEST_CASE("unital ring over Z/7: membership criterion and action formulas") {
  auto inst = build_unital_ring(7);
  const auto& p = *inst.pair;
  auto& g = dynamic_cast<const ModRingGroup&>(p.group());
  auto h = g.element(3, 2);  // a = 3
  auto k = g.element(2, 0);  // b = 2
  // a(b-1)+1 = 4 is a unit mod 7, so (h,k) is in Omega
  REQUIRE(p.in_omega(h, k));
  auto kk = std::get<ModPairPayload>(p.act_right(h, k).payload);
  CHECK(kk.a == 4);
  CHECK(kk.x == 0);
  // c = 4^-1 * 3 * 2 = 2 * 6 = 5, so h <| k = (5, 4)
  auto hh = std::get<ModPairPayload>(p.act_left(h, k).payload);
  CHECK(hh.a == 5);
  CHECK(hh.x == 4);
  // a(b-1)+1 = 0 mod 7 for a = 3, b = 3: outside Omega
  CHECK(!p.in_omega(g.element(3, 2), g.element(3, 0)));
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());
  CHECK(rep.line("omega-count").failed == 0);
}

TEST_CASE("sl2-heisenberg: the quoted right action is reported as a finding") {
  auto inst = build_sl2_heisenberg(2);
  CHECK(inst.discrepancy_as_finding);
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());  // the mismatch is a finding, not a failure
  CHECK(has_note_containing(rep, "discrepancy finding (sl2-heisenberg"));
  // with the coefficient b/2 in place of 1/2 the action matches everywhere
  auto corr = rep.line("corrected-right-action-agreement");
  CHECK(corr.tested > 0);
  CHECK(corr.failed == 0);
}

TEST_CASE("axb-psl2: spot values and both sign branches") {
  auto inst = build_axb(2);
  const auto& p = *inst.pair;
  auto& g = dynamic_cast<const MatrixGroup&>(p.group());
  auto i_ab = [&](const Rat& a, const Rat& b) {
    return g.element(QMatrix{{a, b}, {rat(0), 1 / a}});
  };
  auto j_x = [&](const Rat& x) {
    return g.element(QMatrix{{rat(1), rat(0)}, {x, rat(1)}});
  };
  // (2,1) acting on x = 1: a + bx = 3 > 0, so |> gives 1/6 and <| gives (3,1)
  auto h = i_ab(rat(2), rat(1));
  auto k = j_x(rat(1));
  REQUIRE(p.in_omega(h, k));
  CHECK(p.act_right(h, k).matrix()(1, 0) == rat(1, 6));
  CHECK(p.act_left(h, k) == i_ab(rat(3), rat(1)));
  // (1,1) on x = -2: a + bx = -1 < 0, the other branch gives (1,-1)
  auto h2 = i_ab(rat(1), rat(1));
  auto k2 = j_x(rat(-2));
  REQUIRE(p.in_omega(h2, k2));
  CHECK(p.act_left(h2, k2) == i_ab(rat(1), rat(-1)));
  CHECK(p.act_right(h2, k2).matrix()(1, 0) == rat(2));
  // a + bx = 0 is excluded: (1,1) on x = -1
  CHECK(!p.in_omega(i_ab(rat(1), rat(1)), j_x(rat(-1))));
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());
  CHECK(rep.line("sign-branch-coverage").failed == 0);
}

TEST_CASE("gl2-scalars: both actions are trivial on the whole window") {
  auto inst = build_gl2_scalars(2);
  const auto& p = *inst.pair;
  for (const auto& h : inst.h_window())
    for (const auto& k : inst.k_window()) {
      REQUIRE(p.in_omega(h, k));
      CHECK(p.act_right(h, k) == k);
      CHECK(p.act_left(h, k) == h);
    }
  CHECK(verify_example(inst, quick()).passed());
}

TEST_CASE("sanov generator balls have free-group sizes") {
  MatrixGroup g("sanov-sl3z", 3);
  for (int r = 0; r <= 4; ++r) {
    auto ball = sanov_ball(g, r);
    std::size_t expected = r == 0 ? 1 : 2 * static_cast<std::size_t>(std::pow(3, r)) - 1;
    CHECK(ball.size() == expected);
  }
}

TEST_CASE("sanov: domain dichotomy n2 x = 0 and the diagonal sharpening") {
  auto inst = build_sanov(2, 3);
  const auto& p = *inst.pair;
  for (const auto& h : inst.h_window()) {
    bool n2_zero = sgn(h.matrix()(0, 1)) == 0;
    for (const auto& k : inst.k_window()) {
      bool x_zero = sgn(k.matrix()(1, 2)) == 0;
      CHECK(p.in_omega(h, k) == (n2_zero || x_zero));
      if (p.in_omega(h, k)) CHECK(p.act_left(h, k) == h);  // h <| k = h
    }
  }
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());
  CHECK(rep.line("sanov-congruences").failed == 0);
  CHECK(rep.line("domain-dichotomy").failed == 0);
  CHECK(rep.line("full-domain-diagonal").failed == 0);
  CHECK(has_note_containing(rep, "full-domain element"));
}

TEST_CASE("group case: trivial K degenerates the first structure to H") {
  auto inst = build_group_case("s3");
  const auto& p = *inst.pair;
  CHECK(p.kspec().elements.size() == 1);
  for (const auto& h : inst.h_window()) {
    auto e = p.group().identity();
    CHECK(p.in_omega(h, e));
    CHECK(p.act_right(h, e) == e);
    CHECK(p.act_left(h, e) == h);
  }
  CHECK(verify_example(inst, quick()).passed());
}

TEST_CASE("verify_example covers basics, identities, claims, and both axiom sweeps") {
  auto inst = build_unital_ring(5);
  auto rep = verify_example(inst, quick());
  CHECK(rep.passed());
  for (const char* id :
       {"H-cap-K-trivial", "defining-equation", "eq1", "eq2", "def-equiv-12", "eq3",
        "eq4", "def-equiv-34", "eq5", "claimed-domain-agreement",
        "claimed-action-agreement", "G-associativity", "Ghat-associativity"}) {
    CAPTURE(id);
    CHECK(rep.line(id).tested > 0);
    CHECK(rep.line(id).failed == 0);
  }
}

TEST_CASE("example verification is deterministic in the seed") {
  auto inst = build_axb(2);
  VerifyOptions opt = quick();
  opt.max_triples = 500;
  auto a = verify_example(inst, opt);
  auto b = verify_example(inst, opt);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].tested == b.lines[i].tested);
    CHECK(a.lines[i].skipped == b.lines[i].skipped);
  }
}
