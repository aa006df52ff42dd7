#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgk/examples.hpp"

using namespace dgk;

namespace {

const AdmissiblePair& ring7() {
  static ExampleInstance inst = build_unital_ring(7);
  return *inst.pair;
}

}  // namespace

TEST_CASE("factorization oracle on the Z/7 ring group") {
  const auto& p = ring7();
  auto& g = dynamic_cast<const ModRingGroup&>(p.group());
  // (3,2)(2,0) = (6,2); 6 - 2 = 4 is a unit, so k = (4,0), h = (4^-1*6, .)
  auto prod = g.op(g.element(3, 2), g.element(2, 0));
  auto f = p.factor_kh(prod);
  REQUIRE(f.has_value());
  CHECK(std::get<ModPairPayload>(f->k.payload).a == 4);
  CHECK(std::get<ModPairPayload>(f->k.payload).x == 0);
  // k h must reproduce the product
  CHECK(g.op(f->k, f->h) == prod);
  // brute force agrees
  auto bf = p.brute_factor(prod);
  REQUIRE(bf.has_value());
  CHECK(bf->k == f->k);
  CHECK(bf->h == f->h);
}

TEST_CASE("factorization absence: elements outside KH") {
  const auto& p = ring7();
  auto& g = dynamic_cast<const ModRingGroup&>(p.group());
  // (a,x) in KH iff a - x is a unit; pick a - x = 0
  auto outside = g.element(3, 3);
  CHECK(!p.factor_kh(outside).has_value());
  CHECK(!p.brute_factor(outside).has_value());
}

TEST_CASE("factorizations are unique across the whole finite group") {
  const auto& p = ring7();
  auto all = p.group().enumerate();
  REQUIRE(all.has_value());
  int in_kh = 0;
  for (const auto& g : *all) {
    auto f = p.factor_kh(g);  // hybrid: cross-checks closed form vs brute force
    if (f) {
      ++in_kh;
      CHECK(p.group().op(f->k, f->h) == g);
    }
  }
  // |KH| = |K| |H| = 36 by uniqueness of factorization
  CHECK(in_kh == 36);
}

TEST_CASE("a wrong closed form is caught by the hybrid cross-check") {
  auto amb = std::make_shared<ModRingGroup>(5);
  SubgroupSpec hs, ks;
  hs.contains = [](const GroupElement& g) {
    const auto& p = std::get<ModPairPayload>(g.payload);
    return p.x == (p.a - 1 + 5) % 5;
  };
  for (long a = 1; a < 5; ++a) hs.elements.push_back(amb->element(a, a - 1));
  ks.contains = [](const GroupElement& g) {
    return std::get<ModPairPayload>(g.payload).x == 0;
  };
  for (long b = 1; b < 5; ++b) ks.elements.push_back(amb->element(b, 0));
  // deliberately swaps presence on one element
  ClosedFormFactorizer broken = [amb](const AdmissiblePair&, const GroupElement& g)
      -> std::optional<Factorization> {
    const auto& p = std::get<ModPairPayload>(g.payload);
    long d = ((p.a - p.x) % 5 + 5) % 5;
    if (!amb->is_unit(d)) return std::nullopt;
    if (p.a == 2 && p.x == 1) return std::nullopt;  // the injected fault
    long c = amb->unit_inverse(d) * p.a % 5;
    return Factorization{amb->element(d, 0), amb->element(c, c - 1)};
  };
  AdmissiblePair pair(amb, hs, ks, OracleKind::Hybrid, broken);
  CHECK_THROWS_WITH_AS(pair.factor_kh(amb->element(2, 1)),
                       doctest::Contains("oracle disagreement"), std::logic_error);
}

TEST_CASE("in_omega requires subgroup membership") {
  const auto& p = ring7();
  auto& g = dynamic_cast<const ModRingGroup&>(p.group());
  CHECK_THROWS_AS(p.in_omega(g.element(3, 0), g.element(3, 0)), DomainError);
  CHECK_THROWS_AS(p.act_right(g.element(3, 2), g.element(2, 1)), DomainError);
}

TEST_CASE("actions land in the right subgroups and satisfy hk = (h|>k)(h<|k)") {
  const auto& p = ring7();
  for (const auto& h : p.hspec().elements)
    for (const auto& k : p.kspec().elements) {
      if (!p.in_omega(h, k)) continue;
      auto kk = p.act_right(h, k);
      auto hh = p.act_left(h, k);
      CHECK(p.kspec().contains(kk));
      CHECK(p.hspec().contains(hh));
      CHECK(p.group().op(kk, hh) == p.group().op(h, k));
    }
}

TEST_CASE("verify_basics and verify_identities pass on finite models") {
  for (long n : {5L, 7L}) {
    auto inst = build_unital_ring(n);
    auto basics = inst.pair->verify_basics();
    CHECK(basics.passed());
    SamplePlan plan;  // defaults to the full subgroup enumerations
    auto rep = inst.pair->verify_identities(plan);
    CHECK(rep.passed());
    // the triple sweeps are exhaustive at this size: (n-1)^2 * (n-1) each
    std::uint64_t cube = (n - 1) * (n - 1) * (n - 1);
    CHECK(rep.line("def-equiv-12").tested + rep.line("def-equiv-12").skipped == cube);
    CHECK(rep.line("def-equiv-34").tested + rep.line("def-equiv-34").skipped == cube);
  }
}

TEST_CASE("identity (5): unit element laws on every model") {
  for (const char* name : {"semidirect-z2-z3", "unital-ring", "gl2-scalars"}) {
    auto inst = build_example(name, {});
    const auto& p = *inst.pair;
    auto e = p.group().identity();
    for (const auto& k : inst.k_window()) {
      CHECK(p.act_right(e, k) == k);
      CHECK(p.act_left(e, k) == e);
    }
    for (const auto& h : inst.h_window()) {
      CHECK(p.act_right(h, e) == e);
      CHECK(p.act_left(h, e) == h);
    }
  }
}

TEST_CASE("sampling plans are deterministic in the seed") {
  auto inst = build_axb(2);
  SamplePlan plan;
  plan.hs = inst.h_window();
  plan.ks = inst.k_window();
  plan.max_triples = 200;  // forces random subsampling
  plan.seed = 42;
  auto a = inst.pair->verify_identities(plan);
  auto b = inst.pair->verify_identities(plan);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].tested == b.lines[i].tested);
    CHECK(a.lines[i].skipped == b.lines[i].skipped);
  }
  CHECK(a.passed());
}

TEST_CASE("brute force without enumerations is a capability error") {
  auto amb = std::make_shared<MatrixGroup>("m", 2);
  SubgroupSpec hs, ks;
  hs.window = ks.window = true;
  hs.contains = [](const GroupElement& g) { return g.matrix().det() == Rat(1); };
  ks.contains = [](const GroupElement& g) { return g.matrix().is_identity(); };
  AdmissiblePair p(amb, hs, ks, OracleKind::BruteForce);
  CHECK_THROWS_AS(p.factor_kh(amb->identity()), CapabilityError);
}
