#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgk/examples.hpp"
#include "dgk/json_io.hpp"
#include "support/group_algebra_oracle.hpp"

using namespace dgk;

namespace {

std::shared_ptr<Fragment> ring_fragment(long n) {
  auto inst = build_unital_ring(n);
  return std::make_shared<Fragment>(Fragment::enumerate(
      inst.pair, Structure::G, inst.h_window(), inst.k_window()));
}

std::shared_ptr<Fragment> group_fragment(const std::string& name) {
  auto inst = build_group_case(name);
  return std::make_shared<Fragment>(Fragment::enumerate(
      inst.pair, Structure::G, inst.h_window(), inst.k_window()));
}

constexpr double kTol = 1e-9;

}  // namespace

TEST_CASE("delta elements convolve by composition") {
  auto frag = ring_fragment(5);
  const auto& p = frag->pair();
  for (const auto& a : frag->elements())
    for (const auto& b : frag->elements()) {
      auto fa = ConvElement::delta(frag, a);
      auto fb = ConvElement::delta(frag, b);
      auto prod = convolve(fa, fb);
      auto ab = compose(p, Structure::G, a, b);
      if (ab) {
        CHECK(prod.support_size() == 1);
        CHECK(prod.at(*ab) == GQ(Rat(1)));
      } else {
        CHECK(prod.is_zero());
      }
    }
}

TEST_CASE("unit indicator is the multiplicative identity") {
  auto frag = ring_fragment(5);
  auto one = ConvElement::unit_indicator(frag);
  for (std::uint64_t s : {3u, 17u, 99u}) {
    auto f = random_conv_element(frag, s, 6, true);
    CHECK(convolve(one, f) == f);
    CHECK(convolve(f, one) == f);
  }
}

TEST_CASE("convolution is associative and involution anti-multiplicative") {
  auto frag = ring_fragment(5);
  for (std::uint64_t s = 0; s < 25; ++s) {
    auto f = random_conv_element(frag, 3 * s, 5, true);
    auto g = random_conv_element(frag, 3 * s + 1, 5, true);
    auto h = random_conv_element(frag, 3 * s + 2, 5, true);
    CHECK(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)));
    CHECK(involution(convolve(f, g)) == convolve(involution(g), involution(f)));
    CHECK(involution(involution(f)) == f);
    // distributivity over addition
    CHECK(convolve(f + g, h) == convolve(f, h) + convolve(g, h));
  }
}

TEST_CASE("i-norm: exact and floating agree on rational-modulus elements") {
  auto frag = ring_fragment(5);
  auto f = ConvElement::delta(frag, frag->elements()[0], GQ(rat(3, 4)));
  f.add(frag->elements()[1], GQ(rat(-1, 2)));
  auto exact = i_norm_exact(f);
  CHECK(i_norm(f) == doctest::Approx(exact.get_d()).epsilon(1e-12));
  // |1 + i| is irrational: the exact path must refuse
  auto g = ConvElement::delta(frag, frag->elements()[0], GQ(rat(1), rat(1)));
  CHECK_THROWS_AS(i_norm_exact(g), InexactNormError);
  CHECK(i_norm(g) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("submultiplicativity of the i-norm and the reduced norm bound") {
  auto frag = ring_fragment(5);
  for (std::uint64_t s = 0; s < 15; ++s) {
    auto f = random_conv_element(frag, 100 + 2 * s, 4, true);
    auto g = random_conv_element(frag, 101 + 2 * s, 4, true);
    CHECK(i_norm(convolve(f, g)) <= i_norm(f) * i_norm(g) + kTol);
    auto nr = reduced_norm(f);
    CHECK(nr.value <= i_norm(f) + kTol + nr.certified_radius);
  }
}

TEST_CASE("C*-identity for the reduced norm") {
  auto frag = ring_fragment(5);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto f = random_conv_element(frag, 500 + s, 5, true);
    auto nf = reduced_norm(f).value;
    auto nstar = reduced_norm(convolve(involution(f), f)).value;
    CHECK(std::abs(nstar - nf * nf) <= kTol * std::max(1.0, nf * nf));
  }
}

TEST_CASE("group-case algebra matches the independent group-algebra oracle") {
  struct Model {
    const char* name;
    std::vector<std::vector<int>> table;
  };
  std::vector<Model> models = {{"z2", oracle::cyclic_table(2)},
                               {"z5", oracle::cyclic_table(5)},
                               {"s3", oracle::s3_table()}};
  for (const auto& model : models) {
    CAPTURE(model.name);
    auto frag = group_fragment(model.name);
    oracle::GroupAlgebra ga(model.table);
    REQUIRE(static_cast<int>(frag->size()) == ga.order());
    // fragment element i corresponds to table index i: both enumerate H in
    // the table order with k = e
    auto idx = [&](const GroupoidElement& x) {
      return std::get<TablePayload>(x.h.payload).index;
    };
    auto to_vec = [&](const ConvElement& f) {
      auto v = ga.zero();
      for (const auto& [key, hv] : f.support())
        v[idx(hv.first)] = {hv.second.re.get_d(), hv.second.im.get_d()};
      return v;
    };
    for (std::uint64_t s = 0; s < 12; ++s) {
      auto f = random_conv_element(frag, 7000 + 2 * s, 4, true);
      auto g = random_conv_element(frag, 7001 + 2 * s, 4, true);
      // convolution, exactly
      auto fg = to_vec(convolve(f, g));
      auto fg_oracle = ga.convolve(to_vec(f), to_vec(g));
      for (int i = 0; i < ga.order(); ++i) {
        CHECK(fg[i].real() == doctest::Approx(fg_oracle[i].real()).epsilon(1e-12));
        CHECK(fg[i].imag() == doctest::Approx(fg_oracle[i].imag()).epsilon(1e-12));
      }
      // involution, exactly
      auto fs = to_vec(involution(f));
      auto fs_oracle = ga.star(to_vec(f));
      for (int i = 0; i < ga.order(); ++i) CHECK(fs[i] == fs_oracle[i]);
      // norms within 1e-9
      CHECK(i_norm(f) == doctest::Approx(ga.l1(to_vec(f))).epsilon(kTol));
      CHECK(reduced_norm(f).value ==
            doctest::Approx(ga.reduced_norm(to_vec(f))).epsilon(kTol));
    }
  }
}

TEST_CASE("uniform and normalized measures; modular function properties") {
  auto frag = ring_fragment(5);
  const auto& p = frag->pair();
  auto e_unit = GroupoidElement{p.group().identity(), p.group().identity()};
  auto mu = UnitMeasure::normalized_at(*frag, e_unit);
  CHECK(mu.full_support(*frag));
  CHECK(mu.at(e_unit) == Rat(1));
  auto delta = modular_function(*frag, mu);
  // Delta is multiplicative along composable pairs
  for (const auto& a : frag->elements())
    for (const auto& b : frag->elements()) {
      auto ab = compose(p, Structure::G, a, b);
      if (!ab) continue;
      CHECK(delta.at(ab->key()) == delta.at(a.key()) * delta.at(b.key()));
    }
  // Delta = 1 on isotropy
  for (const auto& u : frag->units())
    for (const auto& x : frag->isotropy(u)) CHECK(delta.at(x.key()) == Rat(1));
}

TEST_CASE("regular representation verifies and computes the reduced norm") {
  auto frag = ring_fragment(5);
  auto rep = regular_rep(*frag);
  CHECK(verify_rep(*frag, rep).passed());
  auto mu = UnitMeasure::uniform(*frag);
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto f = random_conv_element(frag, 900 + s, 4, true);
    auto m = integrated_form(rep, mu, f);
    CHECK(operator_norm(m) == doctest::Approx(reduced_norm(f).value).epsilon(1e-8));
  }
}

TEST_CASE("trivial representation verifies on the group case") {
  auto frag = group_fragment("z5");
  auto rep = trivial_rep(*frag);
  CHECK(verify_rep(*frag, rep).passed());
  // integrated form of delta_e is the 1x1 identity
  auto e_unit = frag->units().at(0);
  auto f = ConvElement::delta(frag, e_unit);
  auto m = integrated_form(rep, UnitMeasure::uniform(*frag), f);
  CHECK(m.rows() == 1);
  CHECK(std::abs(m(0, 0) - std::complex<double>(1, 0)) < kTol);
}

TEST_CASE("lifting representations from an invariant splitting") {
  auto frag = ring_fragment(5);
  auto units = frag->units();
  auto e_unit = GroupoidElement{frag->pair().group().identity(),
                                frag->pair().group().identity()};
  std::vector<GroupoidElement> rest;
  for (const auto& u : units)
    if (!(u == e_unit)) rest.push_back(u);
  auto inner = std::make_shared<Fragment>(frag->restricted_to_units({e_unit}));
  auto outer = std::make_shared<Fragment>(frag->restricted_to_units(rest));
  REQUIRE(frag->is_invariant({e_unit}).pointwise_invariant);
  auto lifted =
      lift_representation(*frag, {e_unit}, regular_rep(*inner), regular_rep(*outer));
  CHECK(verify_rep(*frag, lifted).passed());
  // a non-invariant subset must be rejected
  auto some_unit = rest.at(0);
  bool invariant = frag->is_invariant({some_unit}).pointwise_invariant;
  if (!invariant)
    CHECK_THROWS_AS(lift_representation(*frag, {some_unit}, regular_rep(*inner),
                                        regular_rep(*outer)),
                    RepresentationError);
}

TEST_CASE("restriction homomorphism: exact sequence finite shadow") {
  for (long n : {5L, 7L}) {
    auto frag = ring_fragment(n);
    auto rep = exactness_check(frag, 48, 11);
    CHECK(rep.passed());
    CHECK(rep.line("psi-multiplicative").tested == 48);
    CHECK(rep.line("kernel-image-dimensions").failed == 0);
  }
}

TEST_CASE("ideal membership certificates") {
  auto frag = ring_fragment(5);
  auto mu = UnitMeasure::uniform(*frag);
  auto f = random_conv_element(frag, 4, 5, true);
  for (const char* name : {"all", "finitely-supported", "lp:2"}) {
    auto cert = ideal_membership(f, IdealSpec::parse(name), mu);
    CHECK(cert.member);
  }
  CHECK_THROWS(IdealSpec::parse("lp:0.5"));
  CHECK_THROWS(IdealSpec::parse("nonsense"));
}

TEST_CASE("convolution elements round-trip through JSON") {
  auto frag = ring_fragment(5);
  auto f = random_conv_element(frag, 123, 6, true);
  auto j = conv_to_json(f);
  auto g = conv_from_json(frag, j);
  CHECK(f == g);
  CHECK(conv_to_json(g) == j);
}

TEST_CASE("support and fragment mismatches are rejected") {
  auto frag5 = ring_fragment(5);
  auto frag7 = ring_fragment(7);
  auto f = random_conv_element(frag5, 1, 3, false);
  auto g = random_conv_element(frag7, 1, 3, false);
  CHECK_THROWS_AS(convolve(f, g), SupportError);
  // pick an element of the larger fragment whose key does not occur in the
  // smaller one
  const GroupoidElement* outside = nullptr;
  for (const auto& x : frag7->elements())
    if (!frag5->contains(x)) {
      outside = &x;
      break;
    }
  REQUIRE(outside != nullptr);
  ConvElement h(frag5);
  CHECK_THROWS_AS(h.set(*outside, GQ(Rat(1))), SupportError);
}
