#include "dgk/pair.hpp"

#include <random>

#include "dgk/parallel.hpp"

namespace dgk {

AdmissiblePair::AdmissiblePair(std::shared_ptr<const AmbientGroup> ambient, SubgroupSpec h,
                               SubgroupSpec k, OracleKind kind,
                               ClosedFormFactorizer closed_form)
    : ambient_(std::move(ambient)),
      h_(std::move(h)),
      k_(std::move(k)),
      kind_(kind),
      closed_form_(std::move(closed_form)) {
  if (kind_ != OracleKind::BruteForce && !closed_form_)
    throw std::invalid_argument("closed-form oracle requested but not supplied");
}

std::optional<Factorization> AdmissiblePair::brute_factor(const GroupElement& g) const {
  if (!k_.enumerable() || !h_.enumerable())
    throw CapabilityError("brute-force factorization needs enumerations of K and H");
  std::optional<Factorization> found;
  for (const auto& k : k_.elements)
    for (const auto& h : h_.elements) {
      if (ambient_->op(k, h) != g) continue;
      if (found)
        throw std::logic_error("factorization not unique: two KH witnesses for " + g.key());
      found = Factorization{k, h};
    }
  return found;
}

std::optional<Factorization> AdmissiblePair::factor_kh(const GroupElement& g) const {
  ambient_->check_owner(g);
  switch (kind_) {
    case OracleKind::ClosedForm:
      return closed_form_(*this, g);
    case OracleKind::BruteForce:
      return brute_factor(g);
    case OracleKind::Hybrid: {
      auto cf = closed_form_(*this, g);
      auto bf = brute_factor(g);
      if (cf.has_value() != bf.has_value())
        throw std::logic_error("oracle disagreement (presence) at " + g.key());
      if (cf && (cf->k != bf->k || cf->h != bf->h))
        throw std::logic_error("oracle disagreement (witness) at " + g.key());
      return cf;
    }
  }
  return std::nullopt;
}

void AdmissiblePair::require(const GroupElement& h, const GroupElement& k) const {
  if (!h_.contains(h)) throw DomainError("first argument not in H");
  if (!k_.contains(k)) throw DomainError("second argument not in K");
}

bool AdmissiblePair::in_omega(const GroupElement& h, const GroupElement& k) const {
  require(h, k);
  return factor_kh(ambient_->op(h, k)).has_value();
}

GroupElement AdmissiblePair::act_right(const GroupElement& h, const GroupElement& k) const {
  require(h, k);
  auto f = factor_kh(ambient_->op(h, k));
  if (!f) throw DomainError("(h,k) not in Omega");
  return f->k;
}

GroupElement AdmissiblePair::act_left(const GroupElement& h, const GroupElement& k) const {
  require(h, k);
  auto f = factor_kh(ambient_->op(h, k));
  if (!f) throw DomainError("(h,k) not in Omega");
  return f->h;
}

VerificationReport AdmissiblePair::verify_basics(std::uint64_t sample_cap) const {
  VerificationReport rep;
  auto e = ambient_->identity();
  auto& trivial = rep.line("H-cap-K-trivial");
  auto& idmem = rep.line("identity-membership");
  if (h_.contains(e) && k_.contains(e))
    idmem.record_pass();
  else
    idmem.record_fail("e");
  for (const auto& h : h_.elements)
    if (k_.contains(h) && h != e)
      trivial.record_fail(h.key());
    else
      trivial.record_pass();
  for (const auto& k : k_.elements)
    if (h_.contains(k) && k != e)
      trivial.record_fail(k.key());
    else
      trivial.record_pass();

  auto closure = [&](const SubgroupSpec& s, const char* id) {
    auto& line = rep.line(id);
    std::uint64_t budget = sample_cap;
    for (const auto& a : s.elements) {
      if (!s.contains(ambient_->inv(a))) {
        line.record_fail(a.key() + " inverse escapes");
        continue;
      }
      for (const auto& b : s.elements) {
        if (budget-- == 0) return;
        if (s.contains(ambient_->op(a, b)))
          line.record_pass();
        else
          line.record_fail(a.key() + "*" + b.key());
      }
    }
  };
  closure(h_, "H-closure");
  closure(k_, "K-closure");

  // defining equation and (for hybrid oracles) closed-form/brute-force agreement
  auto& defining = rep.line("defining-equation");
  std::uint64_t budget = sample_cap;
  for (const auto& h : h_.elements) {
    for (const auto& k : k_.elements) {
      if (budget-- == 0) return rep;
      if (!in_omega(h, k)) {
        defining.record_skip();
        continue;
      }
      auto kk = act_right(h, k);
      auto hh = act_left(h, k);
      if (!k_.contains(kk) || !h_.contains(hh)) {
        defining.record_fail("(" + h.key() + "," + k.key() + ") lands outside K x H");
        continue;
      }
      if (ambient_->op(kk, hh) == ambient_->op(h, k))
        defining.record_pass();
      else
        defining.record_fail("(" + h.key() + "," + k.key() + ")");
    }
  }
  return rep;
}

VerificationReport AdmissiblePair::verify_identities(const SamplePlan& plan) const {
  const auto& hs = plan.hs.empty() ? h_.elements : plan.hs;
  const auto& ks = plan.ks.empty() ? k_.elements : plan.ks;
  if (hs.empty() || ks.empty()) throw CapabilityError("identity verification needs samples");

  struct Triple {
    std::size_t a, b, c;
  };
  auto make_triples = [&](std::size_t na, std::size_t nb, std::size_t nc) {
    std::vector<Triple> out;
    std::uint64_t total = static_cast<std::uint64_t>(na) * nb * nc;
    if (total <= plan.max_triples) {
      out.reserve(total);
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
          for (std::size_t c = 0; c < nc; ++c) out.push_back({a, b, c});
    } else {
      std::mt19937_64 rng(plan.seed ^ total);
      out.reserve(plan.max_triples);
      for (std::uint64_t i = 0; i < plan.max_triples; ++i)
        out.push_back({rng() % na, rng() % nb, rng() % nc});
    }
    return out;
  };

  auto hhk = make_triples(hs.size(), hs.size(), ks.size());
  auto hkk = make_triples(hs.size(), ks.size(), ks.size());

  std::function<VerificationReport(std::size_t, std::size_t)> run_hhk =
      [&](std::size_t lo, std::size_t hi) {
        VerificationReport rep;
        auto& eq1 = rep.line("eq1");
        auto& eq2 = rep.line("eq2");
        auto& de1 = rep.line("def-equiv-12");
        for (std::size_t i = lo; i < hi; ++i) {
          const auto& h1 = hs[hhk[i].a];
          const auto& h2 = hs[hhk[i].b];
          const auto& k = ks[hhk[i].c];
          std::string w = "(" + h1.key() + "," + h2.key() + "," + k.key() + ")";
          if (!in_omega(h2, k)) {
            eq1.record_skip();
            eq2.record_skip();
            de1.record_skip();
            continue;
          }
          auto h2k = act_right(h2, k);
          auto h12 = ambient_->op(h1, h2);
          bool d1 = in_omega(h1, h2k);
          bool d2 = in_omega(h12, k);
          if (d1 != d2) {
            de1.record_fail(w);
            continue;
          }
          de1.record_pass();
          if (!d1) {
            eq1.record_skip();
            eq2.record_skip();
            continue;
          }
          if (act_right(h1, h2k) == act_right(h12, k))
            eq1.record_pass();
          else
            eq1.record_fail(w);
          auto rhs = ambient_->op(act_left(h1, h2k), act_left(h2, k));
          if (act_left(h12, k) == rhs)
            eq2.record_pass();
          else
            eq2.record_fail(w);
        }
        return rep;
      };

  std::function<VerificationReport(std::size_t, std::size_t)> run_hkk =
      [&](std::size_t lo, std::size_t hi) {
        VerificationReport rep;
        auto& eq3 = rep.line("eq3");
        auto& eq4 = rep.line("eq4");
        auto& de3 = rep.line("def-equiv-34");
        for (std::size_t i = lo; i < hi; ++i) {
          const auto& h = hs[hkk[i].a];
          const auto& k1 = ks[hkk[i].b];
          const auto& k2 = ks[hkk[i].c];
          std::string w = "(" + h.key() + "," + k1.key() + "," + k2.key() + ")";
          if (!in_omega(h, k1)) {
            eq3.record_skip();
            eq4.record_skip();
            de3.record_skip();
            continue;
          }
          auto hk1 = act_left(h, k1);
          auto k12 = ambient_->op(k1, k2);
          bool d1 = in_omega(hk1, k2);
          bool d2 = in_omega(h, k12);
          if (d1 != d2) {
            de3.record_fail(w);
            continue;
          }
          de3.record_pass();
          if (!d1) {
            eq3.record_skip();
            eq4.record_skip();
            continue;
          }
          if (act_left(hk1, k2) == act_left(h, k12))
            eq3.record_pass();
          else
            eq3.record_fail(w);
          auto rhs = ambient_->op(act_right(h, k1), act_right(hk1, k2));
          if (act_right(h, k12) == rhs)
            eq4.record_pass();
          else
            eq4.record_fail(w);
        }
        return rep;
      };

  VerificationReport rep = parallel_chunks<VerificationReport>(hhk.size(), run_hhk);
  rep.merge(parallel_chunks<VerificationReport>(hkk.size(), run_hkk));

  // eq5: the four identity-element laws
  auto& eq5 = rep.line("eq5");
  auto e = ambient_->identity();
  for (const auto& k : ks) {
    if (act_right(e, k) == k && act_left(e, k) == e)
      eq5.record_pass();
    else
      eq5.record_fail("(e," + k.key() + ")");
  }
  for (const auto& h : hs) {
    if (act_right(h, e) == e && act_left(h, e) == h)
      eq5.record_pass();
    else
      eq5.record_fail("(" + h.key() + ",e)");
  }
  return rep;
}

}  // namespace dgk
