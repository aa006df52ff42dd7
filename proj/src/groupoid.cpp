#include "dgk/groupoid.hpp"

#include <algorithm>

namespace dgk {

std::optional<GroupoidElement> compose(const AdmissiblePair& p, Structure tag,
                                       const GroupoidElement& a, const GroupoidElement& b) {
  const AmbientGroup& g = p.group();
  if (tag == Structure::G) {
    // (h1, h2 |> k2) (h2, k2) = (h1 h2, k2)
    if (a.k != p.act_right(b.h, b.k)) return std::nullopt;
    return GroupoidElement{g.op(a.h, b.h), b.k};
  }
  // (h1, k1) (h1 <| k1, k2) = (h1, k1 k2)
  if (b.h != p.act_left(a.h, a.k)) return std::nullopt;
  return GroupoidElement{a.h, g.op(a.k, b.k)};
}

GroupoidElement invert(const AdmissiblePair& p, Structure tag, const GroupoidElement& a) {
  const AmbientGroup& g = p.group();
  if (tag == Structure::G) return GroupoidElement{g.inv(a.h), p.act_right(a.h, a.k)};
  return GroupoidElement{p.act_left(a.h, a.k), g.inv(a.k)};
}

GroupoidElement range_of(const AdmissiblePair& p, Structure tag, const GroupoidElement& a) {
  const AmbientGroup& g = p.group();
  if (tag == Structure::G) return GroupoidElement{g.identity(), p.act_right(a.h, a.k)};
  return GroupoidElement{a.h, g.identity()};
}

GroupoidElement source_of(const AdmissiblePair& p, Structure tag, const GroupoidElement& a) {
  const AmbientGroup& g = p.group();
  if (tag == Structure::G) return GroupoidElement{g.identity(), a.k};
  return GroupoidElement{p.act_left(a.h, a.k), g.identity()};
}

bool is_unit(const AdmissiblePair& p, Structure tag, const GroupoidElement& a) {
  const auto e = p.group().identity();
  return tag == Structure::G ? a.h == e : a.k == e;
}

GroupoidElement gamma(const AdmissiblePair& p, const GroupoidElement& a) {
  return GroupoidElement{p.act_left(a.h, a.k), p.group().inv(a.k)};
}

std::vector<GroupElement> partial_domain(const AdmissiblePair& p, const GroupElement& h,
                                         const std::vector<GroupElement>& k_window) {
  std::vector<GroupElement> out;
  for (const auto& k : k_window)
    if (p.in_omega(h, k)) out.push_back(k);
  return out;
}

GroupElement partial_map(const AdmissiblePair& p, const GroupElement& h,
                         const GroupElement& k) {
  return p.act_right(h, k);  // throws DomainError when k is outside D_h
}

// ---------------------------------------------------------------------------

Fragment Fragment::enumerate(std::shared_ptr<const AdmissiblePair> pair, Structure tag,
                             const std::vector<GroupElement>& h_window,
                             const std::vector<GroupElement>& k_window) {
  if (h_window.empty() || k_window.empty())
    throw DomainError("fragment enumeration needs non-empty windows");
  Fragment f;
  f.pair_ = std::move(pair);
  f.tag_ = tag;
  for (const auto& h : h_window)
    for (const auto& k : k_window) {
      if (!f.pair_->in_omega(h, k)) continue;
      GroupoidElement x{h, k};
      if (f.index_.emplace(x.key(), static_cast<int>(f.elems_.size())).second)
        f.elems_.push_back(x);
    }

  // closure-status is computed, not declared
  bool closed = true;
  for (const auto& x : f.elems_) {
    if (!f.contains(invert(*f.pair_, tag, x)) || !f.contains(range_of(*f.pair_, tag, x)) ||
        !f.contains(source_of(*f.pair_, tag, x))) {
      closed = false;
      break;
    }
  }
  if (closed) {
    for (const auto& a : f.elems_) {
      for (const auto& b : f.elems_) {
        auto ab = compose(*f.pair_, tag, a, b);
        if (ab && !f.contains(*ab)) {
          closed = false;
          break;
        }
      }
      if (!closed) break;
    }
  }
  f.closure_ = closed ? ClosureStatus::Closed : ClosureStatus::Window;
  return f;
}

int Fragment::index_of(const GroupoidElement& x) const {
  auto it = index_.find(x.key());
  if (it == index_.end()) throw CoverageError("element not in fragment: " + x.key());
  return it->second;
}

std::vector<GroupoidElement> Fragment::units() const {
  std::vector<GroupoidElement> out;
  for (const auto& x : elems_)
    if (is_unit(*pair_, tag_, x)) out.push_back(x);
  return out;
}

std::vector<GroupoidElement> Fragment::isotropy(const GroupoidElement& unit) const {
  if (!is_unit(*pair_, tag_, unit) || !contains(unit))
    throw DomainError("isotropy requires a unit of the fragment");
  std::vector<GroupoidElement> out;
  for (const auto& x : elems_)
    if (range_of(*pair_, tag_, x) == unit && source_of(*pair_, tag_, x) == unit)
      out.push_back(x);
  return out;
}

VerificationReport Fragment::verify_axioms() const {
  VerificationReport rep;
  auto& inv_laws = rep.line("inverse-laws");
  auto& unit_laws = rep.line("unit-laws");
  auto& range_source = rep.line("range-source");
  auto& assoc = rep.line("associativity");
  auto& cover = rep.line("in-fragment-closure");

  std::vector<GroupoidElement> invs, ranges, sources;
  invs.reserve(size());
  for (const auto& x : elems_) {
    invs.push_back(invert(*pair_, tag_, x));
    ranges.push_back(range_of(*pair_, tag_, x));
    sources.push_back(source_of(*pair_, tag_, x));
  }

  for (std::size_t i = 0; i < elems_.size(); ++i) {
    const auto& x = elems_[i];
    if (contains(invs[i]) && contains(ranges[i]) && contains(sources[i]))
      cover.record_pass();
    else
      cover.record_skip();

    // x x^-1 = r(x), x^-1 x = s(x), (x^-1)^-1 = x
    auto xxi = compose(*pair_, tag_, x, invs[i]);
    auto xix = compose(*pair_, tag_, invs[i], x);
    if (xxi && *xxi == ranges[i] && xix && *xix == sources[i] &&
        invert(*pair_, tag_, invs[i]) == x)
      inv_laws.record_pass();
    else
      inv_laws.record_fail(x.key());

    auto rx = compose(*pair_, tag_, ranges[i], x);
    auto xs = compose(*pair_, tag_, x, sources[i]);
    if (rx && *rx == x && xs && *xs == x)
      unit_laws.record_pass();
    else
      unit_laws.record_fail(x.key());

    if (is_unit(*pair_, tag_, ranges[i]) && is_unit(*pair_, tag_, sources[i]))
      range_source.record_pass();
    else
      range_source.record_fail(x.key());
  }

  // bucket by range-unit key for composable-pair scans
  std::map<std::string, std::vector<std::size_t>> by_range;
  for (std::size_t i = 0; i < elems_.size(); ++i) by_range[ranges[i].key()].push_back(i);

  for (std::size_t a = 0; a < elems_.size(); ++a) {
    auto itb = by_range.find(sources[a].key());
    if (itb == by_range.end()) continue;
    for (std::size_t b : itb->second) {
      auto ab = compose(*pair_, tag_, elems_[a], elems_[b]);
      if (!ab) {
        assoc.record_fail("compose undefined despite matching units: " + elems_[a].key() +
                          " . " + elems_[b].key());
        continue;
      }
      if (!contains(*ab)) cover.record_skip();
      auto itc = by_range.find(sources[b].key());
      if (itc == by_range.end()) continue;
      for (std::size_t c : itc->second) {
        auto bc = compose(*pair_, tag_, elems_[b], elems_[c]);
        auto ab_c = compose(*pair_, tag_, *ab, elems_[c]);
        std::optional<GroupoidElement> a_bc;
        if (bc) a_bc = compose(*pair_, tag_, elems_[a], *bc);
        if (bc && ab_c && a_bc && *ab_c == *a_bc)
          assoc.record_pass();
        else
          assoc.record_fail(elems_[a].key() + " . " + elems_[b].key() + " . " +
                            elems_[c].key());
      }
    }
  }
  return rep;
}

Fragment Fragment::restricted_to_units(const std::vector<GroupoidElement>& unit_subset) const {
  std::set<std::string> keep;
  for (const auto& u : unit_subset) {
    if (!is_unit(*pair_, tag_, u)) throw DomainError("restriction subset must consist of units");
    keep.insert(u.key());
  }
  Fragment f;
  f.pair_ = pair_;
  f.tag_ = tag_;
  for (const auto& x : elems_) {
    if (!keep.count(range_of(*pair_, tag_, x).key()) ||
        !keep.count(source_of(*pair_, tag_, x).key()))
      continue;
    if (f.index_.emplace(x.key(), static_cast<int>(f.elems_.size())).second)
      f.elems_.push_back(x);
  }
  bool closed = true;
  for (const auto& x : f.elems_)
    if (!f.contains(invert(*pair_, tag_, x))) closed = false;
  for (const auto& a : f.elems_)
    for (const auto& b : f.elems_) {
      auto ab = compose(*pair_, tag_, a, b);
      if (ab && !f.contains(*ab)) closed = false;
    }
  f.closure_ = closed ? ClosureStatus::Closed : ClosureStatus::Window;
  return f;
}

InvarianceResult Fragment::is_invariant(const std::vector<GroupoidElement>& unit_subset) const {
  InvarianceResult res;
  std::set<std::string> akeys;
  std::vector<GroupElement> a_side;  // K elements (G-structure) or H elements (Ghat)
  for (const auto& u : unit_subset) {
    if (!is_unit(*pair_, tag_, u)) throw DomainError("invariance subset must consist of units");
    akeys.insert(u.key());
    a_side.push_back(tag_ == Structure::G ? u.k : u.h);
  }

  res.pointwise_invariant = true;
  for (const auto& x : elems_) {
    bool s_in = akeys.count(source_of(*pair_, tag_, x).key()) > 0;
    bool r_in = akeys.count(range_of(*pair_, tag_, x).key()) > 0;
    if (s_in != r_in) {
      res.pointwise_invariant = false;
      break;
    }
  }

  // three-set ambient criterion: HA cap KH = HA cap AH = HK cap AH
  // (roles of H and K reversed for the Ghat structure)
  const auto& g = pair_->group();
  const auto& hs = pair_->hspec().elements;
  const auto& ks = pair_->kspec().elements;
  const auto& left = tag_ == Structure::G ? hs : ks;   // acting side
  const auto& right = tag_ == Structure::G ? ks : hs;  // unit side
  auto prodset = [&](const std::vector<GroupElement>& xs, const std::vector<GroupElement>& ys) {
    std::set<std::string> out;
    for (const auto& x : xs)
      for (const auto& y : ys) out.insert(g.op(x, y).key());
    return out;
  };
  auto inter = [](const std::set<std::string>& a, const std::set<std::string>& b) {
    std::set<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
  };
  auto HA = prodset(left, a_side);
  auto KH = prodset(right, left);
  auto AH = prodset(a_side, left);
  auto HK = prodset(left, right);
  auto s1 = inter(HA, KH), s2 = inter(HA, AH), s3 = inter(HK, AH);
  res.criterion_invariant = (s1 == s2 && s2 == s3);
  res.agree = (res.pointwise_invariant == res.criterion_invariant);

  auto& line = res.report.line("invariance-criterion-agreement");
  if (res.agree)
    line.record_pass();
  else
    line.record_fail("pointwise=" + std::to_string(res.pointwise_invariant) +
                     " criterion=" + std::to_string(res.criterion_invariant));
  return res;
}

bool Fragment::is_principal() const {
  for (const auto& u : units())
    if (isotropy(u).size() > 1) return false;
  return true;
}

bool Fragment::is_minimal() const {
  auto us = units();
  std::set<std::string> all;
  for (const auto& u : us) all.insert(u.key());
  for (const auto& u : us) {
    std::set<std::string> orbit;
    for (const auto& x : elems_)
      if (source_of(*pair_, tag_, x) == u) orbit.insert(range_of(*pair_, tag_, x).key());
    if (orbit != all) return false;
  }
  return true;
}

bool Fragment::is_topologically_principal() const {
  // finite shadow: the trivial-isotropy units must be all of the unit space
  for (const auto& u : units())
    if (isotropy(u).size() > 1) return false;
  return true;
}

}  // namespace dgk
