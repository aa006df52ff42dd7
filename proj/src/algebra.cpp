#include "dgk/algebra.hpp"

#include <random>

namespace dgk {

// ---------------------------------------------------------------------------
// ConvElement

ConvElement ConvElement::delta(std::shared_ptr<const Fragment> frag,
                               const GroupoidElement& x, GQ coeff) {
  ConvElement f(std::move(frag));
  f.set(x, coeff);
  return f;
}

ConvElement ConvElement::unit_indicator(std::shared_ptr<const Fragment> frag) {
  ConvElement f(frag);
  for (const auto& u : frag->units()) f.set(u, GQ(Rat(1)));
  return f;
}

void ConvElement::set(const GroupoidElement& x, const GQ& v) {
  if (!frag_->contains(x)) throw SupportError("support key not in fragment: " + x.key());
  if (v.is_zero())
    support_.erase(x.key());
  else
    support_[x.key()] = {x, v};
}

void ConvElement::add(const GroupoidElement& x, const GQ& v) {
  if (!frag_->contains(x)) throw SupportError("support key not in fragment: " + x.key());
  auto it = support_.find(x.key());
  if (it == support_.end()) {
    if (!v.is_zero()) support_[x.key()] = {x, v};
    return;
  }
  it->second.second += v;
  if (it->second.second.is_zero()) support_.erase(it);
}

GQ ConvElement::at(const GroupoidElement& x) const {
  auto it = support_.find(x.key());
  return it == support_.end() ? GQ() : it->second.second;
}

bool ConvElement::is_real() const {
  for (const auto& [k, hv] : support_)
    if (!hv.second.is_real()) return false;
  return true;
}

ConvElement ConvElement::operator+(const ConvElement& o) const {
  ConvElement out = *this;
  for (const auto& [k, hv] : o.support_) out.add(hv.first, hv.second);
  return out;
}

ConvElement ConvElement::operator-(const ConvElement& o) const {
  ConvElement out = *this;
  for (const auto& [k, hv] : o.support_) out.add(hv.first, -hv.second);
  return out;
}

ConvElement ConvElement::scaled(const GQ& c) const {
  ConvElement out(frag_);
  if (c.is_zero()) return out;
  for (const auto& [k, hv] : support_) out.set(hv.first, hv.second * c);
  return out;
}

nlohmann::json ConvElement::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, hv] : support_)
    arr.push_back({{"h", hv.first.h.key()},
                   {"k", hv.first.k.key()},
                   {"re", rat_str(hv.second.re)},
                   {"im", rat_str(hv.second.im)}});
  return arr;
}

ConvElement convolve(const ConvElement& f, const ConvElement& g) {
  const Fragment& frag = f.fragment();
  if (&frag != &g.fragment())
    throw SupportError("convolution operands live on different fragments");
  if (!frag.etale()) throw CoverageError("convolution requires an etale fragment");
  ConvElement out(f.fragment_ptr());
  for (const auto& [ka, av] : f.support())
    for (const auto& [kb, bv] : g.support()) {
      auto prod = frag.compose_in(av.first, bv.first);
      if (!prod) continue;
      if (!frag.contains(*prod))
        throw CoverageError("window overflow: product of " + av.first.key() + " and " +
                            bv.first.key() + " exits the fragment");
      out.add(*prod, av.second * bv.second);
    }
  return out;
}

ConvElement involution(const ConvElement& f) {
  const Fragment& frag = f.fragment();
  ConvElement out(f.fragment_ptr());
  for (const auto& [k, hv] : f.support()) {
    auto xi = invert(frag.pair(), frag.tag(), hv.first);
    if (!frag.contains(xi))
      throw CoverageError("window overflow: inverse of " + hv.first.key() +
                          " exits the fragment");
    out.add(xi, hv.second.conj());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Norms

namespace {

template <typename Abs>
auto fiber_max(const ConvElement& f, Abs abs_of) {
  const Fragment& frag = f.fragment();
  std::map<std::string, decltype(abs_of(GQ()))> by_source, by_range;
  for (const auto& [k, hv] : f.support()) {
    auto a = abs_of(hv.second);
    by_source[source_of(frag.pair(), frag.tag(), hv.first).key()] += a;
    by_range[range_of(frag.pair(), frag.tag(), hv.first).key()] += a;
  }
  decltype(abs_of(GQ())) best{};
  for (const auto& [u, s] : by_source) best = std::max(best, s);
  for (const auto& [u, s] : by_range) best = std::max(best, s);
  return best;
}

}  // namespace

Rat i_norm_exact(const ConvElement& f) {
  return fiber_max(f, [](const GQ& z) {
    auto a = z.abs_exact();
    if (!a) throw InexactNormError("|" + z.str() + "| is irrational; use i_norm");
    return *a;
  });
}

double i_norm(const ConvElement& f) {
  return fiber_max(f, [](const GQ& z) { return z.abs_approx(); });
}

// ---------------------------------------------------------------------------
// Measures

UnitMeasure UnitMeasure::uniform(const Fragment& frag) {
  UnitMeasure mu;
  for (const auto& u : frag.units()) mu.weights[u.key()] = 1;
  return mu;
}

UnitMeasure UnitMeasure::normalized_at(const Fragment& frag, const GroupoidElement& unit) {
  UnitMeasure mu = uniform(frag);
  auto it = mu.weights.find(unit.key());
  if (it == mu.weights.end()) throw DomainError("normalization unit not in fragment");
  Rat scale = 1 / it->second;
  for (auto& [k, w] : mu.weights) w *= scale;
  return mu;
}

Rat UnitMeasure::at(const GroupoidElement& unit) const {
  auto it = weights.find(unit.key());
  if (it == weights.end() || sgn(it->second) <= 0)
    throw SupportError("unit has no positive weight: " + unit.key());
  return it->second;
}

bool UnitMeasure::full_support(const Fragment& frag) const {
  for (const auto& u : frag.units()) {
    auto it = weights.find(u.key());
    if (it == weights.end() || sgn(it->second) <= 0) return false;
  }
  return true;
}

std::map<std::string, Rat> modular_function(const Fragment& frag, const UnitMeasure& mu) {
  if (!mu.full_support(frag)) throw SupportError("modular function needs a full-support measure");
  std::map<std::string, Rat> out;
  for (const auto& x : frag.elements())
    out[x.key()] = mu.at(range_of(frag.pair(), frag.tag(), x)) /
                   mu.at(source_of(frag.pair(), frag.tag(), x));
  return out;
}

// ---------------------------------------------------------------------------
// Representations

int FiniteRep::dim_at(const std::string& unit_key) const {
  auto it = dims.find(unit_key);
  if (it == dims.end()) throw RepresentationError("no fiber at unit " + unit_key);
  return it->second;
}

int FiniteRep::total_dim() const {
  int n = 0;
  for (const auto& u : unit_order) n += dim_at(u);
  return n;
}

int FiniteRep::offset_of(const std::string& unit_key) const {
  int off = 0;
  for (const auto& u : unit_order) {
    if (u == unit_key) return off;
    off += dim_at(u);
  }
  throw RepresentationError("unit not in direct sum: " + unit_key);
}

FiniteRep regular_rep(const Fragment& frag) {
  if (!frag.closed() || !frag.etale())
    throw CoverageError("regular representation requires a closed etale fragment");
  FiniteRep rep;
  // fiber over u is l2(G^u), ordered by fragment element order
  std::map<std::string, std::vector<GroupoidElement>> fibers;
  for (const auto& u : frag.units()) {
    rep.unit_order.push_back(u.key());
    fibers[u.key()] = {};
  }
  for (const auto& x : frag.elements())
    fibers[range_of(frag.pair(), frag.tag(), x).key()].push_back(x);
  std::map<std::string, std::map<std::string, int>> pos;
  for (const auto& [u, fx] : fibers) {
    rep.dims[u] = static_cast<int>(fx.size());
    for (std::size_t i = 0; i < fx.size(); ++i) pos[u][fx[i].key()] = static_cast<int>(i);
  }
  for (const auto& x : frag.elements()) {
    std::string ru = range_of(frag.pair(), frag.tag(), x).key();
    std::string su = source_of(frag.pair(), frag.tag(), x).key();
    CMatrix m = CMatrix::Zero(rep.dims[ru], rep.dims[su]);
    for (const auto& y : fibers[su]) {
      auto xy = compose(frag.pair(), frag.tag(), x, y);
      if (!xy) throw RepresentationError("fiber bookkeeping mismatch at " + x.key());
      m(pos[ru][xy->key()], pos[su][y.key()]) = 1.0;
    }
    rep.unitaries[x.key()] = m;
  }
  return rep;
}

FiniteRep trivial_rep(const Fragment& frag) {
  FiniteRep rep;
  for (const auto& u : frag.units()) {
    rep.unit_order.push_back(u.key());
    rep.dims[u.key()] = 1;
  }
  for (const auto& x : frag.elements()) rep.unitaries[x.key()] = CMatrix::Ones(1, 1);
  return rep;
}

VerificationReport verify_rep(const Fragment& frag, const FiniteRep& rep, double tol) {
  VerificationReport out;
  auto& unitary = out.line("rep-unitary");
  auto& star = out.line("rep-star");
  auto& hom = out.line("rep-homomorphism");
  auto mat = [&](const GroupoidElement& x) -> const CMatrix& {
    auto it = rep.unitaries.find(x.key());
    if (it == rep.unitaries.end())
      throw RepresentationError("representation missing element " + x.key());
    return it->second;
  };
  for (const auto& x : frag.elements()) {
    const CMatrix& m = mat(x);
    CMatrix gram = m.adjoint() * m;
    if ((gram - CMatrix::Identity(gram.rows(), gram.cols())).norm() <= tol)
      unitary.record_pass();
    else
      unitary.record_fail(x.key());
    auto xi = invert(frag.pair(), frag.tag(), x);
    if (frag.contains(xi)) {
      if ((mat(xi) - m.adjoint()).norm() <= tol)
        star.record_pass();
      else
        star.record_fail(x.key());
    } else {
      star.record_skip();
    }
  }
  for (const auto& a : frag.elements())
    for (const auto& b : frag.elements()) {
      auto ab = compose(frag.pair(), frag.tag(), a, b);
      if (!ab) continue;
      if (!frag.contains(*ab)) {
        hom.record_skip();
        continue;
      }
      if ((mat(*ab) - mat(a) * mat(b)).norm() <= tol)
        hom.record_pass();
      else
        hom.record_fail(a.key() + " . " + b.key());
    }
  return out;
}

// ---------------------------------------------------------------------------
// Operator norms with exact-residual certification

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

using GQMat = std::vector<std::vector<GQ>>;

// certified largest eigenvalue of the exact Hermitian PSD matrix M = A^H A:
// float eigenvector, exact Rayleigh quotient, exact residual bound
NormResult certified_sqrt_lambda_max(const GQMat& gram) {
  std::size_t n = gram.size();
  if (n == 0) return {0.0, 0.0};
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = to_complex(gram[i][j]);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  Eigen::Index top;
  es.eigenvalues().maxCoeff(&top);
  Eigen::VectorXcd v = es.eigenvectors().col(top);

  // rationalize v and evaluate exactly
  std::vector<GQ> vq(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat re(v(i).real()), im(v(i).imag());
    re.canonicalize();
    im.canonicalize();
    vq[i] = GQ(re, im);
  }
  std::vector<GQ> mv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mv[i] += gram[i][j] * vq[j];
  GQ vhv, vhmv;
  for (std::size_t i = 0; i < n; ++i) {
    vhv += vq[i].conj() * vq[i];
    vhmv += vq[i].conj() * mv[i];
  }
  if (sgn(vhv.re) == 0) return {0.0, 0.0};
  Rat rho = vhmv.re / vhv.re;  // exactly real for Hermitian gram
  Rat resid2;
  for (std::size_t i = 0; i < n; ++i) {
    GQ d = mv[i] - GQ(rho) * vq[i];
    resid2 += d.norm_sq();
  }
  resid2 /= vhv.re;
  double lam = std::max(0.0, rho.get_d());
  double resid = std::sqrt(std::max(0.0, resid2.get_d()));
  double value = std::sqrt(lam);
  double radius = value > 1e-12 ? resid / (2.0 * value) : std::sqrt(resid);
  return {value, radius};
}

}  // namespace

NormResult reduced_norm(const ConvElement& f) {
  const Fragment& frag = f.fragment();
  if (!frag.closed() || !frag.etale())
    throw CoverageError("reduced norm requires a closed etale fragment");
  // per-unit source fibers G_u; x z^-1 is always composable within one fiber
  std::map<std::string, std::vector<GroupoidElement>> fibers;
  for (const auto& u : frag.units()) fibers[u.key()] = {};
  for (const auto& x : frag.elements())
    fibers[source_of(frag.pair(), frag.tag(), x).key()].push_back(x);

  NormResult best;
  for (const auto& [u, fx] : fibers) {
    std::size_t n = fx.size();
    // Lambda_u(f)[x,z] = f(x z^-1)
    GQMat lam(n, std::vector<GQ>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto prod = compose(frag.pair(), frag.tag(), fx[i],
                            invert(frag.pair(), frag.tag(), fx[j]));
        if (!prod)
          throw RepresentationError("source-fiber product undefined at " + fx[i].key());
        lam[i][j] = f.at(*prod);
      }
    GQMat gram(n, std::vector<GQ>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) gram[i][j] += lam[k][i].conj() * lam[k][j];
    NormResult r = certified_sqrt_lambda_max(gram);
    if (r.value > best.value) best = r;
  }
  return best;
}

CMatrix integrated_form(const FiniteRep& rep, const UnitMeasure& mu, const ConvElement& f) {
  const Fragment& frag = f.fragment();
  if (!frag.closed() || !frag.etale())
    throw CoverageError("integrated form requires a closed etale fragment");
  if (!mu.full_support(frag)) throw SupportError("integrated form needs full support");
  auto delta = modular_function(frag, mu);
  int total = rep.total_dim();
  CMatrix out = CMatrix::Zero(total, total);
  for (const auto& [key, hv] : f.support()) {
    const auto& x = hv.first;
    auto it = rep.unitaries.find(x.key());
    if (it == rep.unitaries.end())
      throw RepresentationError("representation missing support element " + x.key());
    auto ru = range_of(frag.pair(), frag.tag(), x);
    auto su = source_of(frag.pair(), frag.tag(), x);
    int roff = rep.offset_of(ru.key()), soff = rep.offset_of(su.key());
    const CMatrix& m = it->second;
    if (m.rows() != rep.dim_at(ru.key()) || m.cols() != rep.dim_at(su.key()))
      throw RepresentationError("fiber dimension mismatch at " + x.key());
    // nu-weight mu(r(x)) times Delta^{-1/2}, in mu-orthonormal coordinates
    double coeff = mu.at(ru).get_d() / std::sqrt(delta.at(x.key()).get_d()) /
                   std::sqrt(mu.at(ru).get_d() * mu.at(su).get_d());
    out.block(roff, soff, m.rows(), m.cols()) += to_complex(hv.second) * coeff * m;
  }
  return out;
}

FiniteRep lift_representation(const Fragment& frag,
                              const std::vector<GroupoidElement>& x_units,
                              const FiniteRep& pi_on_x, const FiniteRep& rho_on_xc) {
  auto inv = frag.is_invariant(x_units);
  if (!inv.pointwise_invariant)
    throw RepresentationError("lift requires an invariant unit subset");
  std::set<std::string> in_x;
  for (const auto& u : x_units) in_x.insert(u.key());

  FiniteRep out;
  for (const auto& u : frag.units()) {
    const FiniteRep& side = in_x.count(u.key()) ? pi_on_x : rho_on_xc;
    out.unit_order.push_back(u.key());
    out.dims[u.key()] = side.dim_at(u.key());
  }
  for (const auto& x : frag.elements()) {
    bool x_side = in_x.count(range_of(frag.pair(), frag.tag(), x).key()) > 0;
    const FiniteRep& side = x_side ? pi_on_x : rho_on_xc;
    auto it = side.unitaries.find(x.key());
    if (it == side.unitaries.end())
      throw RepresentationError("restricted representation missing element " + x.key());
    out.unitaries[x.key()] = it->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Restriction to the isotropy group and its exact-sequence shadow

ConvElement restrict_to_isotropy(const ConvElement& f,
                                 std::shared_ptr<const Fragment> iso_frag) {
  ConvElement out(iso_frag);
  for (const auto& [k, hv] : f.support())
    if (iso_frag->contains(hv.first)) out.set(hv.first, hv.second);
  return out;
}

ConvElement random_conv_element(std::shared_ptr<const Fragment> frag, std::uint64_t seed,
                                int support_size, bool complex_coeffs, int coeff_range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, frag->size() - 1);
  ConvElement f(frag);
  for (int i = 0; i < support_size; ++i) {
    const auto& x = frag->elements()[pick(rng)];
    GQ v(rat(num(rng), den(rng)), complex_coeffs ? rat(num(rng), den(rng)) : Rat(0));
    f.add(x, v);
  }
  return f;
}

VerificationReport exactness_check(std::shared_ptr<const Fragment> frag,
                                   std::uint64_t random_pairs, std::uint64_t seed) {
  VerificationReport rep;
  const auto& p = frag->pair();
  GroupoidElement e_unit{p.group().identity(), p.group().identity()};
  if (!frag->contains(e_unit)) throw CoverageError("fragment does not contain the unit at e");
  auto iso = std::make_shared<const Fragment>(frag->restricted_to_units({e_unit}));

  // kernel of psi = deltas supported off the isotropy; psi surjective onto it
  auto& dims = rep.line("kernel-image-dimensions");
  std::size_t iso_n = iso->size(), ker_n = 0;
  for (const auto& x : frag->elements())
    if (!iso->contains(x)) ++ker_n;
  if (ker_n + iso_n == frag->size())
    dims.record_pass();
  else
    dims.record_fail("dim ker + dim im = " + std::to_string(ker_n + iso_n));

  auto& surj = rep.line("psi-surjective");
  for (const auto& x : iso->elements()) {
    auto d = ConvElement::delta(frag, x);
    auto r = restrict_to_isotropy(d, iso);
    if (r.support_size() == 1 && r.at(x) == GQ(Rat(1)))
      surj.record_pass();
    else
      surj.record_fail(x.key());
  }

  auto& kernel = rep.line("psi-kernel");
  for (const auto& x : frag->elements()) {
    if (iso->contains(x)) continue;
    if (restrict_to_isotropy(ConvElement::delta(frag, x), iso).is_zero())
      kernel.record_pass();
    else
      kernel.record_fail(x.key());
  }

  auto& mult = rep.line("psi-multiplicative");
  auto& starline = rep.line("psi-star");
  auto& normline = rep.line("psi-norm-compatible");
  for (std::uint64_t i = 0; i < random_pairs; ++i) {
    auto f = random_conv_element(frag, seed + 2 * i, 5, true);
    auto g = random_conv_element(frag, seed + 2 * i + 1, 5, true);
    auto lhs = restrict_to_isotropy(convolve(f, g), iso);
    auto rhs = convolve(restrict_to_isotropy(f, iso), restrict_to_isotropy(g, iso));
    if (lhs == rhs)
      mult.record_pass();
    else
      mult.record_fail("sample " + std::to_string(i));
    if (restrict_to_isotropy(involution(f), iso) == involution(restrict_to_isotropy(f, iso)))
      starline.record_pass();
    else
      starline.record_fail("sample " + std::to_string(i));
    auto nf = reduced_norm(f);
    auto nrf = reduced_norm(restrict_to_isotropy(f, iso));
    if (nrf.value <= nf.value + 1e-9 + nf.certified_radius + nrf.certified_radius)
      normline.record_pass();
    else
      normline.record_fail("sample " + std::to_string(i));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Ideal membership

IdealSpec IdealSpec::parse(const std::string& name) {
  IdealSpec s;
  if (name == "all") {
    s.kind = Kind::AllFunctions;
  } else if (name == "finitely-supported") {
    s.kind = Kind::FinitelySupported;
  } else if (name.rfind("lp:", 0) == 0) {
    s.kind = Kind::PSummable;
    s.p = std::stod(name.substr(3));
    if (s.p < 1) throw std::invalid_argument("p must be >= 1");
  } else {
    throw std::invalid_argument("unknown ideal spec: " + name);
  }
  return s;
}

IdealCertificate ideal_membership(const ConvElement& f, const IdealSpec& spec,
                                  const UnitMeasure& mu) {
  const Fragment& frag = f.fragment();
  const auto& p = frag.pair();
  GroupoidElement e_unit{p.group().identity(), p.group().identity()};
  if (!frag.contains(e_unit)) throw CoverageError("fragment does not contain the unit at e");
  auto iso_elems = frag.restricted_to_units({e_unit});

  IdealCertificate cert;
  // clause 1: f|_H in D — every finitely supported restriction lies in each
  // of the named ideals (they all contain the finitely supported functions)
  double p_mass = 0;
  for (const auto& [k, hv] : f.support())
    if (iso_elems.contains(hv.first))
      p_mass += std::pow(hv.second.abs_approx(),
                         spec.kind == IdealSpec::Kind::PSummable ? spec.p : 1.0);
  // clause 2: square-integrability of f off H against nu_mu
  Rat l2_mass;
  for (const auto& [k, hv] : f.support())
    if (!iso_elems.contains(hv.first))
      l2_mass += hv.second.norm_sq() * mu.at(range_of(frag.pair(), frag.tag(), hv.first));

  cert.member = true;  // finitely supported elements satisfy both clauses
  cert.detail = {{"restriction-in-D", true},
                 {"ideal", spec.kind == IdealSpec::Kind::AllFunctions ? "all"
                           : spec.kind == IdealSpec::Kind::FinitelySupported
                               ? "finitely-supported"
                               : "lp"},
                 {"lp-mass-on-H", p_mass},
                 {"l2-mass-off-H", rat_str(l2_mass)}};
  return cert;
}

}  // namespace dgk
