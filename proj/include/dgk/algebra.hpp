#pragma once

#include <Eigen/Dense>
#include <complex>
#include <nlohmann/json.hpp>

#include "dgk/groupoid.hpp"

namespace dgk {

struct RepresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SupportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InexactNormError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using CMatrix = Eigen::MatrixXcd;

inline std::complex<double> to_complex(const GQ& z) {
  return {z.re.get_d(), z.im.get_d()};
}

// Finitely supported Gaussian-rational function on a groupoid fragment;
// an element of C_c(G). Zero values are never stored.
class ConvElement {
 public:
  explicit ConvElement(std::shared_ptr<const Fragment> frag) : frag_(std::move(frag)) {}

  static ConvElement delta(std::shared_ptr<const Fragment> frag, const GroupoidElement& x,
                           GQ coeff = GQ(Rat(1)));
  // sum of unit point-masses; the multiplicative identity on a closed fragment
  static ConvElement unit_indicator(std::shared_ptr<const Fragment> frag);

  const Fragment& fragment() const { return *frag_; }
  std::shared_ptr<const Fragment> fragment_ptr() const { return frag_; }

  void set(const GroupoidElement& x, const GQ& v);
  void add(const GroupoidElement& x, const GQ& v);
  GQ at(const GroupoidElement& x) const;
  std::size_t support_size() const { return support_.size(); }
  bool is_zero() const { return support_.empty(); }
  bool is_real() const;

  const std::map<std::string, std::pair<GroupoidElement, GQ>>& support() const {
    return support_;
  }

  ConvElement operator+(const ConvElement& o) const;
  ConvElement operator-(const ConvElement& o) const;
  ConvElement scaled(const GQ& c) const;
  bool operator==(const ConvElement& o) const { return support_ == o.support_; }

  nlohmann::json to_json() const;

 private:
  std::shared_ptr<const Fragment> frag_;
  std::map<std::string, std::pair<GroupoidElement, GQ>> support_;
};

ConvElement convolve(const ConvElement& f, const ConvElement& g);
ConvElement involution(const ConvElement& f);

// Exact max of fiberwise l1 sums; throws InexactNormError when some |f(x)|
// is irrational (possible for genuinely complex values).
Rat i_norm_exact(const ConvElement& f);
double i_norm(const ConvElement& f);

// Quasi-invariant measure on the unit space, atomic with positive weights.
struct UnitMeasure {
  std::map<std::string, Rat> weights;  // unit key -> weight > 0

  static UnitMeasure uniform(const Fragment& frag);
  // uniform weights renormalized so that the given unit has mass one
  static UnitMeasure normalized_at(const Fragment& frag, const GroupoidElement& unit);

  Rat at(const GroupoidElement& unit) const;
  bool full_support(const Fragment& frag) const;
};

// Delta(x) = mu(r(x)) / mu(s(x)), per fragment element.
std::map<std::string, Rat> modular_function(const Fragment& frag, const UnitMeasure& mu);

// Unitary representation on a finite bundle of fibers over the units.
struct FiniteRep {
  std::vector<std::string> unit_order;      // fixed direct-sum order
  std::map<std::string, int> dims;          // unit key -> fiber dimension
  std::map<std::string, CMatrix> unitaries; // element key -> dim(r) x dim(s) matrix

  int dim_at(const std::string& unit_key) const;
  int total_dim() const;
  int offset_of(const std::string& unit_key) const;
};

FiniteRep regular_rep(const Fragment& frag);
FiniteRep trivial_rep(const Fragment& frag);

// pi(xy) = pi(x) pi(y), pi(x^-1) = pi(x)^*, unitarity, within tolerance.
VerificationReport verify_rep(const Fragment& frag, const FiniteRep& rep, double tol = 1e-9);

struct NormResult {
  double value = 0;
  double certified_radius = 0;
};

double operator_norm(const CMatrix& m);

// Max over units of the operator norm of Lambda_u(f)[x,y] = f(x y^-1) on l2(G^u).
NormResult reduced_norm(const ConvElement& f);

// Integrated form pi_mu(f) as a matrix on the mu-weighted direct sum of fibers
// (orthonormalized coordinates).
CMatrix integrated_form(const FiniteRep& rep, const UnitMeasure& mu, const ConvElement& f);

// Block representation from representations on an invariant unit subset and
// its complement.
FiniteRep lift_representation(const Fragment& frag,
                              const std::vector<GroupoidElement>& x_units,
                              const FiniteRep& pi_on_x, const FiniteRep& rho_on_xc);

// psi(f) = f|_H realized on the isotropy sub-fragment at the given unit.
ConvElement restrict_to_isotropy(const ConvElement& f,
                                 std::shared_ptr<const Fragment> iso_frag);

// Lemma-5.4-style finite shadow: psi is a *-homomorphism onto the isotropy
// group algebra, kernel = off-isotropy span, dims add up, norms compatible.
VerificationReport exactness_check(std::shared_ptr<const Fragment> frag,
                                   std::uint64_t random_pairs = 64,
                                   std::uint64_t seed = 1);

// Seeded random element with small rational (optionally Gaussian) coefficients.
ConvElement random_conv_element(std::shared_ptr<const Fragment> frag, std::uint64_t seed,
                                int support_size, bool complex_coeffs = false,
                                int coeff_range = 8);

struct IdealSpec {
  enum class Kind { AllFunctions, FinitelySupported, PSummable };
  Kind kind = Kind::FinitelySupported;
  double p = 2.0;

  static IdealSpec parse(const std::string& name);  // "all" | "finitely-supported" | "lp:<p>"
};

struct IdealCertificate {
  bool member = false;
  nlohmann::json detail;
};

IdealCertificate ideal_membership(const ConvElement& f, const IdealSpec& spec,
                                  const UnitMeasure& mu);

}  // namespace dgk
