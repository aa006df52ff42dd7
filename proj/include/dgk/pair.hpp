#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "dgk/group.hpp"
#include "dgk/report.hpp"

namespace dgk {

struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A subgroup given by a membership predicate, with an optional enumeration.
// `window == true` means `elements` is a finite window into an infinite subgroup.
struct SubgroupSpec {
  std::function<bool(const GroupElement&)> contains;
  std::vector<GroupElement> elements;
  bool window = false;

  bool enumerable() const { return !elements.empty(); }
};

struct Factorization {
  GroupElement k, h;
};

enum class OracleKind { ClosedForm, BruteForce, Hybrid };

struct SamplePlan {
  std::vector<GroupElement> hs, ks;
  std::uint64_t max_triples = 500000;  // random subsample above this
  std::uint64_t seed = 0;
};

class AdmissiblePair;
using ClosedFormFactorizer =
    std::function<std::optional<Factorization>(const AdmissiblePair&, const GroupElement&)>;

// An ambient group with designated subgroups H, K and a KH-factorization oracle.
class AdmissiblePair {
 public:
  AdmissiblePair(std::shared_ptr<const AmbientGroup> ambient, SubgroupSpec h,
                 SubgroupSpec k, OracleKind kind,
                 ClosedFormFactorizer closed_form = nullptr);

  const AmbientGroup& group() const { return *ambient_; }
  std::shared_ptr<const AmbientGroup> group_ptr() const { return ambient_; }
  const SubgroupSpec& hspec() const { return h_; }
  const SubgroupSpec& kspec() const { return k_; }
  OracleKind oracle_kind() const { return kind_; }

  // g = k h with k in K, h in H, unique when it exists; nullopt iff g not in KH.
  std::optional<Factorization> factor_kh(const GroupElement& g) const;
  std::optional<Factorization> brute_factor(const GroupElement& g) const;

  bool in_omega(const GroupElement& h, const GroupElement& k) const;
  GroupElement act_right(const GroupElement& h, const GroupElement& k) const;  // h |> k
  GroupElement act_left(const GroupElement& h, const GroupElement& k) const;   // h <| k

  // H cap K = {e}, identity membership, sample closure under op/inv,
  // and closed-form vs brute-force agreement where both are available.
  VerificationReport verify_basics(std::uint64_t sample_cap = 4000) const;

  // Local-action identities (1)-(5) plus the definedness equivalences.
  VerificationReport verify_identities(const SamplePlan& plan) const;

 private:
  void require(const GroupElement& h, const GroupElement& k) const;

  std::shared_ptr<const AmbientGroup> ambient_;
  SubgroupSpec h_, k_;
  OracleKind kind_;
  ClosedFormFactorizer closed_form_;
};

}  // namespace dgk
