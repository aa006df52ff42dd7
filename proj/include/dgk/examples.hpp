#pragma once

#include <map>

#include "dgk/groupoid.hpp"

namespace dgk {

// Claimed local actions: (h |> k, h <| k) when the closed-form source says
// (h,k) is in Omega, nullopt when it says it is not.
using ClaimedActions = std::function<std::optional<std::pair<GroupElement, GroupElement>>(
    const GroupElement& h, const GroupElement& k)>;

struct ExampleInstance {
  std::string name;
  std::map<std::string, std::string> params;
  std::shared_ptr<const AdmissiblePair> pair;
  ClaimedActions claimed;  // may be null when no closed-form claim exists
  // claimed-vs-oracle mismatches become documented findings instead of
  // failures (used where the source formulas carry unstated conventions)
  bool discrepancy_as_finding = false;
  // extra example-specific verification hook
  std::function<VerificationReport(const ExampleInstance&)> extra_checks;

  const std::vector<GroupElement>& h_window() const { return pair->hspec().elements; }
  const std::vector<GroupElement>& k_window() const { return pair->kspec().elements; }
};

ExampleInstance build_semidirect(const std::string& h_name, const std::string& k_name,
                                 const std::string& action_name);
ExampleInstance build_unital_ring(long modulus);
ExampleInstance build_sl2_heisenberg(int grid);
ExampleInstance build_axb(int grid);
ExampleInstance build_gl2_scalars(int grid);
ExampleInstance build_sanov(int word_length, int k_bound);
// K trivial: the G-structure degenerates to the group H
ExampleInstance build_group_case(const std::string& h_name);

std::vector<std::string> list_examples();
ExampleInstance build_example(const std::string& name,
                              const std::map<std::string, std::string>& params);

struct VerifyOptions {
  std::uint64_t max_triples = 50000;
  std::uint64_t seed = 0;
  bool check_axioms = true;
  bool check_identities = true;
  bool check_claims = true;
};

VerificationReport verify_example(const ExampleInstance& inst, const VerifyOptions& opt = {});

// Sanov generator ball of the given radius, embedded in SL3; aborts loudly on
// any matrix collision (which would falsify freeness).
std::vector<GroupElement> sanov_ball(const MatrixGroup& g, int radius);

}  // namespace dgk
