#pragma once

#include <map>
#include <set>

#include "dgk/pair.hpp"

namespace dgk {

struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The two groupoid structures on Omega(H,K).
enum class Structure { G, Ghat };

inline const char* structure_name(Structure s) { return s == Structure::G ? "G" : "Ghat"; }

struct GroupoidElement {
  GroupElement h, k;

  bool operator==(const GroupoidElement& o) const { return h == o.h && k == o.k; }
  bool operator!=(const GroupoidElement& o) const { return !(*this == o); }
  std::string key() const { return h.key() + "|" + k.key(); }
};

// Partial multiplication; absence signals non-composability, never an error.
std::optional<GroupoidElement> compose(const AdmissiblePair& p, Structure tag,
                                       const GroupoidElement& a, const GroupoidElement& b);
GroupoidElement invert(const AdmissiblePair& p, Structure tag, const GroupoidElement& a);
GroupoidElement range_of(const AdmissiblePair& p, Structure tag, const GroupoidElement& a);
GroupoidElement source_of(const AdmissiblePair& p, Structure tag, const GroupoidElement& a);
bool is_unit(const AdmissiblePair& p, Structure tag, const GroupoidElement& a);

// The automorphism (h,k) |-> (h <| k, k^-1) of the G-structure.
GroupoidElement gamma(const AdmissiblePair& p, const GroupoidElement& a);

// Partial-transformation view of the G-structure: theta_h on a K-window.
std::vector<GroupElement> partial_domain(const AdmissiblePair& p, const GroupElement& h,
                                         const std::vector<GroupElement>& k_window);
GroupElement partial_map(const AdmissiblePair& p, const GroupElement& h,
                         const GroupElement& k);

enum class ClosureStatus { Closed, Window };

struct InvarianceResult {
  bool pointwise_invariant = false;
  bool criterion_invariant = false;  // Lemma-style three-set criterion
  bool agree = false;
  VerificationReport report;
};

// An explicitly enumerated set of groupoid elements with composability
// bookkeeping; either a genuinely finite double groupoid or a window.
class Fragment {
 public:
  static Fragment enumerate(std::shared_ptr<const AdmissiblePair> pair, Structure tag,
                            const std::vector<GroupElement>& h_window,
                            const std::vector<GroupElement>& k_window);

  const AdmissiblePair& pair() const { return *pair_; }
  std::shared_ptr<const AdmissiblePair> pair_ptr() const { return pair_; }
  Structure tag() const { return tag_; }
  ClosureStatus closure() const { return closure_; }
  bool closed() const { return closure_ == ClosureStatus::Closed; }
  bool etale() const { return true; }  // all carriers here are discrete

  const std::vector<GroupoidElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool contains(const GroupoidElement& x) const { return index_.count(x.key()) > 0; }
  int index_of(const GroupoidElement& x) const;

  std::vector<GroupoidElement> units() const;
  std::vector<GroupoidElement> isotropy(const GroupoidElement& unit) const;

  std::optional<GroupoidElement> compose_in(const GroupoidElement& a,
                                            const GroupoidElement& b) const {
    return dgk::compose(*pair_, tag_, a, b);
  }

  // Groupoid axioms: unit/inverse laws, r(x) = x x^-1, s(x) = x^-1 x,
  // associativity over composable triples. Zero failures required when closed;
  // products that exit a window count as skips.
  VerificationReport verify_axioms() const;

  // Sub-fragment of arrows with range and source in the given unit subset.
  Fragment restricted_to_units(const std::vector<GroupoidElement>& unit_subset) const;

  // Pointwise invariance of a set of units, cross-checked against the
  // three-set ambient-product criterion.
  InvarianceResult is_invariant(const std::vector<GroupoidElement>& unit_subset) const;

  bool is_principal() const;
  bool is_minimal() const;
  bool is_topologically_principal() const;

 private:
  std::shared_ptr<const AdmissiblePair> pair_;
  Structure tag_ = Structure::G;
  std::vector<GroupoidElement> elems_;
  std::map<std::string, int> index_;
  ClosureStatus closure_ = ClosureStatus::Window;
};

}  // namespace dgk
