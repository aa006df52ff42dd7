#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dgk/matrix.hpp"

namespace dgk {

struct OwnershipError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class AmbientGroup;

// Element payloads, always kept in canonical form so that equality is
// plain payload equality.
struct TablePayload {
  int index = 0;
  bool operator==(const TablePayload&) const = default;
};
struct ModPairPayload {  // (a, x) in A* x A over Z/n, least non-negative residues
  long a = 1, x = 0;
  bool operator==(const ModPairPayload&) const = default;
};
struct MatrixPayload {
  QMatrix m;
  bool operator==(const MatrixPayload&) const = default;
};
struct SemiPayload {  // (h-index, k-index) in H x K
  int h = 0, k = 0;
  bool operator==(const SemiPayload&) const = default;
};

using Payload = std::variant<TablePayload, ModPairPayload, MatrixPayload, SemiPayload>;

struct GroupElement {
  Payload payload;
  const AmbientGroup* owner = nullptr;

  bool operator==(const GroupElement& o) const { return payload == o.payload; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  const QMatrix& matrix() const { return std::get<MatrixPayload>(payload).m; }
  std::string key() const;
};

// Abstract ambient group: exact multiplication, inversion, identity,
// equality, and optional full enumeration.
class AmbientGroup {
 public:
  virtual ~AmbientGroup() = default;

  virtual GroupElement op(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inv(const GroupElement& a) const = 0;
  virtual GroupElement identity() const = 0;
  virtual std::optional<std::vector<GroupElement>> enumerate() const { return std::nullopt; }
  virtual std::string name() const = 0;

  bool equal(const GroupElement& a, const GroupElement& b) const {
    check_owner(a);
    check_owner(b);
    return a == b;
  }

  void check_owner(const GroupElement& g) const {
    if (g.owner != this) throw OwnershipError("element does not belong to group " + name());
  }

 protected:
  GroupElement make(Payload p) const { return GroupElement{std::move(p), this}; }
};

inline GroupElement group_op(const AmbientGroup& g, const GroupElement& a,
                             const GroupElement& b) {
  return g.op(a, b);
}
inline GroupElement group_inv(const AmbientGroup& g, const GroupElement& a) {
  return g.inv(a);
}
inline GroupElement group_id(const AmbientGroup& g) { return g.identity(); }

// ---------------------------------------------------------------------------

// Finite group given by an explicit multiplication table.
class TableGroup : public AmbientGroup {
 public:
  // table[i][j] = index of element i*j; identity_index must satisfy the unit laws.
  TableGroup(std::string name, std::vector<std::vector<int>> table, int identity_index,
             std::vector<std::string> labels = {});

  static std::shared_ptr<TableGroup> cyclic(int n);
  static std::shared_ptr<TableGroup> symmetric3();

  GroupElement op(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  GroupElement identity() const override;
  std::optional<std::vector<GroupElement>> enumerate() const override;
  std::string name() const override { return name_; }

  int order() const { return static_cast<int>(table_.size()); }
  GroupElement element(int index) const;
  const std::string& label(int index) const { return labels_[index]; }

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_index_;
  std::vector<std::string> labels_;
};

// G = A* x A over A = Z/n, with (a,x)(b,y) = (ab, x + ay).
class ModRingGroup : public AmbientGroup {
 public:
  explicit ModRingGroup(long modulus);

  GroupElement op(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  GroupElement identity() const override;
  std::optional<std::vector<GroupElement>> enumerate() const override;
  std::string name() const override { return "ring-Z/" + std::to_string(n_); }

  long modulus() const { return n_; }
  bool is_unit(long a) const;
  long unit_inverse(long a) const;
  std::vector<long> units() const { return units_; }
  GroupElement element(long a, long x) const;

 private:
  long n_;
  std::vector<long> units_;
};

// Matrix group over Q. `psl` enables sign canonicalization modulo {I, -I}:
// representatives have positive first nonzero entry in row-major order.
class MatrixGroup : public AmbientGroup {
 public:
  MatrixGroup(std::string name, int dim, bool psl = false)
      : name_(std::move(name)), dim_(dim), psl_(psl) {}

  GroupElement op(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  GroupElement identity() const override;
  std::string name() const override { return name_; }

  int dim() const { return dim_; }
  bool psl() const { return psl_; }
  GroupElement element(QMatrix m) const;

 private:
  QMatrix canon(QMatrix m) const;
  std::string name_;
  int dim_;
  bool psl_;
};

// Semidirect product H x| K of two finite table groups, with action
// phi : H -> Aut(K) given as permutations of K-indices.
// (h,k)(g,l) = (hg, k * phi_h(l)).
class SemidirectGroup : public AmbientGroup {
 public:
  SemidirectGroup(std::shared_ptr<const TableGroup> h, std::shared_ptr<const TableGroup> k,
                  std::vector<std::vector<int>> action);  // action[h][k] = phi_h(k)

  GroupElement op(const GroupElement& a, const GroupElement& b) const override;
  GroupElement inv(const GroupElement& a) const override;
  GroupElement identity() const override;
  std::optional<std::vector<GroupElement>> enumerate() const override;
  std::string name() const override;

  const TableGroup& hgroup() const { return *h_; }
  const TableGroup& kgroup() const { return *k_; }
  int act(int h, int k) const { return action_[h][k]; }
  GroupElement element(int h, int k) const;

 private:
  std::shared_ptr<const TableGroup> h_, k_;
  std::vector<std::vector<int>> action_;
};

// Exhaustive group-axiom check for finite groups; throws on violation.
void check_group_axioms(const AmbientGroup& g);

}  // namespace dgk
