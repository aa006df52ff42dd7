#include "dgk/group.hpp"

#include <array>
#include <numeric>
#include <sstream>

namespace dgk {

std::string GroupElement::key() const {
  std::ostringstream os;
  if (auto* t = std::get_if<TablePayload>(&payload)) {
    os << "t" << t->index;
  } else if (auto* m = std::get_if<ModPairPayload>(&payload)) {
    os << "m" << m->a << "," << m->x;
  } else if (auto* x = std::get_if<MatrixPayload>(&payload)) {
    os << "M" << x->m.str();
  } else {
    auto& s = std::get<SemiPayload>(payload);
    os << "s" << s.h << "," << s.k;
  }
  return os.str();
}

// --------------------------------------------------------------------------
// TableGroup

TableGroup::TableGroup(std::string name, std::vector<std::vector<int>> table,
                       int identity_index, std::vector<std::string> labels)
    : name_(std::move(name)),
      table_(std::move(table)),
      identity_index_(identity_index),
      labels_(std::move(labels)) {
  int n = static_cast<int>(table_.size());
  if (identity_index_ < 0 || identity_index_ >= n)
    throw std::invalid_argument("identity index out of range");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table not square");
    for (int v : row)
      if (v < 0 || v >= n) throw std::invalid_argument("table entry out of range");
  }
  inverse_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (table_[i][j] == identity_index_ && table_[j][i] == identity_index_) {
        inverse_[i] = j;
        break;
      }
    if (inverse_[i] < 0) throw std::invalid_argument("element without inverse in table");
  }
  if (labels_.empty())
    for (int i = 0; i < n; ++i) labels_.push_back("g" + std::to_string(i));
}

std::shared_ptr<TableGroup> TableGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return std::make_shared<TableGroup>("Z/" + std::to_string(n), std::move(t), 0,
                                      std::move(labels));
}

std::shared_ptr<TableGroup> TableGroup::symmetric3() {
  // permutations of {0,1,2} in a fixed order; index 0 is the identity
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto find = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    throw std::logic_error("permutation not found");
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  std::vector<std::string> labels = {"e", "(01)", "(12)", "(02)", "(012)", "(021)"};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      std::array<int, 3> c;
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = find(c);
    }
  return std::make_shared<TableGroup>("S3", std::move(t), 0, std::move(labels));
}

GroupElement TableGroup::op(const GroupElement& a, const GroupElement& b) const {
  check_owner(a);
  check_owner(b);
  int i = std::get<TablePayload>(a.payload).index;
  int j = std::get<TablePayload>(b.payload).index;
  return make(TablePayload{table_[i][j]});
}

GroupElement TableGroup::inv(const GroupElement& a) const {
  check_owner(a);
  return make(TablePayload{inverse_[std::get<TablePayload>(a.payload).index]});
}

GroupElement TableGroup::identity() const { return make(TablePayload{identity_index_}); }

std::optional<std::vector<GroupElement>> TableGroup::enumerate() const {
  std::vector<GroupElement> out;
  for (int i = 0; i < order(); ++i) out.push_back(make(TablePayload{i}));
  return out;
}

GroupElement TableGroup::element(int index) const {
  if (index < 0 || index >= order()) throw std::out_of_range("table index");
  return make(TablePayload{index});
}

// --------------------------------------------------------------------------
// ModRingGroup

ModRingGroup::ModRingGroup(long modulus) : n_(modulus) {
  if (n_ < 2) throw std::invalid_argument("modulus must be >= 2");
  for (long a = 1; a < n_; ++a)
    if (std::gcd(a, n_) == 1) units_.push_back(a);
}

bool ModRingGroup::is_unit(long a) const {
  long r = ((a % n_) + n_) % n_;
  return r != 0 && std::gcd(r, n_) == 1;
}

long ModRingGroup::unit_inverse(long a) const {
  long r = ((a % n_) + n_) % n_;
  for (long b : units_)
    if (r * b % n_ == 1) return b;
  throw std::domain_error("not a unit mod " + std::to_string(n_));
}

GroupElement ModRingGroup::element(long a, long x) const {
  long ra = ((a % n_) + n_) % n_;
  long rx = ((x % n_) + n_) % n_;
  if (!is_unit(ra)) throw std::domain_error("first component must be a unit");
  return make(ModPairPayload{ra, rx});
}

GroupElement ModRingGroup::op(const GroupElement& a, const GroupElement& b) const {
  check_owner(a);
  check_owner(b);
  const auto& p = std::get<ModPairPayload>(a.payload);
  const auto& q = std::get<ModPairPayload>(b.payload);
  // (a,x)(b,y) = (ab, x + ay)
  return make(ModPairPayload{p.a * q.a % n_, (p.x + p.a * q.x) % n_});
}

GroupElement ModRingGroup::inv(const GroupElement& a) const {
  check_owner(a);
  const auto& p = std::get<ModPairPayload>(a.payload);
  long ai = unit_inverse(p.a);
  // (a,x)^-1 = (a^-1, -a^-1 x)
  return make(ModPairPayload{ai, ((-(ai * p.x)) % n_ + n_) % n_});
}

GroupElement ModRingGroup::identity() const { return make(ModPairPayload{1, 0}); }

std::optional<std::vector<GroupElement>> ModRingGroup::enumerate() const {
  std::vector<GroupElement> out;
  for (long a : units_)
    for (long x = 0; x < n_; ++x) out.push_back(make(ModPairPayload{a, x}));
  return out;
}

// --------------------------------------------------------------------------
// MatrixGroup

QMatrix MatrixGroup::canon(QMatrix m) const {
  if (psl_ && m.leading_sign() < 0) return -m;
  return m;
}

GroupElement MatrixGroup::element(QMatrix m) const {
  if (m.rows() != dim_ || m.cols() != dim_) throw ShapeError("wrong matrix dimension");
  if (sgn(m.det()) == 0) throw SingularMatrixError("group element must be invertible");
  return make(MatrixPayload{canon(std::move(m))});
}

GroupElement MatrixGroup::op(const GroupElement& a, const GroupElement& b) const {
  check_owner(a);
  check_owner(b);
  return make(MatrixPayload{canon(a.matrix() * b.matrix())});
}

GroupElement MatrixGroup::inv(const GroupElement& a) const {
  check_owner(a);
  return make(MatrixPayload{canon(a.matrix().inverse())});
}

GroupElement MatrixGroup::identity() const {
  return make(MatrixPayload{QMatrix::identity(dim_)});
}

// --------------------------------------------------------------------------
// SemidirectGroup

SemidirectGroup::SemidirectGroup(std::shared_ptr<const TableGroup> h,
                                 std::shared_ptr<const TableGroup> k,
                                 std::vector<std::vector<int>> action)
    : h_(std::move(h)), k_(std::move(k)), action_(std::move(action)) {
  if (static_cast<int>(action_.size()) != h_->order())
    throw std::invalid_argument("action must have one row per H element");
  for (const auto& row : action_)
    if (static_cast<int>(row.size()) != k_->order())
      throw std::invalid_argument("action row has wrong length");
  // each phi_h must be an automorphism of K, and phi a homomorphism
  auto kid = *k_->enumerate();
  for (int hi = 0; hi < h_->order(); ++hi) {
    for (int i = 0; i < k_->order(); ++i)
      for (int j = 0; j < k_->order(); ++j) {
        auto lhs = k_->op(k_->element(action_[hi][i]), k_->element(action_[hi][j]));
        auto prod = k_->op(kid[i], kid[j]);
        auto rhs = k_->element(action_[hi][std::get<TablePayload>(prod.payload).index]);
        if (lhs != rhs) throw std::invalid_argument("action is not by automorphisms");
      }
  }
  for (int a = 0; a < h_->order(); ++a)
    for (int b = 0; b < h_->order(); ++b) {
      auto ab = h_->op(h_->element(a), h_->element(b));
      int abi = std::get<TablePayload>(ab.payload).index;
      for (int ki = 0; ki < k_->order(); ++ki)
        if (action_[abi][ki] != action_[a][action_[b][ki]])
          throw std::invalid_argument("action is not a homomorphism H -> Aut(K)");
    }
}

std::string SemidirectGroup::name() const {
  return h_->name() + "|x" + k_->name();
}

GroupElement SemidirectGroup::element(int h, int k) const {
  if (h < 0 || h >= h_->order() || k < 0 || k >= k_->order())
    throw std::out_of_range("semidirect component index");
  return make(SemiPayload{h, k});
}

GroupElement SemidirectGroup::op(const GroupElement& a, const GroupElement& b) const {
  check_owner(a);
  check_owner(b);
  const auto& p = std::get<SemiPayload>(a.payload);
  const auto& q = std::get<SemiPayload>(b.payload);
  auto hh = h_->op(h_->element(p.h), h_->element(q.h));
  auto kk = k_->op(k_->element(p.k), k_->element(action_[p.h][q.k]));
  return make(SemiPayload{std::get<TablePayload>(hh.payload).index,
                          std::get<TablePayload>(kk.payload).index});
}

GroupElement SemidirectGroup::inv(const GroupElement& a) const {
  check_owner(a);
  const auto& p = std::get<SemiPayload>(a.payload);
  auto hinv = h_->inv(h_->element(p.h));
  int hi = std::get<TablePayload>(hinv.payload).index;
  auto kinv = k_->inv(k_->element(p.k));
  int ki = std::get<TablePayload>(kinv.payload).index;
  // (h,k)^-1 = (h^-1, phi_{h^-1}(k^-1))
  return make(SemiPayload{hi, action_[hi][ki]});
}

GroupElement SemidirectGroup::identity() const {
  return make(SemiPayload{std::get<TablePayload>(h_->identity().payload).index,
                          std::get<TablePayload>(k_->identity().payload).index});
}

std::optional<std::vector<GroupElement>> SemidirectGroup::enumerate() const {
  std::vector<GroupElement> out;
  for (int h = 0; h < h_->order(); ++h)
    for (int k = 0; k < k_->order(); ++k) out.push_back(make(SemiPayload{h, k}));
  return out;
}

// --------------------------------------------------------------------------

void check_group_axioms(const AmbientGroup& g) {
  auto all = g.enumerate();
  if (!all) throw std::invalid_argument("group is not enumerable");
  const auto& v = *all;
  auto e = g.identity();
  for (const auto& a : v) {
    if (g.op(e, a) != a || g.op(a, e) != a) throw std::logic_error("identity law fails");
    auto ai = g.inv(a);
    if (g.op(a, ai) != e || g.op(ai, a) != e) throw std::logic_error("inverse law fails");
  }
  for (const auto& a : v)
    for (const auto& b : v)
      for (const auto& c : v)
        if (g.op(g.op(a, b), c) != g.op(a, g.op(b, c)))
          throw std::logic_error("associativity fails");
}

}  // namespace dgk
