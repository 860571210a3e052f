// Exact Coxeter group engine: reflection representation over Q(2cos(pi/L)),
// roots, lengths, canonical words, parabolic machinery, weak order.

#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "titscone/diagram.hpp"
#include "titscone/numberfield.hpp"

namespace titscone {

class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned n, const Scalar& fill) : n_(n), a_(n * n, fill) {}
  static Matrix identity(const NumberField& f, unsigned n);

  unsigned size() const { return n_; }
  const Scalar& at(unsigned i, unsigned j) const { return a_[i * n_ + j]; }
  Scalar& at(unsigned i, unsigned j) { return a_[i * n_ + j]; }

  Matrix operator*(const Matrix& o) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
  std::vector<Scalar> apply_transpose(const std::vector<Scalar>& v) const;

  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  std::size_t hash() const;

 private:
  unsigned n_ = 0;
  std::vector<Scalar> a_;
};

// A vector in V written in the simple-root basis.
struct Root {
  std::vector<Scalar> coords;

  bool operator==(const Root& o) const { return coords == o.coords; }
  std::size_t hash() const;
  bool is_zero() const;
  // +1 if all coordinates >= 0 with one > 0, -1 for the negation, 0 for the
  // zero vector; throws InternalError on mixed signs (not a root).
  int sign() const;
  bool is_positive() const { return sign() > 0; }
  bool is_negative() const { return sign() < 0; }
};

// A point of Theta = V* written in the fundamental coweight basis (the basis
// dual to the simple roots).
struct ThetaPoint {
  std::vector<Scalar> coords;

  Scalar pair(const Root& r) const;
  bool operator==(const ThetaPoint& o) const { return coords == o.coords; }
};

class CoxeterContext;

// A Coxeter group element: exact matrix on V (plus its inverse, kept to make
// inversion and contragredient action free) with the lexicographically
// minimal reduced word computed lazily and cached.
class GroupElement {
 public:
  GroupElement() = default;

  const CoxeterContext& context() const;
  const Matrix& matrix() const;
  const Matrix& inverse_matrix() const;

  unsigned length() const { return static_cast<unsigned>(word().size()); }
  // Lexicographically minimal reduced word, in node indices.
  const std::vector<unsigned>& word() const;

  bool is_identity() const;
  GroupElement inverse() const;

  bool operator==(const GroupElement& o) const { return p_ == o.p_ || matrix() == o.matrix(); }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }
  std::size_t hash() const { return matrix().hash(); }

  // image of the simple root alpha_i, read off the matrix column
  Root image_of_simple(unsigned i) const;
  Root inverse_image_of_simple(unsigned i) const;

  bool right_descent(unsigned i) const { return image_of_simple(i).is_negative(); }
  bool left_descent(unsigned i) const { return inverse_image_of_simple(i).is_negative(); }

 private:
  friend class CoxeterContext;
  struct Payload;
  explicit GroupElement(std::shared_ptr<const Payload> p) : p_(std::move(p)) {}
  std::shared_ptr<const Payload> p_;
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);

// ShortLex comparison on canonical words (length, then lex). A deterministic
// total order used for output and transversals.
bool shortlex_less(const GroupElement& a, const GroupElement& b);

class CoxeterContext : public std::enable_shared_from_this<CoxeterContext> {
 public:
  static std::shared_ptr<const CoxeterContext> make(CoxeterDiagram diagram);

  const CoxeterDiagram& diagram() const { return diagram_; }
  unsigned rank() const { return diagram_.rank(); }
  const NumberField& field() const { return *field_; }
  std::shared_ptr<const NumberField> field_ptr() const { return field_; }

  // Symmetric bilinear form, B(alpha_i, alpha_i) = 1,
  // B(alpha_i, alpha_j) = -cos(pi/m_ij), with -1 for m = infinity.
  const Matrix& bilinear_form() const { return bilinear_; }
  // 2 B(alpha_i, alpha_j); the integral coefficients used by reflections.
  const Scalar& two_b(unsigned i, unsigned j) const { return two_b_.at(i, j); }

  GroupElement identity_element() const;
  GroupElement simple_reflection(unsigned i) const;
  GroupElement from_word(const std::vector<unsigned>& word) const;
  GroupElement from_matrices(Matrix mat, Matrix inv, unsigned length_bound) const;

  Root simple_root(unsigned i) const;
  Root zero_root() const;
  ThetaPoint zero_point() const;
  ThetaPoint fundamental_coweight_sum(NodeSet support) const;

  bool is_finite_parabolic(NodeSet I) const;
  bool is_finite_type() const { return is_finite_parabolic(diagram_.all_nodes()); }
  GroupElement longest_element(NodeSet I) const;
  // The bijection iota_I : I -> I with w_I . alpha_j = -alpha_{iota(j)}.
  unsigned iota(NodeSet I, unsigned j) const;
  // [I,a]: component of the induced subdiagram on I+a containing a.
  NodeSet component(NodeSet I, unsigned a) const;

 private:
  explicit CoxeterContext(CoxeterDiagram diagram);

  CoxeterDiagram diagram_;
  std::shared_ptr<const NumberField> field_;
  Matrix bilinear_;
  Matrix two_b_;
  std::vector<Matrix> refl_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<std::uint64_t, bool> finite_cache_;
  mutable std::unordered_map<std::uint64_t, GroupElement> longest_cache_;
};

// In-place right multiplication by s_i (column operation) and left
// multiplication by s_i (row operation).
void apply_simple_right(const CoxeterContext& ctx, Matrix& m, unsigned i);
void apply_simple_left(const CoxeterContext& ctx, Matrix& m, unsigned i);

Root act(const GroupElement& g, const Root& r);
ThetaPoint contragredient_act(const GroupElement& g, const ThetaPoint& phi);

// Reflection s_beta applied to a root directly: v - 2B(v, beta)/B(beta,beta)...
// only simple-reflection action is needed; roots transform via act().
Root apply_simple_to_root(const CoxeterContext& ctx, unsigned i, const Root& r);

// The unique shortest element of g W_I (descent walk confined to I).
GroupElement min_coset_rep(const GroupElement& g, NodeSet I);
// Membership in the standard parabolic subgroup W_I.
bool in_parabolic(const GroupElement& g, NodeSet I);

// Full enumeration of W (requires that it closes within max_size).
std::vector<GroupElement> enumerate_group(const CoxeterContext& ctx, std::size_t max_size);

// Positive roots of the standard parabolic W_I; throws NotFiniteTypeError if
// the closure exceeds max_size.
std::vector<Root> positive_roots(const CoxeterContext& ctx, NodeSet I, std::size_t max_size);

// All positive roots w . alpha_i with l(w) <= depth (complete for the whole
// root system only when W is finite).
std::vector<Root> positive_roots_depth_bounded(const CoxeterContext& ctx, unsigned depth);

// Left weak (prefix) order: u <= w iff l(u) + l(u^-1 w) = l(w).
bool prefix_leq(const GroupElement& u, const GroupElement& w);
GroupElement weak_meet(const GroupElement& x, const GroupElement& y);
// Join in the left weak order; requires finite type (uses w_0).
GroupElement weak_join(const GroupElement& x, const GroupElement& y);

}  // namespace titscone

template <>
struct std::hash<titscone::GroupElement> {
  std::size_t operator()(const titscone::GroupElement& g) const { return g.hash(); }
};

template <>
struct std::hash<titscone::Root> {
  std::size_t operator()(const titscone::Root& r) const { return r.hash(); }
};
