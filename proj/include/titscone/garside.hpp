// Finite-type Artin monoid with its Garside structure: left-greedy normal
// forms with W-element factors, positive lifts, Delta_I, the mu_{a,I}
// generators, left divisibility and lcms, the reduced ribbon groupoid
// presentation of N(A,J), Reidemeister-Schreier for N(P,J), and the functor
// from positive chamber paths to the monoid.

#pragma once

#include "titscone/arrangement.hpp"
#include "titscone/groupoid.hpp"
#include "titscone/report.hpp"

namespace titscone {

// A positive Artin monoid element in left-greedy normal form. Every factor
// is a nonidentity element of the ambient finite W (all of W left-divides
// w_0, so W is exactly the simple lattice).
class GarsideElement {
 public:
  GarsideElement() = default;
  explicit GarsideElement(std::shared_ptr<const CoxeterContext> ctx) : ctx_(std::move(ctx)) {}
  GarsideElement(std::shared_ptr<const CoxeterContext> ctx, std::vector<GroupElement> factors);

  const CoxeterContext& context() const;
  std::shared_ptr<const CoxeterContext> context_ptr() const { return ctx_; }
  const std::vector<GroupElement>& factors() const { return factors_; }
  bool is_identity() const { return factors_.empty(); }
  // letter count of any positive word representing the element
  unsigned word_length() const;
  // image in W under pi
  GroupElement image() const;

  GarsideElement operator*(const GarsideElement& o) const;
  bool operator==(const GarsideElement& o) const;
  bool operator!=(const GarsideElement& o) const { return !(*this == o); }
  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::shared_ptr<const CoxeterContext> ctx_;
  std::vector<GroupElement> factors_;
};

// positive lift of w: any reduced word of w read as a positive Artin word
GarsideElement positive_lift(const GroupElement& w);
// Delta_I, the lift of the longest element of the finite parabolic W_I
GarsideElement garside_delta(std::shared_ptr<const CoxeterContext> ctx, NodeSet I);
// mu_{a,I} = lift(v_{a,I}); cross-checked against Delta_I mu = Delta_{I+a}
GarsideElement garside_mu(std::shared_ptr<const CoxeterContext> ctx, unsigned a, NodeSet I);

bool left_divides(const GarsideElement& u, const GarsideElement& w);
// u^-1 w for u dividing w; throws ValidationError otherwise
GarsideElement left_quotient(const GarsideElement& u, const GarsideElement& w);
// least common multiple for left divisibility
GarsideElement left_lcm(const GarsideElement& u, const GarsideElement& v);

// An element of the Artin group in left canonical form Delta^k . positive,
// with the positive part free of Delta factors.
class ArtinElement {
 public:
  ArtinElement() = default;
  explicit ArtinElement(GarsideElement positive);
  ArtinElement(long delta_power, GarsideElement positive);

  long delta_power() const { return delta_power_; }
  const GarsideElement& positive_part() const { return positive_; }
  bool is_identity() const { return delta_power_ == 0 && positive_.is_identity(); }
  GroupElement image() const;
  bool is_positive() const { return delta_power_ >= 0; }

  ArtinElement operator*(const ArtinElement& o) const;
  ArtinElement inverse() const;
  bool operator==(const ArtinElement& o) const;
  bool operator!=(const ArtinElement& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  void canonicalize();
  long delta_power_ = 0;
  GarsideElement positive_;
};

// Generators mu_{a,I} over all associates with the two mu-factorizations of
// each lcm mu_{a,I} v mu_{b,I} as relations (positive lifts of the standard
// expressions of v_{a,b,I}); no involutions. Finite type only.
GroupoidPresentation ribbon_presentation(const ArrangementGraph& graph);

// Generator-wise projection mu_{a,I} -> v_{a,I}: checks every ribbon
// relation holds in W and reports the order of the image of the vertex
// group in N(W,J).
struct PiBarResult {
  CheckReport report;
  std::size_t image_order = 0;
};
PiBarResult pi_bar(const GroupoidPresentation& ribbon);

// Reidemeister-Schreier presentation of N(P,J) = ker(N(A,J) -> N(W,J)),
// with each generator's value in the Artin group (pi-image asserted
// trivial).
struct KernelPresentation {
  GroupPresentation presentation;
  std::vector<ArtinElement> values;
  std::vector<GroupElement> transversal;  // N_J coset representatives
};
KernelPresentation kernel_presentation(const GroupoidPresentation& ribbon);

// The functor from positive chamber paths to the Artin monoid: the product
// of the mu payloads along the path.
GarsideElement functor_G(const ArrangementGraph& graph, const ChamberPath& path);

// Artin-group values of the vertex-group generators of a ribbon
// presentation (tree-conjugated loops at the base object).
std::vector<ArtinElement> ribbon_vertex_values(const GroupoidPresentation& ribbon,
                                               const VertexGroupData& data);

}  // namespace titscone
