// The Tits cone intersection for a subset J: J-roots, restricted
// hyperplanes, chamber labels, simple wall crossings, BFS chamber
// enumeration, sample points and sign vectors, normaliser action, geodesics.

#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>

#include "titscone/coxeter.hpp"

namespace titscone {

// Chamber x . C_I of Cone(J), encoded by the Labelling Theorem pair (x, I)
// with x minimal in x W_I and W_J x = x W_I.
struct ChamberLabel {
  GroupElement x;
  NodeSet I;

  bool operator==(const ChamberLabel& o) const { return I == o.I && x == o.x; }
  std::size_t hash() const { return hash_combine(x.hash(), I.bits()); }
};

// Checks the full label invariants (minimality and the conjugation
// condition, both directions). Used by asserts and the verify suite.
bool is_valid_chamber_label(const ChamberLabel& c, NodeSet J);

// H_alpha cap Theta_J in canonical form: the J-coordinates of the root are
// zeroed and the first nonzero coordinate is scaled to +1, which identifies
// all roots cutting the same restricted hyperplane.
struct RestrictedHyperplane {
  std::vector<Scalar> functional;

  bool operator==(const RestrictedHyperplane& o) const { return functional == o.functional; }
  std::size_t hash() const;
};

// total deterministic order on coefficient vectors (lexicographic)
bool scalar_vector_less(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

bool is_J_root(const Root& alpha, NodeSet J);
RestrictedHyperplane restricted_hyperplane(const Root& alpha, NodeSet J);

// v_{a,I} = w_{[I,a]-a} w_{[I,a]} and the target label component, defined
// when W_{[I,a]} is finite.
struct WallCrossingData {
  GroupElement v;
  NodeSet target;     // K = I + a - iota_{[I,a]}(a)
  NodeSet component;  // [I,a]
  unsigned back_node; // a' = iota_{[I,a]}(a), the label crossing back
};
std::optional<WallCrossingData> wall_crossing_data(const CoxeterContext& ctx, NodeSet I,
                                                   unsigned a);

// The simple wall crossing omega_{a,I}(x, I) = (x v_{a,I}, K); empty when the
// wall is uncrossable (W_{[I,a]} infinite). Throws if a lies in I.
std::optional<std::pair<ChamberLabel, GroupElement>> simple_wall_crossing(const ChamberLabel& c,
                                                                          unsigned a);

// Interior point x . (sum of fundamental coweights outside I) of the chamber;
// postconditions are asserted exactly.
ThetaPoint chamber_sample_point(const ChamberLabel& c, NodeSet J);

class ArrangementGraph {
 public:
  struct Edge {
    unsigned from = 0;
    unsigned to = 0;
    unsigned a = 0;       // wall label at the source
    GroupElement v;       // crossing element v_{a,I}
    unsigned hyperplane;  // index into hyperplanes()
  };

  const CoxeterContext& context() const { return *ctx_; }
  std::shared_ptr<const CoxeterContext> context_ptr() const { return ctx_; }
  NodeSet J() const { return J_; }
  std::optional<unsigned> radius() const { return radius_; }
  bool saturated() const { return saturated_; }

  unsigned size() const { return static_cast<unsigned>(chambers_.size()); }
  const ChamberLabel& chamber(unsigned i) const { return chambers_.at(i); }
  const std::vector<ChamberLabel>& chambers() const { return chambers_; }
  unsigned base_index() const { return base_; }
  std::optional<unsigned> find(const ChamberLabel& c) const;
  unsigned depth(unsigned i) const { return depth_.at(i); }

  const std::vector<Edge>& edges_from(unsigned i) const { return out_.at(i); }
  std::vector<Edge> all_edges() const;
  const Edge* edge_from(unsigned i, unsigned a) const;
  // Uncrossable candidate walls of chamber i (Tits cone boundary marks).
  NodeSet boundary(unsigned i) const { return boundary_.at(i); }

  const std::vector<RestrictedHyperplane>& hyperplanes() const { return hyperplanes_; }
  const ThetaPoint& sample_point(unsigned i) const;
  // sign of chamber i against hyperplane h, always +-1
  int sign(unsigned i, unsigned h) const;
  const std::vector<int>& sign_vector(unsigned i) const;

  // indices of hyperplanes separating chambers s and t
  std::vector<unsigned> separating(unsigned s, unsigned t) const;
  unsigned separation_distance(unsigned s, unsigned t) const;

  std::string to_json(const CoxeterDiagram& diagram) const;
  std::string to_dot(const CoxeterDiagram& diagram) const;
  static ArrangementGraph from_json(const std::string& text);

  friend ArrangementGraph enumerate_chambers(std::shared_ptr<const CoxeterContext> ctx, NodeSet J,
                                             std::optional<unsigned> radius);

 private:
  void finalize(std::vector<ChamberLabel> chambers, std::vector<unsigned> depth,
                std::vector<std::vector<Edge>> out, std::vector<NodeSet> boundary);
  void ensure_signs() const;

  struct SignCache {
    std::once_flag once;
    std::vector<ThetaPoint> samples;
    std::vector<std::vector<int>> signs;
  };

  std::shared_ptr<const CoxeterContext> ctx_;
  NodeSet J_;
  std::optional<unsigned> radius_;
  bool saturated_ = true;
  unsigned base_ = 0;

  std::vector<ChamberLabel> chambers_;
  std::vector<unsigned> depth_;
  std::vector<std::vector<Edge>> out_;
  std::vector<NodeSet> boundary_;
  std::unordered_map<std::size_t, std::vector<unsigned>> index_;
  std::vector<RestrictedHyperplane> hyperplanes_;

  std::shared_ptr<SignCache> cache_ = std::make_shared<SignCache>();
};

// BFS over simple wall crossings from (e, J). Finite type completes; other
// diagrams require a radius (wall-crossing distance from the base chamber).
ArrangementGraph enumerate_chambers(std::shared_ptr<const CoxeterContext> ctx, NodeSet J,
                                    std::optional<unsigned> radius);

// --- normaliser machinery ---

bool is_normaliser_element(const GroupElement& g, NodeSet J);
// (min_coset_rep(g x, I), I); throws ValidationError when g is not in the
// normaliser of W_J.
ChamberLabel normaliser_act(const GroupElement& g, const ChamberLabel& c, NodeSet J);
// N_J = elements permuting the J-simple roots; a transversal of
// N(W,J) = Norm_W(W_J)/W_J. Finite type only.
std::vector<GroupElement> enumerate_normaliser_quotient(const CoxeterContext& ctx, NodeSet J);

// --- paths ---

// A path is a start chamber plus the wall labels crossed in order.
struct ChamberPath {
  unsigned source = 0;
  std::vector<unsigned> walls;

  bool operator==(const ChamberPath& o) const { return source == o.source && walls == o.walls; }
};

// Chambers visited by the path, |walls| + 1 entries; throws on an edge that
// does not exist (disconnected sequence).
std::vector<unsigned> path_vertices(const ArrangementGraph& g, const ChamberPath& p);
GroupElement path_element(const ArrangementGraph& g, const ChamberPath& p);
// length-additivity test: l(v_p) = sum l(v_{a_i, I_i})
bool is_geodesic(const ArrangementGraph& g, const ChamberPath& p);

// All geodesic paths from s to t (DFS crossing only separating hyperplanes).
std::vector<ChamberPath> geodesics_between(const ArrangementGraph& g, unsigned s, unsigned t,
                                           std::size_t limit = 1u << 20);

// Consistency of the geometric half-space test with the length criterion for
// the crossable wall a of chamber c; always true when the theory holds.
bool halfspace_crosscheck(const ArrangementGraph& g, unsigned c, unsigned a);

}  // namespace titscone

template <>
struct std::hash<titscone::ChamberLabel> {
  std::size_t operator()(const titscone::ChamberLabel& c) const { return c.hash(); }
};
