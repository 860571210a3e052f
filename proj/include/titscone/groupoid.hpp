// Groupoid presentations (objects, generator arrows, relations as pairs of
// generator words) and the spanning-tree extraction of vertex-group
// presentations, shared by the Coxeter (Brink-Howlett) and Artin (reduced
// ribbon) layers.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "titscone/cosetenum.hpp"
#include "titscone/coxeter.hpp"

namespace titscone {

struct GroupoidGenerator {
  NodeSet source;
  NodeSet target;
  unsigned a = 0;       // wall label of the crossing
  unsigned back_a = 0;  // label crossing back: iota_{[I,a]}(a)
  GroupElement payload;  // v_{a,I}
};

// A relation lhs = rhs between composable generator words (indices into the
// generator list). Involution relations have empty rhs.
struct GroupoidRelation {
  std::vector<unsigned> lhs;
  std::vector<unsigned> rhs;
};

struct GroupoidPresentation {
  enum class Kind { coxeter, artin };
  Kind kind = Kind::coxeter;
  NodeSet base;
  std::vector<NodeSet> objects;
  std::vector<GroupoidGenerator> generators;
  std::vector<GroupoidRelation> relations;
  // false when built from an unsaturated BFS ball (objects may be missing)
  bool complete = true;
  // (I,a,b) pairs whose rank-two finiteness test hit the cutoff
  unsigned indeterminate_pairs = 0;

  std::optional<unsigned> find_generator(NodeSet source, unsigned a) const;
  std::string to_json(const CoxeterDiagram& diagram) const;
};

// A group presentation with bookkeeping images of its generators in W.
struct GroupPresentation {
  std::vector<std::string> names;
  std::vector<std::vector<int>> relators;  // signed letters, +-(index+1)
  std::vector<GroupElement> images;        // image of each generator in W

  FinitePresentation finite_presentation() const;
  std::string to_gap() const;
  std::string to_json() const;
};

// Indices of generators forming a BFS spanning tree rooted at the base, plus
// per-object tree paths (generator index sequences from the base).
struct SpanningTree {
  std::vector<bool> in_tree;                     // per generator
  std::vector<std::vector<unsigned>> path_from_base;  // per object index
};
SpanningTree groupoid_spanning_tree(const GroupoidPresentation& pres);

// Spanning-tree contraction of a connected groupoid presentation at its base
// object. For Coxeter-kind presentations, inverse arrow pairs collapse to a
// single group generator (self-paired loops contribute t^2 = 1); for
// Artin-kind, every non-tree arrow is its own generator. Relations rewrite
// through the tree. Requires a connected presentation.
struct VertexGroupData {
  GroupPresentation group;
  SpanningTree tree;
  // signed group letter per groupoid generator (0 = rewrites to identity)
  std::vector<int> letter;
};
VertexGroupData vertex_group_data(const GroupoidPresentation& pres);
GroupPresentation vertex_group_presentation(const GroupoidPresentation& pres);

// Light Tietze simplification: removes generators forced trivial by length-1
// relators and substitutes generators that appear exactly once in a relator.
GroupPresentation tietze_simplify(const GroupPresentation& pres, unsigned max_rounds = 16);

}  // namespace titscone
