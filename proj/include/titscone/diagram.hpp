// Coxeter diagrams: node set, bond labels, induced subdiagram connectivity.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace titscone {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotFiniteTypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct RadiusRequiredError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A subset of diagram nodes, stored as a bitmask over node indices.
class NodeSet {
 public:
  constexpr NodeSet() = default;
  constexpr explicit NodeSet(std::uint64_t bits) : bits_(bits) {}

  static NodeSet of(std::initializer_list<unsigned> nodes) {
    NodeSet s;
    for (unsigned n : nodes) s = s.with(n);
    return s;
  }
  static NodeSet full(unsigned rank) {
    return rank >= 64 ? NodeSet(~0ULL) : NodeSet((1ULL << rank) - 1);
  }

  bool contains(unsigned i) const { return (bits_ >> i) & 1ULL; }
  NodeSet with(unsigned i) const { return NodeSet(bits_ | (1ULL << i)); }
  NodeSet without(unsigned i) const { return NodeSet(bits_ & ~(1ULL << i)); }
  unsigned size() const { return static_cast<unsigned>(__builtin_popcountll(bits_)); }
  bool empty() const { return bits_ == 0; }
  bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
  std::uint64_t bits() const { return bits_; }

  NodeSet operator|(NodeSet o) const { return NodeSet(bits_ | o.bits_); }
  NodeSet operator&(NodeSet o) const { return NodeSet(bits_ & o.bits_); }
  NodeSet operator-(NodeSet o) const { return NodeSet(bits_ & ~o.bits_); }
  bool operator==(NodeSet o) const { return bits_ == o.bits_; }
  bool operator!=(NodeSet o) const { return bits_ != o.bits_; }
  bool operator<(NodeSet o) const { return bits_ < o.bits_; }

  // Iterates set bits in increasing order.
  class iterator {
   public:
    iterator(std::uint64_t rest) : rest_(rest) {}
    unsigned operator*() const { return static_cast<unsigned>(__builtin_ctzll(rest_)); }
    iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

   private:
    std::uint64_t rest_;
  };
  iterator begin() const { return iterator(bits_); }
  iterator end() const { return iterator(0); }

  std::vector<unsigned> to_vector() const {
    std::vector<unsigned> v;
    for (unsigned i : *this) v.push_back(i);
    return v;
  }

 private:
  std::uint64_t bits_ = 0;
};

// Bond label m_{ij}; kInfiniteBond encodes m = infinity.
constexpr unsigned kInfiniteBond = 0;

class CoxeterDiagram {
 public:
  CoxeterDiagram(std::vector<std::string> node_names,
                 std::vector<std::vector<unsigned>> bonds);

  // Parses the JSON schema {"nodes":[...], "edges":[[a, b, m|"inf"],...]}.
  // Node order in "nodes" fixes the basis order and all tie-breaking.
  static CoxeterDiagram parse(const std::string& json_text);

  unsigned rank() const { return static_cast<unsigned>(names_.size()); }
  const std::vector<std::string>& node_names() const { return names_; }
  const std::string& name(unsigned i) const { return names_.at(i); }
  unsigned index_of(const std::string& name) const;

  unsigned bond(unsigned i, unsigned j) const { return bonds_[i][j]; }
  bool bond_finite(unsigned i, unsigned j) const { return bonds_[i][j] != kInfiniteBond; }

  // lcm of the finite bond labels >= 3, or 2 when there are none; the order
  // parameter of the scalar field.
  unsigned field_order() const { return field_order_; }

  // Vertex set of the connected component of the induced subdiagram on
  // members that contains seed (edges are bonds with m >= 3, including inf).
  NodeSet component(NodeSet members, unsigned seed) const;

  NodeSet all_nodes() const { return NodeSet::full(rank()); }

  NodeSet parse_node_list(const std::string& comma_separated) const;
  std::string set_to_string(NodeSet s) const;
  std::string json() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<unsigned>> bonds_;
  unsigned field_order_ = 2;
};

}  // namespace titscone
