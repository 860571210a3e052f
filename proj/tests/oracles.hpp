// Test-only oracles, independent of the matrix engine under test.
//
// PermOracle models W(A_{n-1}) = S_n on one-line permutations: lengths are
// inversion counts, roots are index pairs, all brute force. CayleyOracle
// works for any finitely presented-as-permutations model: it BFS-enumerates
// the group from abstract generator images and reads lengths off the Cayley
// graph, so it never touches the reflection representation.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

// One-line notation: p[i] = image of i, 0-based.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// (a b) acting on positions
inline Perm transposition(int n, int a, int b) {
  Perm p = perm_identity(n);
  std::swap(p[a], p[b]);
  return p;
}

// composition: (p * q)(i) = p(q(i))
inline Perm perm_mul(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
  return r;
}

inline Perm perm_inv(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

inline int perm_inversions(const Perm& p) {
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++count;
  return count;
}

// S_n with simple generators s_i = (i, i+1), i = 0..n-2. Models type A_{n-1}.
struct PermOracle {
  int n;
  explicit PermOracle(int n_) : n(n_) {}

  Perm simple(int i) const { return transposition(n, i, i + 1); }

  Perm from_word(const std::vector<unsigned>& word) const {
    Perm p = perm_identity(n);
    for (unsigned i : word) p = perm_mul(p, simple(static_cast<int>(i)));
    return p;
  }

  std::vector<Perm> all_elements() const {
    Perm p = perm_identity(n);
    std::vector<Perm> out;
    do {
      out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }

  int length(const Perm& p) const { return perm_inversions(p); }

  // roots of A_{n-1} are e_i - e_j, i != j; positive iff i < j
  // action: w . (e_i - e_j) = e_{w(i)} - e_{w(j)}
  bool sends_root_negative(const Perm& w, int i, int j) const { return w[i] > w[j]; }

  Perm longest() const {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
    return p;
  }
};

// Generic Cayley-graph oracle over an arbitrary faithful permutation model.
struct CayleyOracle {
  std::vector<Perm> gens;
  std::vector<Perm> elements;             // BFS order from identity
  std::map<Perm, int> index;              // element -> position
  std::vector<int> depth;                 // BFS distance = Coxeter length
  std::vector<std::vector<int>> right;    // right[e][g] = index of elements[e]*gens[g]

  explicit CayleyOracle(std::vector<Perm> generators, std::size_t cap = 2000000) : gens(std::move(generators)) {
    if (gens.empty()) throw std::logic_error("CayleyOracle: no generators");
    Perm e = perm_identity(static_cast<int>(gens[0].size()));
    elements.push_back(e);
    index[e] = 0;
    depth.push_back(0);
    std::deque<int> queue{0};
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (const Perm& g : gens) {
        Perm next = perm_mul(elements[cur], g);
        auto [it, fresh] = index.try_emplace(next, static_cast<int>(elements.size()));
        if (fresh) {
          if (elements.size() >= cap) throw std::logic_error("CayleyOracle: cap exceeded");
          elements.push_back(next);
          depth.push_back(depth[cur] + 1);
          queue.push_back(it->second);
        }
      }
    }
    right.assign(elements.size(), std::vector<int>(gens.size(), -1));
    for (std::size_t eIdx = 0; eIdx < elements.size(); ++eIdx)
      for (std::size_t g = 0; g < gens.size(); ++g)
        right[eIdx][g] = index.at(perm_mul(elements[eIdx], gens[g]));
  }

  int length(const Perm& p) const { return depth[index.at(p)]; }
  std::size_t order() const { return elements.size(); }

  // All reduced words of p, by descending the Cayley graph.
  std::vector<std::vector<unsigned>> reduced_words(const Perm& p) const {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto dfs = [&](auto&& self, int at) -> void {
      if (depth[at] == 0) {
        std::vector<unsigned> w(cur.rbegin(), cur.rend());
        out.push_back(std::move(w));
        return;
      }
      for (std::size_t g = 0; g < gens.size(); ++g) {
        int nxt = right[at][g];
        if (depth[nxt] == depth[at] - 1) {
          cur.push_back(static_cast<unsigned>(g));
          self(self, nxt);
          cur.pop_back();
        }
      }
    };
    dfs(dfs, index.at(p));
    return out;
  }
};

// Signed permutations for type B_n, encoded as permutations of {0..2n-1}
// where i <-> i+n is negation. Generator order matches the diagram
// 1 = 2 - 3 - ... - n (4-bond first): s_1 is the sign flip on the first
// coordinate, s_{k+1} swaps coordinates k-1 and k.
inline std::vector<Perm> b_type_generators(int n) {
  std::vector<Perm> gens;
  Perm flip = perm_identity(2 * n);
  std::swap(flip[0], flip[n]);
  gens.push_back(flip);
  for (int i = 0; i + 1 < n; ++i) {
    Perm p = perm_identity(2 * n);
    std::swap(p[i], p[i + 1]);
    std::swap(p[i + n], p[i + 1 + n]);
    gens.push_back(p);
  }
  return gens;
}

}  // namespace oracle
