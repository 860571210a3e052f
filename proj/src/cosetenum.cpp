#include "titscone/cosetenum.hpp"

#include <deque>
#include <stdexcept>

namespace titscone {

namespace {

// HLT-style enumeration with a coincidence queue. Columns come in pairs:
// letter l >= 0 is column 2l for the generator and 2l+1 for its inverse.
class CosetTable {
 public:
  CosetTable(unsigned ngens, std::size_t cap) : cols_(2 * ngens), cap_(cap) {
    add_coset();  // coset 0 = the subgroup
  }

  std::size_t column(int letter) const {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                      : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }
  static std::size_t inverse_column(std::size_t c) { return c ^ 1; }

  int get(int coset, std::size_t col) const { return table_[coset][col]; }

  int rep(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  bool alive(int c) { return rep(c) == c; }

  int add_coset() {
    if (table_.size() >= cap_) throw std::length_error("coset table cap");
    table_.emplace_back(cols_, -1);
    parent_.push_back(static_cast<int>(table_.size()) - 1);
    return static_cast<int>(table_.size()) - 1;
  }

  // define tab[a][col] = b (and the inverse entry), queueing coincidences
  void deduce(int a, std::size_t col, int b) {
    a = rep(a);
    b = rep(b);
    int cur = table_[a][col];
    if (cur >= 0) {
      cur = rep(cur);
      if (cur != b) queue_coincidence(cur, b);
      return;
    }
    table_[a][col] = b;
    std::size_t icol = inverse_column(col);
    int back = table_[b][icol];
    if (back < 0) table_[b][icol] = a;
    else if (rep(back) != a) queue_coincidence(rep(back), a);
  }

  void queue_coincidence(int a, int b) { pending_.emplace_back(a, b); }

  void process_coincidences() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = rep(a);
      b = rep(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      parent_[b] = a;  // b dies, a survives
      for (std::size_t col = 0; col < cols_; ++col) {
        int t = table_[b][col];
        if (t < 0) continue;
        t = rep(t);
        // transfer the entry b --col--> t onto a
        int cur = table_[a][col];
        if (cur < 0) {
          table_[a][col] = t;
          int back = table_[t][inverse_column(col)];
          if (back < 0) table_[t][inverse_column(col)] = a;
          else if (rep(back) != a) queue_coincidence(rep(back), a);
        } else if (rep(cur) != t) {
          queue_coincidence(rep(cur), t);
        }
      }
    }
  }

  std::size_t live_count() {
    std::size_t n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (rep(static_cast<int>(c)) == static_cast<int>(c)) ++n;
    return n;
  }

  std::size_t total() const { return table_.size(); }

 private:
  std::size_t cols_;
  std::size_t cap_;
  std::vector<std::vector<int>> table_;
  std::vector<int> parent_;
  std::deque<std::pair<int, int>> pending_;
};

}  // namespace

std::optional<std::size_t> coset_enumeration_order(const FinitePresentation& pres,
                                                   std::size_t max_cosets) {
  CosetTable table(pres.generator_count, max_cosets);
  try {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < table.total(); ++c) {
        if (!table.alive(static_cast<int>(c))) continue;
        for (const auto& rel : pres.relators) {
          int start = table.rep(static_cast<int>(c));
          // scan forward, defining cosets at gaps (HLT)
          int cur = start;
          for (std::size_t k = 0; k < rel.size(); ++k) {
            std::size_t col = table.column(rel[k]);
            int next = table.get(cur, col);
            if (next < 0) {
              if (k + 1 == rel.size()) {
                // last letter must close back to start
                table.deduce(cur, col, start);
              } else {
                int fresh = table.add_coset();
                table.deduce(cur, col, fresh);
                changed = true;
              }
              next = table.get(cur, col);
            } else if (k + 1 == rel.size()) {
              if (table.rep(next) != table.rep(start))
                table.queue_coincidence(table.rep(next), table.rep(start));
            }
            cur = table.rep(next);
          }
          table.process_coincidences();
          if (!table.alive(static_cast<int>(c))) break;
        }
      }
      // also force every generator entry to be defined (the subgroup is
      // trivial, so the table must be complete)
      for (std::size_t c = 0; c < table.total(); ++c) {
        if (!table.alive(static_cast<int>(c))) continue;
        for (unsigned g = 0; g < pres.generator_count; ++g) {
          if (table.get(static_cast<int>(c), 2 * g) < 0) {
            int fresh = table.add_coset();
            table.deduce(static_cast<int>(c), 2 * g, fresh);
            table.process_coincidences();
            changed = true;
          }
        }
      }
    }
  } catch (const std::length_error&) {
    return std::nullopt;
  }
  return table.live_count();
}

}  // namespace titscone
