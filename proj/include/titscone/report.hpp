// Named pass/fail check reporting shared by the verification suites.

#pragma once

#include <string>
#include <vector>

namespace titscone {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string witness;  // failure detail or summary statistics
};

struct CheckReport {
  std::vector<CheckItem> items;

  bool ok() const {
    for (const auto& item : items)
      if (!item.pass) return false;
    return true;
  }
  void add(std::string name, bool pass, std::string witness = "") {
    items.push_back({std::move(name), pass, std::move(witness)});
  }
  void merge(const CheckReport& o) { items.insert(items.end(), o.items.begin(), o.items.end()); }
};

}  // namespace titscone
