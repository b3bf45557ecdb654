#pragma once

#include <string>
#include <unordered_set>

namespace circus::detail {

/// Hands out identifiers not yet taken in one namespace of ids.
class IdPool {
 public:
  void reserve(const std::string& id) { used_.insert(id); }

  std::string fresh(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (;;) {
      std::string candidate = base + "_" + std::to_string(counter_++);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
  std::size_t counter_ = 0;
};

}  // namespace circus::detail
