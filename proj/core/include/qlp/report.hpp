#pragma once

#include <string>
#include <vector>

namespace qlp {

enum class CheckKind { structure, axiom };

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;  // witness or short note; empty when passed
  CheckKind kind = CheckKind::axiom;
};

struct Report {
  std::vector<CheckItem> items;

  void add(const std::string& name, bool passed, const std::string& detail = "",
           CheckKind kind = CheckKind::axiom) {
    items.push_back({name, passed, detail, kind});
  }

  bool ok() const {
    for (const auto& it : items)
      if (!it.passed) return false;
    return true;
  }

  bool structural_failure() const {
    for (const auto& it : items)
      if (!it.passed && it.kind == CheckKind::structure) return true;
    return false;
  }

  std::string to_text() const;
};

}  // namespace qlp
