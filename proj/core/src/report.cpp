#include "qlp/report.hpp"

#include <sstream>

namespace qlp {

std::string Report::to_text() const {
  std::size_t width = 4;
  for (const auto& it : items) width = std::max(width, it.name.size());
  std::ostringstream out;
  for (const auto& it : items) {
    out << (it.passed ? "pass  " : "FAIL  ") << it.name;
    if (!it.detail.empty())
      out << std::string(width - it.name.size() + 2, ' ') << it.detail;
    out << "\n";
  }
  out << (ok() ? "ok" : "failed") << "\n";
  return out.str();
}

}  // namespace qlp
