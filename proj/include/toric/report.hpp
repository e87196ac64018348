#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace toric {

// Aggregated verification results.  One line per check, "PASS/FAIL name
// detail", assembled in name order so reports are byte-stable.
struct CheckReport {
  struct Line {
    std::string name;
    bool pass;
    std::string detail;
  };
  std::vector<Line> lines;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    lines.push_back({name, pass, detail});
  }
  void merge(const CheckReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
  }
  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
  std::string str() const {
    std::vector<Line> sorted = lines;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Line& a, const Line& b) { return a.name < b.name; });
    std::string out;
    for (const auto& l : sorted) {
      out += l.pass ? "PASS " : "FAIL ";
      out += l.name;
      if (!l.detail.empty()) {
        out += " ";
        out += l.detail;
      }
      out += "\n";
    }
    return out;
  }
};

}  // namespace toric
