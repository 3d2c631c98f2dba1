#pragma once

#include "cxorb/nerve.hpp"

#include <set>
#include <string>
#include <vector>

// Brute-force square scanner, kept deliberately different from the library's
// diagonal-pair enumeration: walk every 4-subset and test the induced graph
// for being a 4-cycle with all labels 2.

namespace support {

inline std::set<std::set<std::string>> chordless_all2_squares(
    const cxorb::LabeledComplex& c) {
  std::set<std::set<std::string>> out;
  const int n = c.vertex_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int d = b + 1; d < n; ++d)
        for (int e = d + 1; e < n; ++e) {
          int vs[4] = {a, b, d, e};
          int degree[4] = {0, 0, 0, 0};
          int edge_count = 0;
          bool all2 = true;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
              int m = c.label(vs[i], vs[j]);
              if (m == 0) continue;
              ++edge_count;
              ++degree[i];
              ++degree[j];
              if (m != 2) all2 = false;
            }
          if (!all2 || edge_count != 4) continue;
          bool cycle = degree[0] == 2 && degree[1] == 2 && degree[2] == 2 &&
                       degree[3] == 2;
          if (!cycle) continue;
          out.insert({c.vertex_names()[a], c.vertex_names()[b],
                      c.vertex_names()[d], c.vertex_names()[e]});
        }
  return out;
}

}  // namespace support
