// Shared fixtures for the unit suites.

#ifndef ICTL_TESTS_SUPPORT_HPP
#define ICTL_TESTS_SUPPORT_HPP

#include <string>
#include <vector>

#include "ictl/model.hpp"
#include "ictl/model_io.hpp"
#include "ictl/world_set.hpp"

namespace ictl::test {

inline std::string data_path(const std::string& file) {
  return std::string(ICTL_TEST_DATA_DIR) + "/" + file;
}

/// The four-world countermodel: w1, w2 below v1; v1 steps to v2.
inline BirelationalModel paper_model() {
  return BirelationalModel::from_raw(load_model(data_path("countermodel_4w.json")));
}

inline WorldSet worlds(const BirelationalModel& m,
                       const std::vector<std::string>& names) {
  WorldSet s(m.size());
  for (const auto& n : names) s.insert(*m.find(n));
  return s;
}

inline BirelationalModel model_from(const std::string& json) {
  return BirelationalModel::from_raw(parse_model_document(json));
}

// The implication, EX and AX sets recomputed world by world from their
// satisfaction clauses, using only the relation queries of the model.

inline WorldSet naive_implies(const BirelationalModel& m, const WorldSet& a,
                              const WorldSet& b) {
  WorldSet out(m.size());
  for (WorldIndex w = 0; w < m.size(); ++w) {
    bool ok = true;
    for (WorldIndex v = 0; v < m.size(); ++v)
      if (m.preorder(w, v) && a.contains(v) && !b.contains(v)) ok = false;
    if (ok) out.insert(w);
  }
  return out;
}

inline WorldSet naive_ex(const BirelationalModel& m, const WorldSet& a) {
  WorldSet out(m.size());
  for (WorldIndex w = 0; w < m.size(); ++w)
    for (WorldIndex u = 0; u < m.size(); ++u)
      if (m.transition(w, u) && a.contains(u)) out.insert(w);
  return out;
}

inline WorldSet naive_ax(const BirelationalModel& m, const WorldSet& a) {
  WorldSet out(m.size());
  for (WorldIndex w = 0; w < m.size(); ++w) {
    bool ok = true;
    for (WorldIndex v = 0; v < m.size(); ++v)
      for (WorldIndex u = 0; u < m.size(); ++u)
        if (m.preorder(w, v) && m.transition(v, u) && !a.contains(u)) ok = false;
    if (ok) out.insert(w);
  }
  return out;
}

/// Literal upward-closure check: w in X and w P v imply v in X.
inline bool upward_closed(const BirelationalModel& m, const WorldSet& x) {
  for (WorldIndex w = 0; w < m.size(); ++w)
    for (WorldIndex v = 0; v < m.size(); ++v)
      if (x.contains(w) && m.preorder(w, v) && !x.contains(v)) return false;
  return true;
}

}  // namespace ictl::test

#endif  // ICTL_TESTS_SUPPORT_HPP
