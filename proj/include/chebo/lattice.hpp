#pragma once

// Exhaustive subgroup machinery for small groups. Subgroups are sorted
// element-id sets; the full lattice is the join closure of the cyclic
// subgroups (every subgroup is a join of cyclics, and iterated pairwise
// joins reach every finite join). Quadratic in the subgroup count, which is
// the intended trade at the configured cap.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/enumeration.hpp"

namespace chebo {

struct SubgroupRecord {
  std::vector<int> elems;  // sorted element ids, always containing 0
  std::vector<int> gens;   // small generating set (element ids)
  bool normal = false;

  std::uint64_t order() const { return elems.size(); }
  bool contains(int id) const {
    return std::binary_search(elems.begin(), elems.end(), id);
  }
};

inline bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline std::vector<int> intersect_sorted(const std::vector<int>& a,
                                         const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// <gens> as a sorted id set: breadth-first words over the table.
inline std::vector<int> closure(const GroupTable& gt, const std::vector<int>& gens) {
  std::vector<bool> in(gt.n, false);
  std::vector<int> out{0};
  in[0] = true;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (int s : gens) {
      int y = gt.times(out[head], s);
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Greedy minimal-ish generating set: take ascending ids that enlarge the
// closure. Deterministic, at most log2 |H| generators.
inline std::vector<int> reduce_generators(const GroupTable& gt, const std::vector<int>& elems) {
  std::vector<int> gens;
  std::vector<int> cur{0};
  for (int id : elems) {
    if (static_cast<std::size_t>(cur.size()) == elems.size()) break;
    if (std::binary_search(cur.begin(), cur.end(), id)) continue;
    gens.push_back(id);
    cur = closure(gt, gens);
  }
  return gens;
}

struct MaximalClass {
  int rep;                      // index into Lattice::subgroups
  std::vector<int> members;     // subgroup indices of all conjugates
  std::vector<std::uint8_t> in_union;  // element id -> lies in some conjugate
};

struct Lattice {
  std::vector<SubgroupRecord> subgroups;  // sorted by (order, elems)
  std::vector<int> maximal_ids;           // maximal-in-G subgroup indices
  std::vector<MaximalClass> maximal_classes;
  std::vector<int> normal_ids;
  std::vector<int> minimal_normal_ids;
  std::vector<int> chief_series_ids;      // descending: G first, trivial last
  SubgroupRecord frattini;
  int trivial_id = 0;
  int full_id = 0;

  int index_of(const std::vector<int>& elems) const {
    auto cmp = [](const SubgroupRecord& r, const std::vector<int>& key) {
      if (r.elems.size() != key.size()) return r.elems.size() < key.size();
      return r.elems < key;
    };
    auto it = std::lower_bound(subgroups.begin(), subgroups.end(), elems, cmp);
    if (it == subgroups.end() || it->elems != elems) return -1;
    return static_cast<int>(it - subgroups.begin());
  }

  const SubgroupRecord& at(int i) const { return subgroups[static_cast<std::size_t>(i)]; }
};

inline Lattice build_lattice(const ElementTable& et, const GroupTable& gt,
                             const PermGroup& g) {
  const std::uint32_t n = gt.n;
  Lattice lat;

  // --- join closure from cyclic seeds ---
  std::map<std::vector<int>, int> seen;
  std::vector<SubgroupRecord> subs;
  auto add = [&](std::vector<int> elems) -> int {
    auto it = seen.find(elems);
    if (it != seen.end()) return it->second;
    SubgroupRecord r;
    r.gens = reduce_generators(gt, elems);
    r.elems = std::move(elems);
    int idx = static_cast<int>(subs.size());
    seen[r.elems] = idx;
    subs.push_back(std::move(r));
    return idx;
  };
  add({0});
  for (std::uint32_t x = 1; x < n; ++x) add(closure(gt, {static_cast<int>(x)}));
  for (std::size_t k = 1; k < subs.size(); ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (subset_of(subs[j].elems, subs[k].elems) ||
          subset_of(subs[k].elems, subs[j].elems))
        continue;
      std::vector<int> joint = subs[j].gens;
      joint.insert(joint.end(), subs[k].gens.begin(), subs[k].gens.end());
      add(closure(gt, joint));
    }
  }

  std::sort(subs.begin(), subs.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
    if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
    return a.elems < b.elems;
  });
  lat.subgroups = std::move(subs);
  lat.trivial_id = 0;
  lat.full_id = static_cast<int>(lat.subgroups.size()) - 1;

  // --- conjugation action of G's generators on element ids ---
  std::vector<std::vector<int>> conj_maps;
  for (const auto& s : g.generators()) {
    int gid = et.id_of(s);
    std::vector<int> m(n);
    for (std::uint32_t x = 0; x < n; ++x) m[x] = gt.conj(static_cast<int>(x), gid);
    conj_maps.push_back(std::move(m));
  }
  auto conjugate_set = [&](const std::vector<int>& elems, const std::vector<int>& cmap) {
    std::vector<int> out(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) out[i] = cmap[elems[i]];
    std::sort(out.begin(), out.end());
    return out;
  };

  for (auto& r : lat.subgroups) {
    r.normal = true;
    for (const auto& cmap : conj_maps)
      if (conjugate_set(r.elems, cmap) != r.elems) {
        r.normal = false;
        break;
      }
  }
  for (std::size_t i = 0; i < lat.subgroups.size(); ++i)
    if (lat.subgroups[i].normal) lat.normal_ids.push_back(static_cast<int>(i));

  // --- maximal subgroups: no proper intermediate overgroup ---
  const std::size_t total = lat.subgroups.size();
  for (std::size_t i = 0; i + 1 < total; ++i) {  // skip the full group
    bool maximal = true;
    for (std::size_t j = i + 1; j + 1 < total && maximal; ++j) {
      if (lat.subgroups[j].elems.size() <= lat.subgroups[i].elems.size()) continue;
      if (lat.subgroups[j].elems.size() % lat.subgroups[i].elems.size()) continue;
      if (subset_of(lat.subgroups[i].elems, lat.subgroups[j].elems)) maximal = false;
    }
    if (maximal) lat.maximal_ids.push_back(static_cast<int>(i));
  }

  // --- conjugacy classes of maximal subgroups ---
  std::vector<bool> assigned(total, false);
  for (int mi : lat.maximal_ids) {
    if (assigned[static_cast<std::size_t>(mi)]) continue;
    MaximalClass cls;
    cls.rep = mi;
    cls.in_union.assign(n, 0);
    std::vector<int> orbit{mi};
    assigned[static_cast<std::size_t>(mi)] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const auto& cur = lat.subgroups[static_cast<std::size_t>(orbit[head])];
      for (int e : cur.elems) cls.in_union[e] = 1;
      for (const auto& cmap : conj_maps) {
        int img = lat.index_of(conjugate_set(cur.elems, cmap));
        require(img >= 0, errc::internal, "conjugate subgroup missing from lattice");
        if (!assigned[static_cast<std::size_t>(img)]) {
          assigned[static_cast<std::size_t>(img)] = true;
          orbit.push_back(img);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cls.members = std::move(orbit);
    lat.maximal_classes.push_back(std::move(cls));
  }

  // --- Frattini: intersection of all maximal subgroups ---
  {
    std::vector<int> acc;
    bool first = true;
    for (int mi : lat.maximal_ids) {
      if (first) {
        acc = lat.subgroups[static_cast<std::size_t>(mi)].elems;
        first = false;
      } else {
        acc = intersect_sorted(acc, lat.subgroups[static_cast<std::size_t>(mi)].elems);
      }
    }
    if (first) acc = lat.subgroups[static_cast<std::size_t>(lat.full_id)].elems;  // trivial group
    int fi = lat.index_of(acc);
    require(fi >= 0, errc::internal, "Frattini subgroup missing from lattice");
    lat.frattini = lat.subgroups[static_cast<std::size_t>(fi)];
  }

  // --- minimal normal subgroups ---
  for (int ni : lat.normal_ids) {
    if (ni == lat.trivial_id) continue;
    bool minimal = true;
    for (int mj : lat.normal_ids) {
      if (mj == lat.trivial_id || mj == ni) continue;
      const auto& a = lat.subgroups[static_cast<std::size_t>(mj)].elems;
      const auto& b = lat.subgroups[static_cast<std::size_t>(ni)].elems;
      if (a.size() < b.size() && subset_of(a, b)) {
        minimal = false;
        break;
      }
    }
    if (minimal) lat.minimal_normal_ids.push_back(ni);
  }

  // --- chief series, built upward: next term is a normal subgroup covering
  // the current one with no normal subgroup strictly between; ties broken by
  // lex-least element set ---
  {
    std::vector<int> ascending{lat.trivial_id};
    int cur = lat.trivial_id;
    while (cur != lat.full_id) {
      int best = -1;
      for (int ni : lat.normal_ids) {
        const auto& cand = lat.subgroups[static_cast<std::size_t>(ni)].elems;
        const auto& base = lat.subgroups[static_cast<std::size_t>(cur)].elems;
        if (cand.size() <= base.size() || !subset_of(base, cand)) continue;
        bool covers = true;
        for (int mid : lat.normal_ids) {
          const auto& mids = lat.subgroups[static_cast<std::size_t>(mid)].elems;
          if (mids.size() <= base.size() || mids.size() >= cand.size()) continue;
          if (subset_of(base, mids) && subset_of(mids, cand)) {
            covers = false;
            break;
          }
        }
        if (!covers) continue;
        if (best < 0 || cand < lat.subgroups[static_cast<std::size_t>(best)].elems) best = ni;
      }
      require(best >= 0, errc::internal, "chief series stalled");
      ascending.push_back(best);
      cur = best;
    }
    lat.chief_series_ids.assign(ascending.rbegin(), ascending.rend());
  }

  return lat;
}

}  // namespace chebo
