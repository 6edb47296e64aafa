#pragma once

// Concrete element-level machinery for small groups: the sorted element
// table (element ids are indices into it, so ids are stable across runs),
// the flat multiplication/inverse tables used by lattice and subgroup
// closure work, and conjugacy classes by full enumeration.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/permgroup.hpp"

namespace chebo {

struct ElementTable {
  std::vector<Perm> elems;  // sorted; elems[0] is the identity

  std::size_t size() const { return elems.size(); }

  int find(const Perm& p) const {
    auto it = std::lower_bound(elems.begin(), elems.end(), p);
    if (it == elems.end() || !(*it == p)) return -1;
    return static_cast<int>(it - elems.begin());
  }

  int id_of(const Perm& p) const {
    int id = find(p);
    require(id >= 0, errc::internal, "element not in table");
    return id;
  }
};

inline ElementTable make_element_table(const PermGroup& g, const Caps& caps = {}) {
  ElementTable t;
  t.elems = enumerate_elements(g, caps.elements);
  return t;
}

// Full Cayley tables over element ids. Columns are composed along BFS words
// so construction is O(n^2) id moves rather than n^2 permutation products.
struct GroupTable {
  std::uint32_t n = 1;
  std::vector<std::uint16_t> mul;  // mul[a*n+b] = id of elems[a]*elems[b]
  std::vector<std::uint16_t> inv;

  int times(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
  int inverse(int a) const { return inv[a]; }
  int conj(int x, int g) const { return times(times(inv[g], x), g); }
};

inline GroupTable make_group_table(const ElementTable& et, const PermGroup& g,
                                   const Caps& caps = {}) {
  require(et.size() <= caps.lattice && et.size() <= 65535, errc::cap_exceeded,
          "group too large for table work");
  const std::uint32_t n = static_cast<std::uint32_t>(et.size());
  GroupTable t;
  t.n = n;
  t.mul.assign(static_cast<std::size_t>(n) * n, 0);
  t.inv.assign(n, 0);

  // right-multiplication maps for each generator
  std::vector<std::vector<std::uint16_t>> rgen;
  for (const auto& s : g.generators()) {
    std::vector<std::uint16_t> r(n);
    for (std::uint32_t a = 0; a < n; ++a)
      r[a] = static_cast<std::uint16_t>(et.id_of(et.elems[a] * s));
    rgen.push_back(std::move(r));
  }

  // BFS over ids to express every element as parent*gen
  std::vector<int> parent(n, -1), via(n, -1);
  std::vector<std::uint32_t> order_found;
  order_found.push_back(0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (std::size_t head = 0; head < order_found.size(); ++head) {
    std::uint32_t a = order_found[head];
    for (std::size_t gi = 0; gi < rgen.size(); ++gi) {
      std::uint16_t b = rgen[gi][a];
      if (!seen[b]) {
        seen[b] = true;
        parent[b] = static_cast<int>(a);
        via[b] = static_cast<int>(gi);
        order_found.push_back(b);
      }
    }
  }
  require(order_found.size() == n, errc::internal, "element table disconnected");

  // column for identity is the identity map; other columns compose parents
  for (std::uint32_t a = 0; a < n; ++a) t.mul[static_cast<std::size_t>(a) * n + 0] = static_cast<std::uint16_t>(a);
  for (std::size_t head = 1; head < order_found.size(); ++head) {
    std::uint32_t b = order_found[head];
    std::uint32_t pb = static_cast<std::uint32_t>(parent[b]);
    const auto& rg = rgen[static_cast<std::size_t>(via[b])];
    for (std::uint32_t a = 0; a < n; ++a)
      t.mul[static_cast<std::size_t>(a) * n + b] = rg[t.mul[static_cast<std::size_t>(a) * n + pb]];
  }
  for (std::uint32_t a = 0; a < n; ++a)
    t.inv[a] = static_cast<std::uint16_t>(et.id_of(et.elems[a].inverse()));
  return t;
}

struct ConjClassTable {
  std::vector<int> reps;              // element ids; reps[c] is least id in class c
  std::vector<std::uint64_t> sizes;
  std::vector<std::int32_t> class_of;  // element id -> class index

  std::size_t count() const { return reps.size(); }
};

// Classes are conjugation orbits under the generators, discovered in
// ascending least-element-id order, so the identity class is class 0.
inline ConjClassTable conjugacy_classes(const ElementTable& et, const PermGroup& g) {
  ConjClassTable t;
  t.class_of.assign(et.size(), -1);
  std::vector<Perm> igens;
  for (const auto& s : g.generators()) igens.push_back(s.inverse());
  for (std::size_t start = 0; start < et.size(); ++start) {
    if (t.class_of[start] >= 0) continue;
    int c = static_cast<int>(t.reps.size());
    std::vector<int> orbit{static_cast<int>(start)};
    t.class_of[start] = c;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      const Perm& x = et.elems[static_cast<std::size_t>(orbit[head])];
      for (std::size_t gi = 0; gi < igens.size(); ++gi) {
        int y = et.id_of(igens[gi] * x * g.generators()[gi]);
        if (t.class_of[y] < 0) {
          t.class_of[y] = c;
          orbit.push_back(y);
        }
      }
    }
    t.reps.push_back(static_cast<int>(start));
    t.sizes.push_back(orbit.size());
  }
  return t;
}

}  // namespace chebo
