#pragma once

// Permutation groups with a deterministic Schreier-Sims stabilizer chain:
// exact order, membership, exactly-uniform random elements, and the
// standard constructors (affine one-dimensional groups, direct products,
// quotients by a normal subgroup via the coset action).
//
// Determinism contract: base points are chosen as ascending least moved
// points, orbits are extended breadth-first with generators in insertion
// order, and coset enumeration picks lex-least representatives. Two runs on
// the same generators produce identical chains, element orders and random
// streams.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/ffield.hpp"
#include "chebo/perm.hpp"
#include "chebo/rational.hpp"
#include "chebo/rng.hpp"

namespace chebo {

class StabChain {
 public:
  void build(std::size_t degree, const std::vector<Perm>& gens) {
    degree_ = degree;
    levels_.clear();
    for (const auto& g : gens)
      if (!g.is_identity()) insert(g, 0);
  }

  BigInt order() const {
    BigInt n = 1;
    for (const auto& lv : levels_) n *= static_cast<std::uint64_t>(lv.orbit.size());
    return n;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    Perm r = g;
    std::size_t stop;
    return strip(r, 0, stop) && r.is_identity();
  }

  // Exactly uniform: one independently uniform transversal representative
  // per level, composed top level first. Index draws happen in level order.
  Perm random_element(SplitMix64& rng) const {
    std::vector<std::size_t> pick(levels_.size());
    for (std::size_t i = 0; i < levels_.size(); ++i)
      pick[i] = static_cast<std::size_t>(rng.below(levels_[i].orbit.size()));
    Perm g(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;)
      g = g * levels_[i].transversal[pick[i]];
    return g;
  }

  std::size_t degree() const { return degree_; }
  const std::vector<std::size_t>& base() const { return base_; }

 private:
  struct Level {
    std::size_t base = 0;
    std::vector<Perm> gens;            // strong generators fixing earlier base points
    std::vector<std::size_t> orbit;    // discovery order; orbit[0] == base
    std::vector<int> pos;              // point -> orbit index or -1
    std::vector<Perm> transversal;     // aligned with orbit; base^u = point
  };

  std::size_t degree_ = 0;
  std::vector<Level> levels_;
  std::vector<std::size_t> base_;

  void rebuild_orbit(Level& lv) {
    lv.orbit.assign(1, lv.base);
    lv.pos.assign(degree_, -1);
    lv.pos[lv.base] = 0;
    lv.transversal.assign(1, Perm(degree_));
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      for (const auto& g : lv.gens) {
        std::size_t img = g.apply(lv.orbit[head]);
        if (lv.pos[img] < 0) {
          lv.pos[img] = static_cast<int>(lv.orbit.size());
          lv.orbit.push_back(img);
          lv.transversal.push_back(lv.transversal[head] * g);
        }
      }
    }
  }

  // Reduce g through levels >= from. Returns true if g reached the end of
  // the chain (then g is the residue fixing all base points); false if some
  // base image left its orbit, with `stop` the offending level.
  bool strip(Perm& g, std::size_t from, std::size_t& stop) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      std::size_t img = g.apply(levels_[i].base);
      int at = levels_[i].pos[img];
      if (at < 0) {
        stop = i;
        return false;
      }
      g = g * levels_[i].transversal[static_cast<std::size_t>(at)].inverse();
    }
    stop = levels_.size();
    return true;
  }

  void insert(const Perm& g, std::size_t level) {
    Perm r = g;
    std::size_t stop;
    bool through = strip(r, level, stop);
    if (through && r.is_identity()) return;
    if (through) {
      // residue fixes every existing base point: open a new level
      Level lv;
      lv.base = r.first_moved();
      levels_.push_back(lv);
      base_.push_back(lv.base);
      rebuild_orbit(levels_.back());
    }
    Level& lv = levels_[stop];
    lv.gens.push_back(r);
    rebuild_orbit(lv);
    // close under Schreier generators; recursive inserts only touch deeper
    // levels, so orbit/gens are stable during the loop
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      for (const auto& s : lv.gens) {
        std::size_t img = s.apply(lv.orbit[oi]);
        const Perm& to = lv.transversal[static_cast<std::size_t>(lv.pos[img])];
        insert(lv.transversal[oi] * s * to.inverse(), stop + 1);
      }
    }
  }
};

class PermGroup {
 public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Perm> gens)
      : degree_(degree), gens_(std::move(gens)) {
    require(degree_ >= 1 && degree_ <= 65536, errc::malformed_permutation,
            "degree out of range");
    for (const auto& g : gens_)
      require(g.degree() == degree_, errc::malformed_permutation,
              "generator degree mismatch");
    chain_.build(degree_, gens_);
    order_ = chain_.order();
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const BigInt& order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }
  bool contains(const Perm& g) const { return chain_.contains(g); }
  Perm identity() const { return Perm(degree_); }
  Perm random_element(SplitMix64& rng) const { return chain_.random_element(rng); }

  std::uint64_t order_u64(const Caps& caps, const char* what) const {
    require(order_ <= BigInt(caps.elements), errc::cap_exceeded, what);
    return order_.convert_to<std::uint64_t>();
  }

 private:
  std::size_t degree_;
  std::vector<Perm> gens_;
  StabChain chain_;
  BigInt order_;
};

inline PermGroup group_from_generators(std::size_t degree, std::vector<Perm> gens) {
  return PermGroup(degree, std::move(gens));
}

// Full element list via breadth-first word enumeration; ascending lex order.
inline std::vector<Perm> enumerate_elements(const PermGroup& g, std::uint64_t cap) {
  require(g.order() <= BigInt(cap), errc::cap_exceeded, "group too large to enumerate");
  std::vector<Perm> out;
  std::map<Perm, bool> seen;
  out.push_back(g.identity());
  seen[out.back()] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    Perm cur = out[head];
    for (const auto& s : g.generators()) {
      Perm nxt = cur * s;
      if (seen.emplace(nxt, true).second) out.push_back(nxt);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// degree(a) + degree(b) points, coordinates acting independently
inline PermGroup direct_product(const PermGroup& a, const PermGroup& b) {
  std::size_t n = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (const auto& g : a.generators()) {
    std::vector<std::uint16_t> img(n);
    for (std::size_t i = 0; i < a.degree(); ++i) img[i] = g[i];
    for (std::size_t i = 0; i < b.degree(); ++i)
      img[a.degree() + i] = static_cast<std::uint16_t>(a.degree() + i);
    gens.emplace_back(std::move(img));
  }
  for (const auto& g : b.generators()) {
    std::vector<std::uint16_t> img(n);
    for (std::size_t i = 0; i < a.degree(); ++i) img[i] = static_cast<std::uint16_t>(i);
    for (std::size_t i = 0; i < b.degree(); ++i)
      img[a.degree() + i] = static_cast<std::uint16_t>(a.degree() + g[i]);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens));
}

// The affine group {x -> ax + b : b in F_q, a in the order-d subgroup of
// F_q^x} acting on the q field elements, indexed by repr. d = q-1 gives the
// full one-dimensional affine group. Translation generators run over the
// power basis 1, w, ..., w^{e-1} of F_q over its prime field (w the least
// primitive element), so the point group is all of F_q even when e > 1.
inline PermGroup affine_group(std::uint64_t q, std::uint64_t d, const Caps& caps = {}) {
  auto [p, e] = prime_power_split(q);
  require(d >= 1 && (q - 1) % d == 0, errc::bad_divisor, "d must divide q-1");
  FField f = make_field(p, e, caps);
  std::uint64_t w = primitive_element(f);
  std::vector<Perm> gens;
  for (std::uint32_t j = 0; j < e; ++j) {
    std::uint64_t b = f.pow(w, j);
    std::vector<std::uint16_t> img(q);
    for (std::uint64_t x = 0; x < q; ++x) img[x] = static_cast<std::uint16_t>(f.add(x, b));
    gens.emplace_back(std::move(img));
  }
  if (d > 1) {
    std::uint64_t a = f.pow(w, (q - 1) / d);
    std::vector<std::uint16_t> img(q);
    for (std::uint64_t x = 0; x < q; ++x) img[x] = static_cast<std::uint16_t>(f.mul(a, x));
    gens.emplace_back(std::move(img));
  }
  PermGroup g(q, std::move(gens));
  require(g.order() == BigInt(q) * d, errc::internal, "affine group order mismatch");
  return g;
}

// Image of the right-coset action of G on N, which is faithful on G/N for
// normal N. Generator images stay aligned with G's generator list. Cosets
// are identified by their lex-least member and numbered in BFS discovery
// order from N itself.
inline PermGroup quotient(const PermGroup& g, const PermGroup& n, const Caps& caps = {}) {
  require(n.degree() == g.degree(), errc::malformed_permutation,
          "quotient: degree mismatch");
  for (const auto& x : n.generators())
    require(g.contains(x), errc::not_normal, "quotient: N is not a subgroup of G");
  for (const auto& x : n.generators())
    for (const auto& y : g.generators())
      require(n.contains(x.conjugated_by(y)), errc::not_normal,
              "quotient: N is not normal in G");
  require(g.order() <= BigInt(caps.elements), errc::cap_exceeded,
          "quotient: group too large");

  std::vector<Perm> nelems = enumerate_elements(n, caps.elements);
  auto canon = [&](const Perm& x) {
    Perm best = nelems[0] * x;
    for (std::size_t i = 1; i < nelems.size(); ++i) {
      Perm cand = nelems[i] * x;
      if (cand < best) best = cand;
    }
    return best;
  };

  std::vector<Perm> reps;
  std::map<Perm, std::size_t> index;
  reps.push_back(canon(g.identity()));
  index[reps[0]] = 0;
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (const auto& s : g.generators()) {
      Perm c = canon(reps[head] * s);
      if (index.emplace(c, reps.size()).second) reps.push_back(c);
    }
  }

  std::size_t m = reps.size();
  std::vector<Perm> images;
  for (const auto& s : g.generators()) {
    std::vector<std::uint16_t> img(m);
    for (std::size_t i = 0; i < m; ++i)
      img[i] = static_cast<std::uint16_t>(index.at(canon(reps[i] * s)));
    images.emplace_back(std::move(img));
  }
  PermGroup q(m, std::move(images));
  require(q.order() * n.order() == g.order(), errc::internal, "quotient order mismatch");
  return q;
}

}  // namespace chebo
