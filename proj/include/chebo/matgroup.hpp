#pragma once

// Finite matrix groups over GF(q): deterministic closure enumeration,
// fixed-point census (which elements fix a nonzero vector), exact Burnside
// orbit counts, the one-dimensional semilinear groups GammaL_1(q), wreath
// products GL_m(p) wr Sym(k) with a structural enumerator, and detection of
// the abelian-normal-irreducible witness structure.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/gfmatrix.hpp"
#include "chebo/groupdata.hpp"

namespace chebo {

struct MatGroup {
  FField field;
  std::uint32_t dim = 0;
  std::vector<GfMat> gens;
  std::vector<GfMat> elems;  // BFS order from the identity over sorted generators

  std::size_t order() const { return elems.size(); }
};

inline MatGroup mat_group(const FField& field, std::vector<GfMat> gens,
                          const Caps& caps = {}) {
  MatGroup g;
  g.field = field;
  require(!gens.empty(), errc::usage, "matrix group needs at least one generator");
  g.dim = gens[0].n;
  for (const auto& m : gens) {
    require(m.n == g.dim, errc::usage, "generator dimension mismatch");
    require(is_invertible(field, m), errc::singular, "matrix generator is singular");
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  g.gens = gens;

  std::map<GfMat, int> seen;
  g.elems.push_back(GfMat::identity(g.dim));
  seen[g.elems[0]] = 0;
  for (std::size_t head = 0; head < g.elems.size(); ++head) {
    for (const auto& s : g.gens) {
      GfMat nxt = mat_mul(field, g.elems[head], s);
      if (seen.emplace(nxt, static_cast<int>(g.elems.size())).second) {
        g.elems.push_back(std::move(nxt));
        require(g.elems.size() <= caps.mat_elements, errc::cap_exceeded,
                "matrix group enumeration exceeds cap");
      }
    }
  }
  return g;
}

struct FixCensus {
  std::uint64_t hstar_size = 0;        // elements fixing some nonzero vector
  std::vector<BigInt> fix_counts;      // per element, q^{dim ker(h-1)}
  BigInt orbit_count = 0;              // Burnside average, exact
};

// Census of fixed vectors: h fixes a nonzero vector iff ker(h - 1) != 0.
inline FixCensus fixed_point_census(const MatGroup& h) {
  FixCensus c;
  BigInt total = 0;
  for (const auto& m : h.elems) {
    std::uint32_t d = fixed_space_dim(h.field, m);
    if (d > 0) ++c.hstar_size;
    BigInt fc = big_pow(BigInt(h.field.q), d);
    total += fc;
    c.fix_counts.push_back(std::move(fc));
  }
  require(total % BigInt(static_cast<std::uint64_t>(h.order())) == 0, errc::internal,
          "Burnside sum not divisible by group order");
  c.orbit_count = total / BigInt(static_cast<std::uint64_t>(h.order()));
  return c;
}

inline BigInt orbit_count(const MatGroup& h) { return fixed_point_census(h).orbit_count; }

// GammaL_1(q) acting on GF(q) as a GF(p)-space of dimension e: generated by
// multiplication by the least primitive element and the Frobenius x -> x^p,
// both written in the power basis 1, x, ..., x^{e-1}. Order e(q-1).
inline MatGroup gamma_l1(std::uint64_t q, const Caps& caps = {}) {
  auto [p, e] = prime_power_split(q);
  FField big = make_field(p, e, caps);
  FField base = make_field(p, 1, caps);
  std::uint64_t w = primitive_element(big);

  auto as_matrix = [&](auto&& image_of) {
    GfMat m(e);
    for (std::uint32_t i = 0; i < e; ++i) {
      std::uint64_t basis_elem = big.pow(p, i);  // repr of x^i
      auto d = big.digits(image_of(basis_elem));
      for (std::uint32_t j = 0; j < e; ++j) m.at(i, j) = d[j];
    }
    return m;
  };
  GfMat mult = as_matrix([&](std::uint64_t x) { return big.mul(w, x); });
  GfMat frob = as_matrix([&](std::uint64_t x) { return big.pow(x, p); });
  MatGroup g = mat_group(base, {mult, frob}, caps);
  require(g.order() == static_cast<std::size_t>(e) * (q - 1), errc::internal,
          "semilinear group order mismatch");
  return g;
}

// GL_m(p) from a Singer generator (companion matrix of the lex-least
// primitive polynomial) plus one transvection for m >= 2; the single scalar
// generator for m = 1. The order formula is asserted after enumeration.
inline MatGroup general_linear_group(std::uint32_t m, std::uint64_t p, const Caps& caps = {}) {
  require(m >= 1, errc::usage, "dimension must be positive");
  FField base = make_field(p, 1, caps);
  std::vector<GfMat> gens;
  if (m == 1) {
    GfMat s(1);
    s.at(0, 0) = static_cast<std::uint32_t>(primitive_element(base));
    gens.push_back(s);
  } else {
    // lex-least monic irreducible of degree m whose root is primitive
    std::vector<std::uint32_t> best;
    std::vector<std::uint32_t> c(m, 0);
    for (;;) {
      std::vector<std::uint32_t> mod(c);
      mod.push_back(1);
      if (detail::poly_irreducible(mod, p)) {
        FField f;
        f.p = p;
        f.e = m;
        f.q = big_pow(BigInt(p), m).convert_to<std::uint64_t>();
        f.modulus = mod;
        if (element_order(f, p /* repr of x */) == f.q - 1) {
          best = mod;
          break;
        }
      }
      std::size_t i = m;
      while (i > 0 && ++c[i - 1] == p) c[--i] = 0;
      require(i != 0, errc::internal, "no primitive polynomial found");
    }
    GfMat comp(m);
    for (std::uint32_t i = 0; i + 1 < m; ++i) comp.at(i, i + 1) = 1;
    for (std::uint32_t j = 0; j < m; ++j)
      comp.at(m - 1, j) = static_cast<std::uint32_t>(base.neg(best[j]));
    GfMat trans = GfMat::identity(m);
    trans.at(0, 1) = 1;
    gens = {comp, trans};
  }
  MatGroup g = mat_group(base, gens, caps);
  BigInt expect = 1;
  for (std::uint32_t i = 0; i < m; ++i)
    expect *= big_pow(BigInt(p), m) - big_pow(BigInt(p), i);
  require(BigInt(static_cast<std::uint64_t>(g.order())) == expect, errc::internal,
          "general linear group generators fell short");
  return g;
}

// GL_m(p) wr Sym(k) on GF(p)^{mk}, held structurally as (block tuple,
// coordinate permutation); elements are never expanded to mk x mk matrices.
struct WreathProductGL {
  std::uint32_t m = 1, k = 1;
  std::uint64_t p = 2;
  MatGroup block;  // GL_m(p)
  BigInt order = 1;
};

inline WreathProductGL wreath_glm(std::uint32_t m, std::uint64_t p, std::uint32_t k,
                                  const Caps& caps = {}) {
  WreathProductGL w;
  w.m = m;
  w.p = p;
  w.k = k;
  w.block = general_linear_group(m, p, caps);
  w.order = big_pow(BigInt(static_cast<std::uint64_t>(w.block.order())), k);
  for (std::uint32_t i = 2; i <= k; ++i) w.order *= i;
  require(w.order <= BigInt(caps.mat_elements), errc::cap_exceeded,
          "wreath product exceeds element cap");
  return w;
}

// Burnside orbit count of the wreath product on (F_p^m)^k. A tuple-with-
// permutation element fixes a vector iff each sigma-cycle's entry is a fixed
// vector of the product of the blocks read along that cycle, so
// |Fix| = prod over cycles of p^{dim ker(prod - 1)}.
inline BigInt orbit_count(const WreathProductGL& w) {
  std::vector<std::uint32_t> sigma(w.k);
  std::iota(sigma.begin(), sigma.end(), 0);
  const std::size_t bs = w.block.order();
  BigInt total = 0;
  do {
    // cycles of sigma
    std::vector<std::vector<std::uint32_t>> cycles;
    std::vector<bool> done(w.k, false);
    for (std::uint32_t s = 0; s < w.k; ++s) {
      if (done[s]) continue;
      std::vector<std::uint32_t> cyc;
      std::uint32_t j = s;
      while (!done[j]) {
        done[j] = true;
        cyc.push_back(j);
        j = sigma[j];
      }
      cycles.push_back(std::move(cyc));
    }
    std::vector<std::size_t> tup(w.k, 0);
    for (;;) {
      BigInt fix = 1;
      for (const auto& cyc : cycles) {
        GfMat prod = w.block.elems[tup[cyc[0]]];
        for (std::size_t t = 1; t < cyc.size(); ++t)
          prod = mat_mul(w.block.field, prod, w.block.elems[tup[cyc[t]]]);
        fix *= big_pow(BigInt(w.p), fixed_space_dim(w.block.field, prod));
      }
      total += fix;
      std::size_t i = 0;
      while (i < w.k && ++tup[i] == bs) tup[i++] = 0;
      if (i == w.k) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  require(total % w.order == 0, errc::internal, "Burnside sum not divisible by order");
  return total / w.order;
}

struct StructureWitness {
  bool has_abelian_normal_irreducible = false;
  std::optional<std::vector<GfMat>> witness;  // elements of the witness subgroup
};

// Does H have an abelian normal subgroup acting irreducibly on V? That is
// the structural footprint of a group of semilinear type. Works through the
// faithful permutation action on nonzero vectors, so the whole subgroup
// lattice machinery applies. Heuristic witness, not a classification.
inline StructureWitness semilinear_structure_witness(const MatGroup& h, const Caps& caps = {}) {
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < h.dim; ++i) points *= h.field.q;
  points -= 1;  // nonzero vectors
  require(points <= 65535, errc::cap_exceeded, "vector action degree too large");

  auto vec_of = [&](std::uint64_t code) {
    std::vector<std::uint32_t> v(h.dim);
    for (std::uint32_t i = 0; i < h.dim; ++i) {
      v[i] = static_cast<std::uint32_t>(code % h.field.q);
      code /= h.field.q;
    }
    return v;
  };
  auto code_of = [&](const std::vector<std::uint32_t>& v) {
    std::uint64_t code = 0;
    for (std::uint32_t i = h.dim; i-- > 0;) code = code * h.field.q + v[i];
    return code;
  };
  auto perm_of = [&](const GfMat& m) {
    std::vector<std::uint16_t> img(points);
    for (std::uint64_t c = 1; c <= points; ++c)
      img[c - 1] = static_cast<std::uint16_t>(code_of(vec_mat(h.field, vec_of(c), m)) - 1);
    return Perm(std::move(img));
  };

  std::vector<Perm> gen_perms;
  for (const auto& m : h.gens) gen_perms.push_back(perm_of(m));
  GroupData gd(PermGroup(points, gen_perms), caps);
  require(gd.group().order() == BigInt(static_cast<std::uint64_t>(h.order())),
          errc::internal, "vector action is not faithful");

  std::map<Perm, const GfMat*> back;
  for (const auto& m : h.elems) back[perm_of(m)] = &m;

  const Lattice& lat = gd.lattice();
  const ElementTable& et = gd.elements();
  StructureWitness out;
  for (const auto& sub : lat.subgroups) {
    if (!sub.normal) continue;
    std::vector<GfMat> mats;
    for (int id : sub.elems) mats.push_back(*back.at(et.elems[static_cast<std::size_t>(id)]));
    bool abelian = true;
    for (std::size_t i = 0; i < mats.size() && abelian; ++i)
      for (std::size_t j = i + 1; j < mats.size() && abelian; ++j)
        abelian = mat_mul(h.field, mats[i], mats[j]) == mat_mul(h.field, mats[j], mats[i]);
    if (!abelian) continue;
    if (!spin_irreducible(h.field, mats, h.dim)) continue;
    out.has_abelian_normal_irreducible = true;
    out.witness = std::move(mats);
    return out;
  }
  return out;
}

}  // namespace chebo
