#pragma once

// Abelian chief factors X/Y as modules for G over GF(p): basis extraction
// from the coset group, conjugation action matrices aligned with G's
// generator list, the action kernel C_G(V), module isomorphism testing by
// solving the intertwiner system, and the endomorphism field.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/gfmatrix.hpp"
#include "chebo/lattice.hpp"

namespace chebo {

struct GModule {
  std::uint64_t p = 2;
  std::uint32_t dim = 0;
  FField field;                 // GF(p)
  std::vector<GfMat> action;    // one matrix per generator of G (row convention)
  SubgroupRecord source_x, source_y;  // the chief factor X/Y this came from
  SubgroupRecord centralizer;         // C_G(V), the kernel of the action

  std::uint64_t space_size() const {
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < dim; ++i) s *= p;
    return s;
  }
};

namespace detail {

// Coset structure of Y inside X; cosets are labelled by their least element
// id, listed ascending, identity coset first.
struct CosetSpace {
  std::vector<int> labels;          // ascending canonical ids
  std::map<int, int> index_of;      // canonical id -> coset index
  std::vector<int> coset_of_elem;   // element id (only for members of X) -> coset index

  int coset_of(int elem_id) const { return coset_of_elem[elem_id]; }
};

inline CosetSpace coset_space(const GroupTable& gt, const SubgroupRecord& x,
                              const SubgroupRecord& y) {
  CosetSpace cs;
  cs.coset_of_elem.assign(gt.n, -1);
  std::vector<int> canon(gt.n, -1);
  for (int e : x.elems) {
    if (canon[e] >= 0) continue;
    // coset Y*e
    int least = -1;
    std::vector<int> members;
    for (int yy : y.elems) {
      int m = gt.times(yy, e);
      members.push_back(m);
      if (least < 0 || m < least) least = m;
    }
    for (int m : members) canon[m] = least;
  }
  for (int e : x.elems) {
    int c = canon[e];
    if (cs.index_of.find(c) == cs.index_of.end()) {
      cs.index_of[c] = 0;  // assign later after sorting
      cs.labels.push_back(c);
    }
  }
  std::sort(cs.labels.begin(), cs.labels.end());
  for (std::size_t i = 0; i < cs.labels.size(); ++i) cs.index_of[cs.labels[i]] = static_cast<int>(i);
  for (int e : x.elems) cs.coset_of_elem[e] = cs.index_of[canon[e]];
  return cs;
}

}  // namespace detail

// Build the G-module on the abelian chief factor X/Y. The basis is chosen
// greedily from cosets in ascending least-element-id order; coordinates are
// exponent vectors over that basis. Throws not_abelian_factor if X/Y is not
// abelian, not_chief if the resulting module is reducible.
inline GModule chief_factor_module(const PermGroup& g, const ElementTable& et,
                                   const GroupTable& gt, const SubgroupRecord& x,
                                   const SubgroupRecord& y, const Caps& caps = {}) {
  require(subset_of(y.elems, x.elems), errc::usage, "chief factor: Y must lie in X");
  require(x.elems.size() > y.elems.size(), errc::usage, "chief factor: X/Y is trivial");
  (void)caps;

  auto cs = detail::coset_space(gt, x, y);
  const std::uint64_t vsize = cs.labels.size();

  // quotient multiplication on coset indices
  auto qmul = [&](int a, int b) {
    return cs.coset_of(gt.times(cs.labels[static_cast<std::size_t>(a)],
                                cs.labels[static_cast<std::size_t>(b)]));
  };

  for (std::size_t i = 0; i < vsize; ++i)
    for (std::size_t j = i + 1; j < vsize; ++j)
      require(qmul(static_cast<int>(i), static_cast<int>(j)) ==
                  qmul(static_cast<int>(j), static_cast<int>(i)),
              errc::not_abelian_factor, "chief factor is not abelian");

  auto fac = factorize_u64(vsize);
  require(fac.size() == 1, errc::not_abelian_factor,
          "abelian chief factor must have prime-power order");
  const std::uint64_t p = fac[0].first;
  const std::uint32_t dim = static_cast<std::uint32_t>(fac[0].second);
  // elementary: every coset has order dividing p
  for (std::size_t i = 0; i < vsize; ++i) {
    int acc = 0;
    for (std::uint64_t k = 0; k < p; ++k) acc = qmul(acc, static_cast<int>(i));
    require(acc == 0, errc::not_abelian_factor, "chief factor is not elementary abelian");
  }

  GModule mod;
  mod.p = p;
  mod.dim = dim;
  mod.field = make_field(p, 1, caps);
  mod.source_x = x;
  mod.source_y = y;

  // greedy basis + coordinates by closure
  std::vector<int> coord_of(vsize, -1);  // coset -> packed coordinate code, base p
  coord_of[0] = 0;
  std::vector<int> basis;
  std::vector<int> assigned{0};
  for (std::size_t cand = 1; cand < vsize && assigned.size() < vsize; ++cand) {
    if (coord_of[cand] >= 0) continue;
    int unit = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) unit = static_cast<int>(unit * p);
    basis.push_back(static_cast<int>(cand));
    std::vector<int> fresh = assigned;
    for (int known : fresh) {
      int cur = known;
      int code = coord_of[known];
      for (std::uint64_t k = 1; k < p; ++k) {
        cur = qmul(cur, static_cast<int>(cand));
        int ncode = code + static_cast<int>(k) * unit;
        require(coord_of[cur] < 0 || coord_of[cur] == ncode, errc::internal,
                "coordinate clash in chief factor basis");
        if (coord_of[cur] < 0) {
          coord_of[cur] = ncode;
          assigned.push_back(cur);
        }
      }
    }
  }
  require(assigned.size() == vsize && basis.size() == dim, errc::internal,
          "chief factor basis extraction failed");

  auto coords_vec = [&](int coset) {
    std::vector<std::uint32_t> v(dim);
    int code = coord_of[coset];
    for (std::uint32_t i = 0; i < dim; ++i) {
      v[i] = static_cast<std::uint32_t>(code % static_cast<int>(p));
      code /= static_cast<int>(p);
    }
    return v;
  };

  // conjugation matrices per generator, then a homomorphism spot-check on
  // generator pairs
  auto act_matrix = [&](int gid) {
    GfMat m(dim);
    for (std::uint32_t bi = 0; bi < dim; ++bi) {
      int img = cs.coset_of(gt.conj(cs.labels[static_cast<std::size_t>(basis[bi])], gid));
      auto v = coords_vec(img);
      for (std::uint32_t j = 0; j < dim; ++j) m.at(bi, j) = v[j];
    }
    return m;
  };
  std::vector<int> gen_ids;
  for (const auto& s : g.generators()) gen_ids.push_back(et.id_of(s));
  for (int gid : gen_ids) mod.action.push_back(act_matrix(gid));
  for (std::size_t i = 0; i < gen_ids.size(); ++i)
    for (std::size_t j = 0; j < gen_ids.size(); ++j) {
      GfMat prod = mat_mul(mod.field, mod.action[i], mod.action[j]);
      require(prod == act_matrix(gt.times(gen_ids[i], gen_ids[j])), errc::internal,
              "conjugation action is not a homomorphism");
    }

  // full-coset verification that matrices really are the conjugation action
  for (std::size_t gi = 0; gi < gen_ids.size(); ++gi)
    for (std::size_t c = 0; c < vsize; ++c) {
      int img = cs.coset_of(gt.conj(cs.labels[c], gen_ids[gi]));
      require(coords_vec(img) == vec_mat(mod.field, coords_vec(static_cast<int>(c)), mod.action[gi]),
              errc::internal, "action matrix disagrees with conjugation");
    }

  require(spin_irreducible(mod.field, mod.action, dim), errc::not_chief,
          "section is not irreducible as a module");

  // C_G(V): elements whose conjugation fixes every coset of Y in X
  std::vector<int> cent;
  for (std::uint32_t e = 0; e < gt.n; ++e) {
    bool fixes = true;
    for (std::uint32_t bi = 0; bi < dim && fixes; ++bi) {
      int lbl = cs.labels[static_cast<std::size_t>(basis[bi])];
      fixes = cs.coset_of(gt.conj(lbl, static_cast<int>(e))) ==
              cs.coset_of(lbl);
    }
    if (fixes) cent.push_back(static_cast<int>(e));
  }
  mod.centralizer.elems = std::move(cent);
  mod.centralizer.gens = reduce_generators(gt, mod.centralizer.elems);
  mod.centralizer.normal = true;
  return mod;
}

// Solution space of { X : A_i X = X B_i } as a basis of dim x dim matrices.
inline std::vector<GfMat> intertwiner_space(const FField& f, const std::vector<GfMat>& as,
                                            const std::vector<GfMat>& bs, std::uint32_t dim) {
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t t = 0; t < as.size(); ++t) {
    const GfMat& a = as[t];
    const GfMat& b = bs[t];
    for (std::uint32_t r = 0; r < dim; ++r)
      for (std::uint32_t c = 0; c < dim; ++c) {
        std::vector<std::uint32_t> row(static_cast<std::size_t>(dim) * dim, 0);
        // sum_k a[r,k] X[k,c] - sum_k X[r,k] b[k,c] = 0
        for (std::uint32_t k = 0; k < dim; ++k) {
          row[static_cast<std::size_t>(k) * dim + c] =
              static_cast<std::uint32_t>(f.add(row[static_cast<std::size_t>(k) * dim + c], a.at(r, k)));
          row[static_cast<std::size_t>(r) * dim + k] = static_cast<std::uint32_t>(
              f.sub(row[static_cast<std::size_t>(r) * dim + k], b.at(k, c)));
        }
        rows.push_back(std::move(row));
      }
  }
  auto basis = nullspace(f, std::move(rows), static_cast<std::size_t>(dim) * dim);
  std::vector<GfMat> out;
  for (const auto& v : basis) {
    GfMat m(dim);
    m.a.assign(v.begin(), v.end());
    out.push_back(std::move(m));
  }
  return out;
}

// Find an invertible element of the span of `basis`. Exhaustive if the span
// is small enough (conclusive either way); otherwise deterministic sampling,
// and failure to find one is reported as inconclusive rather than "no".
inline std::optional<GfMat> invertible_in_span(const FField& f, const std::vector<GfMat>& basis,
                                               std::uint32_t dim, const Caps& caps) {
  if (basis.empty()) return std::nullopt;
  BigInt total = big_pow(BigInt(f.q), basis.size());
  auto combine = [&](const std::vector<std::uint64_t>& coef) {
    GfMat m(dim);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (!coef[b]) continue;
      for (std::size_t i = 0; i < m.a.size(); ++i)
        m.a[i] = static_cast<std::uint32_t>(f.add(m.a[i], f.mul(coef[b], basis[b].a[i])));
    }
    return m;
  };
  if (total <= BigInt(caps.iso_search)) {
    std::vector<std::uint64_t> coef(basis.size(), 0);
    for (;;) {
      std::size_t i = 0;
      while (i < coef.size() && ++coef[i] == f.q) coef[i++] = 0;
      if (i == coef.size()) break;
      GfMat m = combine(coef);
      if (is_invertible(f, m)) return m;
    }
    return std::nullopt;  // exhaustive: conclusive
  }
  SplitMix64 rng(0xC0FFEEull);
  for (std::uint64_t t = 0; t < caps.iso_search; ++t) {
    std::vector<std::uint64_t> coef(basis.size());
    for (auto& c : coef) c = rng.below(f.q);
    GfMat m = combine(coef);
    if (is_invertible(f, m)) return m;
  }
  fail(errc::inconclusive_sampling,
       "nonzero intertwiner space but no invertible element found by sampling");
}

// G-module isomorphism test; returns an intertwiner if one exists.
inline std::optional<GfMat> module_isomorphism(const GModule& v1, const GModule& v2,
                                               const Caps& caps = {}) {
  if (v1.p != v2.p || v1.dim != v2.dim || v1.action.size() != v2.action.size())
    return std::nullopt;
  auto basis = intertwiner_space(v1.field, v1.action, v2.action, v1.dim);
  return invertible_in_span(v1.field, basis, v1.dim, caps);
}

// |End_G(V)| and the dimension of V over it. End is verified to be a field
// by exhaustively checking every nonzero element invertible.
inline std::pair<std::uint64_t, std::uint32_t> endomorphism_field(const GModule& v,
                                                                  const Caps& caps = {}) {
  require(spin_irreducible(v.field, v.action, v.dim), errc::not_irreducible,
          "endomorphism field needs an irreducible module");
  auto basis = intertwiner_space(v.field, v.action, v.action, v.dim);
  const std::size_t s = basis.size();
  require(s >= 1 && v.dim % s == 0, errc::internal, "endomorphism ring dimension bad");
  (void)caps;
  std::vector<std::uint64_t> coef(s, 0);
  for (;;) {
    std::size_t i = 0;
    while (i < coef.size() && ++coef[i] == v.field.q) coef[i++] = 0;
    if (i == coef.size()) break;
    GfMat m(v.dim);
    for (std::size_t b = 0; b < s; ++b) {
      if (!coef[b]) continue;
      for (std::size_t k = 0; k < m.a.size(); ++k)
        m.a[k] = static_cast<std::uint32_t>(v.field.add(m.a[k], v.field.mul(coef[b], basis[b].a[k])));
    }
    require(is_invertible(v.field, m), errc::not_irreducible,
            "endomorphism ring contains a singular nonzero element");
  }
  std::uint64_t q_v = 1;
  for (std::size_t i = 0; i < s; ++i) q_v *= v.p;
  return {q_v, v.dim / static_cast<std::uint32_t>(s)};
}

}  // namespace chebo
