#pragma once

// The expected-draws engine. A tuple of conjugacy classes fails to
// invariably generate exactly when some maximal-subgroup class meets every
// one of them, so everything reduces to the class-vs-maximal-class meet
// bitmatrix. The exact invariant comes out of inclusion-exclusion over
// subsets S of maximal classes:
//
//   C(G) = sum over nonempty S of (-1)^{|S|+1} / (1 - q_S),
//   q_S  = P(a uniform element's class meets every member of S),
//
// with all probabilities held as exact integers n_S / |G|. Subsets are
// aggregated by their n_S value first, so repeated P(n) queries and the
// final sum walk a small coefficient map rather than 2^m terms each time.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "chebo/common.hpp"
#include "chebo/groupdata.hpp"
#include "chebo/rational.hpp"
#include "chebo/rng.hpp"

namespace chebo {

struct MeetTable {
  std::uint64_t group_order = 1;
  int maximal_count = 0;                  // m_max
  std::vector<std::uint32_t> class_mask;  // per conjugacy class: bit M set iff
                                          // the class meets class M's conjugates
  std::vector<std::uint64_t> class_sizes;

  std::uint32_t full_mask() const {
    return maximal_count == 0 ? 0u : (maximal_count == 32 ? ~0u : (1u << maximal_count) - 1u);
  }

  // n_S -> sum of (-1)^{|S|+1} over nonempty S with that hit count
  const std::map<std::uint64_t, std::int64_t>& ie_coefficients() const { return coeff_; }
  std::uint64_t subsets_evaluated() const { return subsets_; }

  void finalize(const Caps& caps) {
    require(maximal_count <= caps.maximal_classes && maximal_count <= 32,
            errc::too_many_maximal_classes, "too many maximal classes for subset enumeration");
    const std::uint32_t m = static_cast<std::uint32_t>(maximal_count);
    // hit[S] = total size of classes whose mask contains S (superset sums)
    std::vector<std::uint64_t> hit(std::size_t(1) << m, 0);
    for (std::size_t c = 0; c < class_mask.size(); ++c) hit[class_mask[c]] += class_sizes[c];
    for (std::uint32_t bit = 0; bit < m; ++bit)
      for (std::uint32_t s = 0; s < (1u << m); ++s)
        if (!(s & (1u << bit))) hit[s] += hit[s | (1u << bit)];
    coeff_.clear();
    subsets_ = (std::uint64_t(1) << m) - 1;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
      require(hit[s] < group_order, errc::jordan_violation,
              "maximal class meets every conjugacy class");
      int sign = (std::popcount(s) % 2 == 1) ? 1 : -1;
      coeff_[hit[s]] += sign;
    }
  }

 private:
  std::map<std::uint64_t, std::int64_t> coeff_;
  std::uint64_t subsets_ = 0;
};

inline MeetTable meet_table(GroupData& gd) {
  const ConjClassTable& cc = gd.classes();
  const Lattice& lat = gd.lattice();
  MeetTable mt;
  mt.group_order = gd.group().order_u64(gd.caps(), "meet table needs full enumeration");
  mt.maximal_count = static_cast<int>(lat.maximal_classes.size());
  require(mt.maximal_count <= 32, errc::too_many_maximal_classes, "mask width exceeded");
  mt.class_sizes = cc.sizes;
  mt.class_mask.assign(cc.count(), 0);
  for (std::size_t c = 0; c < cc.count(); ++c)
    for (std::size_t m = 0; m < lat.maximal_classes.size(); ++m)
      if (lat.maximal_classes[m].in_union[static_cast<std::size_t>(cc.reps[c])])
        mt.class_mask[c] |= (1u << m);
  require(cc.count() == 0 || mt.class_mask[0] == mt.full_mask(), errc::internal,
          "identity class must meet every maximal class");
  mt.finalize(gd.caps());
  return mt;
}

// The mask criterion: classes invariably generate iff no maximal class
// survives the AND of their masks.
inline bool invariably_generates(const MeetTable& mt, const std::vector<int>& class_indices) {
  std::uint32_t alive = mt.full_mask();
  for (int c : class_indices) alive &= mt.class_mask[static_cast<std::size_t>(c)];
  return alive == 0;
}

// Ground-truth oracle straight from the definition: every choice of
// conjugates must generate. The first slot ranges only over the class
// representative (conjugating the whole tuple is free), the rest over full
// classes.
inline bool invariably_generates_bruteforce(GroupData& gd, const std::vector<int>& class_indices) {
  require(gd.group().order() <= BigInt(1000), errc::cap_exceeded,
          "brute-force invariable generation capped at order 1000");
  require(class_indices.size() <= 4, errc::cap_exceeded, "brute-force tuple length capped at 4");
  const ConjClassTable& cc = gd.classes();
  const GroupTable& gt = gd.table();
  const std::size_t n = gd.elements().size();

  std::vector<std::vector<int>> members(class_indices.size());
  for (std::size_t slot = 0; slot < class_indices.size(); ++slot) {
    int cls = class_indices[slot];
    if (slot == 0) {
      members[slot].push_back(cc.reps[static_cast<std::size_t>(cls)]);
    } else {
      for (std::size_t e = 0; e < n; ++e)
        if (cc.class_of[e] == cls) members[slot].push_back(static_cast<int>(e));
    }
  }
  std::vector<std::size_t> pick(class_indices.size(), 0);
  if (class_indices.empty()) return n == 1;
  for (;;) {
    std::vector<int> gens;
    for (std::size_t s = 0; s < pick.size(); ++s) gens.push_back(members[s][pick[s]]);
    if (closure(gt, gens).size() != n) return false;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == members[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return true;
}

// P(n uniform draws invariably generate), exact.
inline BigRational prob_invariable(const MeetTable& mt, std::uint64_t n) {
  BigRational acc = 1;
  for (const auto& [hits, coef] : mt.ie_coefficients()) {
    if (coef == 0) continue;
    BigRational q(BigInt(hits), BigInt(mt.group_order));
    BigRational term = 1;
    for (std::uint64_t i = 0; i < n; ++i) term *= q;  // exact power
    acc -= BigRational(coef) * term;
  }
  return acc;
}

struct CheboResult {
  BigRational value;
  std::uint64_t subsets_evaluated = 0;
  int maximal_count = 0;
};

inline CheboResult exact_chebotarev(const MeetTable& mt) {
  CheboResult r;
  r.subsets_evaluated = mt.subsets_evaluated();
  r.maximal_count = mt.maximal_count;
  BigRational acc = 0;
  for (const auto& [hits, coef] : mt.ie_coefficients()) {
    if (coef == 0) continue;
    // coef / (1 - hits/|G|) = coef * |G| / (|G| - hits)
    acc += BigRational(BigInt(coef) * mt.group_order, BigInt(mt.group_order - hits));
  }
  r.value = acc;
  return r;
}

// Kowalski-Zywina closed form for the full one-dimensional affine group
// over F_q: C = q - sum over divisors d > 1 of q-1 of
// mu(d) / (q (1 - 1/d)(1 - 1/d + 1/q)).
inline BigRational chebotarev_affine_closed_form(std::uint64_t q) {
  prime_power_split(q);  // validates
  BigRational c(q);
  for (std::uint64_t d : divisors(q - 1)) {
    if (d == 1) continue;
    int mu = moebius(d);
    if (mu == 0) continue;
    BigRational one_less(BigInt(d - 1), BigInt(d));            // 1 - 1/d
    BigRational inner = one_less + BigRational(1, BigInt(q));  // 1 - 1/d + 1/q
    c -= BigRational(mu) / (BigRational(q) * one_less * inner);
  }
  return c;
}

struct MCEstimate {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_draw_cap = 0;
  std::uint64_t sum_draws = 0;     // integer accumulators: thread-count independent
  std::uint64_t sum_sq_draws = 0;
  double mean = 0.0;
  double sample_variance = 0.0;

  BigRational exact_mean() const { return BigRational(BigInt(sum_draws), BigInt(trials)); }
};

// Stopping-time sampler: draw uniform elements until the alive mask dies.
// Trial t uses the stream SplitMix64::stream_for(seed, t), so the estimate
// is reproducible bit-for-bit regardless of the thread count.
inline MCEstimate monte_carlo(GroupData& gd, const MeetTable& mt, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads = 1) {
  const ConjClassTable& cc = gd.classes();
  const ElementTable& et = gd.elements();
  const PermGroup& g = gd.group();
  const std::uint64_t draw_cap = gd.caps().draws_per_trial;

  MCEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.max_draw_cap = draw_cap;
  if (trials == 0) return est;

  if (threads == 0) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  std::vector<std::uint64_t> sums(threads, 0), sqs(threads, 0);
  std::vector<std::uint8_t> overflow(threads, 0);

  auto run_range = [&](unsigned tid, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t s = 0, s2 = 0;
    for (std::uint64_t t = lo; t < hi; ++t) {
      SplitMix64 rng = SplitMix64::stream_for(seed, t);
      std::uint32_t alive = mt.full_mask();
      std::uint64_t draws = 0;
      while (alive) {
        if (draws >= draw_cap) {
          overflow[tid] = 1;
          return;
        }
        Perm x = g.random_element(rng);
        ++draws;
        alive &= mt.class_mask[static_cast<std::size_t>(cc.class_of[static_cast<std::size_t>(et.id_of(x))])];
      }
      s += draws;
      s2 += draws * draws;
    }
    sums[tid] = s;
    sqs[tid] = s2;
  };

  if (threads == 1) {
    run_range(0, 0, trials);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = (trials + threads - 1) / threads;
    for (unsigned tid = 0; tid < threads; ++tid) {
      std::uint64_t lo = tid * chunk, hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, tid, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  for (unsigned tid = 0; tid < threads; ++tid) {
    require(!overflow[tid], errc::draw_cap_exceeded, "Monte Carlo trial exceeded draw cap");
    est.sum_draws += sums[tid];
    est.sum_sq_draws += sqs[tid];
  }
  est.mean = static_cast<double>(est.sum_draws) / static_cast<double>(trials);
  if (trials > 1) {
    double num = static_cast<double>(est.sum_sq_draws) -
                 static_cast<double>(est.sum_draws) * est.mean;
    est.sample_variance = num / static_cast<double>(trials - 1);
  }
  return est;
}

}  // namespace chebo
