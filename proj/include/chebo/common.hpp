#pragma once

// Shared error and resource-cap machinery. Every computation that can blow
// up combinatorially checks one of these caps first and throws rather than
// grinding; the CLI maps error kinds onto process exit codes.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chebo {

enum class errc {
  usage,                   // malformed input / bad arguments
  cap_exceeded,            // a configured resource cap was hit
  non_prime,               // p is not prime
  not_prime_power,         // q is not a prime power
  bad_divisor,             // d does not divide q-1
  malformed_permutation,   // images not a bijection / degree mismatch
  not_normal,              // subgroup is not normal where required
  not_abelian_factor,      // chief factor X/Y is not abelian
  not_chief,               // section is not irreducible as a module
  not_irreducible,         // module has a proper invariant subspace
  inconclusive_sampling,   // intertwiner search hit the sampling cap
  frattini_factor,         // chief factor has no complement
  no_qualifying_quotient,  // crown radical scan found no qualifying N
  only_nonabelian_crowns,  // no abelian crown splits off
  frattini_nontrivial,     // report requires trivial Frattini subgroup
  not_monolithic,          // base group has several minimal normal subgroups
  socle_frattini,          // minimal normal subgroup lies in the Frattini
  singular,                // matrix generator not invertible
  too_many_maximal_classes,
  jordan_violation,        // some q_S = 1: would mean infinite expectation
  draw_cap_exceeded,       // a Monte Carlo trial ran too long
  internal,                // broken internal invariant
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

// Resource caps. Defaults are generous for the group sizes this library
// targets; override per call site or via CHEBO_CAP_ELEMENTS / CLI flags.
struct Caps {
  std::uint64_t elements = 100000;        // full element enumeration
  std::uint64_t lattice = 2000;           // subgroup-lattice work (needs a mult table)
  std::uint64_t field = std::uint64_t(1) << 20;  // largest allowed |GF(p^e)|
  std::uint64_t mat_elements = 1000000;   // matrix-group enumeration / Burnside sums
  int maximal_classes = 25;               // subset enumeration is 2^m
  std::uint64_t draws_per_trial = 1000000;
  std::uint64_t iso_search = std::uint64_t(1) << 16;  // intertwiner space scan
};

}  // namespace chebo
