#pragma once

#include <optional>

#include "gcoh/cohomology.hpp"

namespace gcoh {

enum class RingKind { Integers, Field, Modular };
enum class OrientationMethod { Bipartite, OddPrime, TwoAdic, CriticalDimension };

const char* to_string(RingKind r);
const char* to_string(OrientationMethod m);

struct OrientationReport {
  RingKind ring = RingKind::Integers;
  unsigned long p = 0;
  unsigned s = 0;
  bool orientable = false;
  OrientationMethod method = OrientationMethod::Bipartite;
  std::optional<Bipartition> bipartition;  // the one used for the class
  std::optional<Chain> orientation_class;  // connected inputs only
};

// sum_v a(v) k_v v over V(d); a must be a bipartition of d.
Chain fundamental_chain(const Subgraph& d, const Bipartition& a);
// fundamental_chain / gcd of the weights of V(d).
Chain divided_fundamental_class(const Subgraph& d, const Bipartition& a);

// Z-orientability: every component bipartite.
OrientationReport is_orientable_over_integers(const Subgraph& d);
// Z/p^s-orientability (s == 1 is the field case).
OrientationReport is_orientable(const Subgraph& d, unsigned long p, unsigned s);

// z has order p^s and p^{s-1}(u - n z) = 0 for some n, for every cocycle u.
// Throws InputError when z is not a cocycle mod p^s on d.
bool is_orientation_class(const Chain& z, const Subgraph& d, unsigned long p, unsigned s);

}  // namespace gcoh
