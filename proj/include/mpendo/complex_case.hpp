#pragma once

// F = C: the cover splits, elliptic-side parameters are W(G,T)-orbits [χ] of
// unitary characters of T = (C^x)^n, and [χ] ↦ I_B(χ). W(G,T) is the
// hyperoctahedral group (signed permutations); a coordinate (k, ν) stands for
// z ↦ (z/|z|)^k |z|^{iν}, and a sign flip inverts it.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "mpendo/exactalg.hpp"
#include "mpendo/matrix.hpp"

namespace mpendo {

struct CharacterCoord {
  std::int64_t k = 0;  // winding number
  Rational nu;         // continuous parameter

  CharacterCoord inverse() const { return {-k, -nu}; }
  auto operator<=>(const CharacterCoord& o) const {
    if (auto c = k <=> o.k; c != 0) return c;
    return nu <=> o.nu;
  }
  bool operator==(const CharacterCoord&) const = default;
};

using TorusCharacter = std::vector<CharacterCoord>;

/// A signed permutation acting by out[perm[i]] = signs_i · in[i].
struct SignedPermutation {
  std::vector<std::size_t> perm;
  SignVector signs;

  TorusCharacter apply(const TorusCharacter& chi) const {
    if (chi.size() != perm.size() || signs.size() != perm.size())
      throw InputError("signed permutation does not match character length");
    TorusCharacter out(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i) out[perm[i]] = signs.at(i) == 1 ? chi[i] : chi[i].inverse();
    return out;
  }
};

/// Canonical orbit representative: each coordinate replaced by the larger of
/// itself and its inverse, then sorted decreasingly.
struct ComplexOrbit {
  TorusCharacter rep;
  auto operator<=>(const ComplexOrbit&) const = default;
};

inline ComplexOrbit canonical_orbit(const TorusCharacter& chi) {
  ComplexOrbit o{chi};
  for (auto& c : o.rep) c = std::max(c, c.inverse());
  std::sort(o.rep.begin(), o.rep.end(), std::greater<>());
  return o;
}

/// The tempered representation I_B(χ) attached to φ = [χ], labeled by the
/// canonical orbit.
inline ComplexOrbit complex_bijection(std::size_t n, const TorusCharacter& phi) {
  if (phi.size() != n) throw InputError("torus character must have exactly n coordinates");
  return canonical_orbit(phi);
}

/// Δ(φ, π) = 1 if φ ↦ π, else 0. The adjoint factor is the same.
inline int complex_transfer_factor(const TorusCharacter& phi, const ComplexOrbit& pi) {
  return canonical_orbit(phi) == pi ? 1 : 0;
}

inline Matrix<int> complex_transfer_matrix(const std::vector<TorusCharacter>& phis,
                                           const std::vector<ComplexOrbit>& pis) {
  Matrix<int> m(phis.size(), pis.size());
  for (std::size_t a = 0; a < phis.size(); ++a)
    for (std::size_t b = 0; b < pis.size(); ++b) m(a, b) = complex_transfer_factor(phis[a], pis[b]);
  return m;
}

}  // namespace mpendo
