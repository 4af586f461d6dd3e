#pragma once

// Real maximal tori of Sp(2n, R) and the finite harmonic analysis behind the
// inversion of geometric transfer factors.
//
// A torus T = (C^x)^m x (S^1)^r x (R^x)^s has H^1(R, T) = mu_2^r, and the
// stable Weyl cosets W(G,T)\W_st(G,T) are identified with H^1(R, T); both are
// represented here by a CohClass (a SignVector of length r).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mpendo/exactalg.hpp"
#include "mpendo/matrix.hpp"

namespace mpendo {

struct TorusType {
  std::size_t m = 0;  // complex factors
  std::size_t r = 0;  // compact factors
  std::size_t s = 0;  // split factors

  std::size_t rank() const { return 2 * m + r + s; }
  auto operator<=>(const TorusType&) const = default;
};

/// All (m, r, s) with 2m + r + s = n; m descending, then r descending.
inline std::vector<TorusType> torus_types(std::size_t n) {
  std::vector<TorusType> out;
  for (std::size_t m = n / 2 + 1; m-- > 0;)
    for (std::size_t r = n - 2 * m + 1; r-- > 0;) out.push_back({m, r, n - 2 * m - r});
  return out;
}

using CohClass = SignVector;

struct CohomologyGroup {
  std::size_t rank = 0;  // r
  std::uint64_t order = 1;
  std::vector<CohClass> elements;  // binary order, identity first
};

inline CohomologyGroup h1(const TorusType& t) {
  CohomologyGroup g;
  g.rank = t.r;
  g.elements = SignVector::all(t.r);
  g.order = g.elements.size();
  return g;
}

/// κ_{T,0}: H^1(R, T) = mu_2^r → mu_2, (t_i) ↦ ∏ t_i.
inline int kappa0(const TorusType& t, const CohClass& x) {
  if (x.size() != t.r) throw InputError("cohomology class length does not match r");
  return x.product();
}

/// How the compact factors of T split across T' x T''.
struct CompactSplit {
  std::size_t r_prime = 0;
  std::size_t r_dprime = 0;

  std::size_t r() const { return r_prime + r_dprime; }
};

/// κ_T = κ_{T'',0} ∘ pr''_*; the '' coordinates are the last r'' ones.
inline int kappaT(const CompactSplit& split, const CohClass& x) {
  if (x.size() != split.r()) throw InputError("cohomology class length does not match r' + r''");
  return x.slice(split.r_prime, split.r_dprime).product();
}

/// inv(w δ w^{-1}, δ) = w under the identification of stable Weyl cosets
/// with H^1(R, T).
inline CohClass inv_position(const CohClass& w) { return w; }

// ---------------------------------------------------------------------------
// Geometric transfer-factor matrices on one elliptic stable class

/// Δ(σ_κ, δ̃_base) = base_constants[κ] for the 2^r endoscopic classes σ_κ
/// lying over a stable class; κ is indexed by its SignVector mask.
struct FactorModel {
  std::size_t rank = 0;
  std::vector<UnityRoot8> base_constants;
};

struct GeometricMatrices {
  Matrix<DyadicCyclotomic8> A;  // A(i, j) = Δ(δ̃_i, σ_j)
  Matrix<DyadicCyclotomic8> B;  // B(j, i) = Δ(σ_j, δ̃_i)
};

inline GeometricMatrices build_matrices(const FactorModel& model) {
  const auto classes = SignVector::all(model.rank);
  const std::size_t m = classes.size();
  if (model.base_constants.size() != m) throw InputError("factor model needs 2^r base constants");

  GeometricMatrices out{Matrix<DyadicCyclotomic8>(m, m), Matrix<DyadicCyclotomic8>(m, m)};
  // |D(G_δ, G; R)| = |H^1(R, T)| = 2^r because H^1(R, Sp) is trivial.
  const auto weight = DyadicCyclotomic8::inverse_power_of_two(static_cast<int>(model.rank));
  for (std::size_t j = 0; j < m; ++j) {
    const auto cj = DyadicCyclotomic8::root(model.base_constants[j]);
    for (std::size_t i = 0; i < m; ++i) {
      // Cocycle condition: Δ(σ_j, δ̃_i) = <κ_j, inv(δ_i, δ_base)> Δ(σ_j, δ̃_base).
      const auto b = character_eval(classes[j], inv_position(classes[i])) == 1 ? cj : -cj;
      out.B(j, i) = b;
      out.A(i, j) = weight * b.conj();
    }
  }
  return out;
}

inline bool verify_inversion(const GeometricMatrices& mats) {
  return (mats.A * mats.B).is_identity() && (mats.B * mats.A).is_identity();
}

/// A·B = B·A = 1 exactly in Z[mu_8, 1/2].
inline bool verify_geometric_inversion(const FactorModel& model) { return verify_inversion(build_matrices(model)); }

}  // namespace mpendo
