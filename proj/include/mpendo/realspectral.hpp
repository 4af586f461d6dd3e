#pragma once

// Archimedean spectral transfer for Mp(2n, R).
//
// Infinitesimal characters λ = [a_1 >= ... >= a_n > 0] with a_i ∈ Z + 1/2 are
// admissible when no value occurs more than twice. Values occurring twice are
// "pairs", the rest "singletons". The packet Π_λ has one member per sign
// pattern on the singletons (pairs are fixed as (+a, -a)), and the elliptic
// parameters (n', n'', φ) lying over λ are indexed by the same sign patterns
// (κ = +1 sends a singleton to the ' pile, -1 to the '' pile).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mpendo/endodata.hpp"
#include "mpendo/exactalg.hpp"
#include "mpendo/matrix.hpp"

namespace mpendo {

/// Weakly decreasing list of positive elements of Z + 1/2.
class InfChar {
 public:
  InfChar() = default;

  const std::vector<HalfInt>& entries() const { return entries_; }
  std::size_t rank() const { return entries_.size(); }

  /// No value occurs more than twice.
  bool admissible() const {
    for (std::size_t i = 0; i + 2 < entries_.size(); ++i)
      if (entries_[i] == entries_[i + 2]) return false;
    return true;
  }

  bool operator==(const InfChar&) const = default;

  friend InfChar normal_form(const std::vector<HalfInt>& raw, bool require_admissible);

 private:
  std::vector<HalfInt> entries_;
};

/// Sort absolute values into weakly decreasing order. Rejects zero entries,
/// entries outside Z + 1/2 and, when requested, multiplicities above two.
inline InfChar normal_form(const std::vector<HalfInt>& raw, bool require_admissible = true) {
  InfChar out;
  out.entries_.reserve(raw.size());
  for (const auto& a : raw) {
    if (a.is_zero()) throw InputError("infinitesimal character entries must be nonzero");
    if (!a.is_half_odd()) throw InputError("infinitesimal character entry " + a.to_string() + " is not in Z + 1/2");
    out.entries_.push_back(a.abs());
  }
  std::sort(out.entries_.begin(), out.entries_.end(), std::greater<>());
  if (require_admissible && !out.admissible())
    throw InputError("infinitesimal character has a value of multiplicity greater than two");
  return out;
}

inline void require_admissible(const InfChar& lambda) {
  if (!lambda.admissible()) throw InputError("infinitesimal character is not admissible");
}

struct SingletonsAndPairs {
  std::vector<HalfInt> singletons;  // decreasing
  std::vector<HalfInt> pairs;       // decreasing, one entry per pair
};

inline SingletonsAndPairs singletons_and_pairs(const InfChar& lambda) {
  require_admissible(lambda);
  SingletonsAndPairs out;
  const auto& e = lambda.entries();
  for (std::size_t i = 0; i < e.size();) {
    if (i + 1 < e.size() && e[i] == e[i + 1]) {
      out.pairs.push_back(e[i]);
      i += 2;
    } else {
      out.singletons.push_back(e[i]);
      ++i;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Harish-Chandra parameters and packets

/// Signed version of an infinitesimal character. The coordinate order is
/// irrelevant (W(G,T) permutes coordinates).
struct HCParam {
  std::vector<HalfInt> signed_entries;
  InfChar base;

  HCParam() = default;
  HCParam(std::vector<HalfInt> signed_values, InfChar lambda)
      : signed_entries(std::move(signed_values)), base(std::move(lambda)) {
    std::vector<HalfInt> abs_values;
    for (const auto& x : signed_entries) abs_values.push_back(x.abs());
    std::sort(abs_values.begin(), abs_values.end(), std::greater<>());
    if (abs_values != base.entries()) throw InputError("signed entries do not match the infinitesimal character");
  }

  bool operator==(const HCParam&) const = default;
};

/// Nonzero iff no two signed entries coincide (equal signed values are
/// singular for a simple compact root).
inline bool is_nonzero_limit(const HCParam& p) {
  auto v = p.signed_entries;
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

struct Packet {
  InfChar lambda;
  std::vector<HCParam> members;  // indexed by singleton sign mask
};

/// The packet member with the given singleton sign pattern (bit j of the
/// mask set means the j-th largest singleton is negated).
inline HCParam packet_member(const InfChar& lambda, const SignVector& singleton_signs) {
  const auto e = lambda.entries();
  std::vector<HalfInt> out;
  out.reserve(e.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < e.size();) {
    if (i + 1 < e.size() && e[i] == e[i + 1]) {
      out.push_back(e[i]);
      out.push_back(-e[i]);
      i += 2;
    } else {
      out.push_back(singleton_signs.at(j++) == 1 ? e[i] : -e[i]);
      ++i;
    }
  }
  if (j != singleton_signs.size()) throw InputError("sign pattern length does not match the number of singletons");
  return HCParam(std::move(out), lambda);
}

inline Packet packet(const InfChar& lambda) {
  const auto sp = singletons_and_pairs(lambda);
  Packet pk{lambda, {}};
  for (const auto& v : SignVector::all(sp.singletons.size())) pk.members.push_back(packet_member(lambda, v));
  return pk;
}

/// Singleton sign pattern of p if p is a nonzero member of Π_{p.base};
/// nullopt otherwise. Pairs (a, -a) and (-a, a) give the same member.
inline std::optional<SignVector> packet_index(const HCParam& p) {
  if (!p.base.admissible() || !is_nonzero_limit(p)) return std::nullopt;
  const auto sp = singletons_and_pairs(p.base);
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < sp.singletons.size(); ++j) {
    const auto a = sp.singletons[j];
    const bool negative = std::find(p.signed_entries.begin(), p.signed_entries.end(), -a) != p.signed_entries.end();
    if (negative) mask |= std::uint64_t{1} << j;
  }
  return SignVector(sp.singletons.size(), mask);
}

// ---------------------------------------------------------------------------
// Elliptic parameters of SO(2n'+1) x SO(2n''+1) and the bijection

struct EllipticParam {
  EndoDatum datum;
  std::vector<HalfInt> pile_prime;   // strictly decreasing, positive, Z + 1/2
  std::vector<HalfInt> pile_dprime;

  EllipticParam() = default;
  EllipticParam(std::vector<HalfInt> p, std::vector<HalfInt> d)
      : datum{p.size(), d.size()}, pile_prime(std::move(p)), pile_dprime(std::move(d)) {
    check_pile(pile_prime);
    check_pile(pile_dprime);
  }

  bool operator==(const EllipticParam&) const = default;

 private:
  static void check_pile(const std::vector<HalfInt>& pile) {
    for (std::size_t i = 0; i < pile.size(); ++i) {
      if (!pile[i].is_half_odd() || pile[i] <= HalfInt{})
        throw InputError("pile entries must be positive elements of Z + 1/2");
      if (i > 0 && !(pile[i - 1] > pile[i])) throw InputError("piles must be strictly decreasing");
    }
  }
};

inline InfChar merge(const EllipticParam& phi) {
  auto all = phi.pile_prime;
  all.insert(all.end(), phi.pile_dprime.begin(), phi.pile_dprime.end());
  return normal_form(all, true);
}

/// Sign vector over the singletons of λ; +1 means the singleton lies in the ' pile.
using KappaRestriction = SignVector;

inline EllipticParam split_bijection(const InfChar& lambda, const KappaRestriction& kappa) {
  const auto sp = singletons_and_pairs(lambda);
  if (kappa.size() != sp.singletons.size()) throw InputError("kappa length does not match the number of singletons");
  std::vector<HalfInt> p;
  std::vector<HalfInt> d;
  const auto& e = lambda.entries();
  std::size_t j = 0;
  for (std::size_t i = 0; i < e.size();) {
    if (i + 1 < e.size() && e[i] == e[i + 1]) {
      p.push_back(e[i]);
      d.push_back(e[i]);
      i += 2;
    } else {
      (kappa.at(j++) == 1 ? p : d).push_back(e[i]);
      ++i;
    }
  }
  return EllipticParam(std::move(p), std::move(d));
}

struct LambdaKappa {
  InfChar lambda;
  KappaRestriction kappa;
  bool operator==(const LambdaKappa&) const = default;
};

inline LambdaKappa split_bijection_inverse(const EllipticParam& phi) {
  LambdaKappa out{merge(phi), {}};
  const auto sp = singletons_and_pairs(out.lambda);
  std::uint64_t mask = 0;
  for (std::size_t j = 0; j < sp.singletons.size(); ++j)
    if (std::binary_search(phi.pile_dprime.begin(), phi.pile_dprime.end(), sp.singletons[j], std::greater<>()))
      mask |= std::uint64_t{1} << j;
  out.kappa = SignVector(sp.singletons.size(), mask);
  return out;
}

/// All (n', n'', φ) with merge(φ) = λ, in binary order of κ.
inline std::vector<EllipticParam> fiber(const InfChar& lambda) {
  const auto sp = singletons_and_pairs(lambda);
  std::vector<EllipticParam> out;
  for (const auto& k : SignVector::all(sp.singletons.size())) out.push_back(split_bijection(lambda, k));
  return out;
}

// ---------------------------------------------------------------------------
// Spectral transfer factors

/// Δ(φ, π) ∈ {-1, 0, +1}. Zero unless π is a nonzero member of Π_{merge(φ)}.
/// Otherwise (-1)^{Σ_j (μ_j + 1/2)} over the signed entries μ_j of π routed
/// to the '' pile: a singleton keeps π's sign, a pair contributes -a.
inline int delta_spectral(const EllipticParam& phi, const HCParam& p) {
  const auto lambda = merge(phi);
  if (!(lambda == p.base) || !packet_index(p)) return 0;
  const auto sp = singletons_and_pairs(lambda);
  std::int64_t exponent = 0;
  for (const auto& c : phi.pile_dprime) {
    HalfInt mu;
    if (std::binary_search(sp.pairs.begin(), sp.pairs.end(), c, std::greater<>())) {
      mu = -c;
    } else {
      mu = std::find(p.signed_entries.begin(), p.signed_entries.end(), c) != p.signed_entries.end() ? c : -c;
    }
    exponent += (mu.twice() + 1) / 2;
  }
  return (exponent % 2 == 0) ? 1 : -1;
}

/// Δ(π, φ) = |Π_λ|^{-1} Δ(φ, π) (the factor is real).
inline Rational adjoint_delta_spectral(const HCParam& p, const EllipticParam& phi) {
  const int d = delta_spectral(phi, p);
  if (d == 0) return Rational(0);
  const auto size = static_cast<std::int64_t>(std::uint64_t{1} << singletons_and_pairs(p.base).singletons.size());
  return Rational(d, size);
}

struct SpectralMatrices {
  InfChar lambda;
  std::vector<EllipticParam> phis;  // fiber over λ
  std::vector<HCParam> members;     // Π_λ
  Matrix<Rational> delta;           // delta(a, b) = Δ(φ_a, π_b)
  Matrix<Rational> adjoint;         // adjoint(b, a) = Δ(π_b, φ_a)
};

inline SpectralMatrices transfer_matrices(const InfChar& lambda) {
  SpectralMatrices m;
  m.lambda = lambda;
  m.phis = fiber(lambda);
  m.members = packet(lambda).members;
  m.delta = Matrix<Rational>(m.phis.size(), m.members.size());
  m.adjoint = Matrix<Rational>(m.members.size(), m.phis.size());
  for (std::size_t a = 0; a < m.phis.size(); ++a)
    for (std::size_t b = 0; b < m.members.size(); ++b) {
      m.delta(a, b) = Rational(delta_spectral(m.phis[a], m.members[b]));
      m.adjoint(b, a) = adjoint_delta_spectral(m.members[b], m.phis[a]);
    }
  return m;
}

/// Σ_φ Δ(π,φ)Δ(φ,π₁) = δ_{π,π₁} and Σ_π Δ(φ,π)Δ(π,φ₁) = δ_{φ,φ₁}.
inline bool verify_spectral_inversion(const SpectralMatrices& m) {
  return (m.adjoint * m.delta).is_identity() && (m.delta * m.adjoint).is_identity();
}

inline bool verify_spectral_inversion(const InfChar& lambda) {
  require_admissible(lambda);
  return verify_spectral_inversion(transfer_matrices(lambda));
}

/// All admissible λ of rank <= max_rank with entries in {1/2, 3/2, ..., max_twice/2}.
inline std::vector<InfChar> enumerate_admissible(std::size_t max_rank, std::int64_t max_twice) {
  std::vector<HalfInt> values;
  for (std::int64_t t = max_twice; t >= 1; t -= 2)
    if (t % 2 != 0) values.push_back(HalfInt::from_twice(t));
  std::vector<InfChar> out;
  std::vector<int> mult(values.size(), 0);
  // Odometer over multiplicities {0, 1, 2}^values.
  while (true) {
    std::size_t total = 0;
    for (int x : mult) total += static_cast<std::size_t>(x);
    if (total <= max_rank) {
      std::vector<HalfInt> raw;
      for (std::size_t i = 0; i < values.size(); ++i)
        for (int c = 0; c < mult[i]; ++c) raw.push_back(values[i]);
      out.push_back(normal_form(raw, true));
    }
    std::size_t i = 0;
    while (i < mult.size() && mult[i] == 2) mult[i++] = 0;
    if (i == mult.size()) break;
    ++mult[i];
  }
  std::sort(out.begin(), out.end(), [](const InfChar& a, const InfChar& b) {
    if (a.rank() != b.rank()) return a.rank() < b.rank();
    return a.entries() > b.entries();
  });
  return out;
}

struct RhoConstants {
  std::vector<HalfInt> rho;           // [n, ..., 1]
  std::vector<HalfInt> rho_endo;      // [n - 1/2, ..., 1/2]
  std::vector<HalfInt> weil_lambda0;  // [n - 1/2, ..., 1/2]
};

inline RhoConstants constants(std::size_t n) {
  RhoConstants c;
  for (std::size_t i = n; i >= 1; --i) {
    c.rho.push_back(HalfInt::from_int(static_cast<std::int64_t>(i)));
    c.rho_endo.push_back(HalfInt::from_twice(2 * static_cast<std::int64_t>(i) - 1));
  }
  c.weil_lambda0 = c.rho_endo;
  return c;
}

}  // namespace mpendo
