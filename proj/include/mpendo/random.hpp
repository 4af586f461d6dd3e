#pragma once

// Seeded generators for the randomized checks. Only the raw mt19937_64 stream
// is used (its output is fixed by the standard), so results do not depend on
// the standard library's distribution implementations.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mpendo/complex_case.hpp"
#include "mpendo/endodata.hpp"
#include "mpendo/exactalg.hpp"

namespace mpendo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform-ish integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  /// Nonzero rational p/q with |p| <= 9, 1 <= q <= 5.
  Rational nonzero_rational() {
    std::int64_t p = 0;
    while (p == 0) p = range(-9, 9);
    return Rational(p, range(1, 5));
  }

  UnityRoot8 root8() { return UnityRoot8(range(0, 7)); }

  SignVector sign_vector(std::size_t k) {
    const std::uint64_t mask = k == 0 ? 0 : (engine_() & ((std::uint64_t{1} << k) - 1));
    return SignVector(k, mask);
  }

  SignedPermutation signed_permutation(std::size_t n) {
    SignedPermutation w{std::vector<std::size_t>(n), sign_vector(n)};
    std::iota(w.perm.begin(), w.perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(w.perm[i - 1], w.perm[static_cast<std::size_t>(range(0, static_cast<std::int64_t>(i) - 1))]);
    return w;
  }

  TorusCharacter torus_character(std::size_t n) {
    TorusCharacter chi(n);
    for (auto& c : chi) c = {range(-3, 3), Rational(range(-4, 4), range(1, 3))};
    return chi;
  }

  std::vector<Rational> rationals(std::size_t count) {
    std::vector<Rational> out(count);
    for (auto& e : out) e = nonzero_rational();
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// A class t of M^! with μ₁(t) regular for the embedding s; rejection sampled.
inline LeviEndoClass random_regular_levi_class(Rng& rng, const LeviDatum& levi, std::size_t m_prime,
                                               std::size_t m_dprime, const EmbeddingParam& s) {
  while (true) {
    std::vector<std::vector<Rational>> blocks;
    for (auto b : levi.gl_blocks) blocks.push_back(rng.rationals(b));
    LeviEndoClass t(std::move(blocks), StableClassSO(rng.rationals(m_prime)), StableClassSO(rng.rationals(m_dprime)));
    if (is_regular(mu_route(t, levi, s, MuRoute::via_endoscopic_group))) return t;
  }
}

/// (γ', γ'') of ranks (n', n'') that is G-regular for the datum.
inline std::pair<StableClassSO, StableClassSO> random_regular_pair(Rng& rng, const EndoDatum& d) {
  while (true) {
    StableClassSO gp(rng.rationals(d.n_prime));
    StableClassSO gd(rng.rationals(d.n_dprime));
    if (is_G_regular(gp, gd, d)) return {std::move(gp), std::move(gd)};
  }
}

}  // namespace mpendo
