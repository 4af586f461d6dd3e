#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "mpendo/complex_case.hpp"
#include "mpendo/random.hpp"

using namespace mpendo;

namespace {

// Oracle: the full W(C_n)-orbit by brute force over all n! 2^n signed permutations.
std::set<TorusCharacter> brute_force_orbit(const TorusCharacter& chi) {
  std::set<TorusCharacter> out;
  std::vector<std::size_t> perm(chi.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    for (const auto& signs : SignVector::all(chi.size())) out.insert(SignedPermutation{perm, signs}.apply(chi));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST(ComplexCase, CanonicalRepIsLexMaxOfOrbit) {
  Rng rng(31);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int t = 0; t < 20; ++t) {
      const auto chi = rng.torus_character(n);
      const auto orbit = brute_force_orbit(chi);
      EXPECT_EQ(canonical_orbit(chi).rep, *orbit.rbegin());
      for (const auto& other : orbit) EXPECT_EQ(canonical_orbit(other), canonical_orbit(chi));
    }
}

TEST(ComplexCase, OrbitInvariance) {
  Rng rng(32);
  for (int t = 0; t < 500; ++t) {
    const auto n = static_cast<std::size_t>(rng.range(1, 6));
    const auto chi = rng.torus_character(n);
    const auto w = rng.signed_permutation(n);
    EXPECT_EQ(complex_bijection(n, w.apply(chi)), complex_bijection(n, chi));
  }
}

TEST(ComplexCase, TransferMatrixIsIdentity) {
  Rng rng(33);
  std::vector<TorusCharacter> phis;
  std::vector<ComplexOrbit> pis;
  for (int t = 0; t < 40; ++t) {
    const auto chi = rng.torus_character(3);
    const auto o = canonical_orbit(chi);
    if (std::find(pis.begin(), pis.end(), o) != pis.end()) continue;
    phis.push_back(rng.signed_permutation(3).apply(chi));
    pis.push_back(o);
  }
  const auto m = complex_transfer_matrix(phis, pis);
  EXPECT_TRUE(m.is_identity());
  EXPECT_TRUE((m * m).is_identity());
}

TEST(ComplexCase, ExamplesAndErrors) {
  const TorusCharacter chi{{2, Rational(1, 2)}, {-1, Rational(0)}};
  const auto o = canonical_orbit(chi);
  const TorusCharacter expect{{2, Rational(1, 2)}, {1, Rational(0)}};
  EXPECT_EQ(o.rep, expect);
  EXPECT_EQ(complex_transfer_factor(chi, o), 1);
  EXPECT_EQ(complex_transfer_factor({{3, Rational(0)}, {1, Rational(0)}}, o), 0);
  EXPECT_THROW(complex_bijection(3, chi), InputError);
  EXPECT_THROW((SignedPermutation{{0}, SignVector::identity(1)}.apply(chi)), InputError);
}
