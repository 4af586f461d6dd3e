#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "mpendo/endodata.hpp"
#include "mpendo/random.hpp"

using namespace mpendo;

namespace {

using Blocks = std::vector<std::size_t>;

// Oracle: multisets of positive block sizes with sum <= n, found by brute
// force over all compositions and deduplicated after sorting.
std::set<std::pair<Blocks, std::size_t>> brute_force_levi(std::size_t n) {
  std::set<std::pair<Blocks, std::size_t>> out;
  for (std::size_t used = 0; used <= n; ++used) {
    // Compositions of `used` correspond to subsets of the used-1 cut points.
    const std::size_t cuts = used == 0 ? 0 : used - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cuts); ++mask) {
      Blocks b;
      std::size_t run = 1;
      for (std::size_t i = 0; i < cuts; ++i) {
        if ((mask >> i) & 1) {
          b.push_back(run);
          run = 1;
        } else {
          ++run;
        }
      }
      if (used > 0) b.push_back(run);
      std::sort(b.begin(), b.end(), std::greater<>());
      out.insert({b, n - used});
    }
  }
  return out;
}

// Oracle: every (γ', γ'') for the datum with correspond(γ', γ'') = δ, by
// trying each way of choosing which n'' eigenvalue pairs of δ came from γ''.
std::set<std::pair<std::vector<Rational>, std::vector<Rational>>> brute_force_preimages(const StableClassSp& delta,
                                                                                        const EndoDatum& d) {
  std::set<std::pair<std::vector<Rational>, std::vector<Rational>>> out;
  const auto& e = delta.eigen();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != d.n_dprime) continue;
    std::vector<Rational> gp, gd;
    for (std::size_t i = 0; i < e.size(); ++i) ((mask >> i) & 1 ? gd : gp).push_back((mask >> i) & 1 ? -e[i] : e[i]);
    const StableClassSO cp(gp), cd(gd);
    out.insert({cp.eigen(), cd.eigen()});
  }
  return out;
}

StableClassSO so(std::initializer_list<Rational> e) { return StableClassSO(e); }
StableClassSp sp(std::initializer_list<Rational> e) { return StableClassSp(e); }

}  // namespace

TEST(Elliptic, Enumeration) {
  const std::vector<EndoDatum> two{{0, 2}, {1, 1}, {2, 0}};
  EXPECT_EQ(enumerate_elliptic(2), two);
  EXPECT_EQ(enumerate_elliptic(0), (std::vector<EndoDatum>{EndoDatum{0, 0}}));
  EXPECT_EQ(enumerate_elliptic(4).size(), 5u);
  for (std::size_t n = 0; n <= 12; ++n) {
    const auto all = enumerate_elliptic(n);
    EXPECT_EQ(all.size(), n + 1);
    for (const auto& d : all) EXPECT_EQ(d.rank(), n);
    EXPECT_EQ(std::set<EndoDatum>(all.begin(), all.end()).size(), n + 1);
  }
}

TEST(Elliptic, Iota) {
  EXPECT_EQ(iota({1, 1}), Rational(1, 4));
  EXPECT_EQ(iota({2, 0}), Rational(1, 2));
  EXPECT_EQ(iota({0, 0}), Rational(1));
  for (std::size_t n = 0; n <= 12; ++n)
    for (const auto& d : enumerate_elliptic(n)) {
      const Rational expect = n == 0 ? Rational(1) : (d.n_prime == 0 || d.n_dprime == 0 ? Rational(1, 2) : Rational(1, 4));
      EXPECT_EQ(iota(d), expect);
      EXPECT_EQ(iota(d), iota(d.swapped()));
    }
}

TEST(Levi, SmallRanks) {
  const std::vector<LeviDatum> two{{{}, 2}, {{1}, 1}, {{2}, 0}, {{1, 1}, 0}};
  EXPECT_EQ(enumerate_levi(2), two);
  EXPECT_EQ(enumerate_levi(0), std::vector<LeviDatum>{LeviDatum({}, 0)});
  const std::vector<LeviDatum> one{{{}, 1}, {{1}, 0}};
  EXPECT_EQ(enumerate_levi(1), one);
}

TEST(Levi, MatchesBruteForce) {
  for (std::size_t n = 0; n <= 7; ++n) {
    const auto levis = enumerate_levi(n);
    std::set<std::pair<Blocks, std::size_t>> got;
    for (const auto& l : levis) {
      EXPECT_EQ(l.rank(), n);
      got.insert({l.gl_blocks, l.flat_rank});
    }
    EXPECT_EQ(got.size(), levis.size());
    EXPECT_EQ(got, brute_force_levi(n));
  }
}

TEST(Levi, RejectsZeroBlock) { EXPECT_THROW(LeviDatum({1, 0}, 1), InputError); }

TEST(Embeddings, SingleBlockExample) {
  const LeviDatum levi({1}, 1);
  const auto e = enumerate_embeddings(levi, 1, 0);
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e[0].s.i_prime, Blocks{0});
  EXPECT_EQ(e[0].attached, (EndoDatum{2, 0}));
  EXPECT_EQ(e[1].s.i_dprime, Blocks{0});
  EXPECT_EQ(e[1].attached, (EndoDatum{1, 1}));
}

TEST(Embeddings, CountsAndRanks) {
  const auto none = enumerate_embeddings(LeviDatum({}, 3), 1, 2);
  ASSERT_EQ(none.size(), 1u);
  EXPECT_EQ(none[0].attached, (EndoDatum{1, 2}));
  EXPECT_EQ(enumerate_embeddings(LeviDatum({1, 1, 2}, 0), 0, 0).size(), 8u);
  EXPECT_THROW(enumerate_embeddings(LeviDatum({1}, 2), 1, 0), InputError);
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& l : enumerate_levi(n))
      for (std::size_t mp = 0; mp <= l.flat_rank; ++mp) {
        const auto all = enumerate_embeddings(l, mp, l.flat_rank - mp);
        EXPECT_EQ(all.size(), std::size_t{1} << l.index_count());
        for (const auto& e : all) EXPECT_EQ(e.attached.rank(), n);
      }
}

TEST(CentralTwist, Examples) {
  EXPECT_EQ(central_twist(EmbeddingParam{{0}, {1}}), SignVector::from_signs({1, -1}));
  EXPECT_TRUE(central_twist(EmbeddingParam::from_mask(3, 0)).is_identity());
  EXPECT_EQ(central_twist(EmbeddingParam::from_mask(3, 7)), SignVector::from_signs({-1, -1, -1}));
}

TEST(StableClass, Canonicalization) {
  const auto c = so({Rational(1, 2), Rational(-3), Rational(2, 5)});
  const std::vector<Rational> expect{Rational(-3), Rational(2), Rational(5, 2)};
  EXPECT_EQ(c.eigen(), expect);
  EXPECT_EQ(StableClassSO(c.eigen()), c);
  EXPECT_THROW(so({Rational(0)}), InputError);

  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const StableClassSp d(rng.rationals(4));
    EXPECT_EQ(StableClassSp(d.eigen()), d);
  }
}

TEST(Correspond, Examples) {
  EXPECT_EQ(correspond(so({2}), so({3}), {1, 1}), sp({2, -3}));
  EXPECT_EQ(correspond(so({}), so({5}), {0, 1}), sp({-5}));
  EXPECT_EQ(correspond(so({2, 3}), so({}), {2, 0}), sp({2, 3}));
  EXPECT_THROW(correspond(so({2}), so({}), {0, 1}), InputError);
}

TEST(Correspond, GRegularity) {
  EXPECT_TRUE(is_G_regular(so({2}), so({2}), {1, 1}));
  EXPECT_FALSE(is_G_regular(so({2}), so({-2}), {1, 1}));
  EXPECT_FALSE(is_G_regular(so({2}), so({1}), {1, 1}));
  EXPECT_FALSE(is_G_regular(so({}), so({1, 3}), {0, 2}));
  EXPECT_FALSE(is_G_regular(so({Rational(1, 3)}), so({-3}), {1, 1}));
  EXPECT_TRUE(is_G_regular(so({}), so({}), {0, 0}));
}

TEST(Correspond, NotInjectiveOnGRegularClasses) {
  const EndoDatum d{1, 1};
  ASSERT_TRUE(is_G_regular(so({2}), so({3}), d));
  ASSERT_TRUE(is_G_regular(so({-3}), so({-2}), d));
  EXPECT_EQ(correspond(so({2}), so({3}), d), correspond(so({-3}), so({-2}), d));
}

TEST(Correspond, FibersMatchBruteForce) {
  Rng rng(5);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& d : enumerate_elliptic(n))
      for (int t = 0; t < 50; ++t) {
        const auto [gp, gd] = random_regular_pair(rng, d);
        const auto delta = correspond(gp, gd, d);
        const auto pre = brute_force_preimages(delta, d);
        EXPECT_TRUE(pre.count({gp.eigen(), gd.eigen()}));
        EXPECT_LE(pre.size(), std::size_t{1} << n);
        for (const auto& [a, b] : pre) EXPECT_EQ(correspond(StableClassSO(a), StableClassSO(b), d), delta);
      }
}

TEST(Symmetry, Examples) {
  const auto w = symmetry_swap(so({2}), so({3}), {1, 1});
  EXPECT_EQ(w.delta, sp({2, -3}));
  EXPECT_EQ(w.swapped, sp({-2, 3}));
  EXPECT_TRUE(w.pass);
  const auto one = symmetry_swap(so({4, 5}), so({}), {2, 0});
  EXPECT_EQ(one.swapped, sp({-4, -5}));
  EXPECT_TRUE(one.pass);
  EXPECT_TRUE(symmetry_swap(so({}), so({}), {0, 0}).pass);
}

TEST(Symmetry, RandomClasses) {
  Rng rng(3);
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& d : enumerate_elliptic(n))
      for (int t = 0; t < 50; ++t) {
        const auto [gp, gd] = random_regular_pair(rng, d);
        EXPECT_TRUE(symmetry_swap(gp, gd, d).pass);
      }
}

TEST(MuRoute, SingleBlockExample) {
  const LeviDatum levi({1}, 0);
  const LeviEndoClass t({{Rational(4)}}, so({}), so({}));
  const EmbeddingParam s{{}, {0}};
  EXPECT_EQ(mu_route(t, levi, s, MuRoute::via_endoscopic_group), sp({-4}));
  EXPECT_EQ(mu_route(t, levi, s, MuRoute::via_levi), sp({4}));
  EXPECT_EQ(mu_route(apply_twist(central_twist(s), t), levi, s, MuRoute::via_levi), sp({-4}));
}

TEST(MuRoute, TrivialTwistAgrees) {
  Rng rng(9);
  const LeviDatum levi({2, 1}, 2);
  const auto s = EmbeddingParam::from_mask(2, 0);
  for (int t = 0; t < 50; ++t) {
    const auto c = random_regular_levi_class(rng, levi, 1, 1, s);
    EXPECT_EQ(mu_route(c, levi, s, MuRoute::via_endoscopic_group), mu_route(c, levi, s, MuRoute::via_levi));
  }
}

TEST(MuRoute, TwistIdentityExhaustiveSmallRank) {
  Rng rng(13);
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& levi : enumerate_levi(n))
      for (std::size_t mp = 0; mp <= levi.flat_rank; ++mp)
        for (const auto& e : enumerate_embeddings(levi, mp, levi.flat_rank - mp))
          for (int t = 0; t < 20; ++t) {
            const auto c = random_regular_levi_class(rng, levi, mp, levi.flat_rank - mp, e.s);
            EXPECT_EQ(mu_route(c, levi, e.s, MuRoute::via_endoscopic_group),
                      mu_route(apply_twist(central_twist(e.s), c), levi, e.s, MuRoute::via_levi));
          }
}

TEST(MuRoute, MalformedInput) {
  const LeviDatum levi({2}, 1);
  const LeviEndoClass wrong_block({{Rational(2)}}, so({3}), so({}));
  EXPECT_THROW(mu_route(wrong_block, levi, EmbeddingParam{{0}, {}}, MuRoute::via_levi), InputError);
  const LeviEndoClass ok({{Rational(2), Rational(5)}}, so({3}), so({}));
  EXPECT_THROW(mu_route(ok, levi, EmbeddingParam{{0}, {0}}, MuRoute::via_levi), InputError);
  EXPECT_THROW(apply_twist(SignVector::identity(2), ok), InputError);
}
