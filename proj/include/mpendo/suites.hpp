#pragma once

// Named verification suites. Each suite returns a list of checks with pass
// counts; the brute-force oracles used here enumerate raw sign patterns and
// pile assignments directly and do not go through the packet/fiber builders
// they are compared against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mpendo/complex_case.hpp"
#include "mpendo/endodata.hpp"
#include "mpendo/random.hpp"
#include "mpendo/realspectral.hpp"
#include "mpendo/realtori.hpp"
#include "mpendo/serialize.hpp"

namespace mpendo {

struct SuiteOptions {
  std::optional<std::size_t> max_n;  // overrides every per-suite rank bound
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  bool inject_sign_error = false;  // test hook: corrupts one matrix entry

  std::size_t bound(std::size_t fallback) const { return max_n ? *max_n : fallback; }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"elliptic-counts", "z-twist",  "symmetry",
                                                 "cohomology",      "kappa",    "geometric-inversion",
                                                 "packets",         "bijection", "spectral-inversion",
                                                 "complex-case"};
  return names;
}

namespace detail {

class CheckCounter {
 public:
  CheckCounter(std::string name, std::string detail) : check_{std::move(name), std::move(detail), 0, 0} {}
  void record(bool ok) {
    ++check_.total;
    if (ok) ++check_.passed;
  }
  Check done() const { return check_; }

 private:
  Check check_;
};

inline std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t salt) { return seed * 0x9E3779B97F4A7C15ULL + salt; }

// Number of distinct nonzero Harish-Chandra parameters over λ up to the
// coordinate permutations, by brute force over all 2^n sign patterns.
inline std::size_t brute_force_packet_size(const InfChar& lambda) {
  const auto& e = lambda.entries();
  std::set<std::vector<HalfInt>> seen;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
    std::vector<HalfInt> v;
    for (std::size_t i = 0; i < e.size(); ++i) v.push_back(((mask >> i) & 1U) ? -e[i] : e[i]);
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) continue;
    seen.insert(v);
  }
  return seen.size();
}

// All (φ', φ'') strictly decreasing piles whose union is λ, by brute force
// over the 2^n assignments of coordinates to piles.
inline std::vector<EllipticParam> brute_force_fiber(const InfChar& lambda) {
  const auto& e = lambda.entries();
  std::set<std::pair<std::vector<HalfInt>, std::vector<HalfInt>>> seen;
  std::vector<EllipticParam> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
    std::vector<HalfInt> p;
    std::vector<HalfInt> d;
    for (std::size_t i = 0; i < e.size(); ++i) (((mask >> i) & 1U) ? d : p).push_back(e[i]);
    const auto strict = [](const std::vector<HalfInt>& v) {
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!strict(p) || !strict(d)) continue;
    if (seen.insert({p, d}).second) out.emplace_back(p, d);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline std::vector<Check> suite_elliptic_counts(const SuiteOptions& opt) {
  detail::CheckCounter counts("elliptic-count", "|enumerate_elliptic(n)| = n + 1, distinct ordered pairs");
  detail::CheckCounter iota_check("iota", "iota = 1/4, 1/2, 1 by the three cases");
  for (std::size_t n = 0; n <= opt.bound(12); ++n) {
    const auto data = enumerate_elliptic(n);
    std::set<EndoDatum> distinct(data.begin(), data.end());
    bool ok = data.size() == n + 1 && distinct.size() == n + 1;
    for (const auto& d : data) ok = ok && d.rank() == n;
    counts.record(ok);
    for (const auto& d : data) {
      Rational expected = n == 0 ? Rational(1) : ((d.n_prime >= 1 && d.n_dprime >= 1) ? Rational(1, 4) : Rational(1, 2));
      iota_check.record(iota(d) == expected);
    }
  }
  detail::CheckCounter emb("embeddings", "2^|I| embeddings per (Levi, m', m''), attached n' + n'' = n");
  for (std::size_t n = 0; n <= opt.bound(6); ++n)
    for (const auto& levi : enumerate_levi(n))
      for (std::size_t mp = 0; mp <= levi.flat_rank; ++mp) {
        const auto es = enumerate_embeddings(levi, mp, levi.flat_rank - mp);
        bool ok = es.size() == (std::size_t{1} << levi.index_count());
        for (const auto& e : es) ok = ok && e.attached.rank() == n;
        emb.record(ok);
      }
  return {counts.done(), iota_check.done(), emb.done()};
}

inline std::vector<Check> suite_z_twist(const SuiteOptions& opt) {
  Rng rng(detail::suite_seed(opt.seed, 1));
  detail::CheckCounter c("mu1-equals-mu2-twisted", "mu_1(t) = mu_2(z[s] t) on random G-regular classes");
  for (std::size_t n = 0; n <= opt.bound(5); ++n)
    for (const auto& levi : enumerate_levi(n))
      for (std::size_t mp = 0; mp <= levi.flat_rank; ++mp)
        for (const auto& e : enumerate_embeddings(levi, mp, levi.flat_rank - mp)) {
          const auto z = central_twist(e.s);
          for (std::size_t k = 0; k < opt.trials; ++k) {
            const auto t = random_regular_levi_class(rng, levi, mp, levi.flat_rank - mp, e.s);
            const auto mu1 = mu_route(t, levi, e.s, MuRoute::via_endoscopic_group);
            const auto mu2 = mu_route(apply_twist(z, t), levi, e.s, MuRoute::via_levi);
            c.record(mu1 == mu2);
          }
        }
  return {c.done()};
}

inline std::vector<Check> suite_symmetry(const SuiteOptions& opt) {
  Rng rng(detail::suite_seed(opt.seed, 2));
  detail::CheckCounter c("swap-negation", "-correspond(g', g'', (n', n'')) = correspond(g'', g', (n'', n'))");
  for (std::size_t n = 0; n <= opt.bound(5); ++n)
    for (const auto& d : enumerate_elliptic(n))
      for (std::size_t k = 0; k < opt.trials; ++k) {
        const auto [gp, gd] = random_regular_pair(rng, d);
        c.record(symmetry_swap(gp, gd, d).pass);
      }
  return {c.done()};
}

inline std::vector<Check> suite_cohomology(const SuiteOptions& opt) {
  detail::CheckCounter order("h1-order", "|H^1(R, T)| = 2^r for every torus type");
  detail::CheckCounter inv("inv-compatible", "inv respects the group law of H^1(R, T)");
  for (std::size_t n = 0; n <= opt.bound(8); ++n)
    for (const auto& t : torus_types(n)) {
      const auto g = h1(t);
      std::set<std::uint64_t> masks;
      for (const auto& x : g.elements) masks.insert(x.negative_mask());
      order.record(g.order == (std::uint64_t{1} << t.r) && masks.size() == g.order && g.elements.front().is_identity());
      if (t.r <= 4)
        for (const auto& x : g.elements)
          for (const auto& y : g.elements) inv.record(inv_position(x * y) == inv_position(x) * inv_position(y));
    }
  return {order.done(), inv.done()};
}

inline std::vector<Check> suite_kappa(const SuiteOptions& opt) {
  detail::CheckCounter product("kappa0-product", "kappa_{T,0}(t) = prod t_i");
  detail::CheckCounter hom("kappa0-homomorphism", "kappa_{T,0}(xy) = kappa_{T,0}(x) kappa_{T,0}(y)");
  detail::CheckCounter comp("kappaT-composition", "kappa_T = kappa_{T'',0} o pr''");
  const std::size_t rmax = opt.bound(6);
  for (std::size_t r = 0; r <= rmax; ++r) {
    const TorusType t{0, r, 0};
    const auto elems = SignVector::all(r);
    for (const auto& x : elems) {
      int p = 1;
      for (int s : x.signs()) p *= s;
      product.record(kappa0(t, x) == p);
      for (const auto& y : elems) hom.record(kappa0(t, x * y) == kappa0(t, x) * kappa0(t, y));
    }
    for (std::size_t rp = 0; rp <= r; ++rp) {
      const CompactSplit split{rp, r - rp};
      for (const auto& x : elems) {
        // Projection to H^1(R, T'') done on the explicit coordinate list.
        const auto signs = x.signs();
        const std::vector<int> tail(signs.begin() + static_cast<std::ptrdiff_t>(rp), signs.end());
        const int via_composition = kappa0(TorusType{0, tail.size(), 0}, SignVector::from_signs(tail));
        comp.record(kappaT(split, x) == via_composition);
      }
    }
  }
  return {product.done(), hom.done(), comp.done()};
}

inline std::vector<Check> suite_geometric_inversion(const SuiteOptions& opt) {
  Rng rng(detail::suite_seed(opt.seed, 3));
  detail::CheckCounter inversion("AB=BA=1", "adjoint factors invert the transfer matrix exactly");
  detail::CheckCounter perturb("perturbation", "multiplying one entry of B by exp 1 breaks inversion");
  detail::CheckCounter pairing("fourier-pairing", "sum_j B_ji conj(B_ji') = 2^r [i = i']");
  for (std::size_t r = 0; r <= opt.bound(6); ++r) {
    const std::size_t m = std::size_t{1} << r;
    for (std::size_t k = 0; k < opt.trials; ++k) {
      FactorModel model{r, {}};
      for (std::size_t j = 0; j < m; ++j) model.base_constants.push_back(rng.root8());
      auto mats = build_matrices(model);
      if (opt.inject_sign_error && r == 1 && k == 0) mats.B(0, 0) = -mats.B(0, 0);
      inversion.record(verify_inversion(mats));

      const auto exhaustive = r <= 3 && k == 0;
      const auto zeta = DyadicCyclotomic8::root(UnityRoot8(1));
      for (std::size_t e = 0; e < (exhaustive ? m * m : 1); ++e) {
        const std::size_t idx = exhaustive ? e : static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(m * m) - 1));
        auto bad = mats;
        bad.B(idx / m, idx % m) = bad.B(idx / m, idx % m) * zeta;
        perturb.record(!verify_inversion(bad));
      }

      if (k == 0)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t i2 = 0; i2 < m; ++i2) {
            DyadicCyclotomic8 s;
            for (std::size_t j = 0; j < m; ++j) s += mats.B(j, i) * mats.B(j, i2).conj();
            pairing.record(s == DyadicCyclotomic8(i == i2 ? static_cast<std::int64_t>(m) : 0));
          }
    }
  }
  return {inversion.done(), perturb.done(), pairing.done()};
}

inline std::vector<Check> suite_packets(const SuiteOptions& opt) {
  detail::CheckCounter size("packet-size", "|packet(lambda)| = 2^#singletons = brute-force count");
  detail::CheckCounter members("members-nonzero", "members are nonzero limits indexed by their sign pattern");
  for (const auto& lambda : enumerate_admissible(opt.bound(7), 13)) {
    const auto pk = packet(lambda);
    const auto singles = singletons_and_pairs(lambda).singletons.size();
    size.record(pk.members.size() == (std::size_t{1} << singles) &&
                pk.members.size() == detail::brute_force_packet_size(lambda));
    for (std::size_t b = 0; b < pk.members.size(); ++b) {
      const auto idx = packet_index(pk.members[b]);
      members.record(is_nonzero_limit(pk.members[b]) && idx && idx->negative_mask() == b);
    }
  }
  return {size.done(), members.done()};
}

inline std::vector<Check> suite_bijection(const SuiteOptions& opt) {
  detail::CheckCounter card("fiber-cardinality", "|fiber(lambda)| = |packet(lambda)| = brute-force fiber count");
  detail::CheckCounter fwd("round-trip-lambda-kappa", "inverse(forward(lambda, kappa)) = (lambda, kappa)");
  detail::CheckCounter bwd("round-trip-phi", "forward(inverse(phi)) = phi over the brute-force fiber");
  for (const auto& lambda : enumerate_admissible(opt.bound(7), 13)) {
    const auto brute = detail::brute_force_fiber(lambda);
    const auto fib = fiber(lambda);
    card.record(fib.size() == packet(lambda).members.size() && fib.size() == brute.size());
    const auto singles = singletons_and_pairs(lambda).singletons.size();
    for (const auto& kappa : SignVector::all(singles))
      fwd.record(split_bijection_inverse(split_bijection(lambda, kappa)) == LambdaKappa{lambda, kappa});
    for (const auto& phi : brute) {
      const auto lk = split_bijection_inverse(phi);
      bwd.record(split_bijection(lk.lambda, lk.kappa) == phi);
    }
  }
  return {card.done(), fwd.done(), bwd.done()};
}

inline std::vector<Check> suite_spectral_inversion(const SuiteOptions& opt) {
  detail::CheckCounter inversion("both-identities", "both spectral inversion identities hold exactly");
  detail::CheckCounter perturb("perturbation", "negating one entry of Delta(phi, pi) breaks inversion");
  detail::CheckCounter law("relative-sign-law", "Delta(phi, pi(w v lambda)) = kappa(w) Delta(phi, pi(v lambda))");
  detail::CheckCounter support("finite-support", "Delta(phi, pi) = 0 across different infinitesimal characters; values in {-1, 0, 1}");
  const auto corpus = enumerate_admissible(opt.bound(7), 13);
  bool injected = false;
  for (std::size_t li = 0; li < corpus.size(); ++li) {
    const auto& lambda = corpus[li];
    auto m = transfer_matrices(lambda);
    if (opt.inject_sign_error && !injected && lambda.rank() >= 1) {
      m.delta(0, 0) = -m.delta(0, 0);
      injected = true;
    }
    inversion.record(verify_spectral_inversion(m));

    auto bad = m;
    bad.delta(0, 0) = -bad.delta(0, 0);
    perturb.record(!verify_spectral_inversion(bad));

    for (std::size_t a = 0; a < m.phis.size(); ++a) {
      const auto kappa = split_bijection_inverse(m.phis[a]).kappa;
      const int base = delta_spectral(m.phis[a], m.members[0]);
      for (std::size_t b = 0; b < m.members.size(); ++b) {
        const int d = delta_spectral(m.phis[a], m.members[b]);
        const auto w = SignVector(kappa.size(), b);
        law.record(d != 0 && d == character_eval(kappa, w) * base);
      }
    }

    const auto& other = corpus[(li + 1) % corpus.size()];
    if (!(other == lambda)) {
      const auto other_members = packet(other).members;
      for (const auto& phi : m.phis)
        for (const auto& p : other_members) support.record(delta_spectral(phi, p) == 0);
    }
  }
  return {inversion.done(), perturb.done(), law.done(), support.done()};
}

inline std::vector<Check> suite_complex_case(const SuiteOptions& opt) {
  Rng rng(detail::suite_seed(opt.seed, 4));
  detail::CheckCounter invariance("orbit-invariance", "signed permutations of chi select the same packet");
  detail::CheckCounter identity("identity-matrix", "Delta(phi, pi) = [phi -> pi] is the identity on orbit representatives");
  detail::CheckCounter inversion("inversion", "sum_phi Delta(pi, phi) Delta(phi, pi1) = [pi = pi1]");
  const std::size_t nmax = std::max<std::size_t>(1, opt.bound(6));
  std::vector<std::vector<TorusCharacter>> samples(nmax + 1);
  for (std::size_t k = 0; k < opt.trials; ++k) {
    const std::size_t n = 1 + k % nmax;
    const auto chi = rng.torus_character(n);
    const auto w = rng.signed_permutation(n);
    invariance.record(complex_bijection(n, w.apply(chi)) == complex_bijection(n, chi));
    samples[n].push_back(w.apply(chi));
  }
  for (std::size_t n = 1; n <= nmax; ++n) {
    std::vector<TorusCharacter> phis;
    std::vector<ComplexOrbit> pis;
    std::set<ComplexOrbit> seen;
    for (const auto& phi : samples[n]) {
      const auto o = complex_bijection(n, phi);
      if (seen.insert(o).second) {
        phis.push_back(phi);
        pis.push_back(o);
      }
    }
    if (phis.empty()) continue;
    const auto m = complex_transfer_matrix(phis, pis);
    identity.record(m.is_identity());
    Matrix<int> mt(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) mt(j, i) = m(i, j);
    inversion.record((mt * m).is_identity() && (m * mt).is_identity());
  }
  return {invariance.done(), identity.done(), inversion.done()};
}

inline std::vector<Check> run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "elliptic-counts") return suite_elliptic_counts(opt);
  if (name == "z-twist") return suite_z_twist(opt);
  if (name == "symmetry") return suite_symmetry(opt);
  if (name == "cohomology") return suite_cohomology(opt);
  if (name == "kappa") return suite_kappa(opt);
  if (name == "geometric-inversion") return suite_geometric_inversion(opt);
  if (name == "packets") return suite_packets(opt);
  if (name == "bijection") return suite_bijection(opt);
  if (name == "spectral-inversion") return suite_spectral_inversion(opt);
  if (name == "complex-case") return suite_complex_case(opt);
  throw InputError("unknown suite '" + name + "'");
}

/// Runs one suite or "all"; check names are prefixed by their suite.
inline Report verify_report(const std::string& suite, const SuiteOptions& opt) {
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names = {suite};
  Report report;
  Json per_suite = Json::object();
  for (const auto& s : names) {
    bool ok = true;
    for (auto c : run_suite(s, opt)) {
      ok = ok && c.ok();
      c.name = s + "/" + c.name;
      report.checks.push_back(std::move(c));
    }
    per_suite[s] = ok ? "pass" : "fail";
  }
  report.data = {{"suites", per_suite},
                 {"seed", opt.seed},
                 {"trials", opt.trials},
                 {"max_n", opt.max_n ? Json(*opt.max_n) : Json(nullptr)}};
  return report;
}

}  // namespace mpendo
