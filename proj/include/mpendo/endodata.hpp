#pragma once

// Endoscopic data of the metaplectic group Mp(2n): elliptic data (n', n''),
// Levi data (I, (n_i), n_flat), the embedding parameters s = (I', I'') with
// their attached elliptic data, and the eigenvalue-level correspondence of
// semisimple stable classes (with the -1 twist on the '' side).

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mpendo/exactalg.hpp"

namespace mpendo {

struct EndoDatum {
  std::size_t n_prime = 0;
  std::size_t n_dprime = 0;

  std::size_t rank() const { return n_prime + n_dprime; }
  EndoDatum swapped() const { return {n_dprime, n_prime}; }
  auto operator<=>(const EndoDatum&) const = default;
};

/// The n+1 elliptic data (n', n - n') in increasing n'. (n', n'') and
/// (n'', n') are distinct data.
inline std::vector<EndoDatum> enumerate_elliptic(std::size_t n) {
  std::vector<EndoDatum> out;
  out.reserve(n + 1);
  for (std::size_t np = 0; np <= n; ++np) out.push_back({np, n - np});
  return out;
}

/// Coefficient |Z(dual of G^!)|^{-1} weighting the datum.
inline Rational iota(const EndoDatum& d) {
  if (d.rank() == 0) return Rational(1);
  if (d.n_prime == 0 || d.n_dprime == 0) return Rational(1, 2);
  return Rational(1, 4);
}

// ---------------------------------------------------------------------------
// Levi data

/// Levi subgroup prod_{i in I} GL(n_i) x Sp(2 n_flat). Blocks are kept weakly
/// decreasing; conjugate Levi data have equal representatives.
struct LeviDatum {
  std::vector<std::size_t> gl_blocks;
  std::size_t flat_rank = 0;

  LeviDatum() = default;
  LeviDatum(std::vector<std::size_t> blocks, std::size_t flat) : gl_blocks(std::move(blocks)), flat_rank(flat) {
    for (auto b : gl_blocks)
      if (b == 0) throw InputError("GL block sizes must be positive");
    std::sort(gl_blocks.begin(), gl_blocks.end(), std::greater<>());
  }

  std::size_t index_count() const { return gl_blocks.size(); }
  std::size_t rank() const {
    std::size_t s = flat_rank;
    for (auto b : gl_blocks) s += b;
    return s;
  }
  bool operator==(const LeviDatum&) const = default;
};

namespace detail {

// Partitions of k with parts <= max_part, largest parts first (reverse lex).
inline void partitions_rev_lex(std::size_t k, std::size_t max_part, std::vector<std::size_t>& prefix,
                               std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t p = std::min(k, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_rev_lex(k - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// One representative per conjugacy class of Levi subgroups: ordered by
/// flat rank descending, then blocks in reverse lexicographic order.
inline std::vector<LeviDatum> enumerate_levi(std::size_t n) {
  std::vector<LeviDatum> out;
  for (std::size_t flat = n + 1; flat-- > 0;) {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> prefix;
    detail::partitions_rev_lex(n - flat, n - flat, prefix, parts);
    for (auto& p : parts) out.emplace_back(std::move(p), flat);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedding parameters s = (I', I'')

/// Ordered decomposition I = I' ⊔ I'' of the block index set {0, ..., |I|-1}.
struct EmbeddingParam {
  std::vector<std::size_t> i_prime;
  std::vector<std::size_t> i_dprime;

  /// Bit i of the mask set means i ∈ I''.
  static EmbeddingParam from_mask(std::size_t index_count, std::uint64_t dprime_mask) {
    EmbeddingParam s;
    for (std::size_t i = 0; i < index_count; ++i) ((dprime_mask >> i) & 1U ? s.i_dprime : s.i_prime).push_back(i);
    return s;
  }

  std::size_t index_count() const { return i_prime.size() + i_dprime.size(); }
  bool in_dprime(std::size_t i) const { return std::binary_search(i_dprime.begin(), i_dprime.end(), i); }
  bool operator==(const EmbeddingParam&) const = default;
};

inline void validate(const EmbeddingParam& s, std::size_t index_count) {
  std::vector<std::size_t> all = s.i_prime;
  all.insert(all.end(), s.i_dprime.begin(), s.i_dprime.end());
  std::sort(all.begin(), all.end());
  bool ok = all.size() == index_count;
  for (std::size_t i = 0; ok && i < all.size(); ++i) ok = all[i] == i;
  if (!ok || !std::is_sorted(s.i_prime.begin(), s.i_prime.end()) ||
      !std::is_sorted(s.i_dprime.begin(), s.i_dprime.end()))
    throw InputError("embedding parameter is not an ordered decomposition of the index set");
}

struct Embedding {
  EmbeddingParam s;
  EndoDatum attached;
};

/// All 2^{|I|} parameters s for the elliptic datum (m', m'') of the Levi,
/// with attached (n', n'') = (m' + sum_{I'} n_i, m'' + sum_{I''} n_i).
inline std::vector<Embedding> enumerate_embeddings(const LeviDatum& levi, std::size_t m_prime,
                                                   std::size_t m_dprime) {
  if (m_prime + m_dprime != levi.flat_rank) throw InputError("m' + m'' must equal the flat rank of the Levi datum");
  const auto k = levi.index_count();
  if (k > 24) throw InputError("too many GL blocks");
  std::vector<Embedding> out;
  out.reserve(std::size_t{1} << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Embedding e{EmbeddingParam::from_mask(k, mask), {m_prime, m_dprime}};
    for (auto i : e.s.i_prime) e.attached.n_prime += levi.gl_blocks[i];
    for (auto i : e.s.i_dprime) e.attached.n_dprime += levi.gl_blocks[i];
    out.push_back(std::move(e));
  }
  return out;
}

/// z[s]: +1 on I', -1 on I''.
inline SignVector central_twist(const EmbeddingParam& s) {
  std::uint64_t mask = 0;
  for (auto i : s.i_dprime) mask |= std::uint64_t{1} << i;
  return SignVector(s.index_count(), mask);
}

// ---------------------------------------------------------------------------
// Stable classes as eigenvalue multisets

/// Canonical representative of {e, 1/e}: the one with |e| >= 1.
inline Rational canonical_pair_rep(const Rational& e) {
  if (e.is_zero()) throw InputError("eigenvalues must be nonzero");
  const bool large = (e.num() < 0 ? -e.num() : e.num()) >= e.den();
  return large ? e : e.inverse();
}

/// Multiset of eigenvalue pairs {e, 1/e}, one canonical rational per pair,
/// sorted ascending. For SO(2m+1) the fixed eigenvalue 1 is implicit.
template <class Tag>
class StableClass {
 public:
  StableClass() = default;
  explicit StableClass(std::vector<Rational> eigen) : eigen_(std::move(eigen)) {
    for (auto& e : eigen_) e = canonical_pair_rep(e);
    std::sort(eigen_.begin(), eigen_.end());
  }
  StableClass(std::initializer_list<Rational> eigen) : StableClass(std::vector<Rational>(eigen)) {}

  std::size_t rank() const { return eigen_.size(); }
  const std::vector<Rational>& eigen() const { return eigen_; }

  /// Multiply every eigenvalue by -1.
  StableClass negated() const {
    std::vector<Rational> out;
    out.reserve(eigen_.size());
    for (const auto& e : eigen_) out.push_back(-e);
    return StableClass(std::move(out));
  }

  bool operator==(const StableClass&) const = default;

 private:
  std::vector<Rational> eigen_;
};

struct SOTag;
struct SpTag;
using StableClassSO = StableClass<SOTag>;
using StableClassSp = StableClass<SpTag>;

/// δ with eigenvalues {a'} ∪ {-a''}.
inline StableClassSp correspond(const StableClassSO& gamma_prime, const StableClassSO& gamma_dprime,
                                const EndoDatum& datum) {
  if (gamma_prime.rank() != datum.n_prime || gamma_dprime.rank() != datum.n_dprime)
    throw InputError("class ranks do not match the endoscopic datum");
  std::vector<Rational> out = gamma_prime.eigen();
  for (const auto& e : gamma_dprime.eigen()) out.push_back(-e);
  return StableClassSp(std::move(out));
}

/// 2n pairwise distinct eigenvalues {e, 1/e}: no entry is ±1 and no two
/// canonical entries coincide.
inline bool is_regular(const StableClassSp& delta) {
  const auto& e = delta.eigen();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i].abs() == Rational(1)) return false;
    if (i > 0 && e[i] == e[i - 1]) return false;
  }
  return true;
}

/// The image δ is regular.
inline bool is_G_regular(const StableClassSO& gamma_prime, const StableClassSO& gamma_dprime,
                         const EndoDatum& datum) {
  return is_regular(correspond(gamma_prime, gamma_dprime, datum));
}

struct SymmetryWitness {
  StableClassSp delta;           // correspond(γ', γ'', (n', n''))
  StableClassSp swapped;         // correspond(γ'', γ', (n'', n'))
  bool pass = false;             // -δ == swapped
};

inline SymmetryWitness symmetry_swap(const StableClassSO& gamma_prime, const StableClassSO& gamma_dprime,
                                     const EndoDatum& datum) {
  SymmetryWitness w;
  w.delta = correspond(gamma_prime, gamma_dprime, datum);
  w.swapped = correspond(gamma_dprime, gamma_prime, datum.swapped());
  w.pass = w.delta.negated() == w.swapped;
  return w;
}

// ---------------------------------------------------------------------------
// Classes of M^! = prod GL(n_i) x SO(2m'+1) x SO(2m''+1) and the two routes to G

/// A semisimple stable class of M^!: GL eigenvalue multisets per block
/// (sorted), plus the two odd orthogonal factors.
struct LeviEndoClass {
  std::vector<std::vector<Rational>> gl;
  StableClassSO flat_prime;
  StableClassSO flat_dprime;

  LeviEndoClass() = default;
  LeviEndoClass(std::vector<std::vector<Rational>> blocks, StableClassSO fp, StableClassSO fd)
      : gl(std::move(blocks)), flat_prime(std::move(fp)), flat_dprime(std::move(fd)) {
    for (auto& b : gl) {
      for (const auto& e : b)
        if (e.is_zero()) throw InputError("GL eigenvalues must be nonzero");
      std::sort(b.begin(), b.end());
    }
  }

  bool operator==(const LeviEndoClass&) const = default;
};

/// Translation by a central sign element acting on the GL blocks.
inline LeviEndoClass apply_twist(const SignVector& z, const LeviEndoClass& t) {
  if (z.size() != t.gl.size()) throw InputError("twist length does not match the number of GL blocks");
  auto blocks = t.gl;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (z.at(i) == -1)
      for (auto& e : blocks[i]) e = -e;
  return LeviEndoClass(std::move(blocks), t.flat_prime, t.flat_dprime);
}

enum class MuRoute { via_endoscopic_group, via_levi };

/// μ₁ (M^! → G[s] → G) or μ₂ (M^! → M → G).
inline StableClassSp mu_route(const LeviEndoClass& gamma, const LeviDatum& levi, const EmbeddingParam& s,
                              MuRoute route) {
  if (gamma.gl.size() != levi.index_count()) throw InputError("number of GL blocks does not match the Levi datum");
  for (std::size_t i = 0; i < gamma.gl.size(); ++i)
    if (gamma.gl[i].size() != levi.gl_blocks[i]) throw InputError("GL block " + std::to_string(i) + " has wrong size");
  if (gamma.flat_prime.rank() + gamma.flat_dprime.rank() != levi.flat_rank)
    throw InputError("flat part ranks do not match the Levi datum");
  validate(s, levi.index_count());

  if (route == MuRoute::via_endoscopic_group) {
    std::vector<Rational> gp = gamma.flat_prime.eigen();
    std::vector<Rational> gd = gamma.flat_dprime.eigen();
    for (auto i : s.i_prime) gp.insert(gp.end(), gamma.gl[i].begin(), gamma.gl[i].end());
    for (auto i : s.i_dprime) gd.insert(gd.end(), gamma.gl[i].begin(), gamma.gl[i].end());
    const StableClassSO cp(std::move(gp));
    const StableClassSO cd(std::move(gd));
    return correspond(cp, cd, {cp.rank(), cd.rank()});
  }

  const auto flat = correspond(gamma.flat_prime, gamma.flat_dprime,
                               {gamma.flat_prime.rank(), gamma.flat_dprime.rank()});
  std::vector<Rational> out = flat.eigen();
  for (const auto& b : gamma.gl) out.insert(out.end(), b.begin(), b.end());
  return StableClassSp(std::move(out));
}

}  // namespace mpendo
