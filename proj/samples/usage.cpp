// Small tour of the library: packets over one infinitesimal character and
// the spectral transfer matrix between the packet and its elliptic parameters.

#include <iostream>

#include "mpendo/realspectral.hpp"

int main() {
  using namespace mpendo;
  const auto lambda = normal_form({HalfInt::parse("3/2"), HalfInt::parse("3/2"), HalfInt::parse("1/2")});

  const auto sp = singletons_and_pairs(lambda);
  std::cout << "singletons: " << sp.singletons.size() << ", pairs: " << sp.pairs.size() << "\n";

  const auto m = transfer_matrices(lambda);
  for (std::size_t a = 0; a < m.phis.size(); ++a) {
    const auto& phi = m.phis[a];
    std::cout << "phi (" << phi.datum.n_prime << "," << phi.datum.n_dprime << "):";
    for (std::size_t b = 0; b < m.members.size(); ++b) std::cout << " " << m.delta(a, b).to_string();
    std::cout << "\n";
  }
  std::cout << "inversion holds: " << std::boolalpha << verify_spectral_inversion(m) << "\n";
}
