// Period values by quadrature and by the 3F2(1) series, and one Fricke-split L-value.
#include <iostream>

#include "hgm/lnum.hpp"

int main() {
  using namespace hgm;
  for (auto [r, s] : {std::pair{rat(1, 4), rat(3, 4)}, std::pair{rat(1, 6), rat(5, 6)}, std::pair{rat(1, 3), rat(7, 6)}}) {
    const auto P = p_value<Real>(r, s);
    std::cout << "P(" << to_string(r) << "," << to_string(s) << ")\n  quadrature " << decimal(P.quadrature, 40)
              << "\n  series     " << decimal(P.series, 40) << "\n";
  }
  // eta(4 tau)^2 eta(8 tau)^2 is the weight-2 newform of level 32
  const auto L = lvalue_eta<Real>(parse_eta_spec("4^2,8^2"), 32, 1);
  std::cout << "L(f32, 1) = " << decimal(L.value.re, 40) << "\n";
}
