// Omega H_p(HD4(j/12); -1) against a_p(f2) a_p(f3) for the first few primes p = 1 mod M(j).
#include <iostream>

#include "hgm/charsum.hpp"
#include "hgm/qmodular.hpp"

int main() {
  using namespace hgm;
  for (int j : {1, 6, 9}) {
    const long long M = family_M(j);
    int shown = 0;
    for (auto p : nt::primes_one_mod(static_cast<nt::u64>(M), 5, 400)) {
      if (shown++ == 3) break;
      const auto rec = galois_point_check(j, static_cast<long long>(p));
      std::cout << "j=" << j << " p=" << p << "  lhs=" << rec.lhs << "  rhs=" << rec.rhs << "  " << to_string(rec.status)
                << "\n";
    }
  }
}
