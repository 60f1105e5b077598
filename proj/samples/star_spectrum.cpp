// Eigenvalues of T_n(g_{r,s}) from the small B matrix, checked against a
// dense eigensolve of the full matrix.
//
//   star_spectrum [n r s bits]

#include <cstdlib>
#include <iostream>

#include "toeplitz_spectra.hpp"

using namespace toeplitz_spectra;

int main(int argc, char** argv) {
  const long n = argc > 1 ? std::atol(argv[1]) : 17;
  const long r = argc > 2 ? std::atol(argv[2]) : 2;
  const long s = argc > 3 ? std::atol(argv[3]) : 4;
  const Precision bits = argc > 4 ? std::atol(argv[4]) : 128;

  try {
    const ParamSet p = compute_params(n, r, s);
    std::cout << "n=" << n << " r=" << r << " s=" << s << "  omega=" << p.omega << "  zeros=" << p.n_zero << '\n';

    for (const ReducedBlock& blk : reduced_blocks(p)) {
      const IntMatrix b = construct_B(blk.order, blk.r, blk.s);
      std::cout << "B for order " << blk.order << " (x" << blk.multiplicity << "):\n" << b;
      std::cout << "  char poly " << char_poly(b).to_string() << '\n';
    }

    const Spectrum fast = full_spectrum_g(n, r, s, bits);
    const Spectrum dense = oracle_spectrum(n, r, s, bits);
    for (const MpComplex& z : fast.values) std::cout << "  " << z.real().to_string(20) << "  " << z.imag().to_string(20) << '\n';
    std::cout << "identity holds: " << std::boolalpha << verify_exact_identity(n, r, s).holds << '\n';
    std::cout << "max error vs dense (nonzero): " << spectral_error(fast, dense, true).to_string(6) << '\n';
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
