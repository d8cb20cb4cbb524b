#pragma once

#include <optional>
#include <vector>

#include "lfunkit/arith.hpp"
#include "lfunkit/complexap.hpp"

namespace lfunkit {

// Generalized Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
// Bad-prime Euler data is an input: chi(p) = 1 at good primes, and the pairs
// (p, chi, ap) below override the count at the listed primes.
struct EllipticCurveQ {
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  struct BadPrime {
    u64 p;
    int chi;  // 0 or +-1
    i64 ap;
  };
  std::vector<BadPrime> bad;
  mpz_class discriminant() const;
};

i64 ec_ap_naive(const EllipticCurveQ& E, u64 p);
// a(1..nmax) by the Euler recursion a(p^k) = a(p)a(p^(k-1)) - chi(p) p a(p^(k-2))
// and multiplicativity
std::vector<i64> ec_an(const EllipticCurveQ& E, u64 nmax);
// CM curves y^2 = x^3 - n x: zero for p = 3 mod 4, else the four-branch
// closed form from p = u^2 + v^2, u = -1 mod 4
i64 ec_ap_cm(i64 n, u64 p);

// quasi-diagonal hypersurface sum_i a_i x_i^m - b prod_i x_i = 0 in P^(m-1)
struct HypersurfaceSpec {
  int m = 2;
  std::vector<i64> a;
  i64 b = 0;
};
struct QuasiDiagonalCount {
  mpz_class affine;
  mpz_class projective;
  bool used_brute = false;
};
QuasiDiagonalCount quasidiagonal_count(const HypersurfaceSpec& spec, u64 p);
mpz_class quasidiagonal_brute_affine(const HypersurfaceSpec& spec, u64 p);

// hypergeometric-motive traces for the two catalog entries
enum class HgmCatalog { gamma_4_m2, gamma_3_0_m1 };
i64 hgm_trace(HgmCatalog which, u64 p, i64 t);

// S(p;z) = sum_n omega^(-n)(z) J_5(n,n,n,n,n), four methods
enum class SMethod { naive, cyclovec, theta, gk };
mpz_class hypersurface_S(u64 p, i64 z, SMethod method);

// modular coefficient sources
struct EtaFactor {
  long m;
  long r;
};
std::vector<mpz_class> eta_product_coeffs(const std::vector<EtaFactor>& factors, long B);
std::vector<mpz_class> eta_power_coeffs(long m1, long r1, long m2, long r2, long B);
std::vector<mpz_class> theta_bqf_coeffs(long B);
std::vector<mpz_class> cubic_field_coeffs(long B);
std::vector<mpz_class> eta24_coeffs(long B);

mpq_class hurwitz_H(long N);
// Ramanujan tau via the Hurwitz-class-number trace formula (all primes)
mpz_class tau_trace_formula(u64 p);
// the compact odd-p form 28p^6 - ... - 128 sum t^6 (4t^4 - 9pt^2 + 7p^2) H3(p - t^2)
mpz_class tau_trace_formula_odd(u64 p);

}  // namespace lfunkit
