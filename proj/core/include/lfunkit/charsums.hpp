#pragma once

#include <optional>
#include <vector>

#include "lfunkit/arith.hpp"
#include "lfunkit/complexap.hpp"

namespace lfunkit {

// Character of (Z/NZ)* as an exponent vector on a fixed generator basis:
// one generator per odd prime-power factor, and <-1, 5> at 2^a for a >= 3.
// Values are exact roots of unity; embedding into Complex happens only at
// evaluation boundaries.
struct DirichletCharacter {
  struct Component {
    u64 q;                           // p^a
    u64 p;
    int a;
    std::vector<u64> gens;           // generators lifted to their own modulus q
    std::vector<u64> orders;
    std::vector<u64> exponents;      // chi(gen_i) = e(exponents_i / orders_i)
    std::vector<std::uint32_t> dlog;  // dlog[x] in the cyclic case (odd p), index mod q
    std::vector<std::uint32_t> dlog5;  // p=2, a>=3: exponent of 5 for x = +-5^k
    std::vector<std::uint8_t> sign2;   // p=2, a>=3: 1 if x = -5^k
  };
  u64 modulus = 1;
  std::vector<Component> comps;
  u64 group_exponent = 1;  // lcm of generator orders

  u64 order() const;
  int parity() const;  // e with chi(-1) = (-1)^e
  bool is_primitive() const { return conductor() == modulus; }
  u64 conductor() const;

  // chi(x) as exact exponent: returns false when gcd(x,N) > 1 (value 0),
  // else sets num/den with chi(x) = e(num/den), den = group_exponent.
  bool value_exponent(i64 x, u64& num, u64& den) const;
  Complex value(i64 x) const;
  bool is_trivial() const;
};

DirichletCharacter trivial_character(u64 N);
// character from exponent vector, one entry per basis generator in component
// order (odd prime powers ascending, then -1 and 5 at the 2-part)
DirichletCharacter character_from_exponents(u64 N, const std::vector<u64>& exps);
std::vector<DirichletCharacter> all_characters(u64 N);
DirichletCharacter kronecker_character(i64 D);  // (D/.), D a fundamental discriminant
DirichletCharacter mul(const DirichletCharacter& a, const DirichletCharacter& b);
DirichletCharacter inverse(const DirichletCharacter& a);

// conductor f and the primitive character mod f inducing chi
std::pair<u64, DirichletCharacter> conductor_and_primitive_part(const DirichletCharacter& chi);
// chi mod N1*N2 (coprime) = chi1 * chi2 with chi1(x) = chi(x u2 N2 + u1 N1)
std::pair<DirichletCharacter, DirichletCharacter> split_character(const DirichletCharacter& chi,
                                                                  u64 N1, u64 N2);

// Multiplicative character omega^n of F_p*, omega(g) = zeta_(p-1).
// Convention: eps(0) = 1 and chi(0) = 0 for chi != eps.
struct MultCharFp {
  const FieldContext* ctx;
  u64 n;
  bool is_trivial() const { return n % (ctx->p - 1) == 0; }
};

struct ThetaDegenerate : std::runtime_error {
  ThetaDegenerate() : std::runtime_error("theta method: denominator vanishes for all t tried") {}
};

// --- Gauss sums ---
Complex gauss_sum_naive(const DirichletCharacter& chi, i64 a = 1);
Complex gauss_sum_naive_fp(const FieldContext& ctx, u64 n, i64 a = 1);
// theta-series ratio at t=1 (retries t=11/10, 9/10); chi primitive mod prime p
Complex gauss_sum_theta(const DirichletCharacter& chi);
Complex gauss_sum_theta_fp(const FieldContext& ctx, u64 n);
// closed form for primitive chi mod p^a, a >= 2
Complex gauss_sum_odoni(const DirichletCharacter& chi);
// dispatcher: split into prime-power parts, Odoni for a >= 2, theta for large
// prime, naive otherwise; imprimitive input falls back to the naive sum
Complex gauss_sum(const DirichletCharacter& chi, u64 theta_threshold = 400);
Complex gauss_sum_fp(const FieldContext& ctx, u64 n, u64 theta_threshold = 400);

// --- Jacobi sums over F_p ---
struct JacobiExact {
  std::vector<mpz_class> cyclo;  // coefficients on zeta_(p-1)^j
  Complex value;
};
JacobiExact jacobi_sum_naive(const FieldContext& ctx, const std::vector<u64>& ns, i64 a = 1);
// dispatch on the trivial-character count, recursive J2 chain otherwise
Complex jacobi_sum(const FieldContext& ctx, const std::vector<u64>& ns,
                   u64 theta_threshold = 400);

// J(chi,chi) for chi of order 3 or 4, exact (a, b) with J = a + b*zeta;
// zeta = zeta_4 = i or zeta = zeta_3. Cornacchia plus congruence
// normalization; the residual sign of b is fixed by one 15-digit theta value.
struct JacobiSmallOrder {
  long a, b;
  int order;  // 3 or 4
};
JacobiSmallOrder jacobi_small_order_exact(u64 p, int order);

// Hasse-Davenport product relation at f=1: returns (lhs, rhs)
std::pair<Complex, Complex> hasse_davenport_product(const FieldContext& ctx, u64 n_chi, u64 m);

// --- Kloosterman sums ---
Real kloosterman_naive(i64 m, i64 n, u64 N);
// CRT + (m,n)->(1,mn) reductions, then Salie's closed form at odd p^a (a>=2)
Real kloosterman(i64 m, i64 n, u64 N);

}  // namespace lfunkit
