#include <doctest.h>

#include "lfunkit/charsums.hpp"
#include "test_util.hpp"

using namespace lfunkit;
using namespace lfunkit::test;

TEST_CASE("character basics: multiplicativity, period, zero off units") {
  for (u64 N : {12ULL, 15ULL, 16ULL, 45ULL, 23ULL, 40ULL}) {
    auto chars = all_characters(N);
    CHECK(chars.size() >= 1);
    for (auto& chi : chars) {
      for (i64 x = -3; x <= 12; ++x)
        for (i64 y = 1; y <= 11; ++y) {
          Complex lhs = chi.value(x * y);
          Complex rhs = chi.value(x) * chi.value(y);
          CHECK(abs(lhs - rhs) < pow10(-30));
        }
      for (i64 x = 0; x < static_cast<i64>(N); ++x) {
        CHECK(abs(chi.value(x + static_cast<i64>(N)) - chi.value(x)) < pow10(-35));
        bool unit = gcd_u64(static_cast<u64>(x), N) == 1;
        CHECK(chi.value(x).is_zero() == !unit);
      }
    }
  }
}

TEST_CASE("conductor and primitive part") {
  // trivial mod 12 -> conductor 1
  CHECK(trivial_character(12).conductor() == 1);
  // Legendre mod 5 lifted to 15 -> conductor 5, values match on units
  {
    DirichletCharacter leg15 = kronecker_character(5);  // (5/.) mod 5
    CHECK(leg15.modulus == 5);
    auto chars = all_characters(15);
    for (auto& chi : chars) {
      bool matches = true;
      for (i64 x = 1; x <= 15; ++x) {
        if (gcd_u64(static_cast<u64>(x), 15) != 1) continue;
        if (abs(chi.value(x) - leg15.value(x)) > pow10(-30)) {
          matches = false;
          break;
        }
      }
      if (matches) {
        auto [f, psi] = conductor_and_primitive_part(chi);
        CHECK(f == 5);
        CHECK(psi.is_primitive());
        for (i64 x = 1; x <= 5; ++x)
          if (x % 5 != 0) CHECK(abs(psi.value(x) - leg15.value(x)) < pow10(-30));
      }
    }
  }
  // any primitive chi mod 9: minimality scan over divisors
  for (auto& chi : all_characters(9)) {
    u64 f = chi.conductor();
    u64 minimal = 9;
    for (u64 d : {1ULL, 3ULL}) {
      bool factors = true;
      for (i64 x = 1; x < 9 && factors; ++x)
        for (i64 y = 1; y < 9 && factors; ++y) {
          if (gcd_u64(static_cast<u64>(x), 9) != 1 || gcd_u64(static_cast<u64>(y), 9) != 1)
            continue;
          if ((x - y) % static_cast<i64>(d) == 0)
            if (abs(chi.value(x) - chi.value(y)) > pow10(-30)) factors = false;
        }
      if (factors) {
        minimal = d;
        break;
      }
    }
    CHECK(f == minimal);
    if (f == 9) CHECK(chi.is_primitive());
  }
}

TEST_CASE("split character") {
  {
    auto [c3, c5] = split_character(trivial_character(15), 3, 5);
    CHECK(c3.is_trivial());
    CHECK(c5.is_trivial());
  }
  {
    DirichletCharacter chi = kronecker_character(-15);
    auto [c3, c5] = split_character(chi, 3, 5);
    for (i64 x = 1; x <= 15; ++x) {
      if (gcd_u64(static_cast<u64>(x), 15) != 1) continue;
      CHECK(abs(chi.value(x) - c3.value(x) * c5.value(x)) < pow10(-30));
    }
    CHECK(c3.is_primitive());
    CHECK(c5.is_primitive());
  }
  for (auto& chi : all_characters(45)) {
    if (!chi.is_primitive()) continue;
    auto [c9, c5] = split_character(chi, 9, 5);
    CHECK(c9.is_primitive());
    CHECK(c5.is_primitive());
  }
}

TEST_CASE("gauss sums: naive over F_p and the eps conventions") {
  FieldContext ctx = make_field(11);
  build_log_table_full(ctx);
  CHECK_CLOSE(gauss_sum_naive_fp(ctx, 0, 1), Complex(Real(-1)), 30);
  CHECK_CLOSE(gauss_sum_naive_fp(ctx, 0, 0), Complex(Real(10)), 30);
  FieldContext c5 = make_field(5);
  build_log_table_full(c5);
  CHECK_CLOSE(gauss_sum_naive_fp(c5, 2, 1), Complex(sqrt(Real(5))), 30);
  // g(chi^-1) = chi(-1) conj(g(chi)) for all chi mod p <= 61
  for (u64 p : {7ULL, 13ULL, 31ULL, 61ULL}) {
    FieldContext c = make_field(p);
    build_log_table_full(c);
    for (u64 n = 0; n < p - 1; ++n) {
      Complex lhs = gauss_sum_naive_fp(c, (p - 1 - n) % (p - 1));
      Complex rhs = conj(gauss_sum_naive_fp(c, n));
      if (n % 2 == 1) rhs = -rhs;  // chi(-1) = (-1)^n
      CHECK(abs(lhs - rhs) < pow10(-28));
    }
    // g(rho)^2 = (-1)^((p-1)/2) p
    Complex grho = gauss_sum_naive_fp(c, (p - 1) / 2);
    Real expect = (p % 4 == 1) ? Real(static_cast<long>(p)) : -Real(static_cast<long>(p));
    CHECK(abs(grho * grho - Complex(expect)) < pow10(-27));
  }
}

TEST_CASE("gauss sums: g(chi,a) twist and primitive vanishing, N <= 60") {
  for (u64 N : {5ULL, 12ULL, 21ULL, 40ULL, 60ULL}) {
    for (auto& chi : all_characters(N)) {
      if (!chi.is_primitive()) continue;
      Complex g1 = gauss_sum_naive(chi);
      for (i64 a = 0; a < static_cast<i64>(N); ++a) {
        Complex ga = gauss_sum_naive(chi, a);
        Complex expect = conj(chi.value(a)) * g1;
        CHECK(abs(ga - expect) < pow10(-28));
      }
    }
  }
}

TEST_CASE("theta method matches naive on primes") {
  for (u64 p : {5ULL, 7ULL, 13ULL, 41ULL}) {
    for (auto& chi : all_characters(p)) {
      if (chi.is_trivial()) continue;
      Complex t = gauss_sum_theta(chi);
      Complex n = gauss_sum_naive(chi);
      CHECK(abs(t - n) < pow10(-30));
    }
  }
  for (auto& chi : all_characters(13)) {
    if (chi.order() == 4) {
      Complex t = gauss_sum_theta(chi);
      CHECK(abs(abs(t) - sqrt(Real(13))) < pow10(-30));
    }
  }
}

TEST_CASE("Odoni closed form vs naive for prime powers") {
  // g(chi mod 4) = 2i (= sqrt(-4)); the odd character is the only primitive one
  for (auto& chi : all_characters(4))
    if (chi.is_primitive()) CHECK_CLOSE(gauss_sum_odoni(chi), Complex(Real(0), Real(2)), 30);
  for (auto& chi : all_characters(8)) {
    if (!chi.is_primitive()) continue;
    Complex g = gauss_sum_odoni(chi);
    if (chi.parity() == 0)
      CHECK_CLOSE(g, Complex(2 * sqrt(Real(2))), 30);
    else
      CHECK_CLOSE(g, Complex(Real(0), 2 * sqrt(Real(2))), 30);
  }
  for (u64 q : {9ULL, 27ULL, 81ULL, 25ULL, 125ULL, 49ULL, 16ULL, 32ULL, 64ULL}) {
    for (auto& chi : all_characters(q)) {
      if (!chi.is_primitive()) continue;
      Complex o = gauss_sum_odoni(chi);
      Complex n = gauss_sum_naive(chi);
      CHECK(abs(o - n) < pow10(-30));
    }
  }
}

TEST_CASE("gauss dispatcher: split recombination and |g| = sqrt(N)") {
  for (u64 N = 1; N <= 200; ++N) {
    for (auto& chi : all_characters(N)) {
      if (!chi.is_primitive()) continue;
      Complex g = gauss_sum(chi);
      CHECK(abs(abs(g) * abs(g) - Real(static_cast<long>(N))) < pow10(-30));
      if (N <= 60) CHECK(abs(g - gauss_sum_naive(chi)) < pow10(-28));
    }
  }
  CHECK_CLOSE(gauss_sum(trivial_character(1)), Complex(Real(1)), 30);
  // forced theta path on a prime above the threshold
  for (auto& chi : all_characters(811)) {
    if (chi.order() != 2) continue;
    Complex g = gauss_sum(chi, 400);
    CHECK(abs(g - gauss_sum_naive(chi)) < pow10(-28));
    break;
  }
}

TEST_CASE("jacobi sums: naive conventions") {
  FieldContext ctx = make_field(11);
  build_log_table_full(ctx);
  // J_k(all-eps) = q^(k-1): q for k = 2 (the "J(eps,eps) = q^2" one-liner in
  // the background text squares it)
  auto Jee = jacobi_sum_naive(ctx, {0, 0});
  CHECK_CLOSE(Jee.value, Complex(Real(11)), 28);
  CHECK_CLOSE(jacobi_sum_naive(ctx, {0, 0, 0}).value, Complex(Real(121)), 26);
  auto Je = jacobi_sum_naive(ctx, {3, 0});
  CHECK(abs(Je.value) < pow10(-28));
  CHECK_CLOSE(jacobi_sum_naive(ctx, {4}).value, Complex(Real(1)), 28);
  // a = 0 branch: J_k(0) = chi_k(-1)(q-1) J_(k-1) when the product is trivial
  auto J0 = jacobi_sum_naive(ctx, {3, 7}, 0);
  auto J1 = jacobi_sum_naive(ctx, {3});
  Complex expect = Complex(Real(7 % 2 == 0 ? 1 : -1)) * Complex(Real(10)) * J1.value;
  CHECK(abs(J0.value - expect) < pow10(-26));
}

TEST_CASE("jacobi dispatcher vs naive") {
  FieldContext ctx = make_field(11);
  build_log_table_full(ctx);
  auto naive = jacobi_sum_naive(ctx, {1, 1, 1, 1, 1});
  Complex disp = jacobi_sum(ctx, {1, 1, 1, 1, 1});
  CHECK(abs(naive.value - disp) < pow10(-26));
  CHECK_CLOSE(jacobi_sum(ctx, {0, 0, 0}), Complex(Real(121)), 26);
  CHECK(abs(jacobi_sum(ctx, {0, 4, 0})) < pow10(-26));
  for (u64 p : {7ULL, 13ULL}) {
    FieldContext c = make_field(p);
    build_log_table_full(c);
    for (u64 a = 1; a < p - 1; ++a) {
      Complex lhs = jacobi_sum(c, {a, p - 1 - a});
      Complex rhs = jacobi_sum_naive(c, {a, p - 1 - a}).value;
      CHECK(abs(lhs - rhs) < pow10(-26));
    }
  }
}

TEST_CASE("jacobi reciprocity: J_k(inv) J_k = q^(k-1-delta)") {
  for (u64 p : {11ULL, 31ULL}) {
    FieldContext ctx = make_field(p);
    build_log_table_full(ctx);
    std::vector<std::vector<u64>> cases = {{1, 2}, {1, 1, 2}, {2, 3, 4, 5}, {1, 1, 1, 1}};
    for (auto& ns : cases) {
      std::vector<u64> inv;
      u64 total = 0;
      for (u64 n : ns) {
        u64 m = n % (p - 1);
        inv.push_back((p - 1 - m) % (p - 1));
        total = (total + m) % (p - 1);
      }
      int delta = total == 0 ? 1 : 0;
      Complex lhs = jacobi_sum_naive(ctx, ns).value * jacobi_sum_naive(ctx, inv).value;
      mpz_class qk;
      mpz_ui_pow_ui(qk.get_mpz_t(), p, static_cast<unsigned long>(ns.size()) - 1 - delta);
      CHECK(abs(lhs - Complex(Real(mpz_class(qk)))) < pow10(-22));
    }
  }
}

TEST_CASE("orthogonality at p <= 31") {
  for (u64 p : {7ULL, 31ULL}) {
    FieldContext ctx = make_field(p);
    build_log_table_full(ctx);
    std::vector<Complex> zq(p - 1);
    for (u64 k = 0; k + 1 < p; ++k)
      zq[k] = unit_root(static_cast<long>(k), static_cast<long>(p - 1));
    for (u64 n1 = 0; n1 < p - 1; ++n1)
      for (u64 n2 = 0; n2 < p - 1; ++n2) {
        if (n1 == n2) continue;
        Complex acc(0L);
        for (u64 x = 1; x < p; ++x) {
          u64 e = (mulmod(n1, ctx.full_log[x], p - 1) +
                   mulmod((p - 1 - n2) % (p - 1), ctx.full_log[x], p - 1)) %
                  (p - 1);
          acc += zq[e];
        }
        CHECK(abs(acc) < pow10(-25));
      }
    for (u64 x = 2; x < p; ++x) {
      Complex acc(0L);
      for (u64 n = 0; n < p - 1; ++n) acc += zq[mulmod(n, ctx.full_log[x], p - 1)];
      CHECK(abs(acc) < pow10(-25));
    }
  }
}

TEST_CASE("jacobi small order exact") {
  {
    auto J = jacobi_small_order_exact(13, 4);
    CHECK(J.a == 3);  // 3 = -1 mod 4; J(chi,chi) = 3 +- 2i by the naive sum
    CHECK((J.b == 2 || J.b == -2));
    CHECK(J.a * J.a + J.b * J.b == 13);
  }
  {
    auto J = jacobi_small_order_exact(5, 4);
    CHECK(J.a == -1);  // -1 = 3 mod 4
    CHECK((J.b == 2 || J.b == -2));
  }
  {
    auto J = jacobi_small_order_exact(7, 3);
    CHECK(J.a * J.a - J.a * J.b + J.b * J.b == 7);
    CHECK(J.b % 3 == 0);
    CHECK(((J.a % 3) + 3) % 3 == 2);
  }
  for (u64 p : {13ULL, 61ULL, 73ULL}) {
    FieldContext ctx = make_field(p);
    build_log_table_full(ctx);
    for (int ord : {3, 4}) {
      if ((p - 1) % static_cast<u64>(ord) != 0) continue;
      auto J = jacobi_small_order_exact(p, ord);
      u64 n = (p - 1) / static_cast<u64>(ord);
      Complex ref = jacobi_sum_naive(ctx, {n, n}).value;
      Complex cand = ord == 4 ? Complex(Real(J.a), Real(J.b))
                              : Complex(Real(J.a)) + Complex(Real(J.b)) * unit_root(1, 3);
      CHECK(abs(ref - cand) < pow10(-25));
    }
  }
}

TEST_CASE("Hasse-Davenport product relation") {
  struct Case {
    u64 p, n, m;
  };
  for (auto c : {Case{13, 1, 2}, Case{13, 3, 2}, Case{7, 1, 3}, Case{13, 1, 4}, Case{5, 0, 2}}) {
    FieldContext ctx = make_field(c.p);
    build_log_table_full(ctx);
    auto [lhs, rhs] = hasse_davenport_product(ctx, c.n, c.m);
    CHECK(abs(lhs - rhs) < pow10(-30));
  }
  // duplication-lemma instance: g(chi) g(chi rho) = chi^-1(4) g(rho) g(chi^2), p = 13
  {
    FieldContext ctx = make_field(13);
    build_log_table_full(ctx);
    for (u64 n = 1; n < 12; ++n) {
      if (n == 6) continue;  // chi = rho
      Complex lhs = gauss_sum_naive_fp(ctx, n) * gauss_sum_naive_fp(ctx, n + 6);
      u64 l4 = ctx.full_log[4];
      Complex chi4inv = unit_root(-static_cast<long>(mulmod(n, l4, 12)), 12);
      Complex rhs = chi4inv * gauss_sum_naive_fp(ctx, 6) * gauss_sum_naive_fp(ctx, 2 * n % 12);
      CHECK(abs(lhs - rhs) < pow10(-30));
    }
  }
}

TEST_CASE("kloosterman sums") {
  Real expect = 10 * cos(4 * const_pi() / 25);
  CHECK_CLOSE(kloosterman(1, 1, 25), expect, 30);
  CHECK_CLOSE(kloosterman_naive(1, 1, 25), expect, 30);
  CHECK_CLOSE(kloosterman(1, 1, 2), Real(1), 30);
  CHECK_CLOSE(kloosterman(1, 1, 49), kloosterman_naive(1, 1, 49), 30);
  for (u64 N : {15ULL, 27ULL, 45ULL, 98ULL, 121ULL, 75ULL}) {
    for (i64 m : {1LL, 2LL}) {
      for (i64 n : {1LL, 3LL, 5LL}) {
        CHECK(abs(kloosterman(m, n, N) - kloosterman_naive(m, n, N)) < pow10(-28));
      }
    }
  }
}
