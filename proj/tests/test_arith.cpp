#include <doctest.h>

#include "lfunkit/arith.hpp"

using namespace lfunkit;

TEST_CASE("primitive roots: smallest generator with exact order") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(2) == 1);
  CHECK(primitive_root(23) == 5);
  // exhaustive order check across small primes
  for (u64 p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 23ULL, 101ULL, 9973ULL}) {
    u64 g = primitive_root(p);
    auto fs = factor(p - 1);
    for (auto& [q, e] : fs) {
      (void)e;
      CHECK(powmod(g, (p - 1) / q, p) != 1);
    }
    CHECK(powmod(g, p - 1, p) == 1);
    // smallest: no smaller h works
    for (u64 h = 2; h < g; ++h) {
      bool gen = true;
      for (auto& [q, e] : fs) {
        (void)e;
        if (powmod(h, (p - 1) / q, p) == 1) {
          gen = false;
          break;
        }
      }
      CHECK(!gen);
    }
  }
}

TEST_CASE("log tables: power iteration round trip") {
  FieldContext ctx = make_field(7);
  build_log_table_full(ctx);
  CHECK(ctx.full_log[3] == 1);
  CHECK(ctx.full_log[2] == 2);
  CHECK(ctx.full_log[6] == 3);
  CHECK(ctx.full_log[1] == 0);

  FieldContext c23 = make_field(23);
  build_log_table_bounded(c23, 4);
  CHECK(c23.bound == 4);
  for (u64 x = 1; x <= 4; ++x) CHECK(powmod(c23.g, c23.bounded_log[x], 23) == x);

  // random round trips through BSGS on a mid-size prime
  FieldContext big = make_field(100003);
  u64 x = 1;
  for (int i = 0; i < 1000; ++i) {
    x = (x * 2718281 + 31337) % 100003;
    if (x == 0) continue;
    CHECK(powmod(big.g, big.log(x), big.p) == x);
  }
}

TEST_CASE("log table memory budget") {
  FieldContext ctx = make_field(100003);
  CHECK_THROWS_AS(build_log_table_full(ctx, 1000), std::length_error);
}

TEST_CASE("sqrt(-d) mod p") {
  CHECK(*sqrt_minus_d_mod_p(1, 13) == 8);  // 8^2 = 64 = -1 mod 13
  CHECK(*sqrt_minus_d_mod_p(1, 5) == 3);
  CHECK(!sqrt_minus_d_mod_p(1, 7));  // 7 = 3 mod 4
  for (u64 p : {13ULL, 17ULL, 29ULL, 1000033ULL}) {
    u64 x = *sqrt_minus_d_mod_p(1, p);
    CHECK(mulmod(x, x, p) == p - 1);
    CHECK(x > p / 2);
  }
}

TEST_CASE("cornacchia") {
  auto r = cornacchia(1, 13);
  REQUIRE(r.has_value());
  CHECK(r->first * r->first + r->second * r->second == 13);
  CHECK(!cornacchia(1, 3).has_value());
  auto s = cornacchia(27, 31);
  REQUIRE(s.has_value());
  CHECK(s->first == 2);
  CHECK(s->second == 1);
  // p = 1 mod 4 iff representable, p <= 10^4
  for (u64 p : sieve_primes(10000).primes) {
    if (p == 2) continue;
    auto t = cornacchia(1, p);
    CHECK(t.has_value() == (p % 4 == 1));
    if (t) CHECK(t->first * t->first + t->second * t->second == p);
  }
}

TEST_CASE("prime sieve matches trial division") {
  PrimeSieve s = sieve_primes(2000);
  for (u64 n = 2; n <= 2000; ++n) {
    bool isp = is_prime(n);
    bool insieve = std::binary_search(s.primes.begin(), s.primes.end(), n);
    CHECK(isp == insieve);
  }
}

TEST_CASE("crt") {
  mpz_class r = crt(2, 5, 3, 7);
  CHECK(r % 5 == 2);
  CHECK(r % 7 == 3);
}
