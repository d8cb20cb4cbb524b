#include <doctest.h>

#include "lfunkit/arith.hpp"
#include "lfunkit/contfrac.hpp"
#include "lfunkit/numcore.hpp"
#include "test_util.hpp"

using namespace lfunkit;
using namespace lfunkit::test;

TEST_CASE("qd: exp series and geometric series") {
  auto cexp = [](long n) { return Complex(Real(1) / Real(factorial_mpz(n))); };
  ContFracB cf = qd(cexp, 12);
  CHECK_CLOSE(cf.b[0], Complex(Real(1)), 30);
  CHECK_CLOSE(cf.b[1], Complex(Real(mpq_class(-1, 2))), 30);
  CHECK_CLOSE(cf.b[2], Complex(Real(mpq_class(1, 6))), 30);
  // Pade property: evaluation error at small z decays like z^(depth+1)
  for (long depth : {4L, 8L, 12L}) {
    Real z("0.01");
    Complex approx = eval_cf(cf, Complex(z), depth);
    Real err = abs(approx - Complex(exp(z)));
    CHECK(err < pow(z, depth) * 10);
  }
  auto cgeo = [](long) { return Complex(Real(1)); };
  ContFracB g = qd(cgeo, 8);
  CHECK_CLOSE(g.b[0], Complex(Real(1)), 30);
  CHECK_CLOSE(g.b[1], Complex(Real(-1)), 30);
  for (std::size_t i = 2; i < g.b.size(); ++i) CHECK(abs(g.b[i]) < pow10(-25));
  CHECK_CLOSE(eval_cf(g, Complex(Real(mpq_class(1, 3)))), Complex(Real(mpq_class(3, 2))), 30);
}

TEST_CASE("euler form agrees with b form") {
  auto cexp = [](long n) { return Complex(Real(1) / Real(factorial_mpz(n))); };
  ContFracB cf = qd(cexp, 24);
  EulerCF e = to_euler(cf);
  for (const char* zs : {"0.1", "1", "2"}) {
    Complex z{Real(zs)};
    Complex a = eval_cf(cf, z);
    Complex b = eval_euler(e, z);
    CHECK(abs(a - b) < pow10(-30));
    CHECK(abs(a - Complex(exp(Real(zs)))) < pow10(-18));
  }
  {
    ContFracB t;
    t.b = {Complex(Real(1)), Complex(0L), Complex(0L)};
    EulerCF te = to_euler(t);
    Complex z(Real("0.3"));
    CHECK(abs(eval_cf(t, z) - eval_euler(te, z)) < pow10(-35));
  }
  {
    ContFracB t;
    long seed = 37;
    for (int i = 0; i < 12; ++i) {
      seed = (seed * 137 + 41) % 1000;
      t.b.push_back(Complex(Real(seed - 500) / Real(700)));
    }
    EulerCF te = to_euler(t);
    for (int i = 1; i <= 5; ++i) {
      Complex z(Real(i) / Real(40));
      CHECK(abs(eval_cf(t, z) - eval_euler(te, z)) < pow10(-(working_digits() - 4)));
    }
  }
}

TEST_CASE("eval_cf depth semantics and gauge") {
  ContFracB cf;
  cf.b = {Complex(Real(1)), Complex(Real(-1))};
  CHECK_CLOSE(eval_cf(cf, Complex(Real(5)), 0), Complex(Real(1)), 33);
  Real gauge;
  auto cexp = [](long n) { return Complex(Real(1) / Real(factorial_mpz(n))); };
  ContFracB e = qd(cexp, 16);
  Complex v = eval_cf(e, Complex(Real(1)), 16, &gauge);
  CHECK(abs(v - Complex(exp(Real(1)))) < gauge * 100 + pow10(-25));
}

TEST_CASE("incomplete gamma continued fraction") {
  CHECK(abs(incgamma_cf(Complex(Real(1)), Real(25)) - Complex(exp(Real(-25)))) <
        pow10(-45));
  Real x(30);
  CHECK(abs(incgamma_cf(Complex(Real(3)), x) -
            Complex(exp(-x) * (x * x + 2 * x + 2))) < pow10(-40));
  {
    Real ref, half("0.5"), xx(50);
    mpfr_gamma_inc(ref.raw(), half.raw(), xx.raw(), MPFR_RNDN);
    CHECK(abs(incgamma_cf(Complex(half), xx).re - ref) < pow10(-55));
  }
  // QD of the asymptotic series of Gamma(s,x) x^(1-s) e^x at s = 1/2 vs the CF
  {
    Complex s(Real(mpq_class(1, 2)));
    auto c = [&](long n) {
      Complex prod(1L);
      for (long l = 1; l <= n; ++l) prod *= s - Complex(Real(l));
      return prod;
    };
    EulerCF cf = cf_of_series(c, 40);
    Real xx(30);
    Complex series_val = eval_euler(cf, Complex(Real(1) / xx));
    Complex expect = incgamma_cf(s, xx) * Complex(exp(xx)) *
                     exp((Complex(Real(1)) - s) * Complex(log(xx)));
    CHECK(abs(series_val - expect) < pow10(-25));
  }
}

TEST_CASE("gauss rule from moments: Lebesgue on [0,1]") {
  GaussRule rule = gauss_from_moments([](long k) { return Real(1) / Real(k + 1); }, 2);
  REQUIRE(rule.nodes.size() == 2);
  Real lo = min(rule.nodes[0], rule.nodes[1]);
  Real hi = max(rule.nodes[0], rule.nodes[1]);
  Real half("0.5");
  Real off = Real(1) / (2 * sqrt(Real(3)));
  CHECK_CLOSE(lo, half - off, 30);
  CHECK_CLOSE(hi, half + off, 30);
  CHECK_CLOSE(rule.weights[0], half, 30);
  CHECK_CLOSE(rule.weights[1], half, 30);
  for (auto& w : rule.weights) CHECK(w > Real(0));
  for (auto& x : rule.nodes) {
    CHECK(x > Real(0));
    CHECK(x < Real(1));
  }
}

TEST_CASE("monien rule n = 2: paper digits and exactness") {
  GaussRule rule = monien_rule(2);
  REQUIRE(rule.nodes.size() == 2);
  Real y1 = min(rule.nodes[0], rule.nodes[1]);
  Real y2 = max(rule.nodes[0], rule.nodes[1]);
  CHECK(abs(y1 - Real("1.0228086266")) < pow10(-9));
  CHECK(abs(y2 - Real("4.371082834")) < pow10(-8));
  Real w1 = rule.nodes[0] < rule.nodes[1] ? rule.weights[0] : rule.weights[1];
  Real w2 = rule.nodes[0] < rule.nodes[1] ? rule.weights[1] : rule.weights[0];
  CHECK(abs(w1 - Real("1.15343168")) < pow10(-7));
  CHECK(abs(w2 - Real("10.3627543")) < pow10(-6));
  for (long k = 2; k <= 5; ++k) {
    Real got = w1 * pow(y1, -k) + w2 * pow(y2, -k);
    CHECK(abs(got - zeta_int(k)) < pow10(-12));
  }
}

TEST_CASE("monien summation") {
  CHECK(abs(monien_sum([](const Real& y) { return Real(1) / (y * y); }, 20) -
            zeta_int(2)) < pow10(-20));
  Real direct(0);
  {
    PrecisionGuard g(50);
    for (long n = 1; n <= 4000; ++n) direct += Real(1) / (pow(Real(n), 3L) + 1);
    Real tail(0);
    for (long n = 4001; n <= 400000; ++n) tail += Real(1) / pow(Real(n), 3L);
    direct += tail;
  }
  Real m = monien_sum([](const Real& y) { return Real(1) / (pow(y, 3L) + 1); }, 40);
  CHECK(abs(m - direct) < Real("1e-10"));
}

TEST_CASE("mellin asymptotics: rational Psi coefficients") {
  {
    GammaProduct gp;
    gp.shifts = {0};
    MellinAsymptotic a = mellin_cf_build(gp, 12);
    CHECK(a.psi[0] == 1);
    for (std::size_t i = 1; i < a.psi.size(); ++i) CHECK(a.psi[i] == 0);
  }
  {
    GammaProduct gp;
    gp.shifts = {0, 1};
    MellinAsymptotic a = mellin_cf_build(gp, 12);
    CHECK(a.psi[0] == 1);
    for (std::size_t i = 1; i < a.psi.size(); ++i) CHECK(a.psi[i] == 0);
    CHECK(a.B == 0);
  }
  {
    GammaProduct gp;
    gp.shifts = {0, 0};
    MellinAsymptotic a = mellin_cf_build(gp, 8);
    // W = 4 K0(2 pi t): K'_1 = -1/8, B = -1/2
    CHECK(a.psi[1] == mpq_class(-1, 8));
    CHECK(a.B == mpq_class(-1, 2));
  }
}
