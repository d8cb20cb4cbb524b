#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lfunkit/charsums.hpp"
#include "lfunkit/mellin.hpp"
#include "lfunkit/pointcount.hpp"

namespace lfunkit {

// L-function description for the approximate functional equation
// Lambda(s) = omega conj(Lambda(k - conj s)), Lambda = gamma * L with the
// conductor absorbed into gp.f.
struct LFunctionSpec {
  std::function<Complex(long)> an;  // a(n), n >= 1, a(1) = 1
  GammaProduct gp;
  Real k = Real(1);
  Complex omega = Complex(1L);
  bool dual_conj = false;  // dual side uses conj(a(n))
  std::vector<std::pair<Complex, Complex>> poles;  // (s_j, residue of Lambda at s_j)
};

// Lavrik approximate functional equation:
// Lambda(s) = sum a(n) n^-s g(s, nA) + omega sum a*(n) n^-(k-s) g(k-s, n/A)
//           + sum_j R_j A^(s-s_j)/(s - s_j)
Complex lambda_eval(const LFunctionSpec& spec, const Complex& s, const Real& A = Real(1));
Complex lfun_L(const LFunctionSpec& spec, const Complex& s, const Real& A = Real(1));

// max |Lambda(s) - omega conj(Lambda(k - conj s))| over the samples and A's
Real fe_residual(const LFunctionSpec& spec, const std::vector<Complex>& samples,
                 const std::vector<Real>& As);

struct RootSolveOutcome {
  std::size_t best = 0;
  Real residual;
  std::vector<Real> residuals;  // per candidate, same order
};
RootSolveOutcome root_solve(const std::vector<LFunctionSpec>& candidates,
                            const std::vector<Complex>& samples, const std::vector<Real>& As);
// omega = Lambda_left(s0) / conj(Lambda_right(k - conj s0)) for unknown root numbers
Complex fit_root_number(const LFunctionSpec& spec, const Complex& s0, const Real& A = Real(1));

// ------------------------------------------------------------ Dirichlet L

// generalized Bernoulli number B_k(chi) = f^(k-1) sum_a chi(a) B_k(a/f),
// kept exact on the cyclotomic exponent basis of the character order
struct GenBernoulli {
  u64 order = 1;
  std::vector<mpq_class> coeffs;  // on zeta_order^j
  Complex value() const;
  Complex conj_value() const;
  bool is_rational() const;
  mpq_class rational() const;
};
GenBernoulli gen_bernoulli(const DirichletCharacter& chi, long k);

Complex dirichlet_root_number(const DirichletCharacter& chi);  // g(chi)/(i^e sqrt(N))
// L(chi, 1-k) = -B_k(chi)/k - [N=1][k=1]; for s >= 1 by the reflection display
Complex dirichlet_special_value(const DirichletCharacter& chi, long s);
// approximate functional equation with the free scaling parameter A
Complex dirichlet_L(const DirichletCharacter& chi, const Complex& s, const Real& A = Real(1));

// ------------------------------------------------------- zeros and explicit formula

struct ZetaZeros {
  std::vector<Real> ordinates;  // 0 < gamma <= T
  bool count_consistent = true;
};
ZetaZeros zeta_zeros(double T);

struct ExplicitFormulaResult {
  Real lhs, rhs, difference;
};
// Gaussian test function F(x) = e^(-x^2), zeta instance of the explicit formula
ExplicitFormulaResult explicit_formula_check(double T = 60.0);

// ------------------------------------------------------------------- demos

struct BsdDemo {
  Real S;
  Real f100;
  std::vector<i64> a;
};
BsdDemo demo_bsd();

struct BlochDemo {
  u64 conductor = 0;
  Complex omega;
  Real ratio;        // N L(E(u),2)/g(u)
  mpq_class F;       // recognized rational (when recognized)
  bool recognized = false;
  Real fit_residual;
};
BlochDemo demo_bloch(long u);

struct MahlerDemo {
  Real lhs, rhs;
};
MahlerDemo demo_mahler();

}  // namespace lfunkit
