#pragma once

#include <vector>

#include "lfunkit/complexap.hpp"
#include "lfunkit/contfrac.hpp"
#include "lfunkit/gammaproduct.hpp"

namespace lfunkit {

// gamma(s) itself (throws GammaPole at the poles)
Complex gamma_product_value(const GammaProduct& gp, const Complex& s);

// Inverse Mellin transform W with int_0^oo t^s W(t) dt/t = gamma(s).
// Small t: residue series over the poles of gamma(s), with order-r Laurent
// data per pole producing log^k(t) terms. Large t: asymptotic leading term
// times the Dokchitser continued fraction.
class InverseMellin {
 public:
  struct Pole {
    long s0;
    int order;
    // residue of t^(-s) gamma(s) at s0 equals
    // t^(-s0) sum_k laurent[k] (-log t)^(order-1-k)/(order-1-k)!
    // laurent[k] = [eps^k] of the regularized product eps^order gamma(s0+eps)
    std::vector<Real> laurent;
  };

  explicit InverseMellin(GammaProduct gp);

  const GammaProduct& gp() const { return gp_; }
  Real series(const Real& t) const;      // residue series (auto-elevated precision)
  Real asymptotic(const Real& t) const;  // leading term * CF
  Real eval(const Real& t) const;        // dispatch on the crossover
  Real crossover() const { return tstar_; }
  // pole list in descending s0 order, grown on demand; laurent data carries
  // `extra` coefficients past the residue order (merged-pole evaluations)
  const std::vector<Pole>& poles(std::size_t count, int extra = 0) const;

 private:
  GammaProduct gp_;
  Real C_, B_;  // asymptotic constants
  MellinAsymptotic asym_;
  Real tstar_;
  mutable std::vector<Pole> poles_;
  mutable long built_digits_ = 0;
  mutable int built_extra_ = 0;
};

Real w_series(const GammaProduct& gp, const Real& t);
Real w_eval(const GammaProduct& gp, const Real& t);

// incomplete gamma product gamma(s, x) = int_x^oo t^s W(t) dt/t, one (gp, s),
// many x (the AFE workload); s may sit on a pole of gamma (the z = s residue
// then merges with that pole's contribution)
class IncGammaProduct {
 public:
  IncGammaProduct(GammaProduct gp, Complex s);
  Complex operator()(const Real& x) const;
  Complex small_x(const Real& x) const;
  Complex large_x(const Real& x) const;

 private:
  GammaProduct gp_;
  Complex s_;
  Complex gamma_s_;
  bool s_on_pole_ = false;
  long pole_s0_ = 0;
  InverseMellin im_;
  Complex alpha_;  // d(s+B)/2
  EulerCF cf_;     // CF of the incomplete-product asymptotic series
  Real ystar_;
};

Complex incgamma_product(const GammaProduct& gp, const Complex& s, const Real& x);

// truncated vertical-line integral oracle with an explicit tail bound
struct ContourResult {
  Complex value;
  Real tail_bound;
};
ContourResult contour_verify(const GammaProduct& gp, const Complex& s, const Real& x,
                             const Real& sigma, const Real& T);

}  // namespace lfunkit
