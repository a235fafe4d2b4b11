#pragma once

#include <map>
#include <string>

#include "qtrio/errors.hpp"
#include "qtrio/qracah.hpp"
#include "qtrio/scalar.hpp"

namespace qtrio {

/// Free parameters (q, alpha, beta, delta, s, N) of the trio realization,
/// with the derived quantities gamma = q^{-N-1}, sigma = -1/s - q s alpha beta
/// and the tilde family (alphaT, betaT, deltaT) = (alpha, beta, alpha/(beta delta)).
///
/// Construction walks the full list of denominator factors used anywhere
/// downstream (recurrence/difference coefficients for both parameter
/// families, normalization nu_i, weights and orthogonality constants, the
/// GEVP coefficient dressings, and the nonvanishing conditions on the
/// spectral combinations) and throws GenericityError naming the first factor
/// that vanishes.
struct ParameterSet {
  Rational q, alpha, beta, delta, s;
  int N = 0;
  Rational gamma, sigma, alphaT, betaT, deltaT;

  ParameterSet(Rational q_, Rational alpha_, Rational beta_, Rational delta_,
               Rational s_, int N_);

  Rational zeta(int i) const;               // Z eigenvalue on z_i
  Rational nu(int i) const;                 // off-diagonal normalization
  Rational lambda_v(int n) const;           // lambda(n; gamma delta)
  Rational lambda_vt(int x) const;          // lambda(x; alpha gamma/(beta delta))

  std::map<std::string, std::string> fingerprint() const;
};

/// Heun coefficients of the realization: the four constant terms, the shift
/// rho, the q-commutator weights (h2..h4 for the VZ side, h7..h9 for the ZV
/// side), and the psi helper.
struct HeunConstants {
  Rational h0, h5, h0T, h5T, rho;
  Rational h2, h3, h4, h7, h8, h9;
  Rational h34, h43, h89, h98;  // h_{n,m} = h_n + q h_m
  Rational cV, cVt, cVshift, cVtshift;  // weights of V / Vt in the four relations

  static HeunConstants from(const ParameterSet& ps);
};

/// psi(a, b, c, d) = q (a + c)(1 + b d) + q (b + c)(a + d).
Rational heun_psi(const Rational& a, const Rational& b, const Rational& c,
                  const Rational& d, const Rational& q);

}  // namespace qtrio
