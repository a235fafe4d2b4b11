#include "qtrio/params.hpp"

#include <sstream>

namespace qtrio {

namespace {

void req(const Rational& v, const std::string& name) {
  if (v.is_zero()) throw GenericityError(name);
}

std::string expo(const char* head, int m) {
  std::ostringstream os;
  os << head << m;
  return os.str();
}

}  // namespace

Rational heun_psi(const Rational& a, const Rational& b, const Rational& c,
                  const Rational& d, const Rational& q) {
  return q * (a + c) * (Rational(1) + b * d) + q * (b + c) * (a + d);
}

ParameterSet::ParameterSet(Rational q_, Rational alpha_, Rational beta_,
                           Rational delta_, Rational s_, int N_)
    : q(std::move(q_)),
      alpha(std::move(alpha_)),
      beta(std::move(beta_)),
      delta(std::move(delta_)),
      s(std::move(s_)),
      N(N_) {
  if (N < 1) throw ConfigError("ParameterSet: N must be >= 1");
  req(q, "q");
  req(alpha, "alpha");
  req(beta, "beta");
  req(delta, "delta");
  req(s, "s");
  req(Rational(1) - q, "1 - q");
  req(Rational(1) + q, "1 + q");

  gamma = pow_int(q, -(N + 1));
  sigma = Rational(-1) / s - q * s * alpha * beta;
  alphaT = alpha;
  betaT = beta;
  deltaT = alpha / (beta * delta);

  const Rational one(1);
  const Rational ab = alpha * beta;
  const Rational gd = gamma * delta;
  const Rational gdT = gamma * deltaT;  // alpha gamma / (beta delta)

  // A/B/C denominators for (alpha,beta,gamma,*) and omega scale 1 - ab q.
  for (int m = 0; m <= 2 * N + 2; ++m)
    req(one - ab * pow_int(q, m), expo("1 - alpha*beta*q^", m));
  // A/B/C denominators for the swapped families (gamma,delta,alpha,beta) and
  // (gamma,deltaT,alpha,beta); also make the V / Vt spectra multiplicity-free.
  for (int m = 0; m <= 2 * N + 2; ++m)
    req(one - gd * pow_int(q, m), expo("1 - gamma*delta*q^", m));
  for (int m = 0; m <= 2 * N + 2; ++m)
    req(one - gdT * pow_int(q, m), expo("1 - alpha*gamma*q^", m) + "/(beta*delta)");

  // nu_i: beta (s - q^i)(delta - alpha q^i) / ((1 - beta delta q^i)(1 - alpha beta s q^i)),
  // needed invertible for i = 1..N.
  for (int i = 1; i <= N; ++i) {
    req(s - pow_int(q, i), expo("s - q^", i));
    req(delta - alpha * pow_int(q, i), expo("delta - alpha*q^", i));
    req(one - beta * delta * pow_int(q, i), expo("1 - beta*delta*q^", i));
    req(one - ab * s * pow_int(q, i), expo("1 - alpha*beta*s*q^", i));
  }

  // Weight families Omega_{i;alpha,beta,gamma,d} for d in
  // {delta, alpha/(beta delta), alpha s, 1/(beta s)}.
  for (int j = 1; j <= N; ++j) {
    Rational qj = pow_int(q, j);
    req(one - qj, expo("1 - q^", j));
    req(one - ab * qj / gamma, expo("1 - alpha*beta*q^", j) + "/gamma");
    req(one - beta * qj, expo("1 - beta*q^", j));
    req(one - alpha * qj / delta, expo("1 - alpha*q^", j) + "/delta");
    req(one - alpha * qj / deltaT, expo("1 - beta*delta*q^", j));  // alpha q^j / deltaT = beta delta q^j
    req(one - qj / s, expo("1 - q^", j) + "/s");
    req(one - alpha * beta * s * qj, expo("1 - alpha*beta*s*q^", j));
    // Dual-side weights Omega_{.;gamma,delta,alpha,beta} and
    // Omega_{.;gamma,deltaT,alpha,beta}.
    req(one - gd * qj / alpha, expo("1 - gamma*delta*q^", j) + "/alpha");
    req(one - gamma * qj / beta, expo("1 - gamma*q^", j) + "/beta");
    req(one - delta * qj, expo("1 - delta*q^", j));
    req(one - gamma * qj / (beta * delta), expo("1 - gamma*q^", j) + "/(beta*delta)");
    req(one - deltaT * qj, expo("1 - alpha*q^", j) + "/(beta*delta)");
  }

  // M denominators: (1/delta;q)_N, (beta*delta/alpha;q)_N, (1/(alpha s);q)_N,
  // (alpha*beta*q^2;q)_N (covered above), (beta*delta*q;q)_N (covered above).
  for (int j = 0; j < N; ++j) {
    Rational qj = pow_int(q, j);
    req(one - qj / delta, expo("1 - q^", j) + "/delta");
    req(one - beta * delta * qj / alpha, expo("1 - beta*delta*q^", j) + "/alpha");
    req(one - qj / (alpha * s), expo("1 - q^", j) + "/(alpha*s)");
  }

  // GEVP coefficient dressings and the Wilson 10phi9 denominator ladders.
  for (int m = 1; m <= N + 2; ++m)
    req(one - alpha * gamma * s * pow_int(q, m), expo("1 - alpha*gamma*s*q^", m));
  for (int m = -1; m <= N + 1; ++m)
    req(alpha * s - delta * pow_int(q, m), expo("alpha*s - delta*q^", m));
  for (int m = 0; m <= N + 1; ++m)
    req(beta - gamma * pow_int(q, m), expo("beta - gamma*q^", m));
  for (int m = -N; m <= N; ++m)
    req(one - beta * delta * s * pow_int(q, m), expo("1 - beta*delta*s*q^", m));
  for (int m = -N; m <= N; ++m)
    req(one - (alpha * s / delta) * pow_int(q, m), expo("1 - alpha*s*q^", m) + "/delta");
  for (int j = 1; j <= N; ++j)
    req(one - alpha * pow_int(q, j), expo("1 - alpha*q^", j));

  // Heun weights: (1 - alpha beta s^2)(1 - alpha beta q^2 s^2) multiply V and
  // Vt; they sit in numerators, but sigma-related denominators need s*q != 0
  // only. Nothing further to scan here.

  // Nonvanishing conditions on the spectral combinations: for n = 0..N-1 and
  // x = 0..N, h3 lam_{n+1} + h4 lam_n != lamT_x, and the transposed variant.
  HeunConstants hc = HeunConstants::from(*this);
  for (int n = 0; n + 1 <= N; ++n) {
    Rational combo = hc.h3 * lambda_v(n + 1) + hc.h4 * lambda_v(n);
    for (int x = 0; x <= N; ++x)
      req(combo - lambda_vt(x),
          expo("(cond1) spectral combination at n=", n) + ", x=" + std::to_string(x));
  }
  for (int x = 0; x + 1 <= N; ++x) {
    Rational combo = hc.h8 * lambda_vt(x) + hc.h9 * lambda_vt(x + 1);
    for (int n = 0; n <= N; ++n)
      req(combo - lambda_v(n),
          expo("(cond2) spectral combination at x=", x) + ", n=" + std::to_string(n));
  }
}

Rational ParameterSet::zeta(int i) const {
  return (pow_int(q, -i) - Rational(1) / s) *
         (Rational(1) - alpha * beta * s * pow_int(q, i + 1));
}

Rational ParameterSet::nu(int i) const {
  Rational qi = pow_int(q, i);
  return beta * (s - qi) * (delta - alpha * qi) /
         ((Rational(1) - beta * delta * qi) * (Rational(1) - alpha * beta * s * qi));
}

Rational ParameterSet::lambda_v(int n) const { return qr_lambda(gamma * delta, q, n); }

Rational ParameterSet::lambda_vt(int x) const {
  return qr_lambda(gamma * deltaT, q, x);
}

std::map<std::string, std::string> ParameterSet::fingerprint() const {
  return {{"q", to_string(q)},       {"alpha", to_string(alpha)},
          {"beta", to_string(beta)}, {"delta", to_string(delta)},
          {"s", to_string(s)},       {"gamma", to_string(gamma)},
          {"sigma", to_string(sigma)}};
}

HeunConstants HeunConstants::from(const ParameterSet& ps) {
  const Rational one(1);
  const Rational& q = ps.q;
  const Rational &a = ps.alpha, &b = ps.beta, &d = ps.delta, &s = ps.s;
  HeunConstants hc;
  Rational q2 = q * q;
  Rational bds = b * d * s;

  hc.h34 = one / bds;
  hc.h43 = q * a * s / d;  // deltaT q / (delta h34)
  hc.h89 = q / hc.h34;     // q beta delta s
  hc.h98 = d * hc.h34 / ps.deltaT;  // delta / (alpha s)

  hc.h3 = (hc.h34 - q * hc.h43) / (one - q2);
  hc.h4 = (hc.h43 - q * hc.h34) / (one - q2);
  hc.h8 = (hc.h89 - q * hc.h98) / (one - q2);
  hc.h9 = (hc.h98 - q * hc.h89) / (one - q2);

  // h2 and h7 from the mu-parameterization with mu2 = s, mu7 = 1/(alpha beta s).
  Rational mu2 = s;
  Rational mu7 = one / (a * b * s);
  hc.h2 = -hc.h43 / mu2 - hc.h34 * a * b * mu2 - ps.sigma * (hc.h3 + hc.h4);
  hc.h7 = -hc.h98 / mu7 - hc.h89 * a * b * mu7 - ps.sigma * (hc.h8 + hc.h9);

  Rational psi_t = heun_psi(a, b, ps.gamma, ps.deltaT, q);
  Rational psi_p = heun_psi(a, b, ps.gamma, d, q);
  hc.h0 = psi_t - (one + q * s * s * a * b) / (b * d * s * (one + q)) * psi_p;
  hc.h5 = psi_p - d * (one + q * s * s * a * b) / (a * s * (one + q)) * psi_t;
  hc.h0T = psi_t - (q + s * s * a * b) / (b * d * s * (one + q)) * psi_p;
  hc.h5T = psi_p - d * (q + s * s * a * b) / (a * s * (one + q)) * psi_t;
  hc.rho = (one - q) * (one / s - a * b * s);

  Rational fac = (one - a * b * s * s) * (one - a * b * q2 * s * s);
  hc.cV = fac / (b * d * s * s * (one + q));
  hc.cVt = d * fac / (a * s * s * (one + q));
  Rational fac2 = (one - a * b * s * s) * (one - a * b * s * s);
  hc.cVshift = q * fac2 / (b * d * s * s * (one + q));
  hc.cVtshift = q * d * fac2 / (a * s * s * (one + q));
  return hc;
}

}  // namespace qtrio
