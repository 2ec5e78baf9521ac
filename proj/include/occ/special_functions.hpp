#pragma once

#include <functional>

namespace occ {

// Lower incomplete gamma gamma(t, x) = int_0^x u^{t-1} e^{-u} du, t > 0, x >= 0.
// Series expansion for x < t + 1, continued fraction for the upper tail
// otherwise. Relative accuracy ~1e-14.
double lower_incomplete_gamma(double t, double x);

// Regularized P(t, x) = gamma(t, x) / Gamma(t).
double regularized_gamma_p(double t, double x);

// Binomial coefficient as a double. Exact products for small r, stable for
// m up to ~1e6 with r <= ~60; relative error O(r * eps).
double binomial(long long m, long long r);

// log C(m, r) via lgamma; defined for 0 <= r <= m.
double log_binomial(long long m, long long r);

// Riemann zeta tail sum_{k >= a} k^{-s} for s > 1, a >= 1 (integer a).
// Direct summation up to a small index plus an Euler-Maclaurin closure.
double zeta_tail(double s, long long a);

// zeta(s) = zeta_tail(s, 1), s > 1.
double riemann_zeta(double s);

// Adaptive Simpson quadrature of f on [a, b] with absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 60);

// int_0^w u^{beta-1} (1 - h u)^N du for beta > 0, 0 <= h*w < 1, N >= 0.
// The endpoint singularity at 0 is removed by the substitution
// u = w t^{1/beta}; the remaining integrand is smooth on [0, 1].
double power_tail_integral(double w, double beta, double n_pow, double h);

}  // namespace occ
