#include "occ/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace occ {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// Series for the regularized lower gamma, valid (and fast) for x < t + 1.
double gamma_p_series(double t, double x) {
    double ap = t;
    double sum = 1.0 / t;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + t * std::log(x) - std::lgamma(t));
}

// Modified Lentz continued fraction for the regularized upper gamma Q(t, x),
// valid for x >= t + 1.
double gamma_q_cf(double t, double x) {
    double b = x + 1.0 - t;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - t);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + t * std::log(x) - std::lgamma(t));
}

}  // namespace

double regularized_gamma_p(double t, double x) {
    if (t <= 0.0) throw std::invalid_argument("regularized_gamma_p: t must be positive");
    if (x < 0.0) throw std::invalid_argument("regularized_gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < t + 1.0) return gamma_p_series(t, x);
    return 1.0 - gamma_q_cf(t, x);
}

double lower_incomplete_gamma(double t, double x) {
    if (t <= 0.0)
        throw std::invalid_argument(
            "lower_incomplete_gamma: t must be positive (gamma(0, x) diverges)");
    return regularized_gamma_p(t, x) * std::tgamma(t);
}

double binomial(long long m, long long r) {
    if (r < 0 || m < 0 || r > m) return 0.0;
    if (r > m - r) r = m - r;
    double v = 1.0;
    for (long long j = 1; j <= r; ++j)
        v *= static_cast<double>(m - r + j) / static_cast<double>(j);
    return v;
}

double log_binomial(long long m, long long r) {
    if (r < 0 || m < 0 || r > m) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(m) + 1.0) -
           std::lgamma(static_cast<double>(r) + 1.0) -
           std::lgamma(static_cast<double>(m - r) + 1.0);
}

double zeta_tail(double s, long long a) {
    if (s <= 1.0) throw std::invalid_argument("zeta_tail: s must exceed 1");
    if (a < 1) a = 1;
    // Sum directly up to a comfortable index, close with Euler-Maclaurin.
    long long cut = a < 32 ? 32 : a;
    double head = 0.0;
    for (long long k = a; k < cut; ++k) head += std::pow(static_cast<double>(k), -s);
    double x = static_cast<double>(cut);
    double inv = 1.0 / x;
    double xs = std::pow(x, -s);
    double tail = x * xs / (s - 1.0)              // integral term x^{1-s}/(s-1)
                  + 0.5 * xs                      // trapezoidal correction
                  + s * xs * inv / 12.0           // -B2/2! f'
                  - s * (s + 1.0) * (s + 2.0) * xs * inv * inv * inv / 720.0;
    return head + tail;
}

double riemann_zeta(double s) { return zeta_tail(s, 1); }

namespace {

double simpson_rule(const std::function<double(double)>& f, double a, double fa,
                    double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double fm,
                            double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_rule(f, a, fa, m, fm, flm);
    double right = simpson_rule(f, m, fm, b, fb, frm);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson_rule(f, a, fa, b, fb, fm);
    return adaptive_simpson_rec(f, a, fa, b, fb, fm, whole, tol, max_depth);
}

double power_tail_integral(double w, double beta, double n_pow, double h) {
    if (w <= 0.0) return 0.0;
    if (beta <= 0.0) throw std::invalid_argument("power_tail_integral: beta must be positive");
    // u = w t^{1/beta}:  int = (w^beta / beta) int_0^1 (1 - h w t^{1/beta})^N dt
    double scale = std::pow(w, beta) / beta;
    double inv_beta = 1.0 / beta;
    auto integrand = [&](double t) {
        double u = (t <= 0.0) ? 0.0 : w * std::pow(t, inv_beta);
        double z = h * u;
        if (z >= 1.0) return 0.0;
        return std::exp(n_pow * std::log1p(-z));
    };
    double val = adaptive_simpson(integrand, 0.0, 1.0, 1e-14);
    return scale * val;
}

}  // namespace occ
