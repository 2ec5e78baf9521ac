#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "occ/report.hpp"

namespace occ {

// Row-stochastic kernel of an ergodic finite chain. Construction validates
// stochasticity (rows sum to 1 within 1e-12), irreducibility (strong
// connectivity of the positive-entry digraph, entries > 1e-15 counting as
// positive) and aperiodicity (gcd of cycle lengths 1, by BFS labeling).
// Immutable after construction and safe to share across threads.
class TransitionMatrix {
public:
    explicit TransitionMatrix(Eigen::MatrixXd rows);

    int size() const { return static_cast<int>(q_.rows()); }
    double operator()(int a, int b) const { return q_(a, b); }
    const Eigen::MatrixXd& matrix() const { return q_; }

private:
    Eigen::MatrixXd q_;
};

// Minorization data of an ergodic chain: the smallest t0 with Q^{t0} > 0
// entrywise, the minimal entries ell / ell_hat of Q^{t0} and of the reversed
// kernel's t0-step operator, and lambda = S * min(ell, ell_hat) so that
// Q^{t0}(a, .) >= lambda * uniform.
struct ChainConstants {
    Eigen::VectorXd pi;
    double pi_min = 0.0;
    int t0 = 0;
    double ell = 0.0;
    double ell_hat = 0.0;
    double lambda = 0.0;
};

struct ChainPath {
    std::vector<int> states;  // X_1..X_N as 0-based state indices
    std::uint64_t seed = 0;
    Eigen::VectorXd initial_law;
};

struct LocalTimes {
    std::vector<long long> per_state;  // L_n(a) for every a
    long long l_n = 0;                 // L_n = L_n(X_{n+1})
};

// Unique solution of pi Q = pi, sum pi = 1, by dense linear algebra.
Eigen::VectorXd stationary_distribution(const TransitionMatrix& q);

// Time reversal Q_hat(x, y) = pi(y) Q(y, x) / pi(x). `pi` must be the
// stationary law of q (checked within 1e-12).
TransitionMatrix reverse_chain(const TransitionMatrix& q, const Eigen::VectorXd& pi);

// Computes pi and the minorization constants. t0 defaults to the smallest
// valid value; a positive t0_override uses that step count instead (it is
// validated the same way). The search is capped at t0 <= S^2.
ChainConstants minorization_constants(const TransitionMatrix& q, int t0_override = 0);

// Deterministic simulation: the path is a pure function of
// (q, mu, n, seed, stream).
ChainPath simulate_path(const TransitionMatrix& q, const Eigen::VectorXd& mu,
                        long long n, std::uint64_t seed, std::uint64_t stream = 0);

// L_n(a) for all a over X_1..X_n, plus L_n = L_n(X_{n+1}).
// Requires path length >= n + 1.
LocalTimes local_times(const ChainPath& path, long long n);

// Glynn-Ormoneit bound exp(-(n/2) (lambda gamma / t0 - 2/n)^2) on the
// deviation P{ |L_n(a) - n pi_a| >= n gamma }, one-sided, any initial law.
// Requires n > 2 t0 / (lambda gamma); throws ThresholdError below that.
double concentration_bound(long long n, double gamma, const ChainConstants& c);

// Exponential bound on P_mu{L_n <= r} with C = min(S, max_a mu_a / pi_a).
// Requires n > (2 t0 + r lambda + lambda (1 - pi_min)) / (lambda pi_min).
BoundReport finite_chain_bound(long long n, long long r, const ChainConstants& c,
                               const Eigen::VectorXd& mu);

// Both sides of the reversal identity
//   E_mu[(eta/pi)(X_{n+1}) f(L_n)] = E_eta[(mu/pi)(X^_{n+1}) f(L^_{n+1}(X^_1)-1)]
// by exhaustive enumeration over S^{n+1} paths (capped at 2e7 terms).
// f is tabulated on {0..n}.
std::pair<double, double> reversal_identity(const TransitionMatrix& q,
                                            const Eigen::VectorXd& mu,
                                            const Eigen::VectorXd& eta,
                                            const std::vector<double>& f,
                                            long long n);

// Validates a probability vector of the given size (entries in [0,1],
// total 1 within 1e-12); throws std::invalid_argument otherwise.
void check_probability_vector(const Eigen::VectorXd& v, int size, const char* what);

}  // namespace occ
