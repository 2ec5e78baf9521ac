#include "occ/markov.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "occ/errors.hpp"
#include "occ/rng.hpp"

namespace occ {

namespace {

constexpr double kTol = 1e-12;
constexpr double kPositive = 1e-15;  // entries above this count as positive
constexpr double kEnumerationCap = 2e7;

std::vector<std::vector<int>> positive_digraph(const Eigen::MatrixXd& q, bool transpose) {
    int s = static_cast<int>(q.rows());
    std::vector<std::vector<int>> adj(s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
            if (q(a, b) > kPositive) adj[transpose ? b : a].push_back(transpose ? a : b);
    return adj;
}

bool all_reachable(const std::vector<std::vector<int>>& adj, int from) {
    std::vector<char> seen(adj.size(), 0);
    std::queue<int> bfs;
    bfs.push(from);
    seen[from] = 1;
    std::size_t count = 1;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                bfs.push(v);
            }
    }
    return count == adj.size();
}

// gcd of cycle lengths via BFS levels; valid on a strongly connected digraph.
int cycle_gcd(const std::vector<std::vector<int>>& adj) {
    std::vector<long long> level(adj.size(), -1);
    std::queue<int> bfs;
    bfs.push(0);
    level[0] = 0;
    long long g = 0;
    while (!bfs.empty()) {
        int u = bfs.front();
        bfs.pop();
        for (int v : adj[u]) {
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                bfs.push(v);
            } else {
                g = std::gcd(g, std::llabs(level[u] + 1 - level[v]));
            }
        }
    }
    return static_cast<int>(g == 0 ? 1 : g);
}

}  // namespace

void check_probability_vector(const Eigen::VectorXd& v, int size, const char* what) {
    if (static_cast<int>(v.size()) != size)
        throw std::invalid_argument(std::string(what) + ": wrong dimension");
    double sum = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (v(i) < 0.0 || v(i) > 1.0)
            throw std::invalid_argument(std::string(what) + ": entries must lie in [0, 1]");
        sum += v(i);
    }
    if (std::fabs(sum - 1.0) > kTol)
        throw std::invalid_argument(std::string(what) + ": entries must sum to 1 within 1e-12");
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd rows) : q_(std::move(rows)) {
    if (q_.rows() != q_.cols() || q_.rows() < 1)
        throw ChainStructureError("shape", "transition matrix must be square and nonempty");
    for (int a = 0; a < q_.rows(); ++a) {
        double sum = 0.0;
        for (int b = 0; b < q_.cols(); ++b) {
            if (q_(a, b) < 0.0 || q_(a, b) > 1.0)
                throw ChainStructureError("stochasticity",
                                          "transition probabilities must lie in [0, 1]");
            sum += q_(a, b);
        }
        if (std::fabs(sum - 1.0) > kTol)
            throw ChainStructureError("stochasticity",
                                      "row " + std::to_string(a) + " does not sum to 1");
    }
    auto fwd = positive_digraph(q_, false);
    auto bwd = positive_digraph(q_, true);
    if (!all_reachable(fwd, 0) || !all_reachable(bwd, 0))
        throw ChainStructureError("reducible", "chain is reducible");
    if (cycle_gcd(fwd) != 1)
        throw ChainStructureError("periodic", "chain is periodic");
}

Eigen::VectorXd stationary_distribution(const TransitionMatrix& q) {
    int s = q.size();
    if (s == 1) return Eigen::VectorXd::Ones(1);
    // (Q^T - I) pi = 0 with the last equation replaced by sum pi = 1.
    Eigen::MatrixXd m = q.matrix().transpose() - Eigen::MatrixXd::Identity(s, s);
    m.row(s - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s);
    rhs(s - 1) = 1.0;
    Eigen::VectorXd pi = m.fullPivLu().solve(rhs);
    Eigen::VectorXd residual = q.matrix().transpose() * pi - pi;
    if (residual.lpNorm<Eigen::Infinity>() > kTol || pi.minCoeff() <= 0.0)
        throw ChainStructureError("stationary",
                                  "failed to solve for a positive stationary law");
    return pi;
}

TransitionMatrix reverse_chain(const TransitionMatrix& q, const Eigen::VectorXd& pi) {
    int s = q.size();
    check_probability_vector(pi, s, "pi");
    if (pi.minCoeff() <= 0.0)
        throw std::invalid_argument("pi: stationary law must be strictly positive");
    if ((q.matrix().transpose() * pi - pi).lpNorm<Eigen::Infinity>() > kTol)
        throw std::invalid_argument("pi is not stationary for Q");
    Eigen::MatrixXd qh(s, s);
    for (int x = 0; x < s; ++x)
        for (int y = 0; y < s; ++y) qh(x, y) = pi(y) * q(y, x) / pi(x);
    return TransitionMatrix(qh);
}

ChainConstants minorization_constants(const TransitionMatrix& q, int t0_override) {
    int s = q.size();
    ChainConstants c;
    c.pi = stationary_distribution(q);
    c.pi_min = c.pi.minCoeff();

    TransitionMatrix qh = reverse_chain(q, c.pi);
    int cap = s * s;
    if (t0_override > 0 && t0_override > cap)
        throw ChainStructureError("t0", "t0 override exceeds the S^2 search cap");

    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(s, s);
    int t = 0;
    while (true) {
        power = power * q.matrix();
        ++t;
        bool positive = power.minCoeff() > kPositive;
        if (t0_override > 0) {
            if (t == t0_override) {
                if (!positive)
                    throw ChainStructureError(
                        "t0", "Q^t0 has a zero entry at the requested t0 override");
                break;
            }
        } else if (positive) {
            break;
        }
        if (t >= cap)
            throw ChainStructureError("t0", "no t0 <= S^2 makes Q^t0 strictly positive");
    }
    c.t0 = t;
    c.ell = power.minCoeff();

    Eigen::MatrixXd power_hat = Eigen::MatrixXd::Identity(s, s);
    for (int i = 0; i < t; ++i) power_hat = power_hat * qh.matrix();
    c.ell_hat = power_hat.minCoeff();
    c.lambda = s * std::min(c.ell, c.ell_hat);
    return c;
}

ChainPath simulate_path(const TransitionMatrix& q, const Eigen::VectorXd& mu,
                        long long n, std::uint64_t seed, std::uint64_t stream) {
    int s = q.size();
    check_probability_vector(mu, s, "mu");
    if (n < 1) throw std::invalid_argument("simulate_path: n must be >= 1");

    // Row-wise CDFs, flattened row-major and pinned to 1 at the end so
    // inversion cannot fall off.
    std::vector<double> cdf(static_cast<std::size_t>(s) * s);
    for (int a = 0; a < s; ++a) {
        double acc = 0.0;
        for (int b = 0; b < s; ++b) {
            acc += q(a, b);
            cdf[static_cast<std::size_t>(a) * s + b] = acc;
        }
        cdf[static_cast<std::size_t>(a) * s + s - 1] = 1.0;
    }
    std::vector<double> mu_cdf(static_cast<std::size_t>(s));
    {
        double acc = 0.0;
        for (int b = 0; b < s; ++b) {
            acc += mu(b);
            mu_cdf[static_cast<std::size_t>(b)] = acc;
        }
        mu_cdf[static_cast<std::size_t>(s - 1)] = 1.0;
    }

    auto draw = [s](const double* row, double u) {
        int b = 0;
        while (b < s - 1 && u >= row[b]) ++b;
        return b;
    };

    RngStream rng(seed, stream);
    ChainPath path;
    path.seed = seed;
    path.initial_law = mu;
    path.states.resize(static_cast<std::size_t>(n));
    int x = draw(mu_cdf.data(), rng.next_double());
    path.states[0] = x;
    for (long long i = 1; i < n; ++i) {
        x = draw(&cdf[static_cast<std::size_t>(x) * s], rng.next_double());
        path.states[static_cast<std::size_t>(i)] = x;
    }
    return path;
}

LocalTimes local_times(const ChainPath& path, long long n) {
    if (n < 1) throw std::invalid_argument("local_times: n must be >= 1");
    if (static_cast<long long>(path.states.size()) < n + 1)
        throw std::invalid_argument("local_times: path must have length >= n + 1");
    int s = static_cast<int>(path.initial_law.size());
    LocalTimes lt;
    lt.per_state.assign(static_cast<std::size_t>(s), 0);
    for (long long i = 0; i < n; ++i) ++lt.per_state[static_cast<std::size_t>(path.states[i])];
    lt.l_n = lt.per_state[static_cast<std::size_t>(path.states[static_cast<std::size_t>(n)])];
    return lt;
}

double concentration_bound(long long n, double gamma, const ChainConstants& c) {
    if (gamma <= 0.0) throw std::invalid_argument("concentration_bound: gamma must be positive");
    double threshold = 2.0 * c.t0 / (c.lambda * gamma);
    if (!(static_cast<double>(n) > threshold))
        throw ThresholdError(threshold,
                             "concentration_bound requires n > " + format_double(threshold));
    double dn = static_cast<double>(n);
    double arg = c.lambda * gamma / c.t0 - 2.0 / dn;
    return std::exp(-0.5 * dn * arg * arg);
}

BoundReport finite_chain_bound(long long n, long long r, const ChainConstants& c,
                               const Eigen::VectorXd& mu) {
    if (r < 0) throw std::invalid_argument("finite_chain_bound: r must be >= 0");
    int s = static_cast<int>(c.pi.size());
    check_probability_vector(mu, s, "mu");
    double threshold =
        (2.0 * c.t0 + r * c.lambda + c.lambda * (1.0 - c.pi_min)) / (c.lambda * c.pi_min);
    if (!(static_cast<double>(n) > threshold))
        throw ThresholdError(threshold,
                             "finite_chain_bound requires n > " + format_double(threshold));

    double ratio = 0.0;
    for (int a = 0; a < s; ++a) ratio = std::max(ratio, mu(a) / c.pi(a));
    double big_c = std::min(static_cast<double>(s), ratio);

    double dn = static_cast<double>(n);
    double arg = c.lambda * c.pi_min / c.t0 - (2.0 + (r + 1) * c.lambda / c.t0) / dn;
    double value = big_c * std::exp(-0.5 * dn * arg * arg);

    double c_prime = big_c * std::exp(c.lambda * c.pi_min *
                                      (2.0 * c.t0 + (r + 1) * c.lambda) / (c.t0 * c.t0));
    double envelope = c_prime * std::exp(-dn * c.lambda * c.lambda * c.pi_min * c.pi_min /
                                         (2.0 * c.t0 * c.t0));

    BoundReport report;
    report.theorem = "proposition-3.2";
    report.value = value;
    report.validity.push_back({"n > (2 t0 + r lambda + lambda (1 - pi_min)) / (lambda pi_min)",
                               true, threshold});
    report.components["C"] = big_c;
    report.components["exponent_argument"] = arg;
    report.components["C_prime"] = c_prime;
    report.components["asymptotic_envelope"] = envelope;
    return report;
}

namespace {

// Sum over all S^{n+1} paths of weight(path) * prob(path) under kernel k.
template <typename Weight>
double enumerate_paths(const Eigen::MatrixXd& k, const Eigen::VectorXd& init,
                       long long n, Weight&& weight) {
    int s = static_cast<int>(k.rows());
    std::vector<int> path(static_cast<std::size_t>(n + 1), 0);
    std::vector<double> prob(static_cast<std::size_t>(n + 1), 0.0);
    double total = 0.0;
    long long depth = 0;
    while (true) {
        // fill probabilities from `depth` down
        for (long long i = depth; i <= n; ++i) {
            double step = (i == 0) ? init(path[0]) : prob[static_cast<std::size_t>(i - 1)] *
                                                         k(path[static_cast<std::size_t>(i - 1)],
                                                           path[static_cast<std::size_t>(i)]);
            prob[static_cast<std::size_t>(i)] = step;
        }
        double p = prob[static_cast<std::size_t>(n)];
        if (p != 0.0) total += p * weight(path);
        // odometer increment
        long long pos = n;
        while (pos >= 0 && path[static_cast<std::size_t>(pos)] == s - 1) {
            path[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++path[static_cast<std::size_t>(pos)];
        depth = pos;
    }
    return total;
}

}  // namespace

std::pair<double, double> reversal_identity(const TransitionMatrix& q,
                                            const Eigen::VectorXd& mu,
                                            const Eigen::VectorXd& eta,
                                            const std::vector<double>& f,
                                            long long n) {
    int s = q.size();
    check_probability_vector(mu, s, "mu");
    check_probability_vector(eta, s, "eta");
    if (n < 1) throw std::invalid_argument("reversal_identity: n must be >= 1");
    if (static_cast<long long>(f.size()) < n + 1)
        throw std::invalid_argument("reversal_identity: f must be tabulated on {0..n}");
    if (std::pow(static_cast<double>(s), static_cast<double>(n + 1)) > kEnumerationCap)
        throw CapExceededError("reversal_identity: S^{n+1} exceeds the enumeration cap");

    Eigen::VectorXd pi = stationary_distribution(q);
    TransitionMatrix qh = reverse_chain(q, pi);

    double lhs = enumerate_paths(q.matrix(), mu, n, [&](const std::vector<int>& path) {
        int last = path.back();
        long long ln = 0;
        for (long long i = 0; i < n; ++i)
            if (path[static_cast<std::size_t>(i)] == last) ++ln;
        return eta(last) / pi(last) * f[static_cast<std::size_t>(ln)];
    });
    double rhs = enumerate_paths(qh.matrix(), eta, n, [&](const std::vector<int>& path) {
        int first = path.front();
        long long visits = 0;  // L^_{n+1}(X^_1) counts X^_1 itself
        for (long long i = 0; i <= n; ++i)
            if (path[static_cast<std::size_t>(i)] == first) ++visits;
        return mu(path.back()) / pi(path.back()) * f[static_cast<std::size_t>(visits - 1)];
    });
    return {lhs, rhs};
}

}  // namespace occ
