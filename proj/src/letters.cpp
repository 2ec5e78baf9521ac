#include "occ/letters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "occ/special_functions.hpp"

namespace occ {

namespace {
constexpr double kSumTol = 1e-12;
constexpr long long kZipfTableSize = 1 << 16;
}  // namespace

double SlowlyVaryingFn::operator()(double x) const {
    if (family == Family::Constant) return c;
    double lx = std::log(std::max(x, std::exp(1.0)));
    return c * std::pow(lx, beta);
}

double SlowlyVaryingFn::upper_log_integral(double x) const {
    if (!has_upper_log_integral())
        throw std::invalid_argument(
            "upper_log_integral diverges for " + describe());
    double lx = std::log(std::max(x, std::exp(1.0)));
    return c * std::pow(lx, beta + 1.0) / (-beta - 1.0);
}

std::string SlowlyVaryingFn::describe() const {
    if (family == Family::Constant) return "const(" + std::to_string(c) + ")";
    return std::to_string(c) + "*log(x)^" + std::to_string(beta);
}

double pow_one_minus(double p, double e) {
    if (e == 0.0) return 1.0;
    if (p >= 1.0) return 0.0;
    if (p <= 0.0) return 1.0;
    return std::exp(e * std::log1p(-p));
}

LetterDistribution LetterDistribution::finite(std::vector<double> probs) {
    if (probs.empty())
        throw std::invalid_argument("finite letter distribution needs at least one mass");
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("letter masses must lie in [0, 1]");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTol)
        throw std::invalid_argument("letter masses must sum to 1 within 1e-12");
    std::sort(probs.begin(), probs.end(), std::greater<double>());
    LetterDistribution d;
    d.kind_ = Kind::Finite;
    d.probs_ = std::move(probs);
    d.p_sup_ = d.probs_.front();
    d.prefix_.resize(d.probs_.size());
    std::partial_sum(d.probs_.begin(), d.probs_.end(), d.prefix_.begin());
    return d;
}

LetterDistribution LetterDistribution::zipf(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("zipf index must lie in (0, 1)");
    LetterDistribution d;
    d.kind_ = Kind::Zipf;
    d.param_ = alpha;
    d.zipf_s_ = 1.0 / alpha;
    d.zipf_c_ = 1.0 / riemann_zeta(d.zipf_s_);
    d.p_sup_ = d.zipf_c_;
    auto table = std::make_shared<std::vector<double>>();
    table->reserve(kZipfTableSize);
    double acc = 0.0;
    for (long long k = 1; k <= kZipfTableSize; ++k) {
        acc += d.zipf_c_ * std::pow(static_cast<double>(k), -d.zipf_s_);
        table->push_back(acc);
    }
    d.zipf_cdf_ = std::move(table);
    return d;
}

LetterDistribution LetterDistribution::geometric(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("geometric ratio must lie in (0, 1)");
    LetterDistribution d;
    d.kind_ = Kind::Geometric;
    d.param_ = q;
    d.p_sup_ = 1.0 - q;
    return d;
}

double LetterDistribution::mass(long long k) const {
    if (k < 1) return 0.0;
    switch (kind_) {
        case Kind::Finite:
            return k <= static_cast<long long>(probs_.size()) ? probs_[k - 1] : 0.0;
        case Kind::Zipf:
            return zipf_c_ * std::pow(static_cast<double>(k), -zipf_s_);
        case Kind::Geometric:
            return (1.0 - param_) * std::pow(param_, static_cast<double>(k - 1));
    }
    return 0.0;
}

long long LetterDistribution::support_size() const {
    if (kind_ != Kind::Finite)
        throw std::invalid_argument("support_size: infinite support");
    auto it = std::lower_bound(probs_.begin(), probs_.end(), 0.0,
                               [](double a, double b) { return a > b; });
    return static_cast<long long>(it - probs_.begin());
}

double LetterDistribution::zipf_normalizer() const {
    if (kind_ != Kind::Zipf)
        throw std::invalid_argument("zipf_normalizer: not a zipf distribution");
    return zipf_c_;
}

std::string LetterDistribution::describe() const {
    switch (kind_) {
        case Kind::Finite:
            return "finite(M=" + std::to_string(probs_.size()) + ")";
        case Kind::Zipf:
            return "zipf(alpha=" + std::to_string(param_) + ")";
        case Kind::Geometric:
            return "geometric(q=" + std::to_string(param_) + ")";
    }
    return "?";
}

namespace {

// Lattice-safe inversion: start from the analytic index and settle against
// the actual masses so that ties resolve exactly as a scan would.
long long adjust_count(const LetterDistribution& p, long long k, double eps) {
    if (k < 0) k = 0;
    while (p.mass(k + 1) >= eps) ++k;
    while (k >= 1 && p.mass(k) < eps) --k;
    return k;
}

}  // namespace

long long counting_function(const LetterDistribution& p, double eps) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("counting_function: eps must lie in [0, 1]");
    if (eps == 0.0) {
        if (!p.finite_support())
            throw std::invalid_argument(
                "counting_function: nu(0) is infinite for unbounded supports");
        return p.support_size();
    }
    if (eps > p.p_sup()) return 0;
    switch (p.kind()) {
        case LetterDistribution::Kind::Finite: {
            // masses sorted descending: count entries >= eps
            long long lo = 0, hi = 0;
            hi = p.support_size();
            while (lo < hi) {
                long long mid = (lo + hi) / 2;
                if (p.mass(mid + 1) >= eps) lo = mid + 1; else hi = mid;
            }
            return lo;
        }
        case LetterDistribution::Kind::Zipf: {
            double c = p.zipf_normalizer();
            double alpha = p.param();
            long long k = static_cast<long long>(std::floor(std::pow(c / eps, alpha)));
            return adjust_count(p, k, eps);
        }
        case LetterDistribution::Kind::Geometric: {
            double q = p.param();
            double k_real = 1.0 + std::log(eps / (1.0 - q)) / std::log(q);
            long long k = static_cast<long long>(std::floor(k_real));
            return adjust_count(p, k, eps);
        }
    }
    return 0;
}

long long count_greater(const LetterDistribution& p, double eps) {
    if (eps < 0.0) throw std::invalid_argument("count_greater: eps must be nonnegative");
    if (eps >= p.p_sup()) {
        // Only a tie at the top can survive; resolve by direct comparison.
        long long k = 0;
        while (p.mass(k + 1) > eps) ++k;
        return k;
    }
    long long k = counting_function(p, std::min(eps, 1.0));
    while (k >= 1 && p.mass(k) <= eps) --k;
    return k;
}

double small_mass(const LetterDistribution& p, double eps) {
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("small_mass: eps must lie in [0, 1]");
    if (eps >= p.p_sup()) return 1.0;
    long long cg = count_greater(p, eps);  // masses 1..cg stay, the rest is tail
    switch (p.kind()) {
        case LetterDistribution::Kind::Finite: {
            // suffix sum over sorted masses
            double head = 0.0;
            for (long long k = 1; k <= cg; ++k) head += p.mass(k);
            return std::max(0.0, 1.0 - head);
        }
        case LetterDistribution::Kind::Zipf:
            return p.zipf_normalizer() * zeta_tail(1.0 / p.param(), cg + 1);
        case LetterDistribution::Kind::Geometric:
            return std::pow(p.param(), static_cast<double>(cg));
    }
    return 0.0;
}

namespace {

// Zipf tail of the moment sum, closed by Euler-Maclaurin from index a:
//   sum_{k >= a} p_k^{1+r} (1-p_k)^{m-r}
//     = alpha c^alpha int_0^{p(a)} u^{r-alpha} (1-u)^{m-r} du
//       + g(a)/2 - g'(a)/12 + O(g'''(a)),
// where g(x) = p(x)^{1+r} (1-p(x))^{m-r}. Valid once p(a) (m+1) <= 1 and a
// is large enough that successive derivatives shrink by ~1/a.
double zipf_moment_tail(const LetterDistribution& p, long long r, long long m,
                        long long a) {
    double alpha = p.param();
    double c = p.zipf_normalizer();
    double s = 1.0 / alpha;
    double w = p.mass(a);
    double integral = alpha * std::pow(c, alpha) *
                      power_tail_integral(w, r + 1.0 - alpha,
                                          static_cast<double>(m - r), 1.0);
    double g = std::pow(w, 1.0 + r) * pow_one_minus(w, static_cast<double>(m - r));
    double dp = -s * w / static_cast<double>(a);
    double gp = dp * std::pow(w, static_cast<double>(r)) *
                pow_one_minus(w, static_cast<double>(m - r - 1)) *
                ((1.0 + r) * (1.0 - w) - static_cast<double>(m - r) * w);
    return integral + 0.5 * g - gp / 12.0;
}

}  // namespace

double moment_sum(const LetterDistribution& p, long long r, long long m,
                  double tol) {
    if (r < 0 || m < r) throw std::invalid_argument("moment_sum: need m >= r >= 0");
    if (tol <= 0.0) throw std::invalid_argument("moment_sum: tol must be positive");
    double rr = static_cast<double>(r);
    double mr = static_cast<double>(m - r);
    switch (p.kind()) {
        case LetterDistribution::Kind::Finite: {
            double sum = 0.0;
            for (long long k = p.support_size(); k >= 1; --k) {
                double pk = p.mass(k);
                sum += std::pow(pk, 1.0 + rr) * pow_one_minus(pk, mr);
            }
            return sum;
        }
        case LetterDistribution::Kind::Geometric: {
            double sum = 0.0;
            long long k = 1;
            while (true) {
                double pk = p.mass(k);
                sum += std::pow(pk, 1.0 + rr) * pow_one_minus(pk, mr);
                // remaining tail <= p_k^r * sum_{j>k} p_j = p_k^r q^k
                double bound = std::pow(pk, rr) * std::pow(p.param(), static_cast<double>(k));
                if (bound <= tol || k > 100000) break;
                ++k;
            }
            return sum;
        }
        case LetterDistribution::Kind::Zipf: {
            double c = p.zipf_normalizer();
            double alpha = p.param();
            long long k_mass = static_cast<long long>(
                std::ceil(std::pow(c * static_cast<double>(m + 1), alpha)));
            long long K = std::max<long long>(2000, 2 * k_mass);
            double sum = 0.0;
            for (long long k = K; k >= 1; --k) {
                double pk = p.mass(k);
                sum += std::pow(pk, 1.0 + rr) * pow_one_minus(pk, mr);
            }
            return sum + zipf_moment_tail(p, r, m, K + 1);
        }
    }
    return 0.0;
}

double power_moment(const LetterDistribution& p, long long s) {
    if (s < 1) throw std::invalid_argument("power_moment: s must be >= 1");
    switch (p.kind()) {
        case LetterDistribution::Kind::Finite: {
            double sum = 0.0;
            for (long long k = p.support_size(); k >= 1; --k)
                sum += std::pow(p.mass(k), static_cast<double>(s));
            return sum;
        }
        case LetterDistribution::Kind::Geometric: {
            double q = p.param();
            return std::pow(1.0 - q, static_cast<double>(s)) /
                   (1.0 - std::pow(q, static_cast<double>(s)));
        }
        case LetterDistribution::Kind::Zipf:
            return std::pow(p.zipf_normalizer(), static_cast<double>(s)) *
                   riemann_zeta(static_cast<double>(s) / p.param());
    }
    return 0.0;
}

RVProfile rv_profile(const LetterDistribution& p) {
    RVProfile prof;
    switch (p.kind()) {
        case LetterDistribution::Kind::Finite:
            // nu is eventually constant: degenerate under any alpha > 0
            // envelope, and the small-mass profile vanishes.
            prof.alpha = 0.0;
            prof.ell = SlowlyVaryingFn::constant(1.0);
            prof.C = 0.0;
            prof.degenerate = true;
            prof.ell0 = SlowlyVaryingFn::constant(1.0);
            prof.D = 0.0;
            return prof;
        case LetterDistribution::Kind::Zipf:
            // nu(eps) = floor((c/eps)^alpha): C = c^alpha against ell == 1.
            prof.alpha = p.param();
            prof.ell = SlowlyVaryingFn::constant(1.0);
            prof.C = std::pow(p.zipf_normalizer(), p.param());
            return prof;
        case LetterDistribution::Kind::Geometric: {
            // nu(eps) = log(1/eps)/log(1/q) + O(1). The small-mass ratio
            // small_mass(eps)/eps oscillates between lattice points in
            // [q/(1-q), 1/(1-q)]; its logarithmic average 1/log(1/q) is the
            // constant under which the alpha = 0 occupancy limits hold.
            double q = p.param();
            double log_inv_q = std::log(1.0 / q);
            prof.alpha = 0.0;
            prof.ell = SlowlyVaryingFn::logpow(1.0 / log_inv_q, 1.0);
            prof.C = 1.0;
            prof.oscillatory = true;
            prof.ell0 = SlowlyVaryingFn::constant(1.0 / log_inv_q);
            prof.D = 1.0;
            return prof;
        }
    }
    return prof;
}

long long LetterDistribution::sample(RngStream& rng) const {
    switch (kind_) {
        case Kind::Finite: {
            double u = rng.next_double();
            auto it = std::lower_bound(prefix_.begin(), prefix_.end(), u);
            if (it == prefix_.end()) --it;
            return static_cast<long long>(it - prefix_.begin()) + 1;
        }
        case Kind::Geometric: {
            double u = rng.next_double_pos();
            double k = 1.0 + std::floor(std::log(u) / std::log(param_));
            return k < 1.0 ? 1 : static_cast<long long>(k);
        }
        case Kind::Zipf: {
            double u = rng.next_double();
            const auto& cdf = *zipf_cdf_;
            if (u < cdf.back()) {
                auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
                return static_cast<long long>(it - cdf.begin()) + 1;
            }
            // Far tail: invert the Euler-Maclaurin tail sum for the target
            // tail mass T = 1 - u, then settle on the exact lattice index.
            double t_target = std::max(1.0 - u, 1e-300);
            double s = zipf_s_;
            double x = std::pow(zipf_c_ / ((s - 1.0) * t_target), 1.0 / (s - 1.0));
            if (x < static_cast<double>(kZipfTableSize)) x = kZipfTableSize;
            for (int it = 0; it < 4; ++it) {
                double f = zipf_c_ * (std::pow(x, 1.0 - s) / (s - 1.0) +
                                      0.5 * std::pow(x, -s)) - t_target;
                double fp = -zipf_c_ * std::pow(x, -s);
                double step = f / fp;
                if (!(std::isfinite(step))) break;
                x -= step;
                if (x < static_cast<double>(kZipfTableSize)) {
                    x = kZipfTableSize;
                    break;
                }
            }
            long long k = static_cast<long long>(x);
            if (k < kZipfTableSize) k = kZipfTableSize;
            while (k > kZipfTableSize && zipf_c_ * zeta_tail(s, k) < t_target) --k;
            while (zipf_c_ * zeta_tail(s, k + 1) >= t_target) ++k;
            return k;
        }
    }
    return 1;
}

}  // namespace occ
