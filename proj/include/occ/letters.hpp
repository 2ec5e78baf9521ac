#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "occ/rng.hpp"

namespace occ {

// Slowly varying function, restricted to the two families every limit in
// scope needs: constants and powers of logarithms. LogPow(c, beta) means
// c * (log x)^beta for x >= e, extended constantly below e so the function
// stays locally bounded away from 0 and infinity on [1, inf).
struct SlowlyVaryingFn {
    enum class Family { Constant, LogPow };

    Family family = Family::Constant;
    double c = 1.0;
    double beta = 0.0;

    static SlowlyVaryingFn constant(double c) { return {Family::Constant, c, 0.0}; }
    static SlowlyVaryingFn logpow(double c, double beta) {
        return {Family::LogPow, c, beta};
    }

    double operator()(double x) const;

    bool nonincreasing() const {
        return family == Family::Constant || beta <= 0.0;
    }

    // ell_1(x) = int_x^inf u^{-1} ell(u) du; finite only for LogPow with
    // beta < -1, where it equals c (log x)^{beta+1} / (-beta-1).
    bool has_upper_log_integral() const {
        return family == Family::LogPow && beta < -1.0;
    }
    double upper_log_integral(double x) const;

    std::string describe() const;
};

// Regular-variation profile of a letter distribution:
//   nu(eps) / (eps^{-alpha} ell(1/eps)) -> C   as eps -> 0,
// plus, when alpha = 0, the small-mass profile
//   sum_k p_k 1{p_k <= eps} / (eps ell0(1/eps)) -> D.
struct RVProfile {
    double alpha = 0.0;
    SlowlyVaryingFn ell = SlowlyVaryingFn::constant(1.0);
    double C = 0.0;
    bool degenerate = false;   // nu bounded (finite support)
    bool oscillatory = false;  // limits hold along the mass lattice only
    std::optional<SlowlyVaryingFn> ell0;
    std::optional<double> D;
};

// A probability law on the positive integers with nonincreasing masses.
// Three kinds: an explicit finite list (sorted at construction), zipf with
// p_k = c k^{-1/alpha}, and geometric with p_k = (1-q) q^{k-1}.
class LetterDistribution {
public:
    enum class Kind { Finite, Zipf, Geometric };

    static LetterDistribution finite(std::vector<double> probs);
    static LetterDistribution zipf(double alpha);
    static LetterDistribution geometric(double q);

    Kind kind() const { return kind_; }
    double param() const { return param_; }

    // p_k for k >= 1 (0 beyond a finite support).
    double mass(long long k) const;
    double p_sup() const { return p_sup_; }

    bool finite_support() const { return kind_ == Kind::Finite; }
    // Number of strictly positive masses; finite kind only.
    long long support_size() const;

    // Normalizer c = 1/zeta(1/alpha) of the zipf family.
    double zipf_normalizer() const;

    // Exact inverse-CDF draw of a letter index.
    long long sample(RngStream& rng) const;

    std::string describe() const;

private:
    LetterDistribution() = default;

    Kind kind_ = Kind::Finite;
    double param_ = 0.0;              // alpha (zipf) or q (geometric)
    double zipf_c_ = 0.0;             // zipf normalizer
    double zipf_s_ = 0.0;             // 1/alpha
    double p_sup_ = 0.0;
    std::vector<double> probs_;       // finite kind, sorted descending
    std::vector<double> prefix_;      // finite kind, prefix sums
    std::shared_ptr<const std::vector<double>> zipf_cdf_;  // sampling table
};

// nu(eps) = #{k : p_k >= eps}. Closed form per kind; eps = 0 is allowed only
// for finite supports (where it returns the support size).
long long counting_function(const LetterDistribution& p, double eps);

// #{k : p_k > eps}; differs from nu(eps) exactly at lattice ties.
long long count_greater(const LetterDistribution& p, double eps);

// sum_k p_k 1{p_k <= eps}, exact via per-kind tail sums.
double small_mass(const LetterDistribution& p, double eps);

// sum_k p_k^{1+r} (1 - p_k)^{m-r} within tol of the infinite sum.
double moment_sum(const LetterDistribution& p, long long r, long long m,
                  double tol = 1e-12);

// sum_k p_k^s for integer s >= 1.
double power_moment(const LetterDistribution& p, long long s);

RVProfile rv_profile(const LetterDistribution& p);

// (1-p)^e with the conventions 0^0 = 1 needed throughout.
double pow_one_minus(double p, double e);

}  // namespace occ
