#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "occ/letters.hpp"
#include "occ/markov.hpp"

namespace occ {

// Generates X_1..X_n for an arbitrary driving process; must be a pure
// function of (n, seed, stream) returning 0-based state indices.
using PathGenerator =
    std::function<std::vector<int>(long long n, std::uint64_t seed, std::uint64_t stream)>;

// The pair process Z = (X, K): a driving process over a finite regime set
// and one letter distribution per regime. Letters are drawn conditionally
// on the current regime only, which enforces the product-kernel structure
// Q(a', a) p_{a,k} by construction. Immutable and shareable.
class RegimeModel {
public:
    static RegimeModel markov(TransitionMatrix driver, Eigen::VectorXd eta,
                              std::vector<LetterDistribution> letters);
    static RegimeModel with_path_generator(int num_states, PathGenerator generator,
                                           std::vector<LetterDistribution> letters);

    bool has_markov_driver() const { return driver_.has_value(); }
    const TransitionMatrix& driver() const;
    const Eigen::VectorXd& initial_law() const;

    int num_states() const { return num_states_; }
    const LetterDistribution& letters(int a) const { return letters_.at(static_cast<std::size_t>(a)); }
    const std::vector<LetterDistribution>& letter_family() const { return letters_; }

    // sup over all regimes and letters of p_{a,k}.
    double p_sup() const;

    // X_1..X_n from the driver (Markov simulation or the generator hook).
    std::vector<int> generate_states(long long n, std::uint64_t seed,
                                     std::uint64_t stream) const;

private:
    RegimeModel() = default;

    int num_states_ = 0;
    std::optional<TransitionMatrix> driver_;
    Eigen::VectorXd eta_;
    PathGenerator generator_;
    std::vector<LetterDistribution> letters_;
};

struct RegimePath {
    std::vector<int> xs;         // X_i, 0-based regimes
    std::vector<long long> ks;   // K_i, 1-based letters
    std::uint64_t seed = 0;

    long long length() const { return static_cast<long long>(xs.size()); }
};

struct OccupancyStats {
    long long l_n = 0;      // visits of X_{n+1}'s regime among X_1..X_n
    long long cal_l_n = 0;  // repeats of the full pair Z_{n+1} among Z_1..Z_n
};

// Markov-driver model assembly; throws when a regime lacks a distribution.
RegimeModel build_model(TransitionMatrix driver, Eigen::VectorXd eta,
                        std::vector<LetterDistribution> letters);

// Deterministic given (model, n, seed, stream).
RegimePath simulate(const RegimeModel& model, long long n, std::uint64_t seed,
                    std::uint64_t stream = 0);

// Requires path length >= n + 1.
OccupancyStats occupancy_stats(const RegimePath& path, long long n);

// M_{n,r} = P{cal L_n = r | Z_1..Z_n}: the probability that the next pair
// has already been seen exactly r times, via the driver's one-step law:
//   sum_a Q(X_n, a) sum_k p_{a,k} 1{count of (a,k) in Z_1..n = r}.
// Markov drivers only. The observed prefix is path[0..n).
double conditional_occupancy(const RegimeModel& model, const RegimePath& prefix,
                             long long n, long long r);

}  // namespace occ
