#include "occ/regime.hpp"

#include <map>
#include <stdexcept>

#include "occ/errors.hpp"

namespace occ {

RegimeModel RegimeModel::markov(TransitionMatrix driver, Eigen::VectorXd eta,
                                std::vector<LetterDistribution> letters) {
    int s = driver.size();
    check_probability_vector(eta, s, "eta");
    if (static_cast<int>(letters.size()) != s)
        throw std::invalid_argument(
            "regime model needs one letter distribution per driver state (got " +
            std::to_string(letters.size()) + " for " + std::to_string(s) + " states)");
    RegimeModel m;
    m.num_states_ = s;
    m.driver_ = std::move(driver);
    m.eta_ = std::move(eta);
    m.letters_ = std::move(letters);
    return m;
}

RegimeModel RegimeModel::with_path_generator(int num_states, PathGenerator generator,
                                             std::vector<LetterDistribution> letters) {
    if (num_states < 1) throw std::invalid_argument("regime model needs at least one state");
    if (!generator) throw std::invalid_argument("path generator must be callable");
    if (static_cast<int>(letters.size()) != num_states)
        throw std::invalid_argument(
            "regime model needs one letter distribution per driver state");
    RegimeModel m;
    m.num_states_ = num_states;
    m.generator_ = std::move(generator);
    m.letters_ = std::move(letters);
    return m;
}

const TransitionMatrix& RegimeModel::driver() const {
    if (!driver_)
        throw UnsupportedOperationError(
            "operation requires a Markov driver; this model uses a path-generator hook");
    return *driver_;
}

const Eigen::VectorXd& RegimeModel::initial_law() const {
    if (!driver_)
        throw UnsupportedOperationError(
            "operation requires a Markov driver; this model uses a path-generator hook");
    return eta_;
}

double RegimeModel::p_sup() const {
    double v = 0.0;
    for (const auto& p : letters_) v = std::max(v, p.p_sup());
    return v;
}

std::vector<int> RegimeModel::generate_states(long long n, std::uint64_t seed,
                                              std::uint64_t stream) const {
    if (driver_) return simulate_path(*driver_, eta_, n, seed, 2 * stream).states;
    auto xs = generator_(n, seed, stream);
    if (static_cast<long long>(xs.size()) != n)
        throw std::invalid_argument("path generator returned a path of the wrong length");
    for (int x : xs)
        if (x < 0 || x >= num_states_)
            throw std::invalid_argument("path generator produced an out-of-range state");
    return xs;
}

RegimeModel build_model(TransitionMatrix driver, Eigen::VectorXd eta,
                        std::vector<LetterDistribution> letters) {
    return RegimeModel::markov(std::move(driver), std::move(eta), std::move(letters));
}

RegimePath simulate(const RegimeModel& model, long long n, std::uint64_t seed,
                    std::uint64_t stream) {
    if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
    RegimePath path;
    path.seed = seed;
    path.xs = model.generate_states(n, seed, stream);
    path.ks.resize(static_cast<std::size_t>(n));
    RngStream letter_rng(seed, 2 * stream + 1);
    for (long long i = 0; i < n; ++i) {
        const auto& p = model.letters(path.xs[static_cast<std::size_t>(i)]);
        path.ks[static_cast<std::size_t>(i)] = p.sample(letter_rng);
    }
    return path;
}

OccupancyStats occupancy_stats(const RegimePath& path, long long n) {
    if (n < 1) throw std::invalid_argument("occupancy_stats: n must be >= 1");
    if (path.length() < n + 1)
        throw std::invalid_argument("occupancy_stats: path must have length >= n + 1");
    OccupancyStats st;
    int x_next = path.xs[static_cast<std::size_t>(n)];
    long long k_next = path.ks[static_cast<std::size_t>(n)];
    for (long long i = 0; i < n; ++i) {
        if (path.xs[static_cast<std::size_t>(i)] == x_next) {
            ++st.l_n;
            if (path.ks[static_cast<std::size_t>(i)] == k_next) ++st.cal_l_n;
        }
    }
    return st;
}

double conditional_occupancy(const RegimeModel& model, const RegimePath& prefix,
                             long long n, long long r) {
    if (n < 1) throw std::invalid_argument("conditional_occupancy: n must be >= 1");
    if (r < 0) throw std::invalid_argument("conditional_occupancy: r must be >= 0");
    if (prefix.length() < n)
        throw std::invalid_argument("conditional_occupancy: prefix shorter than n");
    const TransitionMatrix& q = model.driver();
    if (r > n) return 0.0;

    // seen (a, k) -> multiplicity over the first n pairs
    std::map<std::pair<int, long long>, long long> counts;
    for (long long i = 0; i < n; ++i)
        ++counts[{prefix.xs[static_cast<std::size_t>(i)],
                  prefix.ks[static_cast<std::size_t>(i)]}];

    int x_n = prefix.xs[static_cast<std::size_t>(n - 1)];
    double total = 0.0;
    for (int a = 0; a < model.num_states(); ++a) {
        double step = q(x_n, a);
        if (step == 0.0) continue;
        const auto& p = model.letters(a);
        double inner;
        if (r == 0) {
            double seen_mass = 0.0;
            for (auto it = counts.lower_bound({a, 0}); it != counts.end() && it->first.first == a; ++it)
                seen_mass += p.mass(it->first.second);
            inner = std::max(0.0, 1.0 - seen_mass);
        } else {
            inner = 0.0;
            for (auto it = counts.lower_bound({a, 0}); it != counts.end() && it->first.first == a; ++it)
                if (it->second == r) inner += p.mass(it->first.second);
        }
        total += step * inner;
    }
    return total;
}

}  // namespace occ
