#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qmix/algebra.hpp"
#include "qmix/errors.hpp"
#include "qmix/mixtures.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

/// SplitMix64 (Steele, Lea & Flood's SplittableRandom mixer): a 64-bit
/// counter stepped by the golden-ratio increment and finalized with two
/// xor-shift multiplies. Chosen because the sequence is defined purely by
/// integer arithmetic, so identical seeds give bit-identical streams on
/// every platform. Streams for parallel workers can be derived with
/// split().
class splitmix64 {
public:
    using result_type = std::uint64_t;

    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    static constexpr std::string_view algorithm = "splitmix64";

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Independent stream for worker `index`: seeded with the mix of this
    /// generator's seed and the worker index. Does not advance *this.
    splitmix64 split(std::uint64_t index) const {
        splitmix64 probe(state_ ^ (0xA3EC647659359ACDull * (index + 1)));
        return splitmix64(probe.next());
    }

    // UniformRandomBitGenerator interface.
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }
    std::uint64_t operator()() { return next(); }

private:
    std::uint64_t state_;
};

struct sampler_config {
    std::uint64_t seed = 0;
    std::size_t n_outer = 1;  // ensemble preparations drawn
    std::size_t m_inner = 1;  // measurement shots per preparation
};

/// Draws a member index with its ensemble probability (inverse CDF over
/// the member order).
template <typename T>
std::size_t sample_member(const basic_ensemble<T>& e, splitmix64& rng) {
    const T u = static_cast<T>(rng.next_double());
    T cum{};
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        cum += e[i].prob;
        if (u < cum) return i;
    }
    return e.size() - 1;
}

namespace detail {

/// Projective-measurement outcome table for one pure state: eigenvalues of
/// the observable with their Born probabilities, duplicates within
/// tol::eig merged into one outcome.
template <typename T>
struct born_table {
    std::vector<T> outcomes;
    std::vector<T> cumulative;

    born_table(const basic_ket<T>& k, const eigen_system<T>& eig) {
        const std::size_t n = eig.values.size();
        std::size_t g = 0;
        while (g < n) {
            std::size_t end = g + 1;
            while (end < n && eig.values[end] - eig.values[g] <= tol::eig) ++end;
            T p{};
            for (std::size_t j = g; j < end; ++j) {
                std::complex<T> amp{};
                for (std::size_t i = 0; i < n; ++i)
                    amp += std::conj(eig.vectors(i, j)) * k[i];
                p += std::norm(amp);
            }
            outcomes.push_back(eig.values[g]);
            cumulative.push_back((cumulative.empty() ? T(0) : cumulative.back()) + p);
            g = end;
        }
    }

    T draw(splitmix64& rng) const {
        const T u = static_cast<T>(rng.next_double());
        for (std::size_t i = 0; i + 1 < outcomes.size(); ++i)
            if (u < cumulative[i]) return outcomes[i];
        return outcomes.back();
    }
};

}  // namespace detail

/// One projective measurement of O on |k>: returns eigenvalue lambda with
/// probability |<v_lambda|k>|^2 (eigenspace probabilities summed for
/// degenerate spectra).
template <typename T>
T born_sample(const basic_ket<T>& k, const basic_observable<T>& o, splitmix64& rng) {
    if (k.dim() != o.dim()) throw dimension_mismatch("born_sample: dimensions differ");
    return detail::born_table<T>(k, herm_eig(o)).draw(rng);
}

template <typename T = double>
struct moment_estimate {
    T value;
    T std_error;
    std::size_t n_outer;
    std::size_t m_inner;
};

/// Empirical n-th moment of the expectation-value random variable. For
/// each of cfg.n_outer preparations one member is drawn, its expectation
/// value is estimated as the mean of cfg.m_inner measurement shots, and
/// that mean is raised to the n-th power; the estimate averages the
/// powered values and std_error is their sample standard deviation over
/// sqrt(n_outer).
///
/// The estimator is the naive plug-in: E[(shot mean)^n] carries an
/// O(1/m_inner) bias relative to mu_n for n >= 2, which is left in place
/// rather than corrected. The two-level structure is essential — single
/// shots per preparation estimate a different quantity entirely.
template <typename T>
moment_estimate<T> estimate_moment(const basic_ensemble<T>& e, const basic_observable<T>& o,
                                   unsigned n, const sampler_config& cfg) {
    if (n < 1) throw std::invalid_argument("estimate_moment: n must be >= 1");
    if (cfg.n_outer < 1 || cfg.m_inner < 1)
        throw std::invalid_argument("estimate_moment: n_outer and m_inner must be >= 1");
    if (e.dim() != o.dim()) throw dimension_mismatch("estimate_moment: dimensions differ");

    const auto eig = herm_eig(o);
    std::vector<detail::born_table<T>> tables;
    tables.reserve(e.size());
    for (const auto& m : e.members()) tables.emplace_back(m.state, eig);

    splitmix64 rng(cfg.seed);
    // Welford accumulation keeps the variance numerically clean.
    T mean{}, m2{};
    for (std::size_t i = 0; i < cfg.n_outer; ++i) {
        const std::size_t idx = sample_member(e, rng);
        T shot_sum{};
        for (std::size_t j = 0; j < cfg.m_inner; ++j) shot_sum += tables[idx].draw(rng);
        T powered(1);
        const T shot_mean = shot_sum / static_cast<T>(cfg.m_inner);
        for (unsigned p = 0; p < n; ++p) powered *= shot_mean;
        const T delta = powered - mean;
        mean += delta / static_cast<T>(i + 1);
        m2 += delta * (powered - mean);
    }
    T se{};
    if (cfg.n_outer > 1) {
        const T var = m2 / static_cast<T>(cfg.n_outer - 1);
        se = std::sqrt(var / static_cast<T>(cfg.n_outer));
    }
    return {mean, se, cfg.n_outer, cfg.m_inner};
}

}  // namespace qmix
