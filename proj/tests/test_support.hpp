#pragma once

// Shared generators for the property-style tests. Everything is driven by
// splitmix64 with fixed seeds so failures replay exactly.

#include <complex>
#include <cstdint>
#include <vector>

#include "qmix/qmix.hpp"

namespace testgen {

inline double uniform(qmix::splitmix64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng.next_double();
}

inline std::complex<double> random_complex(qmix::splitmix64& rng) {
    return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
}

inline qmix::ket random_ket(qmix::splitmix64& rng, std::size_t dim) {
    std::vector<std::complex<double>> amps(dim);
    for (auto& a : amps) a = random_complex(rng);
    return qmix::make_ket(std::move(amps));
}

inline qmix::cmatrix random_matrix(qmix::splitmix64& rng, std::size_t dim) {
    qmix::cmatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = random_complex(rng);
    return m;
}

inline qmix::observable random_observable(qmix::splitmix64& rng, std::size_t dim) {
    const auto a = random_matrix(rng, dim);
    return qmix::observable((a + a.adjoint()) * std::complex<double>(0.5), "random");
}

inline qmix::ensemble random_ensemble(qmix::splitmix64& rng, std::size_t dim,
                                      std::size_t max_members = 4) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.next() % max_members);
    std::vector<double> weights(k);
    double sum = 0.0;
    for (auto& w : weights) {
        w = uniform(rng, 0.05, 1.0);
        sum += w;
    }
    std::vector<qmix::ensemble_member<double>> members;
    for (std::size_t i = 0; i < k; ++i)
        members.push_back({random_ket(rng, dim), weights[i] / sum});
    return qmix::make_ensemble(std::move(members));
}

inline qmix::spin_direction random_direction(qmix::splitmix64& rng) {
    while (true) {
        const double x = uniform(rng, -1.0, 1.0);
        const double y = uniform(rng, -1.0, 1.0);
        const double z = uniform(rng, -1.0, 1.0);
        if (x * x + y * y + z * z > 1e-3)
            return qmix::spin_direction::normalized(x, y, z);
    }
}

}  // namespace testgen
