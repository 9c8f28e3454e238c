#pragma once

#include <vector>

#include "qmix/algebra.hpp"
#include "qmix/errors.hpp"
#include "qmix/mixtures.hpp"

namespace qmix {

/// Closed-system evolution of a density operator:
/// rho(t) = exp(-iHt) rho exp(+iHt), via spectral decomposition of H.
template <typename T>
basic_density_operator<T> evolve_density(const basic_density_operator<T>& rho,
                                         const basic_observable<T>& hamiltonian, T t) {
    if (rho.dim() != hamiltonian.dim())
        throw dimension_mismatch("evolve_density: operator dimensions differ");
    const auto u = evolution_operator(hamiltonian, t);
    return basic_density_operator<T>(u * rho.matrix() * u.adjoint());
}

/// Member-wise Schroedinger evolution; probabilities ride along unchanged.
/// Commutes with density_of: the evolved ensemble's density operator is
/// the evolved density operator.
template <typename T>
basic_ensemble<T> evolve_ensemble(const basic_ensemble<T>& e,
                                  const basic_observable<T>& hamiltonian, T t) {
    if (e.dim() != hamiltonian.dim())
        throw dimension_mismatch("evolve_ensemble: dimensions differ");
    const auto u = evolution_operator(hamiltonian, t);
    std::vector<ensemble_member<T>> members;
    members.reserve(e.size());
    for (const auto& m : e.members())
        members.push_back({basic_ket<T>(u * m.state.amplitudes()), m.prob});
    return basic_ensemble<T>(std::move(members));
}

}  // namespace qmix
