#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmix/algebra.hpp"
#include "qmix/errors.hpp"
#include "qmix/matrix.hpp"
#include "qmix/mixtures.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

enum class subsystem { first = 1, second = 2 };

/// Pure state of a composite system Sigma_1 (x) Sigma_2, with the
/// subsystem-1-major index convention of tensor().
template <typename T = double>
class basic_bipartite_state {
public:
    basic_bipartite_state(basic_ket<T> state, std::size_t dim1, std::size_t dim2)
        : ket_(std::move(state)), dim1_(dim1), dim2_(dim2) {
        if (dim1_ == 0 || dim2_ == 0 || ket_.dim() != dim1_ * dim2_)
            throw dimension_mismatch("bipartite state: ket dimension is not dim1*dim2");
    }

    basic_bipartite_state(const basic_ket<T>& part1, const basic_ket<T>& part2)
        : basic_bipartite_state(tensor(part1, part2), part1.dim(), part2.dim()) {}

    const basic_ket<T>& state() const { return ket_; }
    std::size_t dim1() const { return dim1_; }
    std::size_t dim2() const { return dim2_; }

private:
    basic_ket<T> ket_;
    std::size_t dim1_;
    std::size_t dim2_;
};

using bipartite_state = basic_bipartite_state<double>;

/// Reduced operator of one subsystem: rho_1 = Tr_2 rho (keep = first) or
/// rho_2 = Tr_1 rho (keep = second).
template <typename T>
basic_density_operator<T> partial_trace(const basic_density_operator<T>& rho,
                                        std::size_t dim1, std::size_t dim2, subsystem keep) {
    if (dim1 == 0 || dim2 == 0 || rho.dim() != dim1 * dim2)
        throw dimension_mismatch("partial_trace: dims do not factorize the operator");
    if (keep == subsystem::first) {
        basic_matrix<T> out(dim1, dim1);
        for (std::size_t i = 0; i < dim1; ++i)
            for (std::size_t ip = 0; ip < dim1; ++ip) {
                std::complex<T> acc{};
                for (std::size_t j = 0; j < dim2; ++j)
                    acc += rho(i * dim2 + j, ip * dim2 + j);
                out(i, ip) = acc;
            }
        return basic_density_operator<T>(std::move(out));
    }
    basic_matrix<T> out(dim2, dim2);
    for (std::size_t j = 0; j < dim2; ++j)
        for (std::size_t jp = 0; jp < dim2; ++jp) {
            std::complex<T> acc{};
            for (std::size_t i = 0; i < dim1; ++i)
                acc += rho(i * dim2 + j, i * dim2 + jp);
            out(j, jp) = acc;
        }
    return basic_density_operator<T>(std::move(out));
}

/// The projector of the composite pure state, as a density operator.
template <typename T>
basic_density_operator<T> density_of(const basic_bipartite_state<T>& s) {
    return basic_density_operator<T>(projector(s.state()));
}

/// Mean value of an observable acting on subsystem 1 only, computed as
/// Tr_1{rho_1 O} with rho_1 = Tr_2 |s><s|. Always equals the full-space
/// expectation of O (x) I.
template <typename T>
T reduced_expectation(const basic_bipartite_state<T>& s, const basic_observable<T>& o1) {
    if (o1.dim() != s.dim1())
        throw dimension_mismatch("reduced_expectation: observable does not match subsystem 1");
    const auto rho1 = partial_trace(density_of(s), s.dim1(), s.dim2(), subsystem::first);
    std::complex<T> acc{};
    for (std::size_t i = 0; i < s.dim1(); ++i)
        for (std::size_t j = 0; j < s.dim1(); ++j) acc += rho1(i, j) * o1.matrix()(j, i);
    return acc.real();
}

/// A pure composite state is entangled exactly when its reduced operator
/// is not a projector, i.e. purity(rho_1) < 1.
template <typename T>
bool is_entangled(const basic_bipartite_state<T>& s, T tolerance = tol::eig) {
    const auto rho1 = partial_trace(density_of(s), s.dim1(), s.dim2(), subsystem::first);
    return purity(rho1) < T(1) - tolerance;
}

/// Coupled-then-decoupled scenario: the two subsystems are prepared in
/// pure states at t0, interact through `coupling` until t1, and evolve
/// freely afterwards. `h1_after` optionally replaces the subsystem-1
/// Hamiltonian once the coupling is gone (sources of time-dependent forces
/// folded into Sigma_1).
template <typename T = double>
struct basic_scenario_spec {
    basic_observable<T> h1;
    basic_observable<T> h2;
    basic_observable<T> coupling;  // acts on the composite space
    basic_ket<T> psi1;
    basic_ket<T> psi2;
    T t0;
    T t1;
    std::vector<T> sample_times;
    std::optional<basic_observable<T>> h1_after;
};

using scenario_spec = basic_scenario_spec<double>;

/// One trajectory sample: the reduced operator of subsystem 1 with its
/// purity and entropy, the purity of the global state, and — for
/// consecutive samples past t1 — the deviation of rho_1 from free
/// subsystem-1 propagation of the previous sample.
template <typename T = double>
struct trajectory_point {
    T t;
    basic_density_operator<T> rho1;
    T purity;
    T entropy;
    T global_purity;
    std::optional<T> lvn_gap;
    bool lvn_ok;
};

template <typename T>
std::vector<trajectory_point<T>> run_scenario(const basic_scenario_spec<T>& spec) {
    const std::size_t d1 = spec.h1.dim();
    const std::size_t d2 = spec.h2.dim();
    if (spec.psi1.dim() != d1 || spec.psi2.dim() != d2 || spec.coupling.dim() != d1 * d2)
        throw dimension_mismatch("scenario: subsystem dimensions are inconsistent");
    const basic_observable<T>& h1_free = spec.h1_after ? *spec.h1_after : spec.h1;
    if (h1_free.dim() != d1)
        throw dimension_mismatch("scenario: post-coupling H1 dimension differs");
    if (spec.sample_times.empty())
        throw non_ascending_times("scenario: sample_times must be nonempty");
    for (std::size_t i = 1; i < spec.sample_times.size(); ++i)
        if (spec.sample_times[i] < spec.sample_times[i - 1])
            throw non_ascending_times("scenario: sample_times must ascend");
    if (spec.t0 > spec.t1 || spec.sample_times.front() < spec.t0 ||
        spec.sample_times.back() < spec.t1)
        throw non_ascending_times("scenario requires t0 <= t1 <= last sample time");

    const auto id1 = basic_matrix<T>::identity(d1);
    const auto id2 = basic_matrix<T>::identity(d2);
    const basic_observable<T> h_coupled(
        kron(spec.h1.matrix(), id2) + kron(id1, spec.h2.matrix()) + spec.coupling.matrix(),
        "H_coupled");
    const basic_observable<T> h_free(kron(h1_free.matrix(), id2) + kron(id1, spec.h2.matrix()),
                                     "H_free");
    const auto eig_coupled = herm_eig(h_coupled);
    const auto eig_free = herm_eig(h_free);
    const auto eig_h1_free = herm_eig(h1_free);

    const basic_ket<T> psi0 = tensor(spec.psi1, spec.psi2);
    const basic_ket<T> psi_t1 =
        basic_ket<T>(evolution_operator(eig_coupled, spec.t1 - spec.t0) * psi0.amplitudes());

    std::vector<trajectory_point<T>> out;
    out.reserve(spec.sample_times.size());
    for (const T t : spec.sample_times) {
        basic_ket<T> psi = t <= spec.t1
            ? basic_ket<T>(evolution_operator(eig_coupled, t - spec.t0) * psi0.amplitudes())
            : basic_ket<T>(evolution_operator(eig_free, t - spec.t1) * psi_t1.amplitudes());
        const auto rho_full = basic_density_operator<T>(projector(psi));
        auto rho1 = partial_trace(rho_full, d1, d2, subsystem::first);
        const T pur = purity(rho1);
        const T ent = von_neumann_entropy(rho1);
        const T gpur = purity(rho_full);

        std::optional<T> gap;
        bool ok = true;
        if (!out.empty() && out.back().t >= spec.t1 && t >= spec.t1) {
            const auto u1 = evolution_operator(eig_h1_free, t - out.back().t);
            const auto propagated = u1 * out.back().rho1.matrix() * u1.adjoint();
            gap = max_abs_diff(propagated, rho1.matrix());
            ok = *gap <= tol::scenario;
        }
        out.push_back({t, std::move(rho1), pur, ent, gpur, gap, ok});
    }
    return out;
}

}  // namespace qmix
