#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmix/algebra.hpp"
#include "qmix/mixtures.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

/// Default gap threshold for witness searches.
inline constexpr double default_witness_tol = 1e-9;

/// Certificate that two ensembles differ: the n-th moment of the
/// expectation-value random variable of `observable` takes different
/// values in the two ensembles.
template <typename T = double>
struct moment_witness {
    std::string observable;
    unsigned order;
    T value_a;
    T value_b;
    T gap;
};

/// Realization of the expectation-value random variable on one pure state:
/// the value <k|O|k> that the per-state mean of O takes when the drawn
/// member is |k>. Same contract as expectation(); the separate name keeps
/// reports honest about what is being averaged.
template <typename T>
T rv_value(const basic_ket<T>& k, const basic_observable<T>& o) {
    return expectation(k, o);
}

namespace detail {

template <typename T>
T int_pow(T x, unsigned n) {
    T r(1);
    while (n--) r *= x;
    return r;
}

template <typename T>
std::vector<T> rv_values(const basic_ensemble<T>& e, const basic_observable<T>& o) {
    std::vector<T> rv;
    rv.reserve(e.size());
    for (const auto& m : e.members()) rv.push_back(rv_value(m.state, o));
    return rv;
}

}  // namespace detail

/// n-th raw moment of the expectation-value random variable:
/// mu_n = sum_i p_i <phi_i|O|phi_i>^n. Computed in closed form from the
/// member list; mu_0 = 1 and mu_1 = Tr{rho O}.
template <typename T>
T moment(const basic_ensemble<T>& e, const basic_observable<T>& o, unsigned n) {
    if (e.dim() != o.dim()) throw dimension_mismatch("moment: ensemble/observable dimensions differ");
    T acc{};
    for (const auto& m : e.members())
        acc += m.prob * detail::int_pow(rv_value(m.state, o), n);
    return acc;
}

/// n-th central moment, sum_i p_i (<phi_i|O|phi_i> - mu_1)^n.
template <typename T>
T central_moment(const basic_ensemble<T>& e, const basic_observable<T>& o, unsigned n) {
    if (e.dim() != o.dim())
        throw dimension_mismatch("central_moment: ensemble/observable dimensions differ");
    const auto rv = detail::rv_values(e, o);
    T mean{};
    for (std::size_t i = 0; i < rv.size(); ++i) mean += e[i].prob * rv[i];
    T acc{};
    for (std::size_t i = 0; i < rv.size(); ++i)
        acc += e[i].prob * detail::int_pow(rv[i] - mean, n);
    return acc;
}

/// Moments mu_1..mu_max_n as (n, mu_n) pairs.
template <typename T>
std::vector<std::pair<unsigned, T>> moment_profile(const basic_ensemble<T>& e,
                                                   const basic_observable<T>& o,
                                                   unsigned max_n) {
    if (max_n < 1) throw std::invalid_argument("moment_profile: max_n must be >= 1");
    if (e.dim() != o.dim())
        throw dimension_mismatch("moment_profile: ensemble/observable dimensions differ");
    const auto rv = detail::rv_values(e, o);
    std::vector<T> power(rv.size(), T(1));
    std::vector<std::pair<unsigned, T>> out;
    out.reserve(max_n);
    for (unsigned n = 1; n <= max_n; ++n) {
        T acc{};
        for (std::size_t i = 0; i < rv.size(); ++i) {
            power[i] *= rv[i];
            acc += e[i].prob * power[i];
        }
        out.emplace_back(n, acc);
    }
    return out;
}

/// Scans observables in caller order and, within each observable, orders
/// n = 1..max_order ascending; returns the first (observable, n) at which
/// the two ensembles' moments differ by more than `tolerance`, or nothing.
/// The scan is deterministic, so a reported witness is always the
/// lowest-order one for the first distinguishing observable.
template <typename T>
std::optional<moment_witness<T>> distinguish(const basic_ensemble<T>& a,
                                             const basic_ensemble<T>& b,
                                             std::span<const basic_observable<T>> observables,
                                             unsigned max_order,
                                             T tolerance = T(default_witness_tol)) {
    if (a.dim() != b.dim()) throw dimension_mismatch("distinguish: ensemble dimensions differ");
    if (observables.empty())
        throw std::invalid_argument("distinguish: observable set must be nonempty");
    if (max_order < 1) throw std::invalid_argument("distinguish: max_order must be >= 1");
    for (const auto& o : observables) {
        if (o.dim() != a.dim())
            throw dimension_mismatch("distinguish: observable dimension differs from ensembles");
        const auto rva = detail::rv_values(a, o);
        const auto rvb = detail::rv_values(b, o);
        std::vector<T> pa(rva.size(), T(1));
        std::vector<T> pb(rvb.size(), T(1));
        for (unsigned n = 1; n <= max_order; ++n) {
            T mua{};
            for (std::size_t i = 0; i < rva.size(); ++i) {
                pa[i] *= rva[i];
                mua += a[i].prob * pa[i];
            }
            T mub{};
            for (std::size_t i = 0; i < rvb.size(); ++i) {
                pb[i] *= rvb[i];
                mub += b[i].prob * pb[i];
            }
            const T gap = std::abs(mua - mub);
            if (gap > tolerance)
                return moment_witness<T>{o.label(), n, mua, mub, gap};
        }
    }
    return std::nullopt;
}

/// Direction-list overload; each direction becomes a spin component.
template <typename T>
std::optional<moment_witness<T>> distinguish(const basic_ensemble<T>& a,
                                             const basic_ensemble<T>& b,
                                             std::span<const basic_spin_direction<T>> directions,
                                             unsigned max_order,
                                             T tolerance = T(default_witness_tol)) {
    std::vector<basic_observable<T>> obs;
    obs.reserve(directions.size());
    for (const auto& d : directions) obs.push_back(spin_component(d));
    return distinguish(a, b, std::span<const basic_observable<T>>(obs), max_order, tolerance);
}

/// The three coordinate axes, in x, y, z order.
template <typename T = double>
std::vector<basic_spin_direction<T>> axis_directions() {
    return {basic_spin_direction<T>(1, 0, 0), basic_spin_direction<T>(0, 1, 0),
            basic_spin_direction<T>(0, 0, 1)};
}

/// Near-uniform direction grid (Fibonacci sphere). Used to widen witness
/// searches beyond the coordinate axes; makes no completeness claim.
template <typename T = double>
std::vector<basic_spin_direction<T>> fibonacci_directions(std::size_t count) {
    std::vector<basic_spin_direction<T>> out;
    out.reserve(count);
    const T golden_angle = std::numbers::pi_v<T> * (T(3) - std::sqrt(T(5)));
    for (std::size_t k = 0; k < count; ++k) {
        const T z = T(1) - (T(2) * (T(k) + T(0.5))) / T(count);
        const T r = std::sqrt(std::max(T(0), T(1) - z * z));
        const T phi = golden_angle * T(k);
        out.push_back(basic_spin_direction<T>::normalized(r * std::cos(phi),
                                                          r * std::sin(phi), z));
    }
    return out;
}

}  // namespace qmix
