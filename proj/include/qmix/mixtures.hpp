#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmix/algebra.hpp"
#include "qmix/errors.hpp"
#include "qmix/matrix.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

template <typename T = double>
struct ensemble_member {
    basic_ket<T> state;
    T prob;
};

/// A statistical mixture {|phi_i>, p_i}: an ordered collection of pure
/// states with probabilities summing to one. The member list is kept
/// exactly as given — no merging, reordering or diagonalization — because
/// two distinct ensembles can share one density operator and the list is
/// the only place that distinction lives.
template <typename T = double>
class basic_ensemble {
public:
    using real_type = T;
    using member_type = ensemble_member<T>;

    explicit basic_ensemble(std::vector<member_type> members)
        : members_(std::move(members)) {
        if (members_.empty()) throw empty_ensemble("ensemble requires at least one member");
        const std::size_t d = members_.front().state.dim();
        T sum{};
        for (std::size_t i = 0; i < members_.size(); ++i) {
            const auto& m = members_[i];
            if (m.prob < T(0))
                throw negative_probability("member " + std::to_string(i) +
                                           " has negative probability");
            if (m.state.dim() != d)
                throw dimension_mismatch("member " + std::to_string(i) +
                                         " has a different dimension");
            sum += m.prob;
        }
        if (std::abs(sum - T(1)) > tol::prob)
            throw probability_sum_not_one("member probabilities sum to " +
                                          std::to_string(sum) + ", expected 1");
    }

    std::size_t dim() const { return members_.front().state.dim(); }
    std::size_t size() const { return members_.size(); }
    const std::vector<member_type>& members() const { return members_; }
    const member_type& operator[](std::size_t i) const { return members_[i]; }

private:
    std::vector<member_type> members_;
};

using ensemble = basic_ensemble<double>;

template <typename T>
basic_ensemble<T> make_ensemble(std::vector<ensemble_member<T>> members) {
    return basic_ensemble<T>(std::move(members));
}

/// Hermitian, positive-semidefinite, unit-trace operator. All three
/// invariants are validated at construction (the PSD check runs an
/// eigendecomposition, which is cheap at these dimensions).
template <typename T = double>
class basic_density_operator {
public:
    using real_type = T;

    explicit basic_density_operator(basic_matrix<T> entries) : m_(std::move(entries)) {
        if (!m_.square() || !m_.is_hermitian(tol::herm))
            throw not_hermitian("density operator is not Hermitian");
        if (std::abs(m_.trace().real() - T(1)) > tol::prob)
            throw probability_sum_not_one("density operator trace differs from 1");
        const auto eig = hermitian_eigen(m_);
        if (!eig.values.empty() && eig.values.front() < -tol::eig)
            throw negative_eigenvalue("density operator has a negative eigenvalue");
    }

    std::size_t dim() const { return m_.rows(); }
    const basic_matrix<T>& matrix() const { return m_; }
    const std::complex<T>& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    basic_matrix<T> m_;
};

using density_operator = basic_density_operator<double>;

/// rho = sum_i p_i |phi_i><phi_i|.
template <typename T>
basic_density_operator<T> density_of(const basic_ensemble<T>& e) {
    basic_matrix<T> acc(e.dim(), e.dim());
    for (const auto& m : e.members()) {
        const auto& k = m.state;
        for (std::size_t i = 0; i < e.dim(); ++i)
            for (std::size_t j = 0; j < e.dim(); ++j)
                acc(i, j) += m.prob * (k[i] * std::conj(k[j]));
    }
    return basic_density_operator<T>(std::move(acc));
}

/// Tr rho^2. Equals 1 exactly when rho is a projector (pure state), and
/// drops toward 1/dim as the state mixes.
template <typename T>
T purity(const basic_density_operator<T>& rho) {
    // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
    T acc{};
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) acc += std::norm(rho(i, j));
    return acc;
}

/// Von Neumann mean value Tr{rho O}.
template <typename T>
T mean_value(const basic_density_operator<T>& rho, const basic_observable<T>& o) {
    if (rho.dim() != o.dim()) throw dimension_mismatch("mean_value: dimensions differ");
    std::complex<T> acc{};
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j) acc += rho(i, j) * o.matrix()(j, i);
    return acc.real();
}

enum class entropy_base { nats, bits };

/// S = -Tr{rho ln rho} with 0 ln 0 = 0 and k_B = 1. Eigenvalues inside
/// [-tol::eig, 0) are numerical noise and clamp to zero; anything below
/// that is an error.
template <typename T>
T von_neumann_entropy(const basic_density_operator<T>& rho,
                      entropy_base base = entropy_base::nats) {
    const auto eig = hermitian_eigen(rho.matrix());
    T s{};
    for (const T lambda : eig.values) {
        if (lambda < -tol::eig)
            throw negative_eigenvalue("entropy input has a negative eigenvalue");
        if (lambda <= T(0)) continue;
        s -= lambda * std::log(lambda);
    }
    if (base == entropy_base::bits) s /= std::log(T(2));
    return s;
}

/// Entrywise comparison of the two density operators.
template <typename T>
bool density_equal(const basic_ensemble<T>& a, const basic_ensemble<T>& b, T tolerance) {
    if (a.dim() != b.dim()) throw dimension_mismatch("density_equal: dimensions differ");
    return max_abs_diff(density_of(a).matrix(), density_of(b).matrix()) <= tolerance;
}

/// Equal-weight mixture of the s_x eigenkets. Its density operator is I/2.
template <typename T = double>
basic_ensemble<T> zeh_mixture_1() {
    return basic_ensemble<T>({{plus_x<T>(), T(0.5)}, {minus_x<T>(), T(0.5)}});
}

/// Equal-weight mixture of the s_y eigenkets. Same density operator I/2,
/// different member collection.
template <typename T = double>
basic_ensemble<T> zeh_mixture_2() {
    return basic_ensemble<T>({{plus_y<T>(), T(0.5)}, {minus_y<T>(), T(0.5)}});
}

}  // namespace qmix
