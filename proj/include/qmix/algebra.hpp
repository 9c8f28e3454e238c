#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmix/errors.hpp"
#include "qmix/matrix.hpp"
#include "qmix/tolerances.hpp"

namespace qmix {

/// Normalized pure state. Construction normalizes, so the unit-norm
/// invariant holds for every live instance; the global phase is not
/// canonicalized (compare states through their projectors).
template <typename T = double>
class basic_ket {
public:
    using real_type = T;
    using value_type = std::complex<T>;

    explicit basic_ket(std::vector<value_type> amplitudes)
        : amps_(std::move(amplitudes)) {
        if (amps_.empty()) throw empty_input("ket requires at least one amplitude");
        T norm_sq{};
        for (const auto& a : amps_) norm_sq += std::norm(a);
        if (norm_sq == T(0)) throw zero_vector("ket amplitudes all vanish");
        const T inv = T(1) / std::sqrt(norm_sq);
        for (auto& a : amps_) a *= inv;
    }

    std::size_t dim() const { return amps_.size(); }
    const std::vector<value_type>& amplitudes() const { return amps_; }
    const value_type& operator[](std::size_t i) const { return amps_[i]; }

private:
    std::vector<value_type> amps_;
};

using ket = basic_ket<double>;

/// Normalizing factory; the canonical way to build a state from raw
/// amplitudes.
template <typename T>
basic_ket<T> make_ket(std::vector<std::complex<T>> amplitudes) {
    return basic_ket<T>(std::move(amplitudes));
}

inline ket make_ket(std::vector<std::complex<double>> amplitudes) {
    return ket(std::move(amplitudes));
}

template <typename T>
std::complex<T> inner_product(const basic_ket<T>& a, const basic_ket<T>& b) {
    if (a.dim() != b.dim()) throw dimension_mismatch("inner product: ket dimensions differ");
    std::complex<T> acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

/// |k><k| as a matrix.
template <typename T>
basic_matrix<T> projector(const basic_ket<T>& k) {
    basic_matrix<T> p(k.dim(), k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i)
        for (std::size_t j = 0; j < k.dim(); ++j) p(i, j) = k[i] * std::conj(k[j]);
    return p;
}

/// Phase-free state equality: compares projectors entrywise.
template <typename T>
bool same_state(const basic_ket<T>& a, const basic_ket<T>& b, T tolerance = tol::eig) {
    if (a.dim() != b.dim()) return false;
    return max_abs_diff(projector(a), projector(b)) <= tolerance;
}

/// Hermitian operator with a display label. Hermiticity is validated at
/// construction, so downstream code can rely on it.
template <typename T = double>
class basic_observable {
public:
    using real_type = T;

    explicit basic_observable(basic_matrix<T> entries, std::string label = "")
        : m_(std::move(entries)), label_(std::move(label)) {
        if (!m_.square()) throw not_hermitian("observable matrix is not square");
        if (!m_.is_hermitian(tol::herm))
            throw not_hermitian("observable '" + label_ + "' is not Hermitian");
    }

    std::size_t dim() const { return m_.rows(); }
    const basic_matrix<T>& matrix() const { return m_; }
    const std::string& label() const { return label_; }

private:
    basic_matrix<T> m_;
    std::string label_;
};

using observable = basic_observable<double>;

/// <k|O|k>. The quadratic form of a Hermitian operator is real; the
/// imaginary residue is checked against tol::herm and dropped.
template <typename T>
T expectation(const basic_ket<T>& k, const basic_observable<T>& o) {
    if (k.dim() != o.dim()) throw dimension_mismatch("expectation: ket/observable dimensions differ");
    const auto v = o.matrix() * k.amplitudes();
    std::complex<T> acc{};
    for (std::size_t i = 0; i < k.dim(); ++i) acc += std::conj(k[i]) * v[i];
    if (std::abs(acc.imag()) > tol::herm)
        throw not_hermitian("expectation value has a nonzero imaginary part");
    return acc.real();
}

/// Unit direction on the sphere (direction cosines).
template <typename T = double>
struct basic_spin_direction {
    T x, y, z;

    basic_spin_direction(T nx, T ny, T nz) : x(nx), y(ny), z(nz) {
        const T n = std::sqrt(x * x + y * y + z * z);
        if (std::abs(n - T(1)) > tol::norm)
            throw not_unit_vector("spin direction must be a unit vector");
    }

    /// Scales an arbitrary nonzero vector onto the sphere.
    static basic_spin_direction normalized(T nx, T ny, T nz) {
        const T n = std::sqrt(nx * nx + ny * ny + nz * nz);
        if (n == T(0)) throw zero_vector("spin direction vector vanishes");
        return basic_spin_direction(nx / n, ny / n, nz / n);
    }
};

using spin_direction = basic_spin_direction<double>;

namespace detail {

template <typename T>
std::string format_direction(const basic_spin_direction<T>& d) {
    std::ostringstream os;
    os.precision(6);
    os << "s(" << d.x << "," << d.y << "," << d.z << ")";
    return os.str();
}

}  // namespace detail

/// Spin component along a unit direction, (n_x sigma_x + n_y sigma_y +
/// n_z sigma_z)/2 in the |+z>,|-z> basis. Eigenvalues are +-1/2 (hbar = 1).
template <typename T>
basic_observable<T> spin_component(const basic_spin_direction<T>& d) {
    using C = std::complex<T>;
    basic_matrix<T> m(2, 2);
    m(0, 0) = C(d.z / 2, 0);
    m(0, 1) = C(d.x / 2, -d.y / 2);
    m(1, 0) = C(d.x / 2, d.y / 2);
    m(1, 1) = C(-d.z / 2, 0);
    std::string label;
    if (d.x == T(1) && d.y == T(0) && d.z == T(0)) label = "s_x";
    else if (d.x == T(0) && d.y == T(1) && d.z == T(0)) label = "s_y";
    else if (d.x == T(0) && d.y == T(0) && d.z == T(1)) label = "s_z";
    else label = detail::format_direction(d);
    return basic_observable<T>(std::move(m), std::move(label));
}

template <typename T = double>
basic_observable<T> spin_x() { return spin_component(basic_spin_direction<T>(1, 0, 0)); }
template <typename T = double>
basic_observable<T> spin_y() { return spin_component(basic_spin_direction<T>(0, 1, 0)); }
template <typename T = double>
basic_observable<T> spin_z() { return spin_component(basic_spin_direction<T>(0, 0, 1)); }

// Spin-1/2 basis kets in the standard basis (|+z> first, |-z> second).
template <typename T = double>
basic_ket<T> plus_z() { return basic_ket<T>({{1, 0}, {0, 0}}); }
template <typename T = double>
basic_ket<T> minus_z() { return basic_ket<T>({{0, 0}, {1, 0}}); }
template <typename T = double>
basic_ket<T> plus_x() { return basic_ket<T>({{1, 0}, {1, 0}}); }
template <typename T = double>
basic_ket<T> minus_x() { return basic_ket<T>({{1, 0}, {-1, 0}}); }
template <typename T = double>
basic_ket<T> plus_y() { return basic_ket<T>({{1, 0}, {0, 1}}); }
template <typename T = double>
basic_ket<T> minus_y() { return basic_ket<T>({{1, 0}, {0, -1}}); }

/// Result of a Hermitian eigendecomposition: ascending eigenvalues and the
/// matching orthonormal eigenvector columns.
template <typename T = double>
struct eigen_system {
    std::vector<T> values;
    basic_matrix<T> vectors;  // column k pairs with values[k]

    basic_ket<T> vector(std::size_t k) const {
        std::vector<std::complex<T>> col(vectors.rows());
        for (std::size_t i = 0; i < vectors.rows(); ++i) col[i] = vectors(i, k);
        return basic_ket<T>(std::move(col));
    }
};

namespace detail {

// Cyclic Jacobi diagonalization for complex Hermitian matrices. Each
// rotation is a phased Givens rotation that annihilates one off-diagonal
// pair; convergence is quadratic and the accumulated vectors stay unitary
// to machine precision. Degenerate spectra come out as an arbitrary
// orthonormal basis of the eigenspace, which is all callers may assume.
template <typename T>
void jacobi_hermitian(basic_matrix<T> a, std::vector<T>& values, basic_matrix<T>& vectors) {
    using C = std::complex<T>;
    const std::size_t n = a.rows();
    vectors = basic_matrix<T>::identity(n);
    values.assign(n, T(0));
    if (n == 0) return;

    const T scale = a.frobenius_norm();
    if (scale == T(0)) return;
    const T eps = std::numeric_limits<T>::epsilon();
    // Entries below this cannot move the spectrum by more than ~eps*scale.
    const T discard = eps * scale / T(2 * n * n);

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        T off = T(0);
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off == T(0)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const T g = std::abs(a(p, q));
                if (g <= discard) {
                    a(p, q) = C(0);
                    a(q, p) = C(0);
                    continue;
                }
                const C phase = a(p, q) / g;
                const T app = a(p, p).real();
                const T aqq = a(q, q).real();
                const T tau = (aqq - app) / (2 * g);
                const T sgn = tau >= T(0) ? T(1) : T(-1);
                const T t = -sgn / (std::abs(tau) + std::sqrt(1 + tau * tau));
                const T c = T(1) / std::sqrt(1 + t * t);
                const T s = t * c;
                const C rpp = phase * c;
                const C rpq = -phase * s;

                a(p, p) = C(app + t * g, 0);
                a(q, q) = C(aqq - t * g, 0);
                a(p, q) = C(0);
                a(q, p) = C(0);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const C akp = a(k, p);
                    const C akq = a(k, q);
                    a(k, p) = akp * rpp + akq * s;
                    a(k, q) = akp * rpq + akq * c;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const C vkp = vectors(k, p);
                    const C vkq = vectors(k, q);
                    vectors(k, p) = vkp * rpp + vkq * s;
                    vectors(k, q) = vkp * rpq + vkq * c;
                }
            }
        }
    }

    // Sort ascending, carrying the eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    basic_matrix<T> sorted(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) sorted(i, k) = vectors(i, order[k]);
    }
    vectors = std::move(sorted);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix (validated against
/// `hermiticity_tol`). Eigenvalues ascend; vectors are orthonormal.
template <typename T>
eigen_system<T> hermitian_eigen(const basic_matrix<T>& m, T hermiticity_tol = tol::herm) {
    if (!m.square()) throw not_hermitian("eigendecomposition input is not square");
    if (!m.is_hermitian(hermiticity_tol))
        throw not_hermitian("eigendecomposition input is not Hermitian");
    eigen_system<T> out;
    detail::jacobi_hermitian(m, out.values, out.vectors);
    return out;
}

template <typename T>
eigen_system<T> herm_eig(const basic_observable<T>& o) {
    eigen_system<T> out;
    detail::jacobi_hermitian(o.matrix(), out.values, out.vectors);
    return out;
}

/// exp(-iHt) assembled from an eigendecomposition of H.
template <typename T>
basic_matrix<T> evolution_operator(const eigen_system<T>& eig, T t) {
    using C = std::complex<T>;
    const std::size_t n = eig.values.size();
    basic_matrix<T> u(n, n);
    std::vector<C> ph(n);
    for (std::size_t k = 0; k < n; ++k)
        ph[k] = std::exp(C(0, -eig.values[k] * t));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            C acc{};
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * ph[k] * std::conj(eig.vectors(j, k));
            u(i, j) = acc;
        }
    return u;
}

template <typename T>
basic_matrix<T> evolution_operator(const basic_observable<T>& hamiltonian, T t) {
    return evolution_operator(herm_eig(hamiltonian), t);
}

/// Schroedinger evolution of a pure state: exp(-iHt)|k>, renormalized.
template <typename T>
basic_ket<T> evolve_pure(const basic_ket<T>& k, const basic_observable<T>& hamiltonian, T t) {
    if (k.dim() != hamiltonian.dim())
        throw dimension_mismatch("evolve_pure: ket/Hamiltonian dimensions differ");
    return basic_ket<T>(evolution_operator(hamiltonian, t) * k.amplitudes());
}

/// Composite of two pure states; composite index = i1*dim2 + i2
/// (subsystem 1 major).
template <typename T>
basic_ket<T> tensor(const basic_ket<T>& a, const basic_ket<T>& b) {
    std::vector<std::complex<T>> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return basic_ket<T>(std::move(out));
}

template <typename T>
basic_observable<T> tensor_obs(const basic_observable<T>& a, const basic_observable<T>& b) {
    std::string label = a.label().empty() || b.label().empty()
                            ? a.label() + b.label()
                            : a.label() + "(x)" + b.label();
    return basic_observable<T>(kron(a.matrix(), b.matrix()), std::move(label));
}

}  // namespace qmix
