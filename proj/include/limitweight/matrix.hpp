#pragma once

// Dense square matrices over an arbitrary commutative coefficient ring R.
// R must be constructible from long, support +, -, *, unary -, ==, and expose
// zero-ness through is_zero(). Every ring used here is exact; there is no
// normalization or rounding anywhere.

#include <cstddef>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace limitweight {

template <class R>
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, R(0)) {}

    static Matrix zero(std::size_t dim) { return Matrix(dim); }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = R(1);
        return m;
    }

    std::size_t dim() const { return dim_; }

    R& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] + o.a_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] = a_[k] - o.a_[k];
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.require_same_dim(b);
        const std::size_t n = a.dim_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const R& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < n; ++j) c(i, j) = c(i, j) + aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator*(const R& s, const Matrix& m) {
        Matrix c(m.dim_);
        for (std::size_t k = 0; k < m.a_.size(); ++k) c.a_[k] = s * m.a_[k];
        return c;
    }

    friend Matrix operator-(const Matrix& m) {
        Matrix c(m.dim_);
        for (std::size_t k = 0; k < m.a_.size(); ++k) c.a_[k] = -m.a_[k];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.dim_ != b.dim_) return false;
        for (std::size_t k = 0; k < a.a_.size(); ++k)
            if (!(a.a_[k] == b.a_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void require_same_dim(const Matrix& o) const {
        if (dim_ != o.dim_) throw Error("matrix dimension mismatch");
    }

    std::size_t dim_ = 0;
    std::vector<R> a_;
};

template <class R>
bool is_zero(const Matrix<R>& m) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b) {
    return a * b - b * a;
}

// On-or-below-diagonal entries all zero. This is the canonical realization of
// nilpotency on the carriers handled here.
template <class R>
bool is_strictly_upper(const Matrix<R>& m) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (!is_zero(m(i, j))) return false;
    return true;
}

template <class R>
bool is_unipotent(const Matrix<R>& m) {
    return is_strictly_upper(m - Matrix<R>::identity(m.dim()));
}

template <class R, class F>
auto map_entries(const Matrix<R>& m, F&& f) {
    using S = decltype(f(m(0, 0)));
    Matrix<S> c(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) c(i, j) = f(m(i, j));
    return c;
}

// Basis of the strictly upper triangular matrices, ordered by diagonal offset
// then by row. For dim 3 this is E12, E23, E13, matching the coordinate
// convention <a, b, c> = exp(a E12 + b E23 + c E13) used by the fixtures.
inline std::vector<std::pair<std::size_t, std::size_t>> strictly_upper_positions(std::size_t dim) {
    std::vector<std::pair<std::size_t, std::size_t>> p;
    for (std::size_t off = 1; off < dim; ++off)
        for (std::size_t i = 0; i + off < dim; ++i) p.emplace_back(i, i + off);
    return p;
}

template <class R>
std::vector<R> upper_coords(const Matrix<R>& n) {
    if (!is_strictly_upper(n)) throw NotNilpotentError("expected strictly upper triangular");
    std::vector<R> c;
    for (auto [i, j] : strictly_upper_positions(n.dim())) c.push_back(n(i, j));
    return c;
}

template <class R>
Matrix<R> from_upper_coords(std::size_t dim, const std::vector<R>& c) {
    auto pos = strictly_upper_positions(dim);
    if (pos.size() != c.size()) throw Error("coordinate count does not match carrier dimension");
    Matrix<R> n(dim);
    for (std::size_t k = 0; k < pos.size(); ++k) n(pos[k].first, pos[k].second) = c[k];
    return n;
}

// Applies a rational linear map, given in the strictly-upper basis, to a
// strictly upper matrix over any ring containing the rationals via lift.
template <class R, class Lift>
Matrix<R> apply_linear_on_upper(const Matrix<Rational>& coeffs, const Matrix<R>& n, Lift&& lift) {
    auto c = upper_coords(n);
    if (coeffs.dim() != c.size()) throw Error("linear map size does not match carrier dimension");
    std::vector<R> out(c.size(), R(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (is_zero(coeffs(i, j))) continue;
            out[i] = out[i] + lift(coeffs(i, j)) * c[j];
        }
    return from_upper_coords(n.dim(), out);
}

}  // namespace limitweight
