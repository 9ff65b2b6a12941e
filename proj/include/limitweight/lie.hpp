#pragma once

// Finite-dimensional Lie algebras given by exact structure constants, with
// elements as coordinate vectors over any coefficient ring. Includes the
// linear-algebra pieces needed to validate Jacobi, to compute the full
// derivation space of an algebra (the Leibniz constraints are linear in the
// operator entries), and to scramble an algebra by a random change of basis.

#include <cstddef>
#include <string>
#include <vector>

#include "check.hpp"
#include "laurent.hpp"
#include "matrix.hpp"
#include "nilpotent.hpp"
#include "rational.hpp"

namespace limitweight {

template <class R>
std::vector<R> vec_zero(std::size_t n) {
    return std::vector<R>(n, R(0));
}

template <class R>
std::vector<R> vec_add(const std::vector<R>& a, const std::vector<R>& b) {
    std::vector<R> c(a.size(), R(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

template <class R>
std::vector<R> vec_sub(const std::vector<R>& a, const std::vector<R>& b) {
    std::vector<R> c(a.size(), R(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

template <class R>
std::vector<R> vec_scale(const R& s, const std::vector<R>& a) {
    std::vector<R> c(a.size(), R(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
    return c;
}

template <class R>
bool vec_is_zero(const std::vector<R>& a) {
    for (const auto& x : a)
        if (!is_zero(x)) return false;
    return true;
}

template <class S, class R>
std::vector<S> lift_vector(const std::vector<R>& a) {
    std::vector<S> c;
    c.reserve(a.size());
    for (const auto& x : a) c.push_back(scalar_lift<S>(x));
    return c;
}

// Exact inverse by Gauss-Jordan with pivoting on the first nonzero entry.
inline Matrix<Rational> rational_inverse(const Matrix<Rational>& m) {
    const std::size_t n = m.dim();
    Matrix<Rational> a = m;
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_zero(a(piv, col))) ++piv;
        if (piv == n) throw Error("matrix is singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(a(col, j), a(piv, j));
            std::swap(inv(col, j), inv(piv, j));
        }
        Rational d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(a(i, col))) continue;
            Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(col, j);
                inv(i, j) = inv(i, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

// Nullspace basis of a (rows x cols) rational system, rows given as vectors.
inline std::vector<std::vector<Rational>> rational_nullspace(std::vector<std::vector<Rational>> rows,
                                                            std::size_t cols) {
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && is_zero(rows[piv][col])) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Rational d = rows[rank][col];
        for (std::size_t j = 0; j < cols; ++j) rows[rank][j] = rows[rank][j] / d;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || is_zero(rows[i][col])) continue;
            Rational f = rows[i][col];
            for (std::size_t j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - f * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = Rational(1);
        for (std::size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
        basis.push_back(v);
    }
    return basis;
}

struct LieAlgebra {
    std::size_t dim = 0;
    // c[i][j] = coordinates of [e_i, e_j]
    std::vector<std::vector<std::vector<Rational>>> c;

    static LieAlgebra abelian(std::size_t d) {
        LieAlgebra g;
        g.dim = d;
        g.c.assign(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d, Rational(0))));
        return g;
    }

    // The strictly upper triangular matrices of a given size, in the basis
    // order of strictly_upper_positions, with the commutator bracket.
    static LieAlgebra from_strictly_upper(std::size_t matrix_dim) {
        auto pos = strictly_upper_positions(matrix_dim);
        LieAlgebra g = abelian(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i)
            for (std::size_t j = 0; j < pos.size(); ++j) {
                Matrix<Rational> ei(matrix_dim), ej(matrix_dim);
                ei(pos[i].first, pos[i].second) = Rational(1);
                ej(pos[j].first, pos[j].second) = Rational(1);
                g.c[i][j] = upper_coords(commutator(ei, ej));
            }
        return g;
    }
};

template <class R>
std::vector<R> lie_bracket(const LieAlgebra& g, const std::vector<R>& u, const std::vector<R>& v) {
    std::vector<R> out = vec_zero<R>(g.dim);
    for (std::size_t i = 0; i < g.dim; ++i) {
        if (is_zero(u[i])) continue;
        for (std::size_t j = 0; j < g.dim; ++j) {
            if (is_zero(v[j])) continue;
            R f = u[i] * v[j];
            for (std::size_t k = 0; k < g.dim; ++k)
                out[k] = out[k] + f * scalar_lift<R>(g.c[i][j][k]);
        }
    }
    return out;
}

// Antisymmetry and Jacobi; throws on violation so bad fixtures are rejected
// before any structure is built on them.
inline void validate_lie(const LieAlgebra& g) {
    if (g.c.size() != g.dim) throw FixtureError("structure constants have wrong shape");
    for (std::size_t i = 0; i < g.dim; ++i) {
        if (g.c[i].size() != g.dim) throw FixtureError("structure constants have wrong shape");
        for (std::size_t j = 0; j < g.dim; ++j)
            if (g.c[i][j].size() != g.dim) throw FixtureError("structure constants have wrong shape");
    }
    auto basis = [&](std::size_t i) {
        auto v = vec_zero<Rational>(g.dim);
        v[i] = Rational(1);
        return v;
    };
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = 0; j < g.dim; ++j)
            if (!vec_is_zero(vec_add(g.c[i][j], g.c[j][i])))
                throw FixtureError("structure constants are not antisymmetric at (" +
                                   std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = i + 1; j < g.dim; ++j)
            for (std::size_t k = j + 1; k < g.dim; ++k) {
                auto cyc = vec_add(lie_bracket(g, basis(i), g.c[j][k]),
                                   vec_add(lie_bracket(g, basis(j), g.c[k][i]),
                                           lie_bracket(g, basis(k), g.c[i][j])));
                if (!vec_is_zero(cyc))
                    throw FixtureError("structure constants fail Jacobi at (" + std::to_string(i + 1) +
                                       "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
            }
}

inline bool is_derivation(const LieAlgebra& g, const Matrix<Rational>& d) {
    if (d.dim() != g.dim) return false;
    auto apply = [&](const std::vector<Rational>& v) {
        auto out = vec_zero<Rational>(g.dim);
        for (std::size_t r = 0; r < g.dim; ++r)
            for (std::size_t cidx = 0; cidx < g.dim; ++cidx) out[r] = out[r] + d(r, cidx) * v[cidx];
        return out;
    };
    auto basis = [&](std::size_t i) {
        auto v = vec_zero<Rational>(g.dim);
        v[i] = Rational(1);
        return v;
    };
    for (std::size_t i = 0; i < g.dim; ++i)
        for (std::size_t j = i + 1; j < g.dim; ++j) {
            auto lhs = apply(g.c[i][j]);
            auto rhs = vec_add(lie_bracket(g, apply(basis(i)), basis(j)),
                               lie_bracket(g, basis(i), apply(basis(j))));
            if (!vec_is_zero(vec_sub(lhs, rhs))) return false;
        }
    return true;
}

// All derivations of g: the Leibniz rule D[e_i,e_j] = [D e_i, e_j] + [e_i, D e_j]
// is linear in the d^2 entries of D, so the space is a nullspace.
inline std::vector<Matrix<Rational>> derivation_space(const LieAlgebra& g) {
    const std::size_t d = g.dim;
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t m = 0; m < d; ++m) {
                // equation (i, j, coordinate m); unknown D_{r c} at index r*d + c
                std::vector<Rational> row(d * d, Rational(0));
                for (std::size_t k = 0; k < d; ++k) {
                    row[m * d + k] = row[m * d + k] + g.c[i][j][k];    // D(c_ij)
                    row[k * d + i] = row[k * d + i] - g.c[k][j][m];    // [D e_i, e_j]
                    row[k * d + j] = row[k * d + j] - g.c[i][k][m];    // [e_i, D e_j]
                }
                rows.push_back(row);
            }
    std::vector<Matrix<Rational>> basis;
    for (const auto& v : rational_nullspace(std::move(rows), d * d)) {
        Matrix<Rational> m(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t cidx = 0; cidx < d; ++cidx) m(r, cidx) = v[r * d + cidx];
        basis.push_back(m);
    }
    return basis;
}

inline Matrix<Rational> random_derivation(const LieAlgebra& g, Sampler& rng) {
    auto basis = derivation_space(g);
    if (basis.empty()) return Matrix<Rational>(g.dim);
    for (int attempt = 0; attempt < 8; ++attempt) {
        Matrix<Rational> d(g.dim);
        for (const auto& b : basis) d += rng.rational(3, 3) * b;
        if (!is_zero(d)) return d;
    }
    return basis.front();
}

// Conjugates the structure constants by a random unimodular basis change
// (product of unipotent lower and upper factors), yielding an isomorphic
// algebra whose constants look generic. Jacobi survives by construction.
inline LieAlgebra random_basis_change(const LieAlgebra& g, Sampler& rng,
                                      Matrix<Rational>* change = nullptr) {
    const std::size_t d = g.dim;
    Matrix<Rational> lo = Matrix<Rational>::identity(d);
    Matrix<Rational> up = Matrix<Rational>::identity(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i > j) lo(i, j) = rng.rational(2, 2);
            if (i < j) up(i, j) = rng.rational(2, 2);
        }
    Matrix<Rational> p = lo * up;
    Matrix<Rational> pinv = rational_inverse(p);
    auto col = [&](const Matrix<Rational>& m, std::size_t j) {
        std::vector<Rational> v(d, Rational(0));
        for (std::size_t r = 0; r < d; ++r) v[r] = m(r, j);
        return v;
    };
    auto apply = [&](const Matrix<Rational>& m, const std::vector<Rational>& v) {
        std::vector<Rational> out(d, Rational(0));
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k) out[r] = out[r] + m(r, k) * v[k];
        return out;
    };
    LieAlgebra h = LieAlgebra::abelian(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            h.c[i][j] = apply(pinv, lie_bracket(g, col(p, i), col(p, j)));
    if (change) *change = p;
    return h;
}

// Scalar map pairs for the algebra side: lower/raise are eps-monomials with
// product 1, applied coordinate-wise.
struct ScalarPair {
    LaurentSeries<Rational> lower;
    LaurentSeries<Rational> raise;

    static ScalarPair make(const LaurentSeries<Rational>& lo, const LaurentSeries<Rational>& hi) {
        if (lo.terms().size() != 1 || hi.terms().size() != 1 ||
            !(lo * hi == LaurentSeries<Rational>(1)))
            throw FixtureError("scalar pair needs single-term scales with product 1");
        return {lo, hi};
    }
    static ScalarPair power() {
        return {LaurentSeries<Rational>::eps(1), LaurentSeries<Rational>::eps(-1)};
    }
    static ScalarPair identity() {
        return {LaurentSeries<Rational>(1), LaurentSeries<Rational>(1)};
    }
};

enum class LieActionKind { adjoint, zero, linear };

struct LieActionSpec {
    LieActionKind kind = LieActionKind::adjoint;
    // linear only: coeffs[i][j] = coordinates of gamma_{e_i}(e_j)
    std::vector<std::vector<std::vector<Rational>>> coeffs;
};

template <class R>
std::vector<R> lie_act(const LieActionSpec& a, const LieAlgebra& g, const std::vector<R>& u,
                       const std::vector<R>& v) {
    switch (a.kind) {
        case LieActionKind::adjoint: return lie_bracket(g, u, v);
        case LieActionKind::zero: return vec_zero<R>(g.dim);
        default: {
            std::vector<R> out = vec_zero<R>(g.dim);
            for (std::size_t i = 0; i < g.dim; ++i)
                for (std::size_t j = 0; j < g.dim; ++j) {
                    R f = u[i] * v[j];
                    if (is_zero(f)) continue;
                    for (std::size_t k = 0; k < g.dim; ++k)
                        out[k] = out[k] + f * scalar_lift<R>(a.coeffs[i][j][k]);
                }
            return out;
        }
    }
}

}  // namespace limitweight
