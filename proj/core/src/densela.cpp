#include "locclab/densela.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace locclab {

namespace {

void require_finite(const std::vector<cplx>& entries) {
    for (const cplx& e : entries) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

void require_finite(const std::vector<double>& row) {
    for (double v : row) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("RealLinearSystem: non-finite entry");
        }
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, cplx{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }
    require_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

std::vector<cplx> ComplexMatrix::apply(const std::vector<cplx>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("ComplexMatrix::apply: size mismatch");
    std::vector<cplx> out(rows_, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < rows_; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in sum");
    }
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw std::invalid_argument("ComplexMatrix: shape mismatch in difference");
    }
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
    return out;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (cplx& e : out.entries_) e *= s;
    return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r; c < cols_; ++c) {
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        }
    }
    return true;
}

cplx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("frobenius_inner: shape mismatch");
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        acc += std::conj(a.entries()[i]) * b.entries()[i];
    }
    return acc;
}

RealLinearSystem::RealLinearSystem(std::size_t w) : width(w) {
    if (width == 0) throw std::invalid_argument("RealLinearSystem: width must be >= 1");
}

void RealLinearSystem::add_row(std::vector<double> row) {
    if (row.size() != width) throw std::invalid_argument("RealLinearSystem: row width mismatch");
    require_finite(row);
    rows.push_back(std::move(row));
}

namespace {

void check_system(const RealLinearSystem& system, double tol) {
    if (system.width == 0) throw std::invalid_argument("nullspace: empty width");
    if (!(tol > 0.0)) throw std::invalid_argument("nullspace: tol must be > 0");
    for (const auto& row : system.rows) {
        if (row.size() != system.width) {
            throw std::invalid_argument("nullspace: row width mismatch");
        }
        require_finite(row);
    }
}

}  // namespace

std::vector<std::vector<double>> nullspace(const RealLinearSystem& system, double tol) {
    check_system(system, tol);
    const std::size_t w = system.width;
    const std::size_t m = system.rows.size();

    // B = Aᵗ (w × m); columns of B are the constraint rows.
    std::vector<std::vector<double>> b(w, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < w; ++j) b[j][i] = system.rows[i][j];
    }

    // Accumulate Qᵗ = H_t ⋯ H_1; its rows beyond the numerical rank span the
    // orthogonal complement of the row space of A.
    std::vector<std::vector<double>> qt(w, std::vector<double>(w, 0.0));
    for (std::size_t i = 0; i < w; ++i) qt[i][i] = 1.0;

    std::vector<double> rdiag;
    const std::size_t steps = std::min(w, m);
    for (std::size_t t = 0; t < steps; ++t) {
        // Column pivot: largest remaining column norm over rows t..w-1.
        std::size_t pivot = t;
        double best = -1.0;
        for (std::size_t c = t; c < m; ++c) {
            double s = 0.0;
            for (std::size_t r = t; r < w; ++r) s += b[r][c] * b[r][c];
            if (s > best) {
                best = s;
                pivot = c;
            }
        }
        if (best <= 0.0) break;  // remaining columns all zero
        if (pivot != t) {
            for (std::size_t r = 0; r < w; ++r) std::swap(b[r][t], b[r][pivot]);
        }

        // Householder reflector for column t.
        const double sigma = std::sqrt(best);
        std::vector<double> v(w - t, 0.0);
        for (std::size_t r = t; r < w; ++r) v[r - t] = b[r][t];
        const double sign = v[0] >= 0.0 ? 1.0 : -1.0;
        v[0] += sign * sigma;
        double vtv = 0.0;
        for (double x : v) vtv += x * x;
        if (vtv == 0.0) {
            rdiag.push_back(0.0);
            continue;
        }
        const double beta = 2.0 / vtv;

        auto reflect = [&](std::vector<std::vector<double>>& mat, std::size_t ncols,
                           std::size_t first_col) {
            for (std::size_t c = first_col; c < ncols; ++c) {
                double dot = 0.0;
                for (std::size_t r = t; r < w; ++r) dot += v[r - t] * mat[r][c];
                const double f = beta * dot;
                for (std::size_t r = t; r < w; ++r) mat[r][c] -= f * v[r - t];
            }
        };
        reflect(b, m, t);
        reflect(qt, w, 0);
        rdiag.push_back(b[t][t]);
    }

    double rmax = 0.0;
    for (double r : rdiag) rmax = std::max(rmax, std::abs(r));
    std::size_t rank = 0;
    if (rmax > 0.0) {
        for (double r : rdiag) {
            if (std::abs(r) > tol * rmax) ++rank;
        }
    }

    std::vector<std::vector<double>> basis;
    basis.reserve(w - rank);
    for (std::size_t r = rank; r < w; ++r) basis.push_back(qt[r]);

    // Canonical form: largest-magnitude component positive, sorted by its index.
    auto peak_index = [](const std::vector<double>& v) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (std::abs(v[i]) > best) {
                best = std::abs(v[i]);
                arg = i;
            }
        }
        return arg;
    };
    for (auto& v : basis) {
        if (v[peak_index(v)] < 0.0) {
            for (double& x : v) x = -x;
        }
    }
    std::stable_sort(basis.begin(), basis.end(),
                     [&](const std::vector<double>& a, const std::vector<double>& c) {
                         return peak_index(a) < peak_index(c);
                     });
    return basis;
}

std::size_t rank_oracle(const RealLinearSystem& system, double tol) {
    check_system(system, tol);
    const std::size_t w = system.width;
    const std::size_t m = system.rows.size();
    if (m == 0) return 0;

    std::vector<std::vector<double>> a = system.rows;
    double scale = 0.0;
    for (const auto& row : a) {
        for (double x : row) scale = std::max(scale, std::abs(x));
    }
    if (scale == 0.0) return 0;

    std::size_t rank = 0;
    for (std::size_t col = 0; col < w && rank < m; ++col) {
        std::size_t pivot = rank;
        for (std::size_t r = rank + 1; r < m; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) <= tol * scale) continue;
        std::swap(a[rank], a[pivot]);
        for (std::size_t r = rank + 1; r < m; ++r) {
            const double f = a[r][col] / a[rank][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < w; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace locclab
