#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace locclab {

using cplx = std::complex<double>;

/// Default relative tolerance for rank decisions. The state families handled
/// here only involve amplitudes 0, ±1/√2, 1/√d, so the constraint systems are
/// well conditioned and any tolerance below ~1e-6 certifies the same
/// dimensions.
inline constexpr double kDefaultTol = 1e-9;

/// Dense complex matrix, row-major storage. Constructors reject non-finite
/// entries.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<cplx>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// Matrix-vector product; v.size() must equal cols().
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

    bool is_hermitian(double tol) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

/// Frobenius inner product tr(a† b).
cplx frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Homogeneous real linear system A·x = 0. Rows are accumulated as
/// coefficient vectors of a fixed common width.
struct RealLinearSystem {
    explicit RealLinearSystem(std::size_t width);

    std::size_t width;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    std::size_t row_count() const { return rows.size(); }
};

/// Orthonormal basis of the solution space of A·x = 0.
///
/// Uses a column-pivoted Householder QR of Aᵗ; directions whose R-diagonal
/// magnitude is at most tol times the largest count as null. The basis is
/// returned as pairwise orthogonal unit vectors, each with its
/// largest-magnitude component positive, sorted by the index of that
/// component.
std::vector<std::vector<double>> nullspace(const RealLinearSystem& system, double tol);

/// Numerical rank by Gaussian elimination with partial pivoting, a different
/// elimination strategy than nullspace(). Used as an independent cross-check
/// in tests.
std::size_t rank_oracle(const RealLinearSystem& system, double tol);

}  // namespace locclab
