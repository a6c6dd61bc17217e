#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "locclab/densela.hpp"

namespace locclab {

/// Local dimensions of an n-party system, one entry per party. Parties are
/// numbered 1..n throughout the public interface.
class PartyLayout {
  public:
    explicit PartyLayout(std::vector<std::size_t> dims);

    std::size_t party_count() const { return dims_.size(); }
    std::size_t dim(std::size_t party) const;  // 1-based
    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t total_dimension() const;

    bool operator==(const PartyLayout& other) const { return dims_ == other.dims_; }

  private:
    std::vector<std::size_t> dims_;
};

/// One party's pure local state: amplitudes[q] is the coefficient of |q+1⟩.
struct LocalKet {
    std::size_t dim = 0;
    std::vector<cplx> amplitudes;

    double norm() const;
};

/// ⟨a|b⟩ on a single party.
cplx ket_inner(const LocalKet& a, const LocalKet& b);

/// Computational basis ket |index⟩, 1-based.
LocalKet basis_ket(std::size_t dim, std::size_t index);

/// (|i⟩ + sign·|j⟩)/√2 with i ≠ j, 1-based; sign is +1 or -1.
LocalKet super_ket(std::size_t dim, std::size_t i, std::size_t j, int sign);

/// One elementary tensor term: coeff · (factor_1 ⊗ ... ⊗ factor_n).
struct Term {
    cplx coeff;
    std::vector<LocalKet> factors;
};

/// Multipartite pure state as a weighted sum of elementary tensor terms.
/// Every state handled here has one or two terms, so inner products stay
/// cheap and structurally exact at any (n, d).
class SparseState {
  public:
    SparseState(PartyLayout layout, std::vector<Term> terms);

    const PartyLayout& layout() const { return layout_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    double norm_squared() const;
    SparseState normalized() const;
    SparseState scaled(cplx factor) const;

  private:
    SparseState() = default;
    PartyLayout layout_{std::vector<std::size_t>{2, 2}};
    std::vector<Term> terms_;

    friend std::pair<SparseState, double> apply_projector(const SparseState&,
                                                          const struct LocalProjector&);
};

/// Single-term product state.
SparseState product_state(PartyLayout layout, std::vector<LocalKet> factors);

/// ca·a + cb·b by term concatenation (same layout required).
SparseState superpose(cplx ca, const SparseState& a, cplx cb, const SparseState& b);

/// ⟨a|b⟩ = Σ over term pairs of conj(c_a)·c_b·Π over parties of local overlaps.
cplx inner(const SparseState& a, const SparseState& b);

/// True when a and b span the same ray: |⟨a|b⟩|² = ‖a‖²·‖b‖² within tol.
bool same_ray(const SparseState& a, const SparseState& b, double tol = 1e-9);

/// Orthogonal projector acting on one party's local space.
struct LocalProjector {
    std::size_t party = 1;  // 1-based
    std::size_t dim = 0;
    ComplexMatrix matrix;
};

/// Σ_k |k⟩⟨k| over the given orthonormal kets (all on the same dimension).
LocalProjector projector_onto(std::size_t party, const std::vector<LocalKet>& kets);

/// Throws unless P is Hermitian and idempotent within tol.
void validate_projector(const LocalProjector& p, double tol = 1e-12);

/// A complete set of pairwise orthogonal projectors on one party.
struct LocalMeasurement {
    std::size_t party = 1;  // 1-based
    std::vector<LocalProjector> projectors;
};

/// Throws unless the projectors are valid, pairwise orthogonal, and sum to
/// the identity on the given dimension within tol.
void validate_measurement(const LocalMeasurement& m, std::size_t dim, double tol = 1e-12);

/// Applies p to the named party of every term. Returns the unnormalized
/// projected state (zero-magnitude terms pruned) and its squared norm, which
/// is the outcome probability when the input is normalized.
std::pair<SparseState, double> apply_projector(const SparseState& s, const LocalProjector& p);

/// Doubles the named party's local dimension by tensoring every factor with
/// the ancilla qubit w0·|0⟩ + w1·|1⟩. Basis ordering: (x, a) ↦ 2(x-1)+a+1 for
/// local index x and ancilla bit a, both 1-based on the left.
SparseState extend_party(const SparseState& s, std::size_t party, cplx w0, cplx w1);

/// Extended-space computational ket |x, a⟩ under the same ordering.
LocalKet extended_basis_ket(std::size_t base_dim, std::size_t x, int ancilla_bit);

}  // namespace locclab
