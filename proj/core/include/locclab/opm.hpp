#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "locclab/densela.hpp"
#include "locclab/families.hpp"

namespace locclab {

/// Candidate M†M of an orthogonality-preserving measurement element on one
/// party's local space.
struct HermitianOperator {
    std::size_t dim = 0;
    ComplexMatrix matrix;
};

/// Throws unless h is square, matches its dim, and is Hermitian within tol.
void validate_hermitian(const HermitianOperator& h, double tol = 1e-12);

/// Real coordinates for a dim×dim Hermitian matrix: dim diagonal entries,
/// then for each pair j<k (lexicographic) the real and imaginary part of
/// entry (j,k). params → operator → params is the identity.
class HermitianParameterization {
  public:
    explicit HermitianParameterization(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t parameter_count() const { return dim_ * dim_; }

    HermitianOperator to_operator(const std::vector<double>& params) const;
    std::vector<double> from_operator(const HermitianOperator& h) const;

    std::size_t diag_index(std::size_t a) const;                   // 1-based a
    std::size_t real_index(std::size_t j, std::size_t k) const;    // 1-based, j<k
    std::size_t imag_index(std::size_t j, std::size_t k) const;

  private:
    std::size_t dim_;
};

/// ⟨a| E_party(H) |b⟩ where E_party embeds H on the named party and identity
/// elsewhere.
cplx pair_constraint_value(const SparseState& a, const SparseState& b, std::size_t party,
                           const HermitianOperator& h);

/// The real and imaginary rows of ⟨a| E_party(H) |b⟩ = 0 expanded over the
/// dim² real parameters of H. Rows that are identically zero (spectator
/// overlap zero) are omitted.
std::vector<std::vector<double>> pair_constraint_rows(const SparseState& a, const SparseState& b,
                                                      std::size_t party);

/// Stacks pair_constraint_rows over every unordered pair of family members.
RealLinearSystem build_constraints(const StateFamily& f, std::size_t party);

/// Frobenius-orthonormal basis of the Hermitian solutions of the party's
/// constraint system. The identity direction always lies in the returned
/// span; that is asserted internally.
std::vector<HermitianOperator> solution_space(const StateFamily& f, std::size_t party,
                                              double tol = kDefaultTol);

/// True iff every pairwise constraint |⟨φ_j|E_party(H)|φ_k⟩| is at most tol.
bool verify_witness(const StateFamily& f, std::size_t party, const HermitianOperator& h,
                    double tol = kDefaultTol);

/// Largest pairwise constraint residual of h on the family, for reporting.
double witness_residual(const StateFamily& f, std::size_t party, const HermitianOperator& h);

struct PartyCertificate {
    std::size_t party = 1;
    std::size_t dimension = 0;
    bool certified = false;  // dimension == 1: only trivial first measurements
    /// Unit-Frobenius-norm traceless solution, present iff dimension > 1.
    std::optional<HermitianOperator> witness;
};

/// Outcome of the first-measurement criterion: a party is certified when its
/// solution space is exactly span{identity}, i.e. no nontrivial
/// orthogonality-preserving measurement exists on that party in d×d.
struct NonlocalityReport {
    std::string family;
    double tol = kDefaultTol;
    bool certified = false;  // all parties certified
    std::vector<PartyCertificate> parties;
};

/// Runs solution_space for every party. Requires a pairwise orthogonal
/// family (otherwise not even the identity preserves orthogonality).
NonlocalityReport certify(const StateFamily& f, double tol = kDefaultTol);

}  // namespace locclab
