#include "locclab/opm.hpp"

#include <cmath>
#include <stdexcept>

namespace locclab {

namespace {

constexpr double kZeroRowThreshold = 1e-14;

// Complex coefficient matrix C with ⟨a|E_party(H)|b⟩ = Σ_{jk} C_{jk} H_{jk}.
ComplexMatrix pair_coefficients(const SparseState& a, const SparseState& b, std::size_t party) {
    if (!(a.layout() == b.layout())) {
        throw std::invalid_argument("pair constraint: layout mismatch");
    }
    if (party < 1 || party > a.layout().party_count()) {
        throw std::invalid_argument("pair constraint: party index out of range");
    }
    const std::size_t d = a.layout().dim(party);
    ComplexMatrix c(d, d);
    for (const Term& s : a.terms()) {
        for (const Term& t : b.terms()) {
            cplx spectator = std::conj(s.coeff) * t.coeff;
            for (std::size_t q = 1; q <= a.layout().party_count() && spectator != cplx{0.0, 0.0};
                 ++q) {
                if (q == party) continue;
                spectator *= ket_inner(s.factors[q - 1], t.factors[q - 1]);
            }
            if (spectator == cplx{0.0, 0.0}) continue;
            const LocalKet& u = s.factors[party - 1];
            const LocalKet& v = t.factors[party - 1];
            for (std::size_t j = 0; j < d; ++j) {
                const cplx uj = std::conj(u.amplitudes[j]);
                if (uj == cplx{0.0, 0.0}) continue;
                for (std::size_t k = 0; k < d; ++k) {
                    c(j, k) += spectator * uj * v.amplitudes[k];
                }
            }
        }
    }
    return c;
}

}  // namespace

void validate_hermitian(const HermitianOperator& h, double tol) {
    if (h.matrix.rows() != h.dim || h.matrix.cols() != h.dim) {
        throw std::invalid_argument("HermitianOperator: matrix shape does not match dim");
    }
    if (!h.matrix.is_hermitian(tol)) {
        throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
    }
}

HermitianParameterization::HermitianParameterization(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw std::invalid_argument("HermitianParameterization: dim must be >= 1");
}

std::size_t HermitianParameterization::diag_index(std::size_t a) const {
    if (a < 1 || a > dim_) throw std::invalid_argument("diag_index: out of range");
    return a - 1;
}

std::size_t HermitianParameterization::real_index(std::size_t j, std::size_t k) const {
    if (j < 1 || k <= j || k > dim_) throw std::invalid_argument("real_index: need 1 <= j < k <= dim");
    // pairs (1,2),(1,3),...,(1,d),(2,3),... in lexicographic order
    const std::size_t before = (j - 1) * dim_ - (j - 1) * j / 2;  // pairs with first < j
    const std::size_t rank = before + (k - j - 1);
    return dim_ + 2 * rank;
}

std::size_t HermitianParameterization::imag_index(std::size_t j, std::size_t k) const {
    return real_index(j, k) + 1;
}

HermitianOperator HermitianParameterization::to_operator(const std::vector<double>& params) const {
    if (params.size() != parameter_count()) {
        throw std::invalid_argument("to_operator: wrong parameter count");
    }
    ComplexMatrix m(dim_, dim_);
    for (std::size_t a = 1; a <= dim_; ++a) m(a - 1, a - 1) = params[diag_index(a)];
    for (std::size_t j = 1; j <= dim_; ++j) {
        for (std::size_t k = j + 1; k <= dim_; ++k) {
            const cplx v{params[real_index(j, k)], params[imag_index(j, k)]};
            m(j - 1, k - 1) = v;
            m(k - 1, j - 1) = std::conj(v);
        }
    }
    return HermitianOperator{dim_, std::move(m)};
}

std::vector<double> HermitianParameterization::from_operator(const HermitianOperator& h) const {
    validate_hermitian(h);
    if (h.dim != dim_) throw std::invalid_argument("from_operator: dimension mismatch");
    std::vector<double> params(parameter_count(), 0.0);
    for (std::size_t a = 1; a <= dim_; ++a) params[diag_index(a)] = h.matrix(a - 1, a - 1).real();
    for (std::size_t j = 1; j <= dim_; ++j) {
        for (std::size_t k = j + 1; k <= dim_; ++k) {
            params[real_index(j, k)] = h.matrix(j - 1, k - 1).real();
            params[imag_index(j, k)] = h.matrix(j - 1, k - 1).imag();
        }
    }
    return params;
}

cplx pair_constraint_value(const SparseState& a, const SparseState& b, std::size_t party,
                           const HermitianOperator& h) {
    const ComplexMatrix c = pair_coefficients(a, b, party);
    if (h.dim != c.rows()) throw std::invalid_argument("pair_constraint_value: dim mismatch");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < c.rows(); ++j) {
        for (std::size_t k = 0; k < c.cols(); ++k) acc += c(j, k) * h.matrix(j, k);
    }
    return acc;
}

std::vector<std::vector<double>> pair_constraint_rows(const SparseState& a, const SparseState& b,
                                                      std::size_t party) {
    const ComplexMatrix c = pair_coefficients(a, b, party);
    const std::size_t d = c.rows();
    const HermitianParameterization par(d);

    // Coefficient of each real parameter in Σ C_{jk} H_{jk}:
    //   h_aa → C_aa,   x_jk → C_jk + C_kj,   y_jk → i(C_jk - C_kj).
    std::vector<cplx> coef(par.parameter_count(), cplx{0.0, 0.0});
    for (std::size_t idx = 1; idx <= d; ++idx) coef[par.diag_index(idx)] = c(idx - 1, idx - 1);
    for (std::size_t j = 1; j <= d; ++j) {
        for (std::size_t k = j + 1; k <= d; ++k) {
            const cplx cjk = c(j - 1, k - 1);
            const cplx ckj = c(k - 1, j - 1);
            coef[par.real_index(j, k)] = cjk + ckj;
            coef[par.imag_index(j, k)] = cplx{0.0, 1.0} * (cjk - ckj);
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<double> re(par.parameter_count()), im(par.parameter_count());
    double re_max = 0.0, im_max = 0.0;
    for (std::size_t i = 0; i < coef.size(); ++i) {
        re[i] = coef[i].real();
        im[i] = coef[i].imag();
        re_max = std::max(re_max, std::abs(re[i]));
        im_max = std::max(im_max, std::abs(im[i]));
    }
    if (re_max > kZeroRowThreshold) rows.push_back(std::move(re));
    if (im_max > kZeroRowThreshold) rows.push_back(std::move(im));
    return rows;
}

RealLinearSystem build_constraints(const StateFamily& f, std::size_t party) {
    if (f.states.empty()) throw std::invalid_argument("build_constraints: empty family");
    const std::size_t d = f.layout.dim(party);
    RealLinearSystem system(d * d);
    for (std::size_t j = 0; j < f.states.size(); ++j) {
        for (std::size_t k = j + 1; k < f.states.size(); ++k) {
            for (auto& row : pair_constraint_rows(f.states[j], f.states[k], party)) {
                system.add_row(std::move(row));
            }
        }
    }
    return system;
}

std::vector<HermitianOperator> solution_space(const StateFamily& f, std::size_t party,
                                              double tol) {
    const std::size_t d = f.layout.dim(party);
    const HermitianParameterization par(d);
    RealLinearSystem system = build_constraints(f, party);

    // Rescale off-diagonal columns by √2 so the Euclidean metric on the
    // parameter vector coincides with the Frobenius metric on the operator;
    // the nullspace basis is then Frobenius-orthonormal as returned.
    const double root2 = std::sqrt(2.0);
    for (auto& row : system.rows) {
        for (std::size_t i = d; i < row.size(); ++i) row[i] /= root2;
    }
    const auto basis_vectors = nullspace(system, tol);

    std::vector<HermitianOperator> basis;
    basis.reserve(basis_vectors.size());
    for (const auto& q : basis_vectors) {
        std::vector<double> params = q;
        for (std::size_t i = d; i < params.size(); ++i) params[i] /= root2;
        basis.push_back(par.to_operator(params));
    }

    // The identity preserves any orthogonal family, so it must lie in the
    // span of the returned basis.
    ComplexMatrix residual = ComplexMatrix::identity(d);
    for (const HermitianOperator& h : basis) {
        residual = residual - frobenius_inner(h.matrix, residual) * h.matrix;
    }
    if (residual.frobenius_norm() > 1e-6 * std::sqrt(double(d))) {
        throw std::invalid_argument(
            "solution_space: identity is not a solution; family is not pairwise orthogonal");
    }
    return basis;
}

double witness_residual(const StateFamily& f, std::size_t party, const HermitianOperator& h) {
    double worst = 0.0;
    for (std::size_t j = 0; j < f.states.size(); ++j) {
        for (std::size_t k = j + 1; k < f.states.size(); ++k) {
            worst = std::max(
                worst, std::abs(pair_constraint_value(f.states[j], f.states[k], party, h)));
        }
    }
    return worst;
}

bool verify_witness(const StateFamily& f, std::size_t party, const HermitianOperator& h,
                    double tol) {
    validate_hermitian(h);
    if (h.dim != f.layout.dim(party)) {
        throw std::invalid_argument("verify_witness: dimension mismatch");
    }
    return witness_residual(f, party, h) <= tol;
}

NonlocalityReport certify(const StateFamily& f, double tol) {
    const OrthogonalityReport ortho = check_orthogonality(f);
    if (!ortho.pass) {
        throw std::invalid_argument("certify: family is not pairwise orthogonal");
    }

    NonlocalityReport report;
    report.family = f.name;
    report.tol = tol;
    report.certified = true;
    for (std::size_t party = 1; party <= f.layout.party_count(); ++party) {
        const std::size_t d = f.layout.dim(party);
        PartyCertificate cert;
        cert.party = party;
        const auto basis = solution_space(f, party, tol);
        cert.dimension = basis.size();
        cert.certified = cert.dimension == 1;
        if (!cert.certified) {
            // Witness: the basis element with the largest trace-orthogonal
            // component, re-orthogonalized against identity and normalized.
            const ComplexMatrix id = ComplexMatrix::identity(d);
            std::size_t best = 0;
            double best_norm = -1.0;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                const ComplexMatrix traceless =
                    basis[i].matrix - (basis[i].matrix.trace() / double(d)) * id;
                const double norm = traceless.frobenius_norm();
                if (norm > best_norm) {
                    best_norm = norm;
                    best = i;
                }
            }
            ComplexMatrix w = basis[best].matrix - (basis[best].matrix.trace() / double(d)) * id;
            w = (1.0 / w.frobenius_norm()) * w;
            cert.witness = HermitianOperator{d, std::move(w)};
            report.certified = false;
        }
        report.parties.push_back(std::move(cert));
    }
    return report;
}

}  // namespace locclab
