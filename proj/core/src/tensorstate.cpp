#include "locclab/tensorstate.hpp"

#include <cmath>
#include <stdexcept>

namespace locclab {

namespace {

constexpr double kTermPruneThreshold = 1e-14;

void require_finite_ket(const LocalKet& k) {
    if (k.amplitudes.size() != k.dim) {
        throw std::invalid_argument("LocalKet: amplitude count does not match dim");
    }
    for (const cplx& a : k.amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("LocalKet: non-finite amplitude");
        }
    }
}

}  // namespace

PartyLayout::PartyLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2) throw std::invalid_argument("PartyLayout: need at least 2 parties");
    for (std::size_t d : dims_) {
        if (d < 2) throw std::invalid_argument("PartyLayout: every local dimension must be >= 2");
    }
}

std::size_t PartyLayout::dim(std::size_t party) const {
    if (party < 1 || party > dims_.size()) {
        throw std::invalid_argument("PartyLayout: party index out of range");
    }
    return dims_[party - 1];
}

std::size_t PartyLayout::total_dimension() const {
    std::size_t t = 1;
    for (std::size_t d : dims_) t *= d;
    return t;
}

double LocalKet::norm() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return std::sqrt(s);
}

cplx ket_inner(const LocalKet& a, const LocalKet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("ket_inner: dimension mismatch");
    cplx acc = 0.0;
    for (std::size_t q = 0; q < a.dim; ++q) acc += std::conj(a.amplitudes[q]) * b.amplitudes[q];
    return acc;
}

LocalKet basis_ket(std::size_t dim, std::size_t index) {
    if (index < 1 || index > dim) throw std::invalid_argument("basis_ket: index out of range");
    LocalKet k{dim, std::vector<cplx>(dim, cplx{0.0, 0.0})};
    k.amplitudes[index - 1] = 1.0;
    return k;
}

LocalKet super_ket(std::size_t dim, std::size_t i, std::size_t j, int sign) {
    if (i == j) throw std::invalid_argument("super_ket: i and j must differ");
    if (i < 1 || i > dim || j < 1 || j > dim) {
        throw std::invalid_argument("super_ket: index out of range");
    }
    if (sign != 1 && sign != -1) throw std::invalid_argument("super_ket: sign must be +1 or -1");
    const double amp = 1.0 / std::sqrt(2.0);
    LocalKet k{dim, std::vector<cplx>(dim, cplx{0.0, 0.0})};
    k.amplitudes[i - 1] = amp;
    k.amplitudes[j - 1] = sign > 0 ? amp : -amp;
    return k;
}

SparseState::SparseState(PartyLayout layout, std::vector<Term> terms)
    : layout_(std::move(layout)), terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("SparseState: need at least one term");
    for (const Term& t : terms_) {
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
            throw std::invalid_argument("SparseState: non-finite coefficient");
        }
        if (t.factors.size() != layout_.party_count()) {
            throw std::invalid_argument("SparseState: factor count does not match party count");
        }
        for (std::size_t p = 0; p < t.factors.size(); ++p) {
            require_finite_ket(t.factors[p]);
            if (t.factors[p].dim != layout_.dims()[p]) {
                throw std::invalid_argument("SparseState: factor dimension does not match layout");
            }
        }
    }
}

double SparseState::norm_squared() const {
    if (terms_.empty()) return 0.0;
    return inner(*this, *this).real();
}

SparseState SparseState::normalized() const {
    const double n2 = norm_squared();
    if (n2 <= 0.0) throw std::invalid_argument("SparseState: cannot normalize zero state");
    return scaled(1.0 / std::sqrt(n2));
}

SparseState SparseState::scaled(cplx factor) const {
    SparseState out = *this;
    for (Term& t : out.terms_) t.coeff *= factor;
    return out;
}

SparseState product_state(PartyLayout layout, std::vector<LocalKet> factors) {
    std::vector<Term> terms;
    terms.push_back(Term{cplx{1.0, 0.0}, std::move(factors)});
    return SparseState(std::move(layout), std::move(terms));
}

SparseState superpose(cplx ca, const SparseState& a, cplx cb, const SparseState& b) {
    if (!(a.layout() == b.layout())) throw std::invalid_argument("superpose: layout mismatch");
    std::vector<Term> terms;
    terms.reserve(a.terms().size() + b.terms().size());
    for (const Term& t : a.terms()) terms.push_back(Term{ca * t.coeff, t.factors});
    for (const Term& t : b.terms()) terms.push_back(Term{cb * t.coeff, t.factors});
    return SparseState(a.layout(), std::move(terms));
}

cplx inner(const SparseState& a, const SparseState& b) {
    if (!(a.layout() == b.layout())) throw std::invalid_argument("inner: layout mismatch");
    cplx acc = 0.0;
    for (const Term& s : a.terms()) {
        for (const Term& t : b.terms()) {
            cplx overlap = std::conj(s.coeff) * t.coeff;
            for (std::size_t p = 0; p < s.factors.size() && overlap != cplx{0.0, 0.0}; ++p) {
                overlap *= ket_inner(s.factors[p], t.factors[p]);
            }
            acc += overlap;
        }
    }
    return acc;
}

bool same_ray(const SparseState& a, const SparseState& b, double tol) {
    const double lhs = std::norm(inner(a, b));
    const double rhs = a.norm_squared() * b.norm_squared();
    return std::abs(lhs - rhs) <= tol && rhs > tol;
}

LocalProjector projector_onto(std::size_t party, const std::vector<LocalKet>& kets) {
    if (kets.empty()) throw std::invalid_argument("projector_onto: need at least one ket");
    const std::size_t dim = kets.front().dim;
    ComplexMatrix m(dim, dim);
    for (const LocalKet& k : kets) {
        if (k.dim != dim) throw std::invalid_argument("projector_onto: mixed dimensions");
        for (std::size_t r = 0; r < dim; ++r) {
            for (std::size_t c = 0; c < dim; ++c) {
                m(r, c) += k.amplitudes[r] * std::conj(k.amplitudes[c]);
            }
        }
    }
    return LocalProjector{party, dim, std::move(m)};
}

void validate_projector(const LocalProjector& p, double tol) {
    if (p.matrix.rows() != p.dim || p.matrix.cols() != p.dim) {
        throw std::invalid_argument("LocalProjector: matrix shape does not match dim");
    }
    if (!p.matrix.is_hermitian(tol)) throw std::invalid_argument("LocalProjector: not Hermitian");
    const ComplexMatrix diff = p.matrix * p.matrix - p.matrix;
    if (diff.max_abs() > tol) throw std::invalid_argument("LocalProjector: not idempotent");
}

void validate_measurement(const LocalMeasurement& m, std::size_t dim, double tol) {
    if (m.projectors.empty()) throw std::invalid_argument("LocalMeasurement: no projectors");
    ComplexMatrix sum(dim, dim);
    for (const LocalProjector& p : m.projectors) {
        if (p.party != m.party) {
            throw std::invalid_argument("LocalMeasurement: projector party mismatch");
        }
        if (p.dim != dim) throw std::invalid_argument("LocalMeasurement: projector dim mismatch");
        validate_projector(p, tol);
        sum = sum + p.matrix;
    }
    if ((sum - ComplexMatrix::identity(dim)).max_abs() > tol) {
        throw std::invalid_argument("LocalMeasurement: projectors do not sum to identity");
    }
    for (std::size_t a = 0; a < m.projectors.size(); ++a) {
        for (std::size_t b = a + 1; b < m.projectors.size(); ++b) {
            if ((m.projectors[a].matrix * m.projectors[b].matrix).max_abs() > tol) {
                throw std::invalid_argument("LocalMeasurement: projectors not pairwise orthogonal");
            }
        }
    }
}

std::pair<SparseState, double> apply_projector(const SparseState& s, const LocalProjector& p) {
    const std::size_t party = p.party;
    if (party < 1 || party > s.layout().party_count()) {
        throw std::invalid_argument("apply_projector: party index out of range");
    }
    if (p.dim != s.layout().dim(party)) {
        throw std::invalid_argument("apply_projector: projector dimension mismatch");
    }

    SparseState out;
    out.layout_ = s.layout();
    for (const Term& t : s.terms()) {
        Term nt = t;
        LocalKet& f = nt.factors[party - 1];
        f.amplitudes = p.matrix.apply(f.amplitudes);
        if (std::abs(nt.coeff) * f.norm() <= kTermPruneThreshold) continue;
        out.terms_.push_back(std::move(nt));
    }
    return {out, out.norm_squared()};
}

SparseState extend_party(const SparseState& s, std::size_t party, cplx w0, cplx w1) {
    if (party < 1 || party > s.layout().party_count()) {
        throw std::invalid_argument("extend_party: party index out of range");
    }
    std::vector<std::size_t> dims = s.layout().dims();
    const std::size_t base = dims[party - 1];
    dims[party - 1] = base * 2;

    std::vector<Term> terms;
    terms.reserve(s.terms().size());
    for (const Term& t : s.terms()) {
        Term nt = t;
        const LocalKet& f = t.factors[party - 1];
        LocalKet ext{base * 2, std::vector<cplx>(base * 2, cplx{0.0, 0.0})};
        for (std::size_t q = 0; q < base; ++q) {
            ext.amplitudes[2 * q] = f.amplitudes[q] * w0;
            ext.amplitudes[2 * q + 1] = f.amplitudes[q] * w1;
        }
        nt.factors[party - 1] = std::move(ext);
        terms.push_back(std::move(nt));
    }
    return SparseState(PartyLayout(std::move(dims)), std::move(terms));
}

LocalKet extended_basis_ket(std::size_t base_dim, std::size_t x, int ancilla_bit) {
    if (x < 1 || x > base_dim) throw std::invalid_argument("extended_basis_ket: x out of range");
    if (ancilla_bit != 0 && ancilla_bit != 1) {
        throw std::invalid_argument("extended_basis_ket: ancilla bit must be 0 or 1");
    }
    return basis_ket(base_dim * 2, 2 * (x - 1) + static_cast<std::size_t>(ancilla_bit) + 1);
}

}  // namespace locclab
