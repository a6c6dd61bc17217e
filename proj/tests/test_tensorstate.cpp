#include <cmath>
#include <random>
#include <stdexcept>

#include "dense_oracle.hpp"
#include "doctest.h"
#include "locclab/tensorstate.hpp"

using namespace locclab;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PartyLayout layout333() { return PartyLayout({3, 3, 3}); }

// |1⟩|2⟩|1+2⟩, the first state of the (3,3) family.
SparseState phi1() {
    return product_state(layout333(), {basis_ket(3, 1), basis_ket(3, 2), super_ket(3, 1, 2, +1)});
}

SparseState random_state(std::mt19937& rng, const PartyLayout& layout, std::size_t terms) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<Term> term_list;
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<LocalKet> factors;
        for (std::size_t d : layout.dims()) {
            LocalKet k{d, std::vector<cplx>(d)};
            for (cplx& a : k.amplitudes) a = cplx{coef(rng), coef(rng)};
            const double norm = k.norm();
            for (cplx& a : k.amplitudes) a /= norm;
            factors.push_back(std::move(k));
        }
        term_list.push_back(Term{cplx{coef(rng), coef(rng)}, std::move(factors)});
    }
    return SparseState(layout, std::move(term_list));
}

// Random complete projective measurement: Gram-Schmidt a random basis, then
// group the basis kets into blocks.
LocalMeasurement random_measurement(std::mt19937& rng, std::size_t party, std::size_t dim) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<LocalKet> basis;
    while (basis.size() < dim) {
        LocalKet k{dim, std::vector<cplx>(dim)};
        for (cplx& a : k.amplitudes) a = cplx{coef(rng), coef(rng)};
        for (const LocalKet& prev : basis) {
            const cplx overlap = ket_inner(prev, k);
            for (std::size_t q = 0; q < dim; ++q) k.amplitudes[q] -= overlap * prev.amplitudes[q];
        }
        const double norm = k.norm();
        if (norm < 1e-3) continue;
        for (cplx& a : k.amplitudes) a /= norm;
        basis.push_back(std::move(k));
    }
    LocalMeasurement m{party, {}};
    std::uniform_int_distribution<std::size_t> split(1, dim);
    std::size_t start = 0;
    while (start < dim) {
        const std::size_t len = std::min(split(rng), dim - start);
        std::vector<LocalKet> group(basis.begin() + start, basis.begin() + start + len);
        m.projectors.push_back(projector_onto(party, group));
        start += len;
    }
    return m;
}

}  // namespace

TEST_CASE("basis_ket matches the 1-based convention") {
    CHECK(basis_ket(3, 1).amplitudes == std::vector<cplx>{1.0, 0.0, 0.0});
    CHECK(basis_ket(3, 3).amplitudes == std::vector<cplx>{0.0, 0.0, 1.0});
    CHECK(basis_ket(2, 2).amplitudes == std::vector<cplx>{0.0, 1.0});
    CHECK_THROWS_AS(basis_ket(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(basis_ket(3, 4), std::invalid_argument);
}

TEST_CASE("super_ket builds (|i⟩ ± |j⟩)/√2") {
    const LocalKet plus = super_ket(3, 1, 2, +1);
    CHECK(plus.amplitudes[0].real() == doctest::Approx(kInvSqrt2));
    CHECK(plus.amplitudes[1].real() == doctest::Approx(kInvSqrt2));
    CHECK(plus.amplitudes[2] == cplx{0.0, 0.0});

    const LocalKet minus = super_ket(3, 1, 3, -1);
    CHECK(minus.amplitudes[0].real() == doctest::Approx(kInvSqrt2));
    CHECK(minus.amplitudes[1] == cplx{0.0, 0.0});
    CHECK(minus.amplitudes[2].real() == doctest::Approx(-kInvSqrt2));

    for (std::size_t d = 2; d <= 6; ++d) {
        for (std::size_t i = 2; i <= d; ++i) {
            CHECK(std::abs(ket_inner(super_ket(d, 1, i, +1), super_ket(d, 1, i, -1))) <= 1e-15);
            CHECK(super_ket(d, 1, i, +1).norm() == doctest::Approx(1.0));
        }
    }
    CHECK_THROWS_AS(super_ket(3, 2, 2, +1), std::invalid_argument);
    CHECK_THROWS_AS(super_ket(3, 1, 4, +1), std::invalid_argument);
    CHECK_THROWS_AS(super_ket(3, 1, 2, 0), std::invalid_argument);
}

TEST_CASE("inner products of family-style states") {
    const SparseState s1 = phi1();
    CHECK(inner(s1, s1).real() == doctest::Approx(1.0));

    // |2⟩|1+2⟩|1⟩ vs |3⟩|1+3⟩|1⟩: orthogonal via the first factor
    const SparseState s5 =
        product_state(layout333(), {basis_ket(3, 2), super_ket(3, 1, 2, +1), basis_ket(3, 1)});
    const SparseState s7 =
        product_state(layout333(), {basis_ket(3, 3), super_ket(3, 1, 3, +1), basis_ket(3, 1)});
    CHECK(std::abs(inner(s5, s7)) == 0.0);
    CHECK(std::abs(testutil::dense_inner(s5, s7)) == 0.0);

    CHECK_THROWS_AS(inner(s1, product_state(PartyLayout({2, 2}), {basis_ket(2, 1), basis_ket(2, 1)})),
                    std::invalid_argument);
}

TEST_CASE("two-term resource-attached pair stays orthogonal") {
    // (|i,0⟩|1,0 ± i,0⟩ + |i,1⟩|1,1 ± i,1⟩)/√2 on a 3×6×6 layout, i = 2.
    const PartyLayout ext({3, 6, 6});
    auto build = [&](int sign) {
        auto ket_pair = [&](std::size_t x1, int b1, std::size_t x2, int b2, int s) {
            LocalKet k{6, std::vector<cplx>(6, cplx{0.0, 0.0})};
            k.amplitudes[2 * (x1 - 1) + std::size_t(b1)] = kInvSqrt2;
            k.amplitudes[2 * (x2 - 1) + std::size_t(b2)] += double(s) * kInvSqrt2;
            return k;
        };
        const SparseState t0 = product_state(
            ext, {basis_ket(3, 1), extended_basis_ket(3, 2, 0), ket_pair(1, 0, 2, 0, sign)});
        const SparseState t1 = product_state(
            ext, {basis_ket(3, 1), extended_basis_ket(3, 2, 1), ket_pair(1, 1, 2, 1, sign)});
        return superpose(kInvSqrt2, t0, kInvSqrt2, t1);
    };
    const SparseState plus = build(+1);
    const SparseState minus = build(-1);
    CHECK(plus.norm_squared() == doctest::Approx(1.0));
    CHECK(std::abs(inner(plus, minus)) <= 1e-15);
    CHECK(std::abs(testutil::dense_inner(plus, minus)) <= 1e-15);
}

TEST_CASE("property: inner is conjugate-symmetric and matches the dense oracle") {
    std::mt19937 rng(99);
    const PartyLayout layout({3, 2, 4});
    for (int trial = 0; trial < 50; ++trial) {
        const SparseState a = random_state(rng, layout, 1 + trial % 2);
        const SparseState b = random_state(rng, layout, 1 + (trial / 2) % 2);
        const cplx ab = inner(a, b);
        const cplx ba = inner(b, a);
        CHECK(std::abs(ab - std::conj(ba)) <= 1e-12);
        CHECK(std::abs(ab - testutil::dense_inner(a, b)) <= 1e-12);
    }
}

TEST_CASE("apply_projector on the first family state") {
    const SparseState s1 = phi1();
    const LocalProjector p2 = projector_onto(1, {basis_ket(3, 3)});
    const auto [annihilated, w0] = apply_projector(s1, p2);
    CHECK(w0 == 0.0);
    CHECK(annihilated.is_zero());

    const LocalProjector p1 = projector_onto(1, {basis_ket(3, 1), basis_ket(3, 2)});
    const auto [kept, w1] = apply_projector(s1, p1);
    CHECK(w1 == doctest::Approx(1.0));
    CHECK(same_ray(kept, s1, 1e-12));

    CHECK_THROWS_AS(apply_projector(s1, projector_onto(1, {basis_ket(2, 1)})),
                    std::invalid_argument);
}

TEST_CASE("ancilla split measurement halves the resource-attached state") {
    // resource attached to |1⟩|2⟩|1+2⟩ across parties 2 and 3
    const SparseState s = phi1();
    const SparseState bit0 = extend_party(extend_party(s, 2, 1.0, 0.0), 3, 1.0, 0.0);
    const SparseState bit1 = extend_party(extend_party(s, 2, 0.0, 1.0), 3, 0.0, 1.0);
    const SparseState attached = superpose(kInvSqrt2, bit0, kInvSqrt2, bit1);
    CHECK(attached.norm_squared() == doctest::Approx(1.0));

    // party 3 keeps |1,0⟩ and |i,1⟩ for i = 2, 3
    const LocalProjector r1 = projector_onto(
        3, {extended_basis_ket(3, 1, 0), extended_basis_ket(3, 2, 1), extended_basis_ket(3, 3, 1)});
    const auto [projected, weight] = apply_projector(attached, r1);
    CHECK(weight == doctest::Approx(0.5));

    // expected: (|2,0⟩|1,0⟩ + |2,1⟩|2,1⟩)/√2 with |1⟩ on party 1
    const PartyLayout ext({3, 6, 6});
    const SparseState target = superpose(
        kInvSqrt2,
        product_state(ext, {basis_ket(3, 1), extended_basis_ket(3, 2, 0), extended_basis_ket(3, 1, 0)}),
        kInvSqrt2,
        product_state(ext, {basis_ket(3, 1), extended_basis_ket(3, 2, 1), extended_basis_ket(3, 2, 1)}));
    CHECK(same_ray(projected, target, 1e-12));
}

TEST_CASE("extend_party follows the (x, a) ordering") {
    SparseState s = product_state(PartyLayout({3, 2}), {basis_ket(3, 1), basis_ket(2, 1)});
    SparseState e0 = extend_party(s, 1, 1.0, 0.0);
    CHECK(e0.layout().dim(1) == 6);
    CHECK(e0.terms().front().factors[0].amplitudes[0] == cplx{1.0, 0.0});

    s = product_state(PartyLayout({3, 2}), {basis_ket(3, 3), basis_ket(2, 1)});
    SparseState e5 = extend_party(s, 1, 0.0, 1.0);
    CHECK(e5.terms().front().factors[0].amplitudes[5] == cplx{1.0, 0.0});

    s = product_state(PartyLayout({3, 2}), {super_ket(3, 1, 2, +1), basis_ket(2, 1)});
    SparseState esup = extend_party(s, 1, 1.0, 0.0);
    CHECK(esup.terms().front().factors[0].amplitudes[0].real() == doctest::Approx(kInvSqrt2));
    CHECK(esup.terms().front().factors[0].amplitudes[2].real() == doctest::Approx(kInvSqrt2));
    CHECK(esup.terms().front().factors[0].amplitudes[1] == cplx{0.0, 0.0});

    CHECK_THROWS_AS(extend_party(s, 5, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("property: complete measurements conserve probability") {
    std::mt19937 rng(4242);
    const PartyLayout layout({3, 4, 2});
    for (int trial = 0; trial < 40; ++trial) {
        const SparseState s = random_state(rng, layout, 1 + trial % 2).normalized();
        const std::size_t party = 1 + trial % 3;
        const LocalMeasurement m = random_measurement(rng, party, layout.dim(party));
        validate_measurement(m, layout.dim(party));
        double total = 0.0;
        for (const LocalProjector& p : m.projectors) total += apply_projector(s, p).second;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("projector idempotence lifts to states") {
    std::mt19937 rng(7);
    const PartyLayout layout({3, 3});
    const SparseState s = random_state(rng, layout, 2).normalized();
    const LocalProjector p = projector_onto(2, {basis_ket(3, 1), super_ket(3, 2, 3, -1)});
    const auto [once, w_once] = apply_projector(s, p);
    const auto [twice, w_twice] = apply_projector(once, p);
    CHECK(w_once == doctest::Approx(w_twice).epsilon(1e-12));
    if (!once.is_zero()) CHECK(same_ray(once, twice, 1e-12));
}

TEST_CASE("measurement validation rejects broken inputs") {
    // incomplete set: only |1⟩⟨1| on a qutrit
    LocalMeasurement incomplete{1, {projector_onto(1, {basis_ket(3, 1)})}};
    CHECK_THROWS_AS(validate_measurement(incomplete, 3), std::invalid_argument);

    // non-idempotent matrix
    LocalProjector bad{1, 2, ComplexMatrix(2, 2, {cplx{0.5, 0.0}, cplx{0.0, 0.0},
                                                  cplx{0.0, 0.0}, cplx{0.5, 0.0}})};
    CHECK_THROWS_AS(validate_projector(bad), std::invalid_argument);

    // overlapping projectors
    LocalMeasurement overlapping{
        1,
        {projector_onto(1, {basis_ket(2, 1)}), projector_onto(1, {super_ket(2, 1, 2, +1)})}};
    CHECK_THROWS_AS(validate_measurement(overlapping, 2), std::invalid_argument);

    // the two-outcome qutrit measurement {|1⟩⟨1|+|2⟩⟨2|, |3⟩⟨3|} is valid
    LocalMeasurement eq4{
        2,
        {projector_onto(2, {basis_ket(3, 1), basis_ket(3, 2)}), projector_onto(2, {basis_ket(3, 3)})}};
    CHECK_NOTHROW(validate_measurement(eq4, 3));
}

TEST_CASE("state construction validation") {
    CHECK_THROWS_AS(PartyLayout({3}), std::invalid_argument);
    CHECK_THROWS_AS(PartyLayout({3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(SparseState(layout333(), {}), std::invalid_argument);
    CHECK_THROWS_AS(product_state(layout333(), {basis_ket(3, 1), basis_ket(3, 1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(product_state(layout333(), {basis_ket(3, 1), basis_ket(2, 1), basis_ket(3, 1)}),
                    std::invalid_argument);
}
