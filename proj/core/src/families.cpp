#include "locclab/families.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace locclab {

std::string main_family_label(std::size_t block, std::size_t i, int sign, std::size_t d) {
    const std::size_t k = i - 1;
    const std::size_t l = sign > 0 ? 2 * (block - 1) : 2 * block - 1;
    return "phi_" + std::to_string(l * (d - 1) + k);
}

namespace {

SparseState all_ones_with(std::size_t n, std::size_t d, std::size_t i_party, const LocalKet& i_ket,
                          std::size_t s_party, const LocalKet& s_ket) {
    std::vector<LocalKet> factors;
    factors.reserve(n);
    for (std::size_t p = 1; p <= n; ++p) {
        if (p == i_party) {
            factors.push_back(i_ket);
        } else if (p == s_party) {
            factors.push_back(s_ket);
        } else {
            factors.push_back(basis_ket(d, 1));
        }
    }
    return product_state(PartyLayout(std::vector<std::size_t>(n, d)), std::move(factors));
}

SparseState computational(const std::vector<std::size_t>& indices, std::size_t d) {
    std::vector<LocalKet> factors;
    factors.reserve(indices.size());
    for (std::size_t idx : indices) factors.push_back(basis_ket(d, idx));
    return product_state(PartyLayout(std::vector<std::size_t>(indices.size(), d)),
                         std::move(factors));
}

std::string computational_label(const std::vector<std::size_t>& indices) {
    std::string label = "c_";
    for (std::size_t idx : indices) label += std::to_string(idx);
    return label;
}

void require_main_params(std::size_t n, std::size_t d) {
    if (n < 3) throw std::invalid_argument("family generator: need n >= 3");
    if (d < 2) throw std::invalid_argument("family generator: need d >= 2");
}

// Positions of the |i⟩ factor and the |1±i⟩ factor for block m.
std::pair<std::size_t, std::size_t> block_positions(std::size_t m, std::size_t n) {
    if (m <= n - 1) return {n - m, n - m + 1};
    return {n, 1};  // block n wraps: |1±i⟩ at party 1, |i⟩ at party n
}

}  // namespace

StateFamily gen_main_family(std::size_t n, std::size_t d) {
    require_main_params(n, d);
    StateFamily f{"main", PartyLayout(std::vector<std::size_t>(n, d)), {}, {}};
    f.states.reserve(2 * n * (d - 1));
    for (std::size_t m = 1; m <= n; ++m) {
        const auto [i_party, s_party] = block_positions(m, n);
        for (std::size_t i = 2; i <= d; ++i) {
            for (int sign : {+1, -1}) {
                f.states.push_back(all_ones_with(n, d, i_party, basis_ket(d, i), s_party,
                                                 super_ket(d, 1, i, sign)));
                f.labels.push_back(main_family_label(m, i, sign, d));
            }
        }
    }
    return f;
}

StateFamily gen_example1_completion() {
    static const std::array<std::array<std::size_t, 3>, 15> kCells = {{
        {1, 1, 1}, {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 2, 2},
        {2, 2, 3}, {2, 3, 1}, {2, 3, 2}, {2, 3, 3}, {3, 1, 2},
        {3, 2, 1}, {3, 2, 2}, {3, 2, 3}, {3, 3, 2}, {3, 3, 3},
    }};
    StateFamily f{"example1", PartyLayout({3, 3, 3}), {}, {}};
    for (const auto& cell : kCells) {
        const std::vector<std::size_t> idx(cell.begin(), cell.end());
        f.states.push_back(computational(idx, 3));
        f.labels.push_back(computational_label(idx));
    }
    return f;
}

StateFamily gen_basis1() {
    StateFamily f = gen_main_family(3, 3);
    f.name = "basis1";
    StateFamily completion = gen_example1_completion();
    for (std::size_t i = 0; i < completion.size(); ++i) {
        f.states.push_back(completion.states[i]);
        f.labels.push_back(completion.labels[i]);
    }
    return f;
}

StateFamily gen_basis2() {
    static const std::array<std::array<std::size_t, 3>, 21> kCells = {{
        {1, 1, 1}, {1, 1, 3}, {1, 2, 3}, {1, 3, 1}, {1, 3, 2},
        {1, 3, 3}, {2, 1, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 1},
        {2, 3, 2}, {2, 3, 3}, {3, 1, 1}, {3, 1, 2}, {3, 1, 3},
        {3, 2, 1}, {3, 2, 2}, {3, 2, 3}, {3, 3, 1}, {3, 3, 2},
        {3, 3, 3},
    }};
    StateFamily f{"basis2", PartyLayout({3, 3, 3}), {}, {}};
    for (const auto& cell : kCells) {
        const std::vector<std::size_t> idx(cell.begin(), cell.end());
        f.states.push_back(computational(idx, 3));
        f.labels.push_back(computational_label(idx));
    }
    // The six superposition members, numbered by their (3,3) main-family list
    // positions: phi_1 = |1⟩|2⟩|1+2⟩, phi_2 = |1⟩|2⟩|1-2⟩, phi_5 = |2⟩|1+2⟩|1⟩,
    // phi_6 = |2⟩|1-2⟩|1⟩, phi_9 = |1+2⟩|1⟩|2⟩, phi_10 = |1-2⟩|1⟩|2⟩.
    const StateFamily main33 = gen_main_family(3, 3);
    const std::array<std::size_t, 6> positions = {1, 2, 5, 6, 9, 10};
    for (std::size_t pos : positions) {
        f.states.push_back(main33.states[pos - 1]);
        f.labels.push_back("phi_" + std::to_string(pos));
    }
    return f;
}

LocalKet uniform_ket(std::size_t dim) {
    LocalKet k{dim, std::vector<cplx>(dim, cplx{1.0 / std::sqrt(double(dim)), 0.0})};
    return k;
}

StateFamily gen_stopper_family(std::size_t n, std::size_t d) {
    require_main_params(n, d);
    StateFamily f{"stopper", PartyLayout(std::vector<std::size_t>(n, d)), {}, {}};
    for (std::size_t m = 1; m <= n; ++m) {
        const auto [i_party, s_party] = block_positions(m, n);
        for (std::size_t i = 2; i <= d; ++i) {
            f.states.push_back(all_ones_with(n, d, i_party, basis_ket(d, i), s_party,
                                             super_ket(d, 1, i, -1)));
            f.labels.push_back(main_family_label(m, i, -1, d));
        }
    }
    std::vector<LocalKet> factors(n, uniform_ket(d));
    f.states.push_back(
        product_state(PartyLayout(std::vector<std::size_t>(n, d)), std::move(factors)));
    f.labels.push_back("stopper");
    return f;
}

OrthogonalityReport check_orthogonality(const StateFamily& f) {
    OrthogonalityReport report;
    for (std::size_t j = 0; j < f.states.size(); ++j) {
        report.max_norm_error =
            std::max(report.max_norm_error, std::abs(f.states[j].norm_squared() - 1.0));
        for (std::size_t k = j + 1; k < f.states.size(); ++k) {
            const double overlap = std::abs(inner(f.states[j], f.states[k]));
            if (overlap > report.max_overlap) {
                report.max_overlap = overlap;
                report.offending_pair = {j, k};
            }
        }
    }
    report.pass = report.max_overlap <= kOrthoTol;
    return report;
}

bool check_completeness(const StateFamily& f) {
    return f.size() == f.layout.total_dimension() && check_orthogonality(f).pass;
}

StateFamily family_by_name(const std::string& name, std::size_t n, std::size_t d) {
    if (name == "main") return gen_main_family(n, d);
    if (name == "stopper") return gen_stopper_family(n, d);
    if (name == "example1" || name == "basis1" || name == "basis2") {
        if (n != 3 || d != 3) {
            throw std::invalid_argument("family '" + name + "' is only defined for n=3, d=3");
        }
        if (name == "example1") return gen_example1_completion();
        if (name == "basis1") return gen_basis1();
        return gen_basis2();
    }
    throw std::invalid_argument("unknown family '" + name + "'");
}

}  // namespace locclab
