#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locclab/tensorstate.hpp"

namespace locclab {

/// Pairwise-orthogonality threshold for generated families.
inline constexpr double kOrthoTol = 1e-12;

/// A named list of multipartite product states with display labels.
struct StateFamily {
    std::string name;
    PartyLayout layout;
    std::vector<SparseState> states;
    std::vector<std::string> labels;

    std::size_t size() const { return states.size(); }
};

/// The 2n(d-1) pairwise orthogonal n-party product states, n blocks of
/// 2(d-1). Block m (1 ≤ m ≤ n-1) places |i⟩ at party n-m and |1±i⟩ at party
/// n-m+1; block n places |1±i⟩ at party 1 and |i⟩ at party n; every other
/// factor is |1⟩. Listed blocks ascending, i ascending, + before -. Labels
/// phi_j with j = 2(m-1)(d-1)+k for sign + and (2m-1)(d-1)+k for sign -,
/// where k = i-1.
StateFamily gen_main_family(std::size_t n, std::size_t d);

/// The 15 computational product states that extend the (3,3) main family to
/// a full product basis.
StateFamily gen_example1_completion();

/// Main family at (3,3) together with its completion: a 27-member product
/// basis ("basis-1").
StateFamily gen_basis1();

/// The 27-member product basis "basis-2": 21 computational product states
/// plus the six superposition states phi_1, phi_2, phi_5, phi_6, phi_9,
/// phi_10 (numbered as in the (3,3) main family list order).
StateFamily gen_basis2();

/// The n(d-1) sign-minus states (one per block and i) plus the stopper state
/// |1+2+...+d⟩^⊗n. Total n(d-1)+1 states, pairwise orthogonal, uncompletable.
StateFamily gen_stopper_family(std::size_t n, std::size_t d);

/// Uniform superposition (Σ_x |x⟩)/√d.
LocalKet uniform_ket(std::size_t dim);

/// Label of the main-family member with the given block, i and sign:
/// phi_{2(m-1)(d-1)+k} for sign +, phi_{(2m-1)(d-1)+k} for sign -, k = i-1.
std::string main_family_label(std::size_t block, std::size_t i, int sign, std::size_t d);

struct OrthogonalityReport {
    double max_overlap = 0.0;  // max off-diagonal |inner|
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair;  // 0-based indices
    double max_norm_error = 0.0;  // max | ‖s‖² - 1 |
    bool pass = true;             // max_overlap ≤ kOrthoTol
};

/// Scans all pairs; passes iff the largest off-diagonal |inner| is at most
/// kOrthoTol. Records the worst pair when any overlap is nonzero.
OrthogonalityReport check_orthogonality(const StateFamily& f);

/// True iff the family has exactly Π dims members and passes
/// check_orthogonality.
bool check_completeness(const StateFamily& f);

/// CLI-facing lookup: "main", "example1", "basis1", "basis2", "stopper".
/// (n, d) applies to "main" and "stopper"; the fixed (3,3) families reject
/// any other (n, d).
StateFamily family_by_name(const std::string& name, std::size_t n, std::size_t d);

}  // namespace locclab
