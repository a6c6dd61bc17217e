#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locclab/families.hpp"
#include "locclab/locc.hpp"
#include "locclab/opm.hpp"

namespace locclab {

/// Shortest-exact significant-digit rendering used in CSV output:
/// 17 significant digits, '.' decimal separator, locale-independent.
std::string format_double17(double value);

/// JSON documents for each report kind. Output is deterministic: object keys
/// are emitted sorted and no timestamps appear in any payload. The documents
/// validate against the schemas shipped under docs/.
std::string family_to_json(const StateFamily& f, int indent = 2);
std::string ortho_to_json(const StateFamily& f, const OrthogonalityReport& r, int indent = 2);
std::string nonlocality_to_json(const NonlocalityReport& r, const StateFamily& f,
                                int indent = 2);
std::string discrimination_to_json(const DiscriminationReport& r, std::size_t n, std::size_t d,
                                   std::size_t resource_party_a, std::size_t resource_party_b,
                                   int indent = 2);
std::string basis2_split_to_json(const Basis2Split& s, int indent = 2);

/// One (n, d) cell of a grid scan over the main family.
struct ScanRow {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t family_size = 0;
    double max_overlap = 0.0;
    std::vector<std::size_t> party_dims;  // OPM solution-space dimension per party
    bool certified = false;
    bool protocol_perfect = false;
    double wall_time_s = 0.0;  // excluded from golden comparisons
};

/// Generates, certifies and protocol-checks the main family for every cell of
/// the inclusive grid. Cells run in parallel; rows are returned in
/// deterministic (n, d) order.
std::vector<ScanRow> run_scan(std::size_t n_lo, std::size_t n_hi, std::size_t d_lo,
                              std::size_t d_hi, double tol = kDefaultTol);

std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_json(const std::vector<ScanRow>& rows, double tol, int indent = 2);

}  // namespace locclab
