#include "locclab/reports.hpp"

#include <charconv>
#include <chrono>
#include <future>
#include <stdexcept>

#include "json.hpp"

namespace locclab {

using nlohmann::json;

std::string format_double17(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json ket_to_json(const LocalKet& k) {
    json amps = json::array();
    for (const cplx& a : k.amplitudes) amps.push_back(complex_to_json(a));
    return amps;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json layout_to_json(const PartyLayout& layout) {
    json dims = json::array();
    for (std::size_t d : layout.dims()) dims.push_back(d);
    return dims;
}

}  // namespace

std::string family_to_json(const StateFamily& f, int indent) {
    if (f.labels.size() != f.states.size()) {
        throw std::invalid_argument("family_to_json: one label per state required");
    }
    json doc;
    doc["command"] = "family";
    doc["family"] = f.name;
    doc["layout"] = layout_to_json(f.layout);
    doc["size"] = f.size();
    json states = json::array();
    for (std::size_t s = 0; s < f.states.size(); ++s) {
        json state;
        state["label"] = f.labels[s];
        json terms = json::array();
        for (const Term& t : f.states[s].terms()) {
            json term;
            term["coeff"] = complex_to_json(t.coeff);
            json factors = json::array();
            for (const LocalKet& k : t.factors) factors.push_back(ket_to_json(k));
            term["factors"] = std::move(factors);
            terms.push_back(std::move(term));
        }
        state["terms"] = std::move(terms);
        states.push_back(std::move(state));
    }
    doc["states"] = std::move(states);
    return doc.dump(indent);
}

std::string ortho_to_json(const StateFamily& f, const OrthogonalityReport& r, int indent) {
    json doc;
    doc["command"] = "ortho";
    doc["family"] = f.name;
    doc["size"] = f.size();
    doc["max_overlap"] = r.max_overlap;
    doc["max_norm_error"] = r.max_norm_error;
    if (r.offending_pair) {
        doc["worst_pair"] =
            json::array({f.labels[r.offending_pair->first], f.labels[r.offending_pair->second]});
    } else {
        doc["worst_pair"] = nullptr;
    }
    doc["pass"] = r.pass;
    return doc.dump(indent);
}

std::string nonlocality_to_json(const NonlocalityReport& r, const StateFamily& f, int indent) {
    json doc;
    doc["command"] = "nonlocality";
    doc["family"] = r.family;
    doc["layout"] = layout_to_json(f.layout);
    doc["tol"] = r.tol;
    doc["certified"] = r.certified;
    json parties = json::array();
    for (const PartyCertificate& c : r.parties) {
        json party;
        party["party"] = c.party;
        party["dimension"] = c.dimension;
        party["certified"] = c.certified;
        if (c.witness) party["witness"] = matrix_to_json(c.witness->matrix);
        parties.push_back(std::move(party));
    }
    doc["parties"] = std::move(parties);
    return doc.dump(indent);
}

std::string discrimination_to_json(const DiscriminationReport& r, std::size_t n, std::size_t d,
                                   std::size_t resource_party_a, std::size_t resource_party_b,
                                   int indent) {
    json doc;
    doc["command"] = "protocol";
    doc["n"] = n;
    doc["d"] = d;
    doc["resource"] = {{"party_a", resource_party_a}, {"party_b", resource_party_b}};
    doc["tol"] = r.tol;
    doc["perfect"] = r.perfect;
    json states = json::array();
    for (const StateResult& s : r.states) {
        json state;
        state["label"] = s.label;
        state["success_probability"] = s.success_probability;
        state["wrong_probability"] = s.wrong_probability;
        state["fail_probability"] = s.fail_probability;
        state["total_probability"] = s.total_probability;
        json paths = json::array();
        for (const PathRecord& p : s.paths) {
            json path;
            path["outcomes"] = p.outcomes;
            path["probability"] = p.probability;
            path["verdict"] = p.verdict;
            paths.push_back(std::move(path));
        }
        state["paths"] = std::move(paths);
        states.push_back(std::move(state));
    }
    doc["states"] = std::move(states);
    return doc.dump(indent);
}

std::string basis2_split_to_json(const Basis2Split& s, int indent) {
    json doc;
    doc["command"] = "basis2-demo";
    doc["family"] = "basis2";
    doc["max_survivor_overlap"] = s.max_survivor_overlap;
    doc["orthogonality_preserved"] = s.orthogonality_preserved;
    json leaves = json::array();
    for (const SplitLeaf& leaf : s.leaves) {
        json l;
        l["outcomes"] = leaf.outcomes;
        l["candidates"] = leaf.candidates;
        l["resolved"] = leaf.resolver.has_value();
        if (leaf.resolver) l["resolver_depth"] = leaf.resolver->depth();
        leaves.push_back(std::move(l));
    }
    doc["leaves"] = std::move(leaves);
    return doc.dump(indent);
}

std::vector<ScanRow> run_scan(std::size_t n_lo, std::size_t n_hi, std::size_t d_lo,
                              std::size_t d_hi, double tol) {
    if (n_lo < 3 || n_lo > n_hi || d_lo < 2 || d_lo > d_hi) {
        throw std::invalid_argument("run_scan: need 3 <= n_lo <= n_hi and 2 <= d_lo <= d_hi");
    }
    auto cell = [tol](std::size_t n, std::size_t d) {
        const auto start = std::chrono::steady_clock::now();
        ScanRow row;
        row.n = n;
        row.d = d;
        const StateFamily family = gen_main_family(n, d);
        row.family_size = family.size();
        row.max_overlap = check_orthogonality(family).max_overlap;
        const NonlocalityReport report = certify(family, tol);
        for (const PartyCertificate& c : report.parties) row.party_dims.push_back(c.dimension);
        row.certified = report.certified;
        const StateFamily attached = attach_resource(family, n - 1, n);
        const ProtocolTree tree = build_discrimination_protocol(n, d);
        row.protocol_perfect = run_protocol(tree, attached, tol).perfect;
        row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                              .count();
        return row;
    };

    std::vector<std::future<ScanRow>> futures;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        for (std::size_t d = d_lo; d <= d_hi; ++d) {
            futures.push_back(std::async(std::launch::async, cell, n, d));
        }
    }
    std::vector<ScanRow> rows;
    rows.reserve(futures.size());
    for (auto& fut : futures) rows.push_back(fut.get());
    return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "n,d,family_size,max_overlap,party_dims,certified,protocol_perfect,wall_time_s\n";
    for (const ScanRow& r : rows) {
        out += std::to_string(r.n) + ',' + std::to_string(r.d) + ',' +
               std::to_string(r.family_size) + ',' + format_double17(r.max_overlap) + ',';
        for (std::size_t i = 0; i < r.party_dims.size(); ++i) {
            if (i) out += '|';
            out += std::to_string(r.party_dims[i]);
        }
        out += ',';
        out += r.certified ? "true" : "false";
        out += ',';
        out += r.protocol_perfect ? "true" : "false";
        out += ',';
        out += format_double17(r.wall_time_s);
        out += '\n';
    }
    return out;
}

std::string scan_to_json(const std::vector<ScanRow>& rows, double tol, int indent) {
    json doc;
    doc["command"] = "scan";
    doc["tol"] = tol;
    json jrows = json::array();
    for (const ScanRow& r : rows) {
        json row;
        row["n"] = r.n;
        row["d"] = r.d;
        row["family_size"] = r.family_size;
        row["max_overlap"] = r.max_overlap;
        row["party_dims"] = r.party_dims;
        row["certified"] = r.certified;
        row["protocol_perfect"] = r.protocol_perfect;
        row["wall_time_s"] = r.wall_time_s;
        jrows.push_back(std::move(row));
    }
    doc["rows"] = std::move(jrows);
    return doc.dump(indent);
}

}  // namespace locclab
