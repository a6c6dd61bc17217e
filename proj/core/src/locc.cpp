#include "locclab/locc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace locclab {

namespace {

constexpr double kPathPrune = 1e-16;
constexpr double kSupportTol = 1e-12;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

ProtocolTree ProtocolTree::leaf(std::string verdict) {
    ProtocolTree t;
    t.content_ = Leaf{std::move(verdict)};
    return t;
}

ProtocolTree ProtocolTree::node(std::size_t party, LocalMeasurement measurement,
                                std::vector<ProtocolTree> children) {
    if (measurement.projectors.size() != children.size()) {
        throw std::invalid_argument("ProtocolTree: need one child per projector");
    }
    ProtocolTree t;
    t.content_ = Node{party, std::move(measurement), std::move(children)};
    return t;
}

std::size_t ProtocolTree::depth() const {
    if (is_leaf()) return 0;
    std::size_t worst = 0;
    for (const ProtocolTree& child : as_node().children) {
        worst = std::max(worst, child.depth());
    }
    return worst + 1;
}

StateFamily attach_resource(const StateFamily& f, std::size_t party_a, std::size_t party_b) {
    const std::size_t n = f.layout.party_count();
    if (party_a == party_b) throw std::invalid_argument("attach_resource: parties must differ");
    if (party_a < 1 || party_a > n || party_b < 1 || party_b > n) {
        throw std::invalid_argument("attach_resource: party index out of range");
    }

    std::vector<std::size_t> dims = f.layout.dims();
    dims[party_a - 1] *= 2;
    dims[party_b - 1] *= 2;

    StateFamily out{f.name + "+resource", PartyLayout(std::move(dims)), {}, f.labels};
    out.states.reserve(f.states.size());
    for (const SparseState& s : f.states) {
        const SparseState bit0 = extend_party(extend_party(s, party_a, 1.0, 0.0), party_b, 1.0, 0.0);
        const SparseState bit1 = extend_party(extend_party(s, party_a, 0.0, 1.0), party_b, 0.0, 1.0);
        out.states.push_back(superpose(kInvSqrt2, bit0, kInvSqrt2, bit1));
    }
    return out;
}

namespace {

// ---- helpers for the discrimination protocol on the extended space ----

// (|x1,b1⟩ + sign·|x2,b2⟩)/√2 on a doubled local space.
LocalKet ext_pair_ket(std::size_t d, std::size_t x1, int b1, std::size_t x2, int b2, int sign) {
    LocalKet k{2 * d, std::vector<cplx>(2 * d, cplx{0.0, 0.0})};
    k.amplitudes[2 * (x1 - 1) + static_cast<std::size_t>(b1)] = kInvSqrt2;
    k.amplitudes[2 * (x2 - 1) + static_cast<std::size_t>(b2)] += double(sign) * kInvSqrt2;
    return k;
}

// All |x,b⟩ of the doubled space except the listed pairs.
std::vector<LocalKet> ext_rest(std::size_t d, const std::vector<std::pair<std::size_t, int>>& skip) {
    std::vector<LocalKet> kets;
    for (std::size_t x = 1; x <= d; ++x) {
        for (int b = 0; b <= 1; ++b) {
            bool skipped = false;
            for (const auto& [sx, sb] : skip) {
                if (sx == x && sb == b) skipped = true;
            }
            if (!skipped) kets.push_back(extended_basis_ket(d, x, b));
        }
    }
    return kets;
}

struct ProtocolBuilder {
    std::size_t n;
    std::size_t d;

    std::string label(std::size_t block, std::size_t i, int sign) const {
        return main_family_label(block, i, sign, d);
    }

    // Final two-step measurement for the block-1 pair with this i, on the
    // branch whose surviving ancilla bit is a. The states at this point are
    // (|i,a⟩|1,a⟩ ± |i,ā⟩|i,ā⟩)/√2 on parties (n-1, n); the product of the
    // two rotated-basis outcomes recovers the sign.
    ProtocolTree sign_decoder(std::size_t i, int a) const {
        const int abar = 1 - a;
        std::vector<LocalProjector> w_projs;
        std::vector<ProtocolTree> w_children;
        for (int w : {+1, -1}) {
            w_projs.push_back(projector_onto(n - 1, {ext_pair_ket(d, i, 0, i, 1, w)}));
            std::vector<LocalProjector> v_projs;
            std::vector<ProtocolTree> v_children;
            for (int v : {+1, -1}) {
                v_projs.push_back(projector_onto(n, {ext_pair_ket(d, 1, a, i, abar, v)}));
                v_children.push_back(ProtocolTree::leaf(label(1, i, w * v)));
            }
            v_projs.push_back(projector_onto(n, ext_rest(d, {{1, a}, {i, abar}})));
            v_children.push_back(ProtocolTree::leaf("fail"));
            w_children.push_back(
                ProtocolTree::node(n, LocalMeasurement{n, std::move(v_projs)}, std::move(v_children)));
        }
        std::vector<std::pair<std::size_t, int>> skip = {{i, 0}, {i, 1}};
        w_projs.push_back(projector_onto(n - 1, ext_rest(d, skip)));
        w_children.push_back(ProtocolTree::leaf("fail"));
        return ProtocolTree::node(n - 1, LocalMeasurement{n - 1, std::move(w_projs)},
                                  std::move(w_children));
    }

    // Rotated-basis step at party p separating |1+i⟩ from |1-i⟩ for the given
    // block. Party n-1 carries the ancilla, so there the rotated kets live in
    // the doubled space on bit a.
    ProtocolTree rotated_step(std::size_t p, std::size_t block, std::size_t i, int a) const {
        std::vector<LocalProjector> projs;
        std::vector<ProtocolTree> children;
        if (p == n - 1) {
            for (int sign : {+1, -1}) {
                projs.push_back(projector_onto(p, {ext_pair_ket(d, 1, a, i, a, sign)}));
                children.push_back(ProtocolTree::leaf(label(block, i, sign)));
            }
            projs.push_back(projector_onto(p, ext_rest(d, {{1, a}, {i, a}})));
            children.push_back(ProtocolTree::leaf("fail"));
        } else {
            for (int sign : {+1, -1}) {
                projs.push_back(projector_onto(p, {super_ket(d, 1, i, sign)}));
                children.push_back(ProtocolTree::leaf(label(block, i, sign)));
            }
            std::vector<LocalKet> rest;
            for (std::size_t x = 2; x <= d; ++x) {
                if (x != i) rest.push_back(basis_ket(d, x));
            }
            if (!rest.empty()) {
                projs.push_back(projector_onto(p, rest));
                children.push_back(ProtocolTree::leaf("fail"));
            }
        }
        return ProtocolTree::node(p, LocalMeasurement{p, std::move(projs)}, std::move(children));
    }

    // Block n - p has been isolated: party p holds |i⟩ and party p+1 holds
    // |1±i⟩. Party p resolves i, then party p+1 resolves the sign.
    ProtocolTree isolated_block(std::size_t p, int a) const {
        const std::size_t block = n - p;
        std::vector<LocalProjector> projs;
        std::vector<ProtocolTree> children;
        for (std::size_t i = 2; i <= d; ++i) {
            projs.push_back(projector_onto(p, {basis_ket(d, i)}));
            children.push_back(rotated_step(p + 1, block, i, a));
        }
        projs.push_back(projector_onto(p, {basis_ket(d, 1)}));
        children.push_back(ProtocolTree::leaf("fail"));
        return ProtocolTree::node(p, LocalMeasurement{p, std::move(projs)}, std::move(children));
    }

    // Block n isolated: states |1±i⟩_1 |1...1⟩ |1,ā⟩_{n-1} |i,ā⟩_n. Party n
    // resolves i (both ancilla bits at once), then party 1 resolves the sign
    // in the |1±i⟩ basis.
    ProtocolTree block_n() const {
        std::vector<LocalProjector> projs;
        std::vector<ProtocolTree> children;
        for (std::size_t i = 2; i <= d; ++i) {
            projs.push_back(
                projector_onto(n, {extended_basis_ket(d, i, 0), extended_basis_ket(d, i, 1)}));
            std::vector<LocalProjector> r_projs;
            std::vector<ProtocolTree> r_children;
            for (int sign : {+1, -1}) {
                r_projs.push_back(projector_onto(1, {super_ket(d, 1, i, sign)}));
                r_children.push_back(ProtocolTree::leaf(label(n, i, sign)));
            }
            std::vector<LocalKet> rest;
            for (std::size_t x = 2; x <= d; ++x) {
                if (x != i) rest.push_back(basis_ket(d, x));
            }
            if (!rest.empty()) {
                r_projs.push_back(projector_onto(1, rest));
                r_children.push_back(ProtocolTree::leaf("fail"));
            }
            children.push_back(ProtocolTree::node(1, LocalMeasurement{1, std::move(r_projs)},
                                                  std::move(r_children)));
        }
        projs.push_back(
            projector_onto(n, {extended_basis_ket(d, 1, 0), extended_basis_ket(d, 1, 1)}));
        children.push_back(ProtocolTree::leaf("fail"));
        return ProtocolTree::node(n, LocalMeasurement{n, std::move(projs)}, std::move(children));
    }

    // Block 1 alone remains: party n-1 resolves i, then the sign decoder runs
    // on parties n-1 and n.
    ProtocolTree block_1(int a) const {
        std::vector<LocalProjector> projs;
        std::vector<ProtocolTree> children;
        for (std::size_t i = 2; i <= d; ++i) {
            projs.push_back(projector_onto(
                n - 1, {extended_basis_ket(d, i, 0), extended_basis_ket(d, i, 1)}));
            children.push_back(sign_decoder(i, a));
        }
        projs.push_back(
            projector_onto(n - 1, {extended_basis_ket(d, 1, 0), extended_basis_ket(d, 1, 1)}));
        children.push_back(ProtocolTree::leaf("fail"));
        return ProtocolTree::node(n - 1, LocalMeasurement{n - 1, std::move(projs)},
                                  std::move(children));
    }

    // Parties 1..n-2 in order: outcome 1 (|1⟩⟨1|) keeps going, outcome 2
    // (Σ_i |i⟩⟨i|) isolates block n-p. After all outcome-1 results, block 1
    // remains.
    ProtocolTree elimination_chain(int a) const {
        ProtocolTree sub = block_1(a);
        for (std::size_t p = n - 2; p >= 1; --p) {
            std::vector<LocalKet> others;
            for (std::size_t i = 2; i <= d; ++i) others.push_back(basis_ket(d, i));
            std::vector<LocalProjector> projs;
            projs.push_back(projector_onto(p, {basis_ket(d, 1)}));
            projs.push_back(projector_onto(p, others));
            std::vector<ProtocolTree> children;
            children.push_back(std::move(sub));
            children.push_back(isolated_block(p, a));
            sub = ProtocolTree::node(p, LocalMeasurement{p, std::move(projs)}, std::move(children));
            if (p == 1) break;
        }
        return sub;
    }

    // Party n-1 splits off block n (its factor is |1,ā⟩ on this branch),
    // everything else continues into the elimination chain.
    ProtocolTree after_first(int a) const {
        const int abar = 1 - a;
        std::vector<LocalProjector> projs;
        projs.push_back(projector_onto(n - 1, {extended_basis_ket(d, 1, abar)}));
        projs.push_back(projector_onto(n - 1, ext_rest(d, {{1, abar}})));
        std::vector<ProtocolTree> children;
        children.push_back(block_n());
        children.push_back(elimination_chain(a));
        return ProtocolTree::node(n - 1, LocalMeasurement{n - 1, std::move(projs)},
                                  std::move(children));
    }

    ProtocolTree build() const {
        // Party n splits by ancilla pattern: R_b keeps |1,a⟩ and every |i,ā⟩,
        // where a = 0 on outcome 1 and a = 1 on outcome 2 (mirrored roles).
        std::vector<LocalProjector> projs;
        std::vector<ProtocolTree> children;
        for (int a : {0, 1}) {
            const int abar = 1 - a;
            std::vector<LocalKet> kets;
            kets.push_back(extended_basis_ket(d, 1, a));
            for (std::size_t i = 2; i <= d; ++i) kets.push_back(extended_basis_ket(d, i, abar));
            projs.push_back(projector_onto(n, kets));
            children.push_back(after_first(a));
        }
        return ProtocolTree::node(n, LocalMeasurement{n, std::move(projs)}, std::move(children));
    }
};

}  // namespace

ProtocolTree build_discrimination_protocol(std::size_t n, std::size_t d) {
    if (n < 3) throw std::invalid_argument("build_discrimination_protocol: need n >= 3");
    if (d < 2) throw std::invalid_argument("build_discrimination_protocol: need d >= 2");
    return ProtocolBuilder{n, d}.build();
}

namespace {

void validate_tree(const ProtocolTree& tree, const PartyLayout& layout) {
    if (tree.is_leaf()) return;
    const ProtocolTree::Node& node = tree.as_node();
    if (node.party < 1 || node.party > layout.party_count()) {
        throw std::invalid_argument("run_protocol: acting party out of range");
    }
    validate_measurement(node.measurement, layout.dim(node.party));
    for (const ProtocolTree& child : node.children) validate_tree(child, layout);
}

void evaluate(const ProtocolTree& tree, const SparseState& state, std::vector<std::size_t>& path,
              StateResult& result) {
    if (tree.is_leaf()) {
        PathRecord record{path, state.norm_squared(), tree.as_leaf().verdict};
        result.total_probability += record.probability;
        if (record.verdict == result.label) {
            result.success_probability += record.probability;
        } else if (record.verdict == "fail") {
            result.fail_probability += record.probability;
        } else {
            result.wrong_probability += record.probability;
        }
        result.paths.push_back(std::move(record));
        return;
    }
    const ProtocolTree::Node& node = tree.as_node();
    for (std::size_t c = 0; c < node.children.size(); ++c) {
        auto [projected, weight] = apply_projector(state, node.measurement.projectors[c]);
        if (weight <= kPathPrune) continue;
        path.push_back(c + 1);
        evaluate(node.children[c], projected, path, result);
        path.pop_back();
    }
}

}  // namespace

DiscriminationReport run_protocol(const ProtocolTree& tree, const StateFamily& f, double tol) {
    if (f.labels.size() != f.states.size()) {
        throw std::invalid_argument("run_protocol: one label per state required");
    }
    validate_tree(tree, f.layout);
    DiscriminationReport report;
    report.tol = tol;
    report.perfect = true;
    report.states.reserve(f.states.size());
    for (std::size_t s = 0; s < f.states.size(); ++s) {
        StateResult result;
        result.label = f.labels[s];
        std::vector<std::size_t> path;
        evaluate(tree, f.states[s], path, result);
        if (std::abs(result.success_probability - 1.0) > tol) report.perfect = false;
        report.states.push_back(std::move(result));
    }
    return report;
}

namespace {

// ---- greedy diagonal distinguisher ----

struct Candidate {
    std::size_t index;  // position in the family
    std::vector<LocalKet> factors;
};

cplx candidate_inner(const Candidate& a, const Candidate& b) {
    cplx acc = 1.0;
    for (std::size_t p = 0; p < a.factors.size() && acc != cplx{0.0, 0.0}; ++p) {
        acc *= ket_inner(a.factors[p], b.factors[p]);
    }
    return acc;
}

bool pairwise_orthogonal(const std::vector<Candidate>& cands, double tol) {
    for (std::size_t j = 0; j < cands.size(); ++j) {
        for (std::size_t k = j + 1; k < cands.size(); ++k) {
            if (std::abs(candidate_inner(cands[j], cands[k])) > tol) return false;
        }
    }
    return true;
}

// Set partitions of {0..m-1} as restricted growth strings, at least 2 blocks,
// lexicographic order.
std::vector<std::vector<std::size_t>> partitions_with_two_blocks(std::size_t m) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> rgs(m, 0);
    while (true) {
        std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        if (blocks >= 2) out.push_back(rgs);
        // next RGS
        bool advanced = false;
        for (std::size_t i = m - 1; i >= 1; --i) {
            std::size_t prefix_max = 0;
            for (std::size_t j = 0; j < i; ++j) prefix_max = std::max(prefix_max, rgs[j]);
            if (rgs[i] <= prefix_max) {
                ++rgs[i];
                for (std::size_t j = i + 1; j < m; ++j) rgs[j] = 0;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return out;
}

LocalKet truncate_to_group(const LocalKet& k, const std::vector<std::size_t>& rgs,
                           std::size_t group) {
    LocalKet out{k.dim, std::vector<cplx>(k.dim, cplx{0.0, 0.0})};
    for (std::size_t q = 0; q < k.dim; ++q) {
        if (rgs[q] == group) out.amplitudes[q] = k.amplitudes[q];
    }
    return out;
}

LocalProjector group_projector(std::size_t party, std::size_t dim,
                               const std::vector<std::size_t>& rgs, std::size_t group) {
    std::vector<LocalKet> kets;
    for (std::size_t q = 0; q < dim; ++q) {
        if (rgs[q] == group) kets.push_back(basis_ket(dim, q + 1));
    }
    return projector_onto(party, kets);
}

struct GreedySearch {
    const std::vector<std::string>& labels;
    std::vector<std::size_t> dims;
    std::size_t max_depth;

    std::optional<ProtocolTree> pair_step(const Candidate& a, const Candidate& b) const {
        for (std::size_t p = 0; p < dims.size(); ++p) {
            if (std::abs(ket_inner(a.factors[p], b.factors[p])) > kSupportTol) continue;
            std::vector<LocalProjector> projs;
            std::vector<ProtocolTree> children;
            projs.push_back(projector_onto(p + 1, {a.factors[p]}));
            children.push_back(ProtocolTree::leaf(labels[a.index]));
            projs.push_back(projector_onto(p + 1, {b.factors[p]}));
            children.push_back(ProtocolTree::leaf(labels[b.index]));
            if (dims[p] > 2) {
                ComplexMatrix rest = ComplexMatrix::identity(dims[p]) -
                                     projs[0].matrix - projs[1].matrix;
                projs.push_back(LocalProjector{p + 1, dims[p], std::move(rest)});
                children.push_back(ProtocolTree::leaf("fail"));
            }
            return ProtocolTree::node(p + 1, LocalMeasurement{p + 1, std::move(projs)},
                                      std::move(children));
        }
        return std::nullopt;
    }

    std::optional<ProtocolTree> search(const std::vector<Candidate>& cands,
                                       std::size_t depth) const {
        if (cands.empty()) return ProtocolTree::leaf("fail");
        if (cands.size() == 1) return ProtocolTree::leaf(labels[cands.front().index]);
        if (cands.size() == 2) return pair_step(cands[0], cands[1]);
        if (depth >= max_depth) return std::nullopt;

        struct Option {
            std::size_t party;  // 0-based here
            std::vector<std::size_t> rgs;
            std::size_t blocks;
            std::vector<std::vector<Candidate>> groups;
            std::size_t largest;
        };
        std::vector<Option> options;
        for (std::size_t p = 0; p < dims.size(); ++p) {
            if (dims[p] > 6) continue;  // partition search cap
            for (auto& rgs : partitions_with_two_blocks(dims[p])) {
                const std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
                Option opt{p, rgs, blocks, {}, 0};
                opt.groups.resize(blocks);
                bool valid = true;
                for (std::size_t g = 0; g < blocks && valid; ++g) {
                    for (const Candidate& c : cands) {
                        LocalKet cut = truncate_to_group(c.factors[p], rgs, g);
                        const double norm = cut.norm();
                        if (norm <= kSupportTol) continue;
                        for (cplx& amp : cut.amplitudes) amp /= norm;
                        Candidate survivor{c.index, c.factors};
                        survivor.factors[p] = std::move(cut);
                        opt.groups[g].push_back(std::move(survivor));
                    }
                    // every branch must make progress and stay orthogonal
                    if (opt.groups[g].size() >= cands.size() ||
                        !pairwise_orthogonal(opt.groups[g], kSupportTol)) {
                        valid = false;
                    }
                    opt.largest = std::max(opt.largest, opt.groups[g].size());
                }
                if (valid) options.push_back(std::move(opt));
            }
        }
        std::stable_sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
            return a.largest < b.largest;
        });

        for (const Option& opt : options) {
            std::vector<LocalProjector> projs;
            std::vector<ProtocolTree> children;
            bool complete = true;
            for (std::size_t g = 0; g < opt.blocks && complete; ++g) {
                auto child = search(opt.groups[g], depth + 1);
                if (!child) {
                    complete = false;
                    break;
                }
                projs.push_back(group_projector(opt.party + 1, dims[opt.party], opt.rgs, g));
                children.push_back(std::move(*child));
            }
            if (!complete) continue;
            return ProtocolTree::node(opt.party + 1, LocalMeasurement{opt.party + 1, std::move(projs)},
                                      std::move(children));
        }
        return std::nullopt;
    }
};

std::vector<Candidate> candidates_from_family(const StateFamily& f) {
    std::vector<Candidate> cands;
    cands.reserve(f.states.size());
    for (std::size_t s = 0; s < f.states.size(); ++s) {
        const SparseState& state = f.states[s];
        if (state.terms().size() != 1) {
            throw std::invalid_argument(
                "greedy_diagonal_distinguisher: states must be elementary products");
        }
        Candidate c{s, state.terms().front().factors};
        for (LocalKet& factor : c.factors) {
            const double norm = factor.norm();
            if (norm <= 0.0) throw std::invalid_argument("greedy: zero factor");
            for (cplx& amp : factor.amplitudes) amp /= norm;
        }
        cands.push_back(std::move(c));
    }
    return cands;
}

}  // namespace

std::optional<ProtocolTree> greedy_diagonal_distinguisher(const StateFamily& f,
                                                          std::size_t max_depth) {
    if (f.states.empty()) throw std::invalid_argument("greedy: empty family");
    if (f.labels.size() != f.states.size()) {
        throw std::invalid_argument("greedy: one label per state required");
    }
    GreedySearch search{f.labels, f.layout.dims(), max_depth};
    return search.search(candidates_from_family(f), 0);
}

Basis2Split build_basis2_split(std::size_t max_depth) {
    const StateFamily basis2 = gen_basis2();

    Basis2Split split;
    auto survivors_overlap = [&](const std::vector<Candidate>& cands) {
        double worst = 0.0;
        for (std::size_t j = 0; j < cands.size(); ++j) {
            for (std::size_t k = j + 1; k < cands.size(); ++k) {
                worst = std::max(worst, std::abs(candidate_inner(cands[j], cands[k])));
            }
        }
        split.max_survivor_overlap = std::max(split.max_survivor_overlap, worst);
    };

    // outcome 1 keeps span{|1⟩,|2⟩}, outcome 2 keeps span{|3⟩}
    const std::vector<std::size_t> rgs = {0, 0, 1};

    auto project = [&](const std::vector<Candidate>& cands, std::size_t party0,
                       std::size_t outcome) {
        std::vector<Candidate> out;
        for (const Candidate& c : cands) {
            LocalKet cut = truncate_to_group(c.factors[party0], rgs, outcome - 1);
            const double norm = cut.norm();
            if (norm <= kSupportTol) continue;
            for (cplx& amp : cut.amplitudes) amp /= norm;
            Candidate survivor{c.index, c.factors};
            survivor.factors[party0] = std::move(cut);
            out.push_back(std::move(survivor));
        }
        return out;
    };

    const std::vector<Candidate> root = candidates_from_family(basis2);
    survivors_overlap(root);
    for (std::size_t o1 : {1, 2}) {
        const auto s1 = project(root, 0, o1);
        survivors_overlap(s1);
        for (std::size_t o2 : {1, 2}) {
            const auto s2 = project(s1, 1, o2);
            survivors_overlap(s2);
            for (std::size_t o3 : {1, 2}) {
                const auto s3 = project(s2, 2, o3);
                survivors_overlap(s3);

                SplitLeaf leaf;
                leaf.outcomes = {o1, o2, o3};
                StateFamily survivor_family{"basis2-leaf", basis2.layout, {}, {}};
                for (const Candidate& c : s3) {
                    leaf.candidate_indices.push_back(c.index);
                    leaf.candidates.push_back(basis2.labels[c.index]);
                    std::vector<LocalKet> factors = c.factors;
                    survivor_family.states.push_back(
                        product_state(basis2.layout, std::move(factors)));
                    survivor_family.labels.push_back(basis2.labels[c.index]);
                }
                if (!survivor_family.states.empty()) {
                    leaf.resolver = greedy_diagonal_distinguisher(survivor_family, max_depth);
                }
                split.leaves.push_back(std::move(leaf));
            }
        }
    }
    split.orthogonality_preserved = split.max_survivor_overlap <= kOrthoTol;
    return split;
}

}  // namespace locclab
