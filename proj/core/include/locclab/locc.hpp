#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locclab/families.hpp"

namespace locclab {

/// Adaptive LOCC protocol: internal nodes name an acting party and a complete
/// local measurement, with one subtree per projector; leaves carry a state
/// label or "fail".
class ProtocolTree {
  public:
    struct Leaf {
        std::string verdict;
    };
    struct Node {
        std::size_t party = 1;  // 1-based
        LocalMeasurement measurement;
        std::vector<ProtocolTree> children;  // one per projector
    };

    static ProtocolTree leaf(std::string verdict);
    static ProtocolTree node(std::size_t party, LocalMeasurement measurement,
                             std::vector<ProtocolTree> children);

    bool is_leaf() const { return std::holds_alternative<Leaf>(content_); }
    const Leaf& as_leaf() const { return std::get<Leaf>(content_); }
    const Node& as_node() const { return std::get<Node>(content_); }

    /// Longest chain of internal nodes from the root; a bare leaf has depth 0.
    std::size_t depth() const;

  private:
    ProtocolTree() = default;
    std::variant<Leaf, Node> content_;
};

/// Tensors every family member with the two-qubit resource
/// (|0⟩_A|0⟩_B + |1⟩_A|1⟩_B)/√2, extending parties A and B to twice their
/// local dimension under the (x, a) ↦ 2(x-1)+a+1 ordering. Labels are kept.
StateFamily attach_resource(const StateFamily& f, std::size_t party_a, std::size_t party_b);

/// The adaptive discrimination protocol for the resource-attached main
/// family at (n, d), resource between parties n-1 and n:
///   1. party n splits by ancilla pattern,
///   2. party n-1 isolates block n (resolved via party n's block measurement
///      and party 1's rotated basis),
///   3. parties 1..n-2 peel off one block each (resolved via an i-measurement
///      and the next party's rotated basis),
///   4. block 1 remains: party n-1 picks i, then a two-step rotated-basis
///      measurement on parties n-1 and n decodes the sign from the product
///      of the two outcomes.
/// Uninformative residual projectors lead to "fail" leaves and receive zero
/// probability on every family member.
ProtocolTree build_discrimination_protocol(std::size_t n, std::size_t d);

struct PathRecord {
    std::vector<std::size_t> outcomes;  // 1-based projector indices from the root
    double probability = 0.0;
    std::string verdict;
};

struct StateResult {
    std::string label;
    std::vector<PathRecord> paths;
    double success_probability = 0.0;  // Σ probability over paths with correct verdict
    double wrong_probability = 0.0;    // mass on leaves naming a different state
    double fail_probability = 0.0;     // mass on "fail" leaves
    double total_probability = 0.0;
};

struct DiscriminationReport {
    double tol = 1e-9;
    bool perfect = false;  // every state: |success_probability - 1| <= tol
    std::vector<StateResult> states;
};

/// Depth-first evaluation of the tree on every family member. Throws if any
/// internal node's measurement is not complete on the acting party's local
/// dimension.
DiscriminationReport run_protocol(const ProtocolTree& tree, const StateFamily& f,
                                  double tol = 1e-9);

/// Searches for an adaptive protocol that discriminates a family of
/// elementary product states using only computational-basis (diagonal)
/// partition measurements, finishing two-candidate sets with a measurement in
/// a basis containing both orthogonal local factors. At each node every
/// branch must strictly shrink the candidate set and keep the survivors
/// pairwise orthogonal. Partition search is capped at local dimension 6.
/// Returns the tree when every leaf is a singleton within max_depth.
std::optional<ProtocolTree> greedy_diagonal_distinguisher(const StateFamily& f,
                                                          std::size_t max_depth = 8);

/// One leaf of the basis-2 two-outcome cascade.
struct SplitLeaf {
    std::array<std::size_t, 3> outcomes{};       // outcome (1 or 2) per party, in order
    std::vector<std::size_t> candidate_indices;  // 0-based indices into the family
    std::vector<std::string> candidates;         // surviving labels
    std::optional<ProtocolTree> resolver;        // greedy completion on the survivors
};

struct Basis2Split {
    double max_survivor_overlap = 0.0;   // worst pairwise |inner| across all cascade nodes
    bool orthogonality_preserved = true;  // max_survivor_overlap <= kOrthoTol
    std::vector<SplitLeaf> leaves;        // 8 leaves, outcome triples in lexicographic order
};

/// The three-party cascade of the two-outcome measurement
/// {P1 = |1⟩⟨1|+|2⟩⟨2|, P2 = |3⟩⟨3|} on basis-2, composed with
/// greedy_diagonal_distinguisher on each leaf's survivors. The all-outcome-1
/// leaf keeps an 8-state candidate set no diagonal protocol can resolve; its
/// resolver is absent.
Basis2Split build_basis2_split(std::size_t max_depth = 8);

}  // namespace locclab
