#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcsp/config.hpp"

namespace qcsp {

// Instances are immutable after construction: every operation below is pure
// and returns fresh values. Constraint lists are ordered multisets; the same
// variable tuple may appear repeatedly with distinct predicates and duplicates
// are never merged.

// Labels are 0-based integers everywhere. The ±1 encoding for linear
// constraints maps label 0 ↔ +1 and label 1 ↔ −1.

struct Constraint {
    std::vector<int> vars;                  // k variable indices
    std::vector<std::vector<int>> accept;   // satisfying label k-tuples
    double weight = 0.0;
};

struct GeneralCspInstance {
    int arity = 0;           // k
    int alphabet = 0;        // m
    int variable_count = 0;  // n
    std::vector<Constraint> constraints;
};

// Bipartite projection game. pi[a] is the right label forced by left label a.
struct LabelCoverEdge {
    int u = 0;
    int v = 0;
    std::vector<int> pi;
    double weight = 0.0;
};

struct LabelCoverInstance {
    int left_count = 0;
    int right_count = 0;
    int alphabet = 0;
    std::vector<LabelCoverEdge> edges;
    bool unique = false;  // every pi must be a bijection
};

// Linear constraints over {±1}: a k-tuple is satisfied iff the product of its
// ±1 labels equals the parity bit. MaxCut is the k=2, all-parities−1 case.
struct LinConstraint {
    std::vector<int> vars;
    int parity = +1;  // ∈ {+1, −1}
    double weight = 0.0;
};

struct LinInstance {
    int arity = 0;
    int variable_count = 0;
    std::vector<LinConstraint> constraints;
};

bool is_maxcut(const LinInstance& lin);

LinInstance make_maxcut(int variable_count,
                        const std::vector<std::pair<int, int>>& edges,
                        const std::vector<double>& weights);

// Uniform-weight MaxCut on an unweighted edge list.
LinInstance make_maxcut_uniform(int variable_count,
                                const std::vector<std::pair<int, int>>& edges);

struct Validation {
    bool ok = true;
    std::vector<std::string> violations;
};

Validation validate_instance(const GeneralCspInstance& inst);
Validation validate_instance(const LabelCoverInstance& inst);
Validation validate_instance(const LinInstance& inst);

// Embeddings into the general form; both preserve the classical value exactly.
GeneralCspInstance labelcover_to_general(const LabelCoverInstance& lc);
GeneralCspInstance lin_to_general(const LinInstance& lin);

struct BudgetExceeded : std::runtime_error {
    double required;
    explicit BudgetExceeded(const std::string& what, double req)
        : std::runtime_error(what), required(req) {}
};

struct BruteForceResult {
    double value = 0.0;
    std::vector<int> labeling;  // lexicographically smallest optimum
};

// Exact maximum of the weighted satisfied fraction over all m^n labelings.
// Partitions the labeling space across OpenMP workers; the merge is
// deterministic regardless of thread count.
BruteForceResult brute_force_classical_value(
    const GeneralCspInstance& inst,
    std::uint64_t labeling_budget = budget::brute_force);

namespace reference {
// Serial odometer enumeration with naive tuple-membership predicates. Kept as
// the independent oracle for the partitioned kernel above and as the baseline
// in the benchmark target.
BruteForceResult brute_force_value(const GeneralCspInstance& inst);
}  // namespace reference

// Uniform random bijections on each sampled edge, uniform edge weights,
// deterministic under seed. density ∈ (0,1]; an empty sampled edge set throws.
LabelCoverInstance generate_random_ulc(int left_count, int right_count, int m,
                                       double edge_density, std::uint64_t seed);

// Encode/decode a label tuple as Σ a_i · m^(k−1−i) (lexicographic order).
std::uint32_t encode_labels(const std::vector<int>& labels, int m);
std::vector<int> invert_permutation(const std::vector<int>& pi);

}  // namespace qcsp
