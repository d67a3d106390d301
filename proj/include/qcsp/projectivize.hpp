#pragma once

#include <vector>

#include "qcsp/assignment.hpp"

namespace qcsp {

// Rounding self-commuting POVM assignments to PVM assignments of no smaller
// value, inside the commutative algebra each POVM generates, so every
// commutation relation the input satisfied survives.

struct MinimalProjectionBasis {
    CMatrix basis;                          // unitary joint-diagonalizer
    std::vector<std::vector<int>> blocks;   // partition of [d] into supports of
                                            // the algebra's minimal projections
    std::vector<std::vector<double>> weights;  // weights[a][i] ∈ [0,1], per-block
                                               // outcome weights, Σ_a = 1
};

// Decomposes P over the commutative algebra it generates. Blocks come from
// clustering joint-eigenvalue tuples with per-entry tolerance 1e−7 and are
// ordered by first column occurrence.
MinimalProjectionBasis minimal_projections(const Measurement& p,
                                           std::uint64_t seed = 0);

// The minimal projection Δ_i in the original space.
CMatrix block_projection(const MinimalProjectionBasis& basis, int block);

struct PvmDecomposition {
    std::vector<Measurement> pvms;
    std::vector<double> weights;  // probability vector; Σ_t w_t Π_t ≈ P
};

// P as a convex combination of PVMs in its own algebra (peeling construction,
// at most outcomes·blocks terms). Kept for verification; the rounding below
// uses the argmax witness directly.
PvmDecomposition decompose_to_pvms(const MinimalProjectionBasis& basis);

struct ProjectivizeResult {
    MeasurementAssignment assignment;  // kind = Pvm
    std::vector<double> value_trace;   // objective after each vertex rounding
};

// Coordinate-by-coordinate rounding: per vertex, per minimal-projection
// block, pick the outcome maximizing the (linear) objective restricted to
// that block; ties break toward the smallest outcome index. Vertices that are
// already projective are left untouched. The value never decreases.
ProjectivizeResult projectivize_assignment(const GeneralCspInstance& inst,
                                           const MeasurementAssignment& povm,
                                           std::uint64_t seed = 0);
ProjectivizeResult projectivize_assignment(const LabelCoverInstance& inst,
                                           const MeasurementAssignment& povm,
                                           std::uint64_t seed = 0);

}  // namespace qcsp
