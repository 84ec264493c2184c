#pragma once

#include <stdexcept>

#include "epc/synth.hpp"

namespace epc {

enum class Objective { total_ops, bxor_then_total };

struct ObjectiveValue {
    int bxor_ops = 0;
    int total_ops = 0;
    friend bool operator==(const ObjectiveValue&, const ObjectiveValue&) = default;
};

ObjectiveValue sequence_cost(const GateSequence& seq);

// true when a is strictly better than b under the objective
bool cost_better(const ObjectiveValue& a, const ObjectiveValue& b, Objective objective);

struct OptimizationResult {
    GateSequence best;
    Mat10 best_i_x;
    ObjectiveValue objective_value;
    uint64_t explored = 0;
    bool certified = false;
};

class DepthExceededError : public std::runtime_error {
  public:
    explicit DepthExceededError(int max_depth);
    int max_depth;
};

// Re-runs the block eliminations of a staged solution in every possible order
// and keeps the cheapest reduction found.  Records without stage structure
// (e.g. random-walk finds) are returned unchanged.
OptimizationResult permute_and_reduce(const SolutionRecord& rec, Objective objective);

// Exhaustive search for the cheapest reduction of m_w to any legal i_x form
// within max_depth gates (bxor_then_total runs a bidirectional search over
// the pair-local quotient to certify the BXOR minimum, then a layered DP for
// the cheapest realization; total_ops runs a uniform-cost single-gate
// search).  A returned result is certified optimal for the objective among
// sequences of at most max_depth gates; throws DepthExceededError when no
// reduction exists within the budget.
OptimizationResult minimal_sequence(const Mat10& m_w, Objective objective, int max_depth);

}  // namespace epc
