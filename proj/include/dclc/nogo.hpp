#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dclc/boolfn.hpp"
#include "dclc/polygon.hpp"

// Perfect-decoding infeasibility sweeps over the polygon compositions, the
// click-condition tables and probability identities behind them, and the
// product-only comparison against the classical census.

namespace dclc::nogo {

enum class Feasibility { Feasible, Infeasible, Indeterminate };

const char* feasibility_name(Feasibility f);

// One decoding instance: deduplicated encoded states with the exact click
// probability (0 or 1) each must produce.  Callers resolve conflicts (the
// same state required to click both ways) before building the problem.
struct DecodingProblem {
    std::vector<polygon::Mat3> states;
    std::vector<int> targets;
};

// Decides whether a two-outcome decoder with the composition's effect
// structure can satisfy the problem exactly:
//   TypeI  — effect and its complement both conic over product generators;
//   TypeII — effect bounded by the n^2 product facets (complement implied).
// Double-precision LP with feasibility tolerance 1e-9; borderline verdicts
// rerun at 1e-12; unverifiable certificates degrade to Indeterminate.
Feasibility perfect_decoding_feasible(const polygon::PolygonModel& model,
                                      polygon::Composition comp,
                                      const DecodingProblem& problem);

struct TaskSweepResult {
    boolfn::DualLayerTask task;
    bool task_trivial = false;
    std::uint64_t assignments_checked = 0;
    std::uint64_t feasible = 0;
    std::uint64_t indeterminate = 0;
    // LP-optimal fraction of the 16 input pairs answered correctly for the
    // canonical dense encoding (1.0 whenever any feasible assignment exists).
    double max_agreement = 0.0;
};

struct NoGoReport {
    int n = 0;
    polygon::Composition composition = polygon::Composition::TypeI;
    std::vector<TaskSweepResult> tasks;
    std::uint64_t total_indeterminate = 0;
    bool all_nontrivial_infeasible = false;
};

// Sweeps every encoding assignment (up to the ledgered symmetry reductions)
// for each nontrivial two-bit task — or for the single given task — and
// reports feasibility counts.  `jobs` caps worker threads (0 = hardware).
NoGoReport verify_no_go(int n, polygon::Composition comp,
                        const std::optional<boolfn::DualLayerTask>& only_task,
                        int jobs);

// Minimum over all product complement-pair effects against the entangled
// orbit; strictly positive for odd n.
double verify_odd_type1_positivity(int n);

// Exact click sets of the reference entangled effect pair on vertex-pair
// states, odd n: clicks at equal indices, complement at offsets (n+-1)/2.
bool verify_type2_click_table(int n);

// Max deviation between direct pairing and the four sector formulas for the
// reference paired effect on the entangled orbit, even n.
double verify_even_formulas(int n);

// Integer-set equality of the per-sector sharp-click conditions, the
// combined four-state decoding table, and the endpoint property that sharp
// click patterns only occur with 0, 2 or 4 ones (never 1:3), even n.
bool verify_even_condition_tables(int n);

// Product shared states with product-only effect cone: feasibility must
// match the classical triviality verdict on all 256 two-bit tasks.
bool verify_product_only_matches_classical(int n, int jobs = 0);

// Property hook: feasibility is invariant under conjugating every encoded
// state by a common local transformation pair.
bool symmetry_reduction_spot_check(int n, polygon::Composition comp,
                                   std::uint64_t seed, int rounds);

// Concrete playable strategy for the simulation harness: vertices encode the
// inputs directly and the decoder is the LP-optimal two-outcome effect.
struct CanonicalStrategy {
    polygon::Mat3 decoder{};  // clicks mean output 1; complement implied
    double agreement = 0.0;   // LP-optimal fraction of the 16 input pairs
    std::array<std::array<double, 4>, 4> success{};  // P(correct | x, y)
};

CanonicalStrategy canonical_polygon_strategy(int n, polygon::Composition comp,
                                             const boolfn::DualLayerTask& task);

}  // namespace dclc::nogo
