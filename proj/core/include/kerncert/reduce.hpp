#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <variant>

#include "kerncert/encoders.hpp"
#include "kerncert/graph.hpp"

namespace kerncert {

enum class ProblemKind { DualColoring, VertexCover, EdgeCliqueCover };

struct GraphInstance {
    ProblemKind kind;
    Graph graph;
    int k = 0;
};

struct HittingInstance {
    std::vector<int> universe;
    std::vector<std::vector<int>> family;
    int k = 0;
    int d = 0;
};

struct ArrowInstance {
    int m = 0, n = 0;
};

struct GSInstance {
    int m = 0, n = 0;
};

using Instance = std::variant<GraphInstance, HittingInstance, ArrowInstance, GSInstance>;

std::string instance_label(const Instance& inst);
Formula encode_instance(const Instance& inst, long max_literals = kDefaultLiteralCap);
long instance_measure(const Instance& inst); // strictly decreasing along reductions

enum class RuleId {
    DualColUniversal,
    DualColMatching,
    DualColCrown,
    VcHighDegree,
    VcIsolated,
    EccIsolated,
    EccTwinMerge,
    HsSunflower,
    ArrowRestrictObjects,
    ArrowMergeAgents,
    GsRestrictObjects,
    GsMergeAgents,
};

std::string rule_name(RuleId r);

struct ReductionBranch {
    Instance child;
    std::string side_condition;         // description of the assumed case
    std::pair<int, int> merge{0, 0};    // agent-merge rules: (a, b)
    std::vector<int> vertex_map;        // child vertex (1-based) -> parent vertex
};

struct ReductionStep {
    RuleId rule;
    std::vector<ReductionBranch> branches;
    // rule-specific evidence
    int removed_vertex = 0;
    std::vector<int> removed_set;
    CrownDecomposition crown;           // for the complement graph
    Matching matching;
    std::pair<int, int> twins{0, 0};
    std::vector<int> sunflower_core;
    std::vector<size_t> petal_indices;  // positions in the parent family
};

struct SolvedInfo {
    bool sat = false;
    std::string reason;
};

struct KernelTag {};

using StepOutcome = std::variant<ReductionStep, KernelTag, SolvedInfo>;

StepOutcome reduce_dualcol_step(const GraphInstance& inst);
StepOutcome reduce_vc_step(const GraphInstance& inst);
StepOutcome reduce_ecc_step(const GraphInstance& inst);
StepOutcome reduce_hitting_step(const HittingInstance& inst);
StepOutcome reduce_arrow_step(const ArrowInstance& inst);
StepOutcome reduce_gs_step(const ArrowInstance&) = delete;
StepOutcome reduce_gs_step(const GSInstance& inst);
StepOutcome reduce_step(const Instance& inst);

struct Sunflower {
    std::vector<int> core;
    std::vector<size_t> petal_indices;
};

// k+1 sets pairwise intersecting in exactly the core; cores tried small
// to large, so disjoint families surface as empty-core sunflowers.
std::optional<Sunflower> find_sunflower(const std::vector<std::vector<int>>& family, int petals,
                                        int d);

struct TraceNode {
    Instance instance;
    enum class Kind { Kernel, Solved, Reduced } kind = Kind::Kernel;
    SolvedInfo solved;
    std::optional<ReductionStep> step;
    std::vector<std::unique_ptr<TraceNode>> children; // parallel to step->branches
};

struct ReductionTrace {
    std::unique_ptr<TraceNode> root;
    int depth = 0;       // C: longest root-to-leaf rule count
    int max_branch = 1;  // R
    int kernel_leaves = 0;
    int solved_sat_leaves = 0;
    int solved_unsat_leaves = 0;
    std::vector<std::string> warnings; // soft chain-length checks
};

ReductionTrace kernelize(const Instance& inst);

void trace_write(const ReductionTrace& t, std::ostream& out);

// Kernel-size bounds asserted on every Kernel leaf.
void assert_kernel_bounds(const Instance& kernel_instance);

} // namespace kerncert
