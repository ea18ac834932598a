#pragma once
// Synthetic single-relation motif graphs. A loop of size n contributes the
// chain (e_1,r,e_2)...(e_{n-1},r,e_n) plus the closing (e_n,r,e_1); a path of
// length n contributes the chain only. The closure triple is emitted as a
// probe each time: true (and trained) for loops, false for paths.

#include <string>
#include <vector>

#include "fielde/kg.hpp"
#include "fielde/model.hpp"

namespace fielde {

struct MotifSpec {
    std::vector<int> loop_sizes;
    std::vector<int> path_lengths;
    int num_relations = 1;
    std::uint64_t seed = 1;
};

struct Probe {
    Triple triple;
    std::string label;  // e.g. "L1.10" (loop closure), "P1.10" (path closure)
    bool should_hold = false;
};

struct MotifGraph {
    KnowledgeGraph kg;
    std::vector<Probe> probes;
    std::vector<std::string> train_labels;  // one per kg.train triple, e.g. "L1.3"
};

// Deterministic for fixed parameters. Motifs get disjoint entity sets named
// L{m}_e{i} / P{m}_e{i}; relations r0..r{num_relations-1} round-robin over
// motifs. Throws on sizes < 2.
MotifGraph gen_motif_graph(const MotifSpec& spec);

// Admissible RotatE phases for an n-cycle: r^n = 1 forces theta = 2*pi*k/n.
// Any such phase closes every length-n chain of the relation, which is the
// wrong-inference mechanism on paths.
struct CycleAnalysis {
    int cycle_length = 0;
    Vec phases;  // 2*pi*k/n for k = 0..n-1
};
CycleAnalysis rotate_cycle_analysis(int cycle_length);

struct StructureRow {
    std::string label;
    Triple triple;
    bool is_probe = false;
    bool should_hold = false;
    double score = 0.0;
    double tail_rank = 0.0;  // filtered
    bool violation = false;
};

struct StructureReport {
    std::vector<StructureRow> rows;  // train triples first, then probes
    std::vector<double> loop_closure_ranks;
    std::vector<double> path_closure_ranks;
    double min_train_score = 0.0;
    double max_train_score = 0.0;
};

// Scores and filtered-ranks every train triple and probe. A should-hold probe
// violates when its rank exceeds hold_max_rank; a should-not-hold probe
// violates when it scores at least as high as the weakest true triple.
StructureReport structure_report(const ModelState& state, const MotifGraph& mg,
                                 double hold_max_rank = 2.0);

// Heat-map CSV: one row per triple, one rank column per model.
std::string heatmap_csv(const std::vector<std::string>& model_names,
                        const std::vector<StructureReport>& reports);

// Per-probe report CSV for one model.
std::string report_csv(const StructureReport& report);

}  // namespace fielde
