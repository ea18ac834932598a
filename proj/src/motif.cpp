#include "fielde/motif.hpp"

#include <cmath>
#include <sstream>

#include "fielde/errors.hpp"
#include "fielde/evaluator.hpp"

namespace fielde {

MotifGraph gen_motif_graph(const MotifSpec& spec) {
    for (int n : spec.loop_sizes)
        if (n < 2) throw DimensionError("loop size must be >= 2");
    for (int n : spec.path_lengths)
        if (n < 2) throw DimensionError("path length must be >= 2");
    if (spec.num_relations < 1) throw DimensionError("num_relations must be >= 1");

    MotifGraph mg;
    Vocabulary& vocab = mg.kg.vocab;
    int motif_index = 0;

    auto add_chain = [&](char tag, int count, int n, bool close) {
        const std::string prefix = std::string(1, tag) + std::to_string(count);
        const int rel = vocab.relation_id("r" + std::to_string(motif_index % spec.num_relations));
        std::vector<int> ids(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            ids[static_cast<std::size_t>(i)] = vocab.entity_id(prefix + "_e" + std::to_string(i + 1));
        for (int i = 0; i + 1 < n; ++i) {
            mg.kg.train.push_back({ids[static_cast<std::size_t>(i)], rel, ids[static_cast<std::size_t>(i + 1)]});
            mg.train_labels.push_back(prefix + "." + std::to_string(i + 1));
        }
        const Triple closure{ids[static_cast<std::size_t>(n - 1)], rel, ids[0]};
        if (close) {
            mg.kg.train.push_back(closure);
            mg.train_labels.push_back(prefix + "." + std::to_string(n));
        }
        mg.probes.push_back({closure, prefix + "." + std::to_string(n), close});
        ++motif_index;
    };

    int loop_count = 0;
    for (int n : spec.loop_sizes) add_chain('L', ++loop_count, n, true);
    int path_count = 0;
    for (int n : spec.path_lengths) add_chain('P', ++path_count, n, false);

    mg.kg.build_filter_index();
    return mg;
}

CycleAnalysis rotate_cycle_analysis(int cycle_length) {
    if (cycle_length < 2) throw DimensionError("cycle length must be >= 2");
    CycleAnalysis out;
    out.cycle_length = cycle_length;
    const double two_pi = 2.0 * std::acos(-1.0);
    out.phases.resize(static_cast<std::size_t>(cycle_length));
    for (int k = 0; k < cycle_length; ++k)
        out.phases[static_cast<std::size_t>(k)] = two_pi * static_cast<double>(k) / static_cast<double>(cycle_length);
    return out;
}

StructureReport structure_report(const ModelState& state, const MotifGraph& mg, double hold_max_rank) {
    StructureReport report;
    report.rows.reserve(mg.kg.train.size() + mg.probes.size());

    bool first = true;
    for (std::size_t i = 0; i < mg.kg.train.size(); ++i) {
        StructureRow row;
        row.label = mg.train_labels[i];
        row.triple = mg.kg.train[i];
        row.should_hold = true;
        row.score = score(state, row.triple);
        row.tail_rank = rank_triple(state, row.triple, Side::tail, mg.kg);
        report.rows.push_back(row);
        if (first || row.score < report.min_train_score) report.min_train_score = row.score;
        if (first || row.score > report.max_train_score) report.max_train_score = row.score;
        first = false;
    }

    for (const Probe& probe : mg.probes) {
        StructureRow row;
        row.label = probe.label;
        row.triple = probe.triple;
        row.is_probe = true;
        row.should_hold = probe.should_hold;
        row.score = score(state, probe.triple);
        row.tail_rank = rank_triple(state, probe.triple, Side::tail, mg.kg);
        if (probe.should_hold) {
            row.violation = row.tail_rank > hold_max_rank;
            report.loop_closure_ranks.push_back(row.tail_rank);
        } else {
            row.violation = row.score >= report.min_train_score;
            report.path_closure_ranks.push_back(row.tail_rank);
        }
        report.rows.push_back(row);
    }
    return report;
}

namespace {
void append_double(std::ostringstream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}
}  // namespace

std::string heatmap_csv(const std::vector<std::string>& model_names,
                        const std::vector<StructureReport>& reports) {
    if (model_names.size() != reports.size())
        throw DimensionError("one report per model name required");
    std::ostringstream out;
    out << "triple";
    for (const std::string& name : model_names) out << ',' << name;
    out << '\n';
    if (reports.empty()) return out.str();
    for (std::size_t i = 0; i < reports.front().rows.size(); ++i) {
        out << reports.front().rows[i].label;
        for (const StructureReport& r : reports) {
            out << ',';
            append_double(out, r.rows[i].tail_rank);
        }
        out << '\n';
    }
    return out.str();
}

std::string report_csv(const StructureReport& report) {
    std::ostringstream out;
    out << "triple,kind,expected,score,tail_rank,violation\n";
    for (const StructureRow& row : report.rows) {
        out << row.label << ',' << (row.is_probe ? "probe" : "train") << ','
            << (row.should_hold ? "hold" : "not-hold") << ',';
        append_double(out, row.score);
        out << ',';
        append_double(out, row.tail_rank);
        out << ',' << (row.violation ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace fielde
