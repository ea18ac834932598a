// fielde: one executable for the whole toolkit.
//
// Subcommands: stats, train, eval, gradcheck, motif-test, export-field.
// Every subcommand accepts --config FILE (flat key=value lines, '#' comments,
// unknown keys rejected); precedence is defaults < config file < flags.
// The effective configuration is echoed to stderr at startup.
//
// Exit codes: 0 success, 2 usage or config error (unknown flag/key),
// 3 dataset missing or unreadable, 4 checkpoint missing or corrupt, 1 other.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>

#include "fielde/checkpoint.hpp"
#include "fielde/config.hpp"
#include "fielde/errors.hpp"
#include "fielde/evaluator.hpp"
#include "fielde/fieldviz.hpp"
#include "fielde/grad.hpp"
#include "fielde/kg.hpp"
#include "fielde/model.hpp"
#include "fielde/motif.hpp"
#include "fielde/trainer.hpp"

namespace {

using namespace fielde;

constexpr int kExitUsage = 2;
constexpr int kExitDataset = 3;
constexpr int kExitCheckpoint = 4;

struct ExitError {
    int code;
    std::string kind;
    std::string msg;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Merges file values into options the command line left untouched; values for
// multi-value options are whitespace-separated.
void apply_config_file(CLI::App* sub, const std::string& path) {
    ConfigPairs pairs;
    try {
        pairs = load_flat_config(path);
    } catch (const IoError& e) {
        throw ExitError{kExitUsage, "config", e.what()};
    } catch (const ParseError& e) {
        throw ExitError{kExitUsage, "config", e.what()};
    }
    for (const auto& [key, value] : pairs) {
        CLI::Option* op = sub->get_option_no_throw("--" + key);
        if (op == nullptr || !op->get_configurable())
            throw ExitError{kExitUsage, "config", path + ": unknown key '" + key + "'"};
        if (op->count() > 0) continue;  // command-line flags win
        try {
            if (op->get_items_expected_max() == 1) {
                op->add_result(value);
            } else {
                std::istringstream tokens(value);
                std::string tok;
                while (tokens >> tok) op->add_result(tok);
            }
            op->run_callback();
        } catch (const CLI::Error& e) {
            throw ExitError{kExitUsage, "config", path + ": key '" + key + "': " + e.what()};
        }
    }
}

void echo_config(const CLI::App& sub) {
    std::cerr << "# effective config: " << sub.get_name() << "\n" << sub.config_to_str(true, false);
}

void require_value(const CLI::App& sub, const char* flag, const std::string& value) {
    if (value.empty())
        throw ExitError{kExitUsage, "usage", sub.get_name() + ": " + flag + " is required"};
}

struct DatasetOpts {
    std::string train, valid, test;
};

void add_dataset_opts(CLI::App* sub, DatasetOpts& d) {
    sub->add_option("--train", d.train, "train triples TSV (head<TAB>relation<TAB>tail)");
    sub->add_option("--valid", d.valid, "validation triples TSV");
    sub->add_option("--test", d.test, "test triples TSV");
}

KnowledgeGraph load_dataset_checked(const DatasetOpts& d) {
    try {
        return load_dataset(d.train, d.valid, d.test);
    } catch (const IoError& e) {
        throw ExitError{kExitDataset, "dataset", e.what()};
    } catch (const ParseError& e) {
        throw ExitError{kExitDataset, "dataset", e.what()};
    }
}

struct ModelOpts {
    int dim = 16;
    std::string variant = "distance";
    std::string field = "neural";
    std::vector<int> hidden = {32, 16};
    std::string activation = "tanh";
    double eta = 1.0;
    double lambda = 1.0;
};

void add_model_opts(CLI::App* sub, ModelOpts& m) {
    sub->add_option("--dim", m.dim, "embedding dimension")->check(CLI::PositiveNumber);
    sub->add_option("--variant", m.variant, "score variant")
        ->check(CLI::IsMember({"distance", "semantic"}));
    sub->add_option("--field", m.field, "relation field kind")
        ->check(CLI::IsMember({"constant", "linear", "rotation", "neural"}));
    sub->add_option("--hidden", m.hidden, "neural field hidden layer widths");
    sub->add_option("--activation", m.activation, "neural field activation")
        ->check(CLI::IsMember({"tanh", "sigmoid", "identity"}));
    sub->add_option("--eta", m.eta, "step weight on the current point");
    sub->add_option("--lambda", m.lambda, "step weight on the field velocity");
}

ModelConfig to_model_config(const ModelOpts& m) {
    ModelConfig cfg;
    cfg.dim = m.dim;
    cfg.variant = variant_from_string(m.variant);
    cfg.field_kind = field_kind_from_string(m.field);
    cfg.hidden = m.hidden;
    cfg.activation = activation_from_string(m.activation);
    cfg.step = StepCoefficients{m.eta, m.lambda};
    return cfg;
}

struct TrainOpts {
    double learning_rate = 0.001;
    int batch_size = 128;
    int negatives = 8;
    double alpha = 1.0;
    double margin = 9.0;
    int epochs = 100;
    std::uint64_t seed = 1;
};

void add_train_opts(CLI::App* sub, TrainOpts& t) {
    sub->add_option("--learning-rate", t.learning_rate, "Adam learning rate");
    sub->add_option("--batch-size", t.batch_size, "triples per batch")->check(CLI::PositiveNumber);
    sub->add_option("--negatives", t.negatives, "negatives per positive")->check(CLI::PositiveNumber);
    sub->add_option("--alpha", t.alpha, "self-adversarial temperature");
    sub->add_option("--margin", t.margin, "loss margin gamma");
    sub->add_option("--epochs", t.epochs, "training epochs")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", t.seed, "seed for all randomness");
}

TrainConfig to_train_config(const TrainOpts& t, StepCoefficients step) {
    TrainConfig cfg;
    cfg.learning_rate = t.learning_rate;
    cfg.batch_size = t.batch_size;
    cfg.num_negatives = t.negatives;
    cfg.adversarial_alpha = t.alpha;
    cfg.margin = t.margin;
    cfg.epochs = t.epochs;
    cfg.seed = t.seed;
    cfg.step = step;
    return cfg;
}

void print_report(const RankingReport& r, const std::string& split) {
    std::cout << "split " << split << "\n";
    std::cout << "n_triples " << r.n_t << "\n";
    std::cout << "mrr " << fmt(r.mrr) << "\n";
    std::cout << "hits1 " << fmt(r.hits1) << "\n";
    std::cout << "hits3 " << fmt(r.hits3) << "\n";
    std::cout << "hits10 " << fmt(r.hits10) << "\n";
}

// --- stats ---

struct StatsCmd {
    DatasetOpts data;
    std::string config;
};

void run_stats(const StatsCmd& cmd) {
    const KnowledgeGraph kg = load_dataset_checked(cmd.data);
    const DatasetStats s = dataset_stats(kg);
    std::cout << "entities " << s.num_entities << "\n";
    std::cout << "relations " << s.num_relations << "\n";
    std::cout << "train " << s.num_train << "\n";
    std::cout << "valid " << s.num_valid << "\n";
    std::cout << "test " << s.num_test << "\n";
}

// --- train ---

struct TrainCmd {
    DatasetOpts data;
    ModelOpts model;
    TrainOpts train;
    std::string checkpoint;
    int checkpoint_every = 0;  // 0: final write only
    std::string loss_log;
    std::string eval_split = "none";
    std::string config;
};

void run_train(const TrainCmd& cmd) {
    KnowledgeGraph kg = load_dataset_checked(cmd.data);
    if (kg.train.empty()) throw ExitError{kExitDataset, "dataset", "train split is empty"};

    const ModelConfig mcfg = to_model_config(cmd.model);
    const TrainConfig tcfg = to_train_config(cmd.train, mcfg.step);
    tcfg.validate();

    Rng rng(tcfg.seed);
    ModelState state = init_model(kg.vocab.num_entities(), kg.vocab.num_relations(), mcfg, rng);

    std::ofstream log;
    if (!cmd.loss_log.empty()) {
        log.open(cmd.loss_log, std::ios::binary);
        if (!log) throw IoError("cannot write loss log: " + cmd.loss_log);
        log << "epoch,mean_loss,wall_seconds\n";
    }

    const auto start = std::chrono::steady_clock::now();
    double last_loss = 0.0;
    train(state, kg, tcfg, [&](int epoch, double mean_loss) {
        last_loss = mean_loss;
        if (log.is_open()) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
            char wall[32];
            std::snprintf(wall, sizeof(wall), "%.3f", dt.count());
            log << epoch << ',' << fmt(mean_loss) << ',' << wall << '\n';
        }
        if (!cmd.checkpoint.empty() && cmd.checkpoint_every > 0 &&
            (epoch + 1) % cmd.checkpoint_every == 0) {
            save_checkpoint(state, cmd.checkpoint);
        }
    });

    if (!cmd.checkpoint.empty()) save_checkpoint(state, cmd.checkpoint);
    std::cout << "epochs " << tcfg.epochs << "\n";
    std::cout << "final_mean_loss " << fmt(last_loss) << "\n";

    if (cmd.eval_split != "none") {
        const Split split = cmd.eval_split == "valid" ? Split::valid : Split::test;
        const auto& triples = split == Split::valid ? kg.valid : kg.test;
        if (triples.empty())
            throw ExitError{kExitDataset, "dataset", cmd.eval_split + " split is empty"};
        print_report(evaluate(state, kg, split), cmd.eval_split);
    }
}

// --- eval ---

struct EvalCmd {
    DatasetOpts data;
    std::string checkpoint;
    std::string split = "test";
    std::string config;
};

void run_eval(const EvalCmd& cmd) {
    const KnowledgeGraph kg = load_dataset_checked(cmd.data);
    const ModelState state = load_checkpoint(cmd.checkpoint);
    if (state.num_entities() != kg.vocab.num_entities() ||
        state.num_relations() != kg.vocab.num_relations()) {
        throw ExitError{kExitCheckpoint, "checkpoint",
                        "checkpoint shape (" + std::to_string(state.num_entities()) + " entities, " +
                            std::to_string(state.num_relations()) + " relations) does not match dataset (" +
                            std::to_string(kg.vocab.num_entities()) + ", " +
                            std::to_string(kg.vocab.num_relations()) + ")"};
    }
    const Split split = cmd.split == "valid" ? Split::valid : Split::test;
    const auto& triples = split == Split::valid ? kg.valid : kg.test;
    if (triples.empty()) throw ExitError{kExitDataset, "dataset", cmd.split + " split is empty"};
    print_report(evaluate(state, kg, split), cmd.split);
}

// --- gradcheck ---

struct GradcheckCmd {
    int samples = 100;
    int max_dim = 8;
    double epsilon = 1e-5;
    double tolerance = 1e-5;
    std::uint64_t seed = 1;
    std::string config;
};

ModelState random_check_state(Variant variant, FieldKind kind, int max_dim, Rng& rng) {
    const int half = std::max(1, max_dim / 2);
    const int dim = kind == FieldKind::rotation
                        ? 2 * (1 + static_cast<int>(rng.uniform_index(half)))
                        : 1 + static_cast<int>(rng.uniform_index(max_dim));

    ModelConfig cfg;
    cfg.dim = dim;
    cfg.variant = variant;
    cfg.field_kind = kind;
    cfg.hidden = {1 + static_cast<int>(rng.uniform_index(6)), 1 + static_cast<int>(rng.uniform_index(6))};
    cfg.activation = Activation::tanh;
    cfg.step = StepCoefficients{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};

    ModelState state = init_model(2, 1, cfg, rng);
    for (double& x : state.entities) x = rng.uniform(-1.0, 1.0);
    RelationField& f = state.fields[0];
    switch (kind) {
        case FieldKind::constant:
            for (double& x : f.r_vec) x = rng.uniform(-1.0, 1.0);
            break;
        case FieldKind::linear:
            for (double& x : f.lin.data) x = rng.uniform(-1.0, 1.0);
            break;
        case FieldKind::rotation:
            break;  // phases already uniform in [-pi, pi]
        case FieldKind::neural:
            for (Vec& b : f.net.biases)
                for (double& x : b) x = rng.uniform(-0.5, 0.5);
            break;
    }
    return state;
}

void run_gradcheck(const GradcheckCmd& cmd) {
    if (cmd.max_dim < 2) throw ExitError{kExitUsage, "usage", "--max-dim must be >= 2"};
    Rng rng(cmd.seed);
    bool ok = true;
    for (Variant variant : {Variant::distance, Variant::semantic}) {
        for (FieldKind kind :
             {FieldKind::constant, FieldKind::linear, FieldKind::rotation, FieldKind::neural}) {
            double worst = 0.0;
            for (int i = 0; i < cmd.samples; ++i) {
                ModelState state = random_check_state(variant, kind, cmd.max_dim, rng);
                const Triple t{0, 0, rng.coin() ? 0 : 1};
                // Near the distance singularity the quotient degrades; redraw.
                if (variant == Variant::distance && std::abs(score(state, t)) < 1e-2) {
                    --i;
                    continue;
                }
                worst = std::max(worst, finite_diff_check(state, t, cmd.epsilon));
            }
            const bool pass = worst <= cmd.tolerance;
            ok = ok && pass;
            std::cout << "variant=" << to_string(variant) << " kind=" << to_string(kind)
                      << " max_rel_err=" << fmt(worst) << (pass ? " PASS" : " FAIL") << "\n";
        }
    }
    std::cout << (ok ? "gradcheck PASS" : "gradcheck FAIL") << "\n";
    if (!ok) throw ExitError{1, "gradcheck", "max relative error exceeds tolerance"};
}

// --- motif-test ---

struct MotifCmd {
    std::vector<int> loops = {10};
    std::vector<int> paths = {10};
    int relations = 1;
    std::vector<std::string> models = {"nd", "transe", "rotate", "complex"};
    ModelOpts model;  // dim/hidden/activation/eta/lambda for the nd and linear models
    TrainOpts train;
    std::string out_dir = ".";
    double hold_max_rank = 2.0;
    std::string config;
};

ModelConfig motif_model_config(const std::string& name, const ModelOpts& base) {
    ModelConfig cfg = to_model_config(base);
    if (name == "nd") {
        cfg.field_kind = FieldKind::neural;
        cfg.variant = Variant::distance;
    } else if (name == "transe") {
        cfg.field_kind = FieldKind::constant;
        cfg.variant = Variant::distance;
        cfg.step = reduction_step(ReductionKind::transe);
    } else if (name == "rotate") {
        cfg.field_kind = FieldKind::rotation;
        cfg.variant = Variant::distance;
        cfg.step = reduction_step(ReductionKind::rotate);
    } else if (name == "complex") {
        cfg.field_kind = FieldKind::linear;
        cfg.variant = Variant::semantic;
        cfg.step = reduction_step(ReductionKind::complex_);
    } else {  // "linear"
        cfg.field_kind = FieldKind::linear;
        cfg.variant = Variant::distance;
    }
    return cfg;
}

void run_motif(const MotifCmd& cmd) {
    MotifSpec spec;
    spec.loop_sizes = cmd.loops;
    spec.path_lengths = cmd.paths;
    spec.num_relations = cmd.relations;
    spec.seed = cmd.train.seed;
    const MotifGraph mg = gen_motif_graph(spec);

    std::error_code ec;
    std::filesystem::create_directories(cmd.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + cmd.out_dir);

    std::vector<std::string> names;
    std::vector<StructureReport> reports;
    for (const std::string& name : cmd.models) {
        const ModelConfig mcfg = motif_model_config(name, cmd.model);
        const TrainConfig tcfg = to_train_config(cmd.train, mcfg.step);
        tcfg.validate();

        Rng rng(tcfg.seed);
        ModelState state =
            init_model(mg.kg.vocab.num_entities(), mg.kg.vocab.num_relations(), mcfg, rng);
        train(state, mg.kg, tcfg);

        StructureReport report = structure_report(state, mg, cmd.hold_max_rank);
        int violations = 0;
        for (const StructureRow& row : report.rows) violations += row.violation ? 1 : 0;

        const std::string path = cmd.out_dir + "/report_" + name + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write report: " + path);
        out << report_csv(report);

        std::cout << "model " << name << " violations " << violations;
        std::cout << " loop_ranks";
        for (double r : report.loop_closure_ranks) std::cout << ' ' << fmt(r);
        std::cout << " path_ranks";
        for (double r : report.path_closure_ranks) std::cout << ' ' << fmt(r);
        std::cout << "\n";

        names.push_back(name);
        reports.push_back(std::move(report));
    }

    const std::string heat_path = cmd.out_dir + "/heatmap.csv";
    std::ofstream heat(heat_path, std::ios::binary);
    if (!heat) throw IoError("cannot write heat map: " + heat_path);
    heat << heatmap_csv(names, reports);
}

// --- export-field ---

struct ExportCmd {
    std::string checkpoint;
    std::string train_path;  // used to resolve --relation names
    std::string relation;
    int relation_id = -1;
    std::vector<int> dims = {0, 1};
    std::vector<double> bounds = {-1.0, 1.0, -1.0, 1.0};
    std::vector<int> resolution = {20, 20};
    std::string anchor = "mean";
    double step = 1e-3;
    std::string format = "csv";
    std::string out;
    std::string config;
};

void run_export(const ExportCmd& cmd) {
    const ModelState state = load_checkpoint(cmd.checkpoint);

    int rel = cmd.relation_id;
    if (!cmd.relation.empty()) {
        if (cmd.train_path.empty())
            throw ExitError{kExitUsage, "usage", "--relation needs --train to resolve names"};
        DatasetOpts d;
        d.train = cmd.train_path;
        const KnowledgeGraph kg = load_dataset_checked(d);
        rel = kg.vocab.find_relation(cmd.relation);
        if (rel < 0)
            throw ExitError{kExitDataset, "dataset", "unknown relation: " + cmd.relation};
    }
    if (rel < 0)
        throw ExitError{kExitUsage, "usage", "give either --relation or --relation-id"};
    if (rel >= state.num_relations())
        throw ExitError{kExitCheckpoint, "checkpoint",
                        "relation id " + std::to_string(rel) + " out of range"};

    const Vec anchor = cmd.anchor == "mean" ? mean_entity_anchor(state)
                                            : Vec(static_cast<std::size_t>(state.dim), 0.0);
    SliceBounds bounds{cmd.bounds[0], cmd.bounds[1], cmd.bounds[2], cmd.bounds[3]};
    FieldSlice slice = sample_slice(state, rel, {cmd.dims[0], cmd.dims[1]}, bounds,
                                    {cmd.resolution[0], cmd.resolution[1]}, anchor);
    const RelationField& field = state.fields[static_cast<std::size_t>(rel)];
    divergence_grid(slice, field, cmd.step);
    curl_grid(slice, field, cmd.step);
    export_slice(slice, cmd.format == "svg" ? SliceFormat::svg : SliceFormat::csv, cmd.out);
    std::cout << "wrote " << cmd.out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fielde: knowledge graph embeddings with relations as vector fields"};
    app.require_subcommand(1);

    auto configure = [](CLI::App* sub, std::string& config_path) {
        sub->option_defaults()->always_capture_default(true);
        sub->add_option("--config", config_path, "flat key=value config file ('#' comments)")
            ->configurable(false);
    };
    auto start = [](CLI::App* sub, const std::string& config_path) {
        if (!config_path.empty()) apply_config_file(sub, config_path);
        echo_config(*sub);
    };

    auto* stats = app.add_subcommand("stats", "print dataset counts");
    StatsCmd st;
    configure(stats, st.config);
    add_dataset_opts(stats, st.data);
    stats->callback([&, stats] {
        start(stats, st.config);
        require_value(*stats, "--train", st.data.train);
        run_stats(st);
    });

    auto* train_cmd = app.add_subcommand("train", "train a model and save a checkpoint");
    TrainCmd tr;
    configure(train_cmd, tr.config);
    add_dataset_opts(train_cmd, tr.data);
    add_model_opts(train_cmd, tr.model);
    add_train_opts(train_cmd, tr.train);
    train_cmd->add_option("--checkpoint", tr.checkpoint, "checkpoint output path");
    train_cmd->add_option("--checkpoint-every", tr.checkpoint_every,
                          "also save every N epochs (0: only at the end)");
    train_cmd->add_option("--loss-log", tr.loss_log, "CSV loss log (epoch,mean_loss,wall_seconds)");
    train_cmd->add_option("--eval-split", tr.eval_split, "evaluate after training")
        ->check(CLI::IsMember({"none", "valid", "test"}));
    train_cmd->callback([&, train_cmd] {
        start(train_cmd, tr.config);
        require_value(*train_cmd, "--train", tr.data.train);
        run_train(tr);
    });

    auto* eval_cmd = app.add_subcommand("eval", "filtered link-prediction evaluation");
    EvalCmd ev;
    configure(eval_cmd, ev.config);
    add_dataset_opts(eval_cmd, ev.data);
    eval_cmd->add_option("--checkpoint", ev.checkpoint, "checkpoint to evaluate");
    eval_cmd->add_option("--split", ev.split, "split to rank")
        ->check(CLI::IsMember({"valid", "test"}));
    eval_cmd->callback([&, eval_cmd] {
        start(eval_cmd, ev.config);
        require_value(*eval_cmd, "--train", ev.data.train);
        require_value(*eval_cmd, "--checkpoint", ev.checkpoint);
        run_eval(ev);
    });

    auto* grad_cmd = app.add_subcommand("gradcheck", "finite-difference gradient check");
    GradcheckCmd gc;
    configure(grad_cmd, gc.config);
    grad_cmd->add_option("--samples", gc.samples, "random configurations per variant/kind")
        ->check(CLI::PositiveNumber);
    grad_cmd->add_option("--max-dim", gc.max_dim, "largest embedding dimension drawn");
    grad_cmd->add_option("--epsilon", gc.epsilon, "finite-difference step");
    grad_cmd->add_option("--tolerance", gc.tolerance, "max relative error allowed");
    grad_cmd->add_option("--seed", gc.seed, "seed for all randomness");
    grad_cmd->callback([&, grad_cmd] {
        start(grad_cmd, gc.config);
        run_gradcheck(gc);
    });

    auto* motif_cmd = app.add_subcommand("motif-test", "train models on loop/path motifs");
    MotifCmd mc;
    configure(motif_cmd, mc.config);
    motif_cmd->add_option("--loops", mc.loops, "loop sizes");
    motif_cmd->add_option("--paths", mc.paths, "path lengths");
    motif_cmd->add_option("--relations", mc.relations, "relation count (round-robin over motifs)")
        ->check(CLI::PositiveNumber);
    motif_cmd->add_option("--models", mc.models, "models to train")
        ->check(CLI::IsMember({"nd", "transe", "rotate", "complex", "linear"}));
    add_model_opts(motif_cmd, mc.model);
    add_train_opts(motif_cmd, mc.train);
    motif_cmd->add_option("--out-dir", mc.out_dir, "directory for report/heat-map CSVs");
    motif_cmd->add_option("--hold-max-rank", mc.hold_max_rank,
                          "max rank a should-hold closure may take");
    motif_cmd->callback([&, motif_cmd] {
        start(motif_cmd, mc.config);
        run_motif(mc);
    });

    auto* export_cmd = app.add_subcommand("export-field", "export a 2D field slice as CSV or SVG");
    ExportCmd ex;
    configure(export_cmd, ex.config);
    export_cmd->add_option("--checkpoint", ex.checkpoint, "checkpoint to slice");
    export_cmd->add_option("--train", ex.train_path, "train TSV for relation-name lookup");
    export_cmd->add_option("--relation", ex.relation, "relation name (needs --train)");
    export_cmd->add_option("--relation-id", ex.relation_id, "relation id (bypasses name lookup)");
    export_cmd->add_option("--dims", ex.dims, "slice coordinate pair i j")->expected(2);
    export_cmd->add_option("--bounds", ex.bounds, "x_min x_max y_min y_max")->expected(4);
    export_cmd->add_option("--resolution", ex.resolution, "lattice points per axis")->expected(2);
    export_cmd->add_option("--anchor", ex.anchor, "off-slice coordinate anchor")
        ->check(CLI::IsMember({"mean", "zero"}));
    export_cmd->add_option("--step", ex.step, "central-difference step for div/curl");
    export_cmd->add_option("--format", ex.format, "output format")
        ->check(CLI::IsMember({"csv", "svg"}));
    export_cmd->add_option("--out", ex.out, "output path");
    export_cmd->callback([&, export_cmd] {
        start(export_cmd, ex.config);
        require_value(*export_cmd, "--checkpoint", ex.checkpoint);
        require_value(*export_cmd, "--out", ex.out);
        run_export(ex);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    } catch (const ExitError& e) {
        std::cerr << "error[" << e.kind << "]: " << e.msg << "\n";
        return e.code;
    } catch (const CheckpointError& e) {
        std::cerr << "error[checkpoint]: " << e.what() << "\n";
        return kExitCheckpoint;
    } catch (const std::exception& e) {
        std::cerr << "error[runtime]: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
