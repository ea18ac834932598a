#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "helpers.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

// Runs the toolkit binary (path in FIELDE_BIN) with stdout/stderr captured.
RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto dir = testutil::scratch_dir("cli");
    const std::string out_path = (dir / ("out" + std::to_string(counter) + ".txt")).string();
    const std::string err_path = (dir / ("err" + std::to_string(counter) + ".txt")).string();
    ++counter;

    const char* bin = std::getenv("FIELDE_BIN");
    REQUIRE(bin != nullptr);
    const std::string cmd = std::string(bin) + " " + args + " >" + out_path + " 2>" + err_path;
    const int raw = std::system(cmd.c_str());

    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = testutil::read_file(out_path);
    r.err = testutil::read_file(err_path);
    return r;
}

std::string line_with_prefix(const std::string& text, const std::string& prefix) {
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        if (line.rfind(prefix, 0) == 0) return line;
        start = end + 1;
    }
    return {};
}

std::string triangle_dataset() {
    return testutil::write_file(testutil::scratch_dir("cli") / "train.tsv",
                                "a\tr\tb\nb\tr\tc\nc\tr\ta\n");
}

std::string test_split_file() {
    return testutil::write_file(testutil::scratch_dir("cli") / "test.tsv", "b\tr\ta\n");
}

}  // namespace

TEST_CASE("cli: a subcommand is required") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("--nonsense").code == 2);
}

TEST_CASE("cli: help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
    const RunResult sub = run_cli("train --help");
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--learning-rate") != std::string::npos);
}

TEST_CASE("cli: stats prints dataset counts") {
    const std::string train = triangle_dataset();
    const RunResult r = run_cli("stats --train " + train);
    CHECK(r.code == 0);
    CHECK(line_with_prefix(r.out, "entities ") == "entities 3");
    CHECK(line_with_prefix(r.out, "relations ") == "relations 1");
    CHECK(line_with_prefix(r.out, "train ") == "train 3");
    CHECK(line_with_prefix(r.out, "valid ") == "valid 0");
    CHECK(line_with_prefix(r.out, "test ") == "test 0");
    CHECK(r.err.find("# effective config: stats") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with 2") {
    const RunResult unknown = run_cli("stats --bogus 1");
    CHECK(unknown.code == 2);
    const RunResult missing = run_cli("stats");
    CHECK(missing.code == 2);
    CHECK(missing.err.find("error[usage]") != std::string::npos);
}

TEST_CASE("cli: unreadable datasets exit with 3") {
    const RunResult r = run_cli("stats --train scratch/cli/no_such_file.tsv");
    CHECK(r.code == 3);
    CHECK(r.err.find("error[dataset]") != std::string::npos);

    const std::string empty = testutil::write_file(testutil::scratch_dir("cli") / "empty.tsv", "");
    const RunResult e = run_cli("train --train " + empty + " --epochs 1");
    CHECK(e.code == 3);
    CHECK(e.err.find("train split is empty") != std::string::npos);
}

TEST_CASE("cli: train writes a loss log and a checkpoint") {
    const std::string train = triangle_dataset();
    const auto dir = testutil::scratch_dir("cli");
    const std::string ckpt = (dir / "toy.ckpt").string();
    const std::string log = (dir / "loss.csv").string();

    const RunResult r = run_cli("train --train " + train +
                                " --dim 4 --field constant --epochs 3 --seed 5"
                                " --learning-rate 0.05 --checkpoint " +
                                ckpt + " --loss-log " + log);
    CHECK(r.code == 0);
    CHECK(line_with_prefix(r.out, "epochs ") == "epochs 3");
    CHECK(!line_with_prefix(r.out, "final_mean_loss ").empty());
    CHECK(std::filesystem::exists(ckpt));

    const std::string loss = testutil::read_file(log);
    CHECK(loss.rfind("epoch,mean_loss,wall_seconds\n", 0) == 0);
    CHECK(testutil::count_occurrences(loss, "\n") == 4);
    CHECK(loss.find("\n0,") != std::string::npos);
    CHECK(loss.find("\n2,") != std::string::npos);
}

TEST_CASE("cli: eval reproduces the post-training report") {
    const std::string train = triangle_dataset();
    const std::string test = test_split_file();
    const auto dir = testutil::scratch_dir("cli");
    const std::string ckpt = (dir / "roundtrip.ckpt").string();

    const std::string shared = " --train " + train + " --test " + test;
    const RunResult trained = run_cli("train" + shared +
                                      " --dim 4 --field constant --epochs 5 --seed 7"
                                      " --eval-split test --checkpoint " +
                                      ckpt);
    REQUIRE(trained.code == 0);
    const RunResult evaled = run_cli("eval" + shared + " --split test --checkpoint " + ckpt);
    REQUIRE(evaled.code == 0);

    CHECK(line_with_prefix(evaled.out, "split ") == "split test");
    CHECK(line_with_prefix(evaled.out, "n_triples ") == "n_triples 1");
    for (const char* prefix : {"mrr ", "hits1 ", "hits3 ", "hits10 "}) {
        const std::string line = line_with_prefix(evaled.out, prefix);
        CHECK(!line.empty());
        CHECK(line == line_with_prefix(trained.out, prefix));
    }
}

TEST_CASE("cli: evaluating an absent split exits with 3") {
    const std::string train = triangle_dataset();
    const RunResult r = run_cli("train --train " + train +
                                " --dim 2 --field constant --epochs 1 --eval-split test");
    CHECK(r.code == 3);
    CHECK(r.err.find("test split is empty") != std::string::npos);
}

TEST_CASE("cli: a corrupt checkpoint exits with 4") {
    const std::string train = triangle_dataset();
    const std::string bad =
        testutil::write_file(testutil::scratch_dir("cli") / "bad.ckpt", "not a checkpoint");
    const RunResult r = run_cli("eval --train " + train + " --checkpoint " + bad);
    CHECK(r.code == 4);
    CHECK(r.err.find("error[checkpoint]") != std::string::npos);
}

TEST_CASE("cli: config files fill in unset flags only") {
    const std::string train = triangle_dataset();
    const auto dir = testutil::scratch_dir("cli");
    const std::string cfg = testutil::write_file(
        dir / "train.cfg", "epochs=7\n# a comment\nfield=constant\ndim=2\n");

    const std::string base = "train --train " + train + " --config " + cfg;
    const RunResult file_only = run_cli(base);
    CHECK(file_only.code == 0);
    CHECK(line_with_prefix(file_only.out, "epochs ") == "epochs 7");
    CHECK(file_only.err.find("# effective config: train") != std::string::npos);

    const RunResult flag_wins = run_cli(base + " --epochs 2");
    CHECK(flag_wins.code == 0);
    CHECK(line_with_prefix(flag_wins.out, "epochs ") == "epochs 2");

    const std::string bad_cfg = testutil::write_file(dir / "bad.cfg", "no_such_key=1\n");
    const RunResult bad = run_cli("train --train " + train + " --config " + bad_cfg);
    CHECK(bad.code == 2);
    CHECK(bad.err.find("unknown key") != std::string::npos);
}

TEST_CASE("cli: gradcheck passes quickly on small samples") {
    const RunResult r = run_cli("gradcheck --samples 2 --max-dim 4 --seed 9");
    CHECK(r.code == 0);
    CHECK(testutil::count_occurrences(r.out, "variant=") == 8);
    CHECK(testutil::count_occurrences(r.out, "max_rel_err=") == 8);
    CHECK(r.out.find("gradcheck PASS") != std::string::npos);
    CHECK(run_cli("gradcheck --max-dim 1").code == 2);
}

TEST_CASE("cli: motif-test writes reports and a heat map") {
    // A nested, not yet existing output directory must be created.
    const auto out_dir = testutil::scratch_dir("cli_motif") / "nested" / "run1";
    const RunResult r = run_cli("motif-test --loops 4 --paths 4 --models transe"
                                " --dim 4 --epochs 30 --seed 3 --out-dir " +
                                out_dir.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("model transe violations ") != std::string::npos);
    CHECK(r.out.find(" loop_ranks ") != std::string::npos);
    CHECK(r.out.find(" path_ranks ") != std::string::npos);

    const std::string report = testutil::read_file(out_dir / "report_transe.csv");
    CHECK(report.rfind("triple,kind,expected,score,tail_rank,violation\n", 0) == 0);
    // 4 loop edges + 3 path edges + 2 probes + header
    CHECK(testutil::count_occurrences(report, "\n") == 10);

    const std::string heat = testutil::read_file(out_dir / "heatmap.csv");
    CHECK(heat.rfind("triple,transe\n", 0) == 0);
}

TEST_CASE("cli: export-field renders csv and svg slices") {
    const std::string train = triangle_dataset();
    const auto dir = testutil::scratch_dir("cli");
    const std::string ckpt = (dir / "viz.ckpt").string();
    REQUIRE(run_cli("train --train " + train +
                    " --dim 4 --field linear --epochs 2 --checkpoint " + ckpt)
                .code == 0);

    const std::string csv_path = (dir / "slice.csv").string();
    const std::string cfg = testutil::write_file(dir / "export.cfg", "resolution=3 3\n");
    const RunResult csv = run_cli("export-field --checkpoint " + ckpt +
                                  " --relation-id 0 --config " + cfg + " --out " + csv_path);
    CHECK(csv.code == 0);
    CHECK(csv.out == "wrote " + csv_path + "\n");
    const std::string body = testutil::read_file(csv_path);
    CHECK(body.rfind("x,y,vx,vy,div,curl\n", 0) == 0);
    CHECK(testutil::count_occurrences(body, "\n") == 10);

    const std::string svg_path = (dir / "slice.svg").string();
    const RunResult svg = run_cli("export-field --checkpoint " + ckpt +
                                  " --relation r --train " + train +
                                  " --resolution 3 3 --format svg --out " + svg_path);
    CHECK(svg.code == 0);
    CHECK(testutil::xml_well_formed(testutil::read_file(svg_path)));

    SUBCASE("relation name resolution failures") {
        CHECK(run_cli("export-field --checkpoint " + ckpt + " --relation r --out x.csv").code == 2);
        CHECK(run_cli("export-field --checkpoint " + ckpt + " --relation zz --train " + train +
                      " --out x.csv")
                  .code == 3);
        CHECK(run_cli("export-field --checkpoint " + ckpt + " --relation-id 5 --out x.csv").code ==
              4);
        CHECK(run_cli("export-field --checkpoint " + ckpt + " --out x.csv").code == 2);
    }
}
