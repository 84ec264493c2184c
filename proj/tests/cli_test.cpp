#include "epc/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtest/gtest.h"

#include "epc/bell.hpp"
#include "epc/render.hpp"
#include "epc/synth.hpp"
#include "golden.hpp"

using namespace epc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("epc_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string designation_text() {
    std::string t;
    for (const char* r : golden::kDesignationRows) {
        t += r;
        t += '\n';
    }
    return t;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SynthNamedChoice) {
    fs::path dir = scratch("synth_named");
    put(dir / "mv.txt", designation_text());
    put(dir / "choice.json", "{\"name\": \"A1alpha1\"}\n");
    CliRun r = cli({"synth", "--designation", (dir / "mv.txt").string(), "--choices",
                    (dir / "choice.json").string(), "-o", (dir / "out").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "records: 1\n");
    SolutionRecord rec = record_from_json(slurp(dir / "out" / "record_000000.json"));
    EXPECT_EQ(rec.m_w, golden::make_mat(golden::kMatrixA1Alpha1));
    EXPECT_EQ(rec.counts, (std::array<int, 5>{384, 104, 6, 1, 1}));
}

TEST(Cli, SynthEnumerateWithLimit) {
    fs::path dir = scratch("synth_enum");
    put(dir / "mv.txt", designation_text());
    CliRun r = cli({"synth", "--designation", (dir / "mv.txt").string(), "--enumerate-all",
                    "--limit", "4", "-o", (dir / "out").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "records: 4\n");
    for (int i = 0; i < 4; ++i) {
        fs::path rec = dir / "out" / ("record_00000" + std::to_string(i) + ".json");
        EXPECT_TRUE(fs::exists(rec)) << rec;
    }
    EXPECT_FALSE(fs::exists(dir / "out" / "record_000004.json"));
}

TEST(Cli, SynthUsageErrors) {
    fs::path dir = scratch("synth_usage");
    put(dir / "mv.txt", designation_text());
    put(dir / "choice.json", "{\"name\": \"A1alpha1\"}\n");
    // neither mode
    CliRun neither = cli({"synth", "--designation", (dir / "mv.txt").string(), "-o",
                          (dir / "out").string()});
    EXPECT_EQ(neither.code, 2);
    EXPECT_NE(neither.err.find("exactly one"), std::string::npos);
    // both modes
    CliRun both = cli({"synth", "--designation", (dir / "mv.txt").string(), "--enumerate-all",
                       "--choices", (dir / "choice.json").string(), "-o", (dir / "out").string()});
    EXPECT_EQ(both.code, 2);
    // missing required output option
    CliRun nout = cli({"synth", "--designation", (dir / "mv.txt").string(), "--enumerate-all"});
    EXPECT_EQ(nout.code, 2);
}

TEST(Cli, TablesMatchesLibrary) {
    fs::path dir = scratch("tables");
    put(dir / "mv.txt", designation_text());
    CliRun r = cli({"tables", "--designation", (dir / "mv.txt").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    Designation mv = golden::make_designation(golden::kDesignationRows);
    EXPECT_EQ(r.out, table1_tsv(mv));
}

TEST(Cli, VerifyMatrixAndRecord) {
    fs::path dir = scratch("verify");
    put(dir / "mv.txt", designation_text());
    put(dir / "mw.txt", to_text(golden::make_mat(golden::kMatrixA1Alpha1)));
    CliRun r = cli({"verify", "--mw", (dir / "mw.txt").string(), "--designation",
                    (dir / "mv.txt").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.starts_with("i\tx\tw\tv\tw1\trecovery\trestored\n"));
    EXPECT_NE(r.out.find("\"pass\":true"), std::string::npos);
    // record JSON is accepted for --mw too
    Designation mv = golden::make_designation(golden::kDesignationRows);
    put(dir / "rec.json", record_to_json(synthesize(mv, *named_choice_path("A1alpha1"))));
    CliRun rj = cli({"verify", "--mw", (dir / "rec.json").string(), "--designation",
                     (dir / "mv.txt").string()});
    EXPECT_EQ(rj.code, 0) << rj.err;
}

TEST(Cli, VerifyFailureExitCode) {
    fs::path dir = scratch("verify_fail");
    std::string shifted;
    for (const char* r : golden::kShiftedDesignationRows) {
        shifted += r;
        shifted += '\n';
    }
    put(dir / "mv.txt", shifted);
    put(dir / "mw.txt", to_text(golden::make_mat(golden::kMatrixA1Alpha1)));
    CliRun r = cli({"verify", "--mw", (dir / "mw.txt").string(), "--designation",
                    (dir / "mv.txt").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("\"pass\":false"), std::string::npos);
}

TEST(Cli, VerifyUsageErrors) {
    fs::path dir = scratch("verify_usage");
    put(dir / "mv.txt", designation_text());
    CliRun neither = cli({"verify", "--designation", (dir / "mv.txt").string()});
    EXPECT_EQ(neither.code, 2);
    put(dir / "mw.txt", to_text(Mat10::identity()));
    put(dir / "seq.json", "{\"order\":\"reduction\",\"gates\":[]}\n");
    CliRun both = cli({"verify", "--mw", (dir / "mw.txt").string(), "--sequence",
                       (dir / "seq.json").string(), "--designation", (dir / "mv.txt").string()});
    EXPECT_EQ(both.code, 2);
}

TEST(Cli, OptimizePermuteOnly) {
    fs::path dir = scratch("optimize_permute");
    Designation mv = golden::make_designation(golden::kDesignationRows);
    put(dir / "rec.json", record_to_json(synthesize(mv, *named_choice_path("A1alpha1"))));
    CliRun r = cli({"optimize", "--mw", (dir / "rec.json").string(), "--permute-only",
                    "--objective", "bxor", "-o", (dir / "best.json").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(slurp(dir / "best.json"));
    EXPECT_TRUE(j.at("optimality").at("certified").get<bool>());
    EXPECT_EQ(j.at("optimality").at("value").at("bxor").get<int>(), 7);
    EXPECT_EQ(j.at("optimality").at("value").at("total").get<int>(), 10);
    EXPECT_EQ(j.at("sequence").at("gates").size(), 10u);
}

TEST(Cli, OptimizeMatrixInput) {
    fs::path dir = scratch("optimize_matrix");
    Mat10 m = Mat10::identity();
    apply_gate_rows(m, Gate::bxor(1, 2));
    put(dir / "m.txt", to_text(m));
    CliRun r = cli({"optimize", "--mw", (dir / "m.txt").string(), "--objective", "total",
                    "--max-depth", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("optimality").at("value").at("total").get<int>(), 1);
    EXPECT_EQ(j.at("optimality").at("depth").get<int>(), 3);
    EXPECT_TRUE(j.at("optimality").at("certified").get<bool>());
}

TEST(Cli, OptimizeDepthExceededReportsError) {
    fs::path dir = scratch("optimize_depth");
    Mat10 m = Mat10::identity();
    apply_gate_rows(m, Gate::bxor(1, 2));
    apply_gate_rows(m, Gate::by(1));
    put(dir / "m.txt", to_text(m));
    CliRun r = cli({"optimize", "--mw", (dir / "m.txt").string(), "--objective", "total",
                    "--max-depth", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("no reduction within 1 gates"), std::string::npos);
}

TEST(Cli, OptimizeBadObjective) {
    fs::path dir = scratch("optimize_bad");
    put(dir / "m.txt", to_text(Mat10::identity()));
    CliRun r = cli({"optimize", "--mw", (dir / "m.txt").string(), "--objective", "fewest"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("objective must be bxor or total"), std::string::npos);
}

TEST(Cli, RenderBothDirections) {
    fs::path dir = scratch("render");
    GateSequence seq{Gate::by(1), Gate::bxor(1, 2), Gate::sxbx(4)};
    put(dir / "seq.json", sequence_to_json(seq));
    CliRun draw = cli({"render", "--sequence", (dir / "seq.json").string()});
    EXPECT_EQ(draw.code, 0) << draw.err;
    EXPECT_EQ(draw.out, render_sequence(seq));
    put(dir / "diagram.txt", draw.out);
    CliRun back = cli({"render", "--from-diagram", (dir / "diagram.txt").string()});
    EXPECT_EQ(back.code, 0) << back.err;
    EXPECT_EQ(back.out, sequence_to_json(seq));
    CliRun neither = cli({"render"});
    EXPECT_EQ(neither.code, 2);
}

TEST(Cli, RenderAcceptsRecordSequence) {
    fs::path dir = scratch("render_record");
    Designation mv = golden::make_designation(golden::kDesignationRows);
    SolutionRecord rec = synthesize(mv, *named_choice_path("C1beta1"));
    put(dir / "rec.json", record_to_json(rec));
    CliRun r = cli({"render", "--sequence", (dir / "rec.json").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, render_sequence(rec.sequence));
}

TEST(Cli, TopLevelUsage) {
    CliRun none = cli({});
    EXPECT_EQ(none.code, 2);
    CliRun unknown = cli({"frobnicate"});
    EXPECT_EQ(unknown.code, 2);
    CliRun help = cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("synth"), std::string::npos);
    CliRun missing = cli({"tables", "--designation", "/nonexistent/mv.txt"});
    EXPECT_EQ(missing.code, 2);
    EXPECT_NE(missing.err.find("cannot read"), std::string::npos);
}
