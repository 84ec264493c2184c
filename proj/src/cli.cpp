#include "epc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "epc/bell.hpp"
#include "epc/gf2.hpp"
#include "epc/optimize.hpp"
#include "epc/render.hpp"
#include "epc/synth.hpp"
#include "epc/verify.hpp"

namespace epc {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << data;
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{';
    }
    return false;
}

ColumnOrder parse_order_spec(const std::string& spec) {
    if (spec.size() == 1) {
        if (spec[0] < '1' || spec[0] > '5') throw UsageError("column order group must be 1..5");
        return order_with_group_first(spec[0] - '0');
    }
    if (spec.size() != 5) throw UsageError("column order must be one digit or five digits");
    ColumnOrder order{};
    for (int i = 0; i < 5; ++i) {
        if (spec[static_cast<size_t>(i)] < '1' || spec[static_cast<size_t>(i)] > '5')
            throw UsageError("column order digits must be 1..5");
        order[static_cast<size_t>(i)] = spec[static_cast<size_t>(i)] - '0';
    }
    return order;
}

Mat10 load_matrix(const std::string& text) {
    if (looks_like_json(text)) return record_from_json(text).m_w;
    return parse_mat10(text);
}

GateSequence load_sequence(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error_at(text, e.byte, "malformed JSON");
    }
    if (j.contains("sequence")) return sequence_from_json(j.at("sequence").dump());
    return sequence_from_json(text);
}

std::string record_name(uint64_t n) {
    std::ostringstream ss;
    ss << "record_" << std::setw(6) << std::setfill('0') << n << ".json";
    return ss.str();
}

int cmd_synth(const std::string& designation_file, const std::string& order_spec,
              bool enumerate_all, const std::string& choices_file, uint64_t limit,
              bool swap_stage1, const std::string& out_dir, std::ostream& out) {
    Designation mv = parse_designation(read_file(designation_file));
    std::filesystem::create_directories(out_dir);
    if (enumerate_all) {
        ColumnOrder order = order_spec.empty() ? kIdentityOrder : parse_order_spec(order_spec);
        EnumerateOptions opts;
        opts.limit = limit;
        opts.swap_stage1_eliminations = swap_stage1;
        uint64_t n = 0;
        enumerate_solutions(mv, order, opts, [&](const SolutionRecord& rec) {
            write_file(out_dir + "/" + record_name(n), record_to_json(rec));
            ++n;
            return true;
        });
        out << "records: " << n << "\n";
        return 0;
    }
    ChoicePath path = path_from_json(read_file(choices_file));
    if (!order_spec.empty()) path.column_order = parse_order_spec(order_spec);
    SolutionRecord rec = synthesize(mv, path);
    write_file(out_dir + "/" + record_name(0), record_to_json(rec));
    out << "records: 1\n";
    return 0;
}

int cmd_tables(const std::string& designation_file, std::ostream& out) {
    Designation mv = parse_designation(read_file(designation_file));
    out << table1_tsv(mv);
    return 0;
}

int cmd_verify(const std::string& mw_file, const std::string& seq_file,
               const std::string& designation_file, std::ostream& out) {
    Designation mv = parse_designation(read_file(designation_file));
    VerificationReport rep;
    if (!mw_file.empty())
        rep = verify_solution(load_matrix(read_file(mw_file)), mv);
    else
        rep = verify_solution(load_sequence(read_file(seq_file)), mv);
    out << report_to_tsv(rep);
    out << report_summary_json(rep);
    return rep.pass ? 0 : 1;
}

int cmd_optimize(const std::string& mw_file, const std::string& objective_name, int max_depth,
                 bool permute_only, const std::string& out_file, std::ostream& out) {
    Objective objective;
    if (objective_name == "bxor")
        objective = Objective::bxor_then_total;
    else if (objective_name == "total")
        objective = Objective::total_ops;
    else
        throw UsageError("objective must be bxor or total");

    std::string text = read_file(mw_file);
    SolutionRecord rec;
    if (looks_like_json(text)) {
        rec = record_from_json(text);
    } else {
        rec.m_w = parse_mat10(text);
        rec.i_x = Mat10::identity();
        for (int j = 0; j < 4; ++j)
            rec.designation.rows[static_cast<size_t>(j)] =
                BitVec10(rec.m_w.row[static_cast<size_t>(2 * j + 3)]);
    }

    OptimizationResult res;
    if (permute_only) {
        res = permute_and_reduce(rec, objective);
    } else {
        res = minimal_sequence(rec.m_w, objective, max_depth);
    }
    rec.sequence = res.best;
    rec.i_x = res.best_i_x;
    nlohmann::json j = nlohmann::json::parse(record_to_json(rec));
    j["optimality"] = {{"certified", res.certified},
                       {"depth", permute_only ? 0 : max_depth},
                       {"explored", res.explored},
                       {"value", {{"bxor", res.objective_value.bxor_ops},
                                  {"total", res.objective_value.total_ops}}}};
    std::string payload = j.dump(2) + "\n";
    if (out_file.empty())
        out << payload;
    else
        write_file(out_file, payload);
    return 0;
}

int cmd_render(const std::string& seq_file, const std::string& diagram_file, std::ostream& out) {
    if (!seq_file.empty()) {
        out << render_sequence(load_sequence(read_file(seq_file)));
        return 0;
    }
    out << sequence_to_json(parse_diagram(read_file(diagram_file)));
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"five-pair Bell-code synthesis toolkit"};
    app.require_subcommand(1);

    int jobs = 1;  // worker-count hint; execution is deterministic regardless
    if (const char* env = std::getenv("EPC_JOBS")) jobs = std::atoi(env);

    auto* synth = app.add_subcommand("synth", "synthesize encoding records from a designation");
    std::string s_designation, s_order, s_choices, s_out;
    bool s_enumerate = false, s_swap = false;
    uint64_t s_limit = 0;
    synth->add_option("--designation", s_designation, "designation file (4x10 bits)")->required();
    synth->add_option("--column-order", s_order, "group first (one digit) or full permutation (five digits)");
    synth->add_flag("--enumerate-all", s_enumerate, "enumerate every feasible choice path");
    synth->add_option("--choices", s_choices, "choice-path JSON ({\"name\": ...} allowed)");
    synth->add_option("--limit", s_limit, "stop after N records (0 = all)");
    synth->add_flag("--swap-stage1", s_swap, "interchange the stage-1 elimination steps");
    synth->add_option("--jobs", jobs, "worker-count hint");
    synth->add_option("-o,--output", s_out, "output directory")->required();

    auto* tables = app.add_subcommand("tables", "emit the 16-row syndrome/measurement table");
    std::string t_designation;
    tables->add_option("--designation", t_designation, "designation file")->required();

    auto* verify = app.add_subcommand("verify", "replay all 16 syndromes and audit correction");
    std::string v_mw, v_seq, v_designation;
    verify->add_option("--mw", v_mw, "encoding matrix file (text or record JSON)");
    verify->add_option("--sequence", v_seq, "gate sequence JSON");
    verify->add_option("--designation", v_designation, "designation file")->required();

    auto* optimize = app.add_subcommand("optimize", "shorten or minimize a gate sequence");
    std::string o_mw, o_objective = "bxor", o_out;
    int o_depth = 10;
    bool o_permute = false;
    optimize->add_option("--mw", o_mw, "matrix file or record JSON")->required();
    optimize->add_option("--objective", o_objective, "bxor | total");
    optimize->add_option("--max-depth", o_depth, "gate budget for the exhaustive search");
    optimize->add_flag("--permute-only", o_permute, "only permute the existing block eliminations");
    optimize->add_option("--jobs", jobs, "worker-count hint");
    optimize->add_option("-o,--output", o_out, "output file (default stdout)");

    auto* render = app.add_subcommand("render", "draw or parse a gate-array diagram");
    std::string r_seq, r_diagram;
    render->add_option("--sequence", r_seq, "sequence JSON to draw");
    render->add_option("--from-diagram", r_diagram, "diagram file to parse back to JSON");

    std::vector<const char*> argv;
    argv.push_back("epc");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    (void)jobs;
    try {
        if (synth->parsed()) {
            if (s_enumerate == !s_choices.empty()) {
                err << "synth: exactly one of --enumerate-all / --choices is required\n";
                return 2;
            }
            return cmd_synth(s_designation, s_order, s_enumerate, s_choices, s_limit, s_swap,
                             s_out, out);
        }
        if (tables->parsed()) return cmd_tables(t_designation, out);
        if (verify->parsed()) {
            if (v_mw.empty() == v_seq.empty()) {
                err << "verify: exactly one of --mw / --sequence is required\n";
                return 2;
            }
            return cmd_verify(v_mw, v_seq, v_designation, out);
        }
        if (optimize->parsed())
            return cmd_optimize(o_mw, o_objective, o_depth, o_permute, o_out, out);
        if (render->parsed()) {
            if (r_seq.empty() == r_diagram.empty()) {
                err << "render: exactly one of --sequence / --from-diagram is required\n";
                return 2;
            }
            return cmd_render(r_seq, r_diagram, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace epc
