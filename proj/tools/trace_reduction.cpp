// Prints the step-by-step reduction of a solution record: the starting
// encoding matrix, the matrix after each gate of the reduction sequence, and
// optionally the gate-array diagram.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "epc/render.hpp"
#include "epc/synth.hpp"

static int usage() {
    std::cerr << "usage: trace_reduction [--diagram] record.json\n";
    return 2;
}

int main(int argc, char** argv) {
    bool diagram = false;
    std::string path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--diagram") {
            diagram = true;
        } else if (!path.empty() || a.rfind("--", 0) == 0) {
            return usage();
        } else {
            path = a;
        }
    }
    if (path.empty()) return usage();

    try {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << path << "\n";
            return 1;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        epc::SolutionRecord rec = epc::record_from_json(ss.str());

        std::cout << "m_w:\n" << epc::to_text(rec.m_w) << "\n";
        epc::Mat10 m = rec.m_w;
        int step = 0;
        for (const epc::Gate& g : rec.sequence) {
            epc::apply_gate_rows(m, g);
            std::cout << "step " << ++step << ": " << epc::gate_name(g) << "\n"
                      << epc::to_text(m) << "\n";
        }
        if (epc::is_ix_form(m))
            std::cout << "reduced after " << step << " gates\n";
        else
            std::cout << "warning: final matrix is not in reduced form\n";
        if (diagram && !rec.sequence.empty())
            std::cout << "\n" << epc::render_sequence(rec.sequence);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
