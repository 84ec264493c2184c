#pragma once

#include <string>
#include <vector>

#include "epc/bell.hpp"
#include "epc/gate.hpp"

namespace epc {

struct ReportRow {
    int index = 0;       // syndrome index i
    BitVec10 x;          // canonical syndrome
    BitVec10 w;          // encoded word
    BitVec4 v;           // measured components (4,6,8,10)
    uint8_t w_prime = 0; // kept-pair label, bit 0 = phase, bit 1 = amplitude
    PauliOp recovery = PauliOp::I;
    uint8_t restored = 0;
};

struct VerificationReport {
    bool pass = false;
    std::vector<ReportRow> rows;
    std::vector<std::string> failures;
};

// Checks an encoding map against a measurement designation: every canonical
// syndrome must produce a distinct measurement word and the prescribed Pauli
// recovery must restore the kept pair.
VerificationReport verify_solution(const AffineMap& encoding, const Designation& mv);
VerificationReport verify_solution(const Mat10& m_w, const Designation& mv);
// Verifies the circuit described by a reduction-ordered sequence (applied
// physically last gate first).
VerificationReport verify_solution(const GateSequence& seq, const Designation& mv);

// true when the rows (4,6,8,10) of m form a usable measurement designation
bool check_correction(const Mat10& m);

std::string report_to_tsv(const VerificationReport& report);
std::string report_summary_json(const VerificationReport& report);

}  // namespace epc
