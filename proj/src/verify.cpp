#include "epc/verify.hpp"

#include <json.hpp>

namespace epc {

namespace {

std::string bit_line(unsigned bits, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int c = 0; c < n; ++c)
        if ((bits >> c) & 1u) s[static_cast<size_t>(c)] = '1';
    return s;
}

}  // namespace

VerificationReport verify_solution(const AffineMap& encoding, const Designation& mv) {
    VerificationReport rep;
    auto xs = canonical_syndromes();
    std::array<int, 16> owner;
    owner.fill(-1);
    for (int i = 0; i < 16; ++i) {
        ReportRow row;
        row.index = i;
        row.x = xs[static_cast<size_t>(i)];
        row.w = mat_vec(encoding.matrix, row.x) ^ encoding.offset;
        row.v = extract_measurement(row.w);
        row.w_prime = static_cast<uint8_t>((row.w.get(1) ? 1u : 0u) | (row.w.get(2) ? 2u : 0u));
        row.recovery = pauli_for(row.w.get(1), row.w.get(2));
        row.restored = apply_pauli(row.recovery, row.w_prime);
        int& o = owner[row.v.bits];
        if (o >= 0)
            rep.failures.push_back("measurement collision: x" + std::to_string(o) + " and x" +
                                   std::to_string(i) + " both give v=" + bit_line(row.v.bits, 4));
        else
            o = i;
        if (row.restored != 0)
            rep.failures.push_back("recovery fails for x" + std::to_string(i) + ": " +
                                   pauli_name(row.recovery) + " leaves pair state " +
                                   label_string(row.restored));
        rep.rows.push_back(row);
    }
    for (int j = 0; j < 4; ++j) {
        if (encoding.matrix.row[static_cast<size_t>(2 * j + 3)] != mv.rows[static_cast<size_t>(j)].bits)
            rep.failures.push_back("matrix row " + std::to_string(2 * j + 4) +
                                   " does not match designation row " + std::to_string(j + 1));
    }
    rep.pass = rep.failures.empty();
    return rep;
}

VerificationReport verify_solution(const Mat10& m_w, const Designation& mv) {
    AffineMap enc;
    enc.matrix = m_w;
    enc.offset = BitVec10();
    return verify_solution(enc, mv);
}

VerificationReport verify_solution(const GateSequence& seq, const Designation& mv) {
    return verify_solution(sequence_matrix(seq, Direction::forward), mv);
}

bool check_correction(const Mat10& m) {
    Designation d;
    for (int j = 0; j < 4; ++j)
        d.rows[static_cast<size_t>(j)] = BitVec10(m.row[static_cast<size_t>(2 * j + 3)]);
    return validate_designation(d).ok;
}

std::string report_to_tsv(const VerificationReport& report) {
    std::string out = "i\tx\tw\tv\tw1\trecovery\trestored\n";
    for (const ReportRow& r : report.rows) {
        out += std::to_string(r.index);
        out += '\t';
        out += bit_line(r.x.bits, kBits);
        out += '\t';
        out += bit_line(r.w.bits, kBits);
        out += '\t';
        out += bit_line(r.v.bits, 4);
        out += '\t';
        out += label_string(r.w_prime);
        out += '\t';
        out += pauli_name(r.recovery);
        out += '\t';
        out += label_string(r.restored);
        out += '\n';
    }
    return out;
}

std::string report_summary_json(const VerificationReport& report) {
    nlohmann::json j;
    j["pass"] = report.pass;
    j["failures"] = report.failures;
    return j.dump() + "\n";
}

}  // namespace epc
