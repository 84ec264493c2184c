#include "epc/bell.hpp"

#include <vector>

namespace epc {

std::array<BitVec10, 16> canonical_syndromes() {
    std::array<BitVec10, 16> xs{};
    for (int k = 1; k <= kPairs; ++k) {
        uint16_t phase = static_cast<uint16_t>(1u << (2 * k - 2));
        uint16_t amp = static_cast<uint16_t>(1u << (2 * k - 1));
        xs[static_cast<size_t>(3 * k - 2)] = BitVec10(phase);
        xs[static_cast<size_t>(3 * k - 1)] = BitVec10(amp);
        xs[static_cast<size_t>(3 * k)] = BitVec10(static_cast<uint16_t>(phase | amp));
    }
    return xs;
}

const char* pauli_name(PauliOp op) {
    switch (op) {
        case PauliOp::I: return "I";
        case PauliOp::X: return "X";
        case PauliOp::Y: return "Y";
        case PauliOp::Z: return "Z";
    }
    return "?";
}

PauliOp pauli_for(bool phase, bool amp) {
    if (!phase && !amp) return PauliOp::I;
    if (!phase && amp) return PauliOp::X;
    if (phase && amp) return PauliOp::Y;
    return PauliOp::Z;
}

PauliOp pauli_for(uint8_t label) {
    return pauli_for((label & 1u) != 0, (label & 2u) != 0);
}

uint8_t apply_pauli(PauliOp op, uint8_t label) {
    switch (op) {
        case PauliOp::I: return label;
        case PauliOp::X: return static_cast<uint8_t>(label ^ 0b10u);  // flip amplitude
        case PauliOp::Y: return static_cast<uint8_t>(label ^ 0b11u);  // flip both
        case PauliOp::Z: return static_cast<uint8_t>(label ^ 0b01u);  // flip phase
    }
    return label;
}

std::string label_string(uint8_t label) {
    std::string s = "00";
    if (label & 1u) s[0] = '1';
    if (label & 2u) s[1] = '1';
    return s;
}

BitVec4 extract_measurement(BitVec10 w) {
    uint8_t v = 0;
    for (int j = 1; j <= 4; ++j)
        if (w.get(2 * j + 2)) v = static_cast<uint8_t>(v | (1u << (j - 1)));
    return BitVec4(v);
}

ValidationResult validate_designation(const Designation& mv) {
    ValidationResult res;
    auto xs = canonical_syndromes();
    Mat10 asmat;  // only the first 4 rows are meaningful
    for (int r = 0; r < 4; ++r) asmat.row[static_cast<size_t>(r)] = mv.rows[static_cast<size_t>(r)].bits;
    for (int i = 0; i < 16; ++i) {
        uint16_t x = xs[static_cast<size_t>(i)].bits;
        uint8_t v = 0;
        for (int r = 0; r < 4; ++r) {
            unsigned p = static_cast<unsigned>(asmat.row[static_cast<size_t>(r)] & x);
            p ^= p >> 8; p ^= p >> 4; p ^= p >> 2; p ^= p >> 1;
            v = static_cast<uint8_t>(v | ((p & 1u) << r));
        }
        res.v[static_cast<size_t>(i)] = BitVec4(v);
    }
    for (int i = 0; i < 16 && !res.collision; ++i)
        for (int j = i + 1; j < 16; ++j)
            if (res.v[static_cast<size_t>(i)] == res.v[static_cast<size_t>(j)]) {
                res.collision = Collision{i, j};
                break;
            }
    res.ok = !res.collision;
    return res;
}

std::array<SyndromeTableRow, 16> table1(const Designation& mv) {
    auto val = validate_designation(mv);
    if (!val.ok) throw ValidationError(*val.collision);
    auto xs = canonical_syndromes();
    std::array<SyndromeTableRow, 16> rows{};
    for (int i = 0; i < 16; ++i)
        rows[static_cast<size_t>(i)] = {i, xs[static_cast<size_t>(i)], val.v[static_cast<size_t>(i)]};
    return rows;
}

namespace {
std::string line_of(unsigned bits, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((bits >> i) & 1u) s[static_cast<size_t>(i)] = '1';
    return s;
}
}  // namespace

std::string table1_tsv(const Designation& mv) {
    std::string out;
    for (const auto& r : table1(mv)) {
        out += std::to_string(r.index);
        out += '\t';
        out += line_of(r.x.bits, kBits);
        out += '\t';
        out += line_of(r.v.bits, 4);
        out += '\n';
    }
    return out;
}

std::string to_text(const Designation& mv) {
    std::string s;
    for (const auto& r : mv.rows) {
        s += line_of(r.bits, kBits);
        s += '\n';
    }
    return s;
}

Designation parse_designation(const std::string& text) {
    // same line format as Mat10, but exactly 4 rows
    size_t pos = 0;
    Designation d;
    for (int r = 1; r <= 4; ++r) {
        if (pos >= text.size()) throw ParseError(r, 1, "unexpected end of input");
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            throw ParseError(r, static_cast<int>(text.size() - pos) + 1, "missing final newline");
        std::string line = text.substr(pos, nl - pos);
        if (line.size() != static_cast<size_t>(kBits))
            throw ParseError(r, static_cast<int>(std::min<size_t>(line.size(), kBits)) + 1,
                             "expected 10 binary digits");
        uint16_t bits = 0;
        for (int c = 0; c < kBits; ++c) {
            char ch = line[static_cast<size_t>(c)];
            if (ch == '1')
                bits = static_cast<uint16_t>(bits | (1u << c));
            else if (ch != '0')
                throw ParseError(r, c + 1, "expected '0' or '1'");
        }
        d.rows[static_cast<size_t>(r - 1)] = BitVec10(bits);
        pos = nl + 1;
    }
    if (pos != text.size()) throw ParseError(5, 1, "trailing content after row 4");
    return d;
}

}  // namespace epc
