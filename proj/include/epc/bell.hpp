#pragma once
// Single-error syndrome tables, measurement designations and the Pauli
// recovery rule for the five-pair Bell code. Pair labels: left bit = phase,
// right bit = amplitude (00 <-> Phi+, 01 <-> Psi+, 11 <-> Psi-, 10 <-> Phi-).

#include "epc/gf2.hpp"

#include <optional>
#include <string>

namespace epc {

// x(0) = 0; for pair k: x(3k-2) flips the phase bit, x(3k-1) the amplitude
// bit, x(3k) both, so x(3k-2) ^ x(3k-1) = x(3k).
std::array<BitVec10, 16> canonical_syndromes();

enum class PauliOp : uint8_t { I, X, Y, Z };
const char* pauli_name(PauliOp op);

// Recovery for the kept pair's label (phase, amplitude):
// 00 -> I, 01 -> X, 11 -> Y, 10 -> Z. Applying it restores 00.
PauliOp pauli_for(bool phase, bool amp);
PauliOp pauli_for(uint8_t label);

// label packs the pair state: bit 0 = phase, bit 1 = amplitude.
uint8_t apply_pauli(PauliOp op, uint8_t label);
std::string label_string(uint8_t label);  // "10" = phase 1, amplitude 0

struct Designation {
    std::array<BitVec10, 4> rows{};
    friend bool operator==(const Designation&, const Designation&) = default;
};

// v = components (4,6,8,10) of w, i.e. the four measured amplitude bits.
BitVec4 extract_measurement(BitVec10 w);

struct Collision {
    int i = 0, j = 0;
};

struct ValidationResult {
    bool ok = false;
    std::array<BitVec4, 16> v{};  // v(i) for the 16 canonical syndromes
    std::optional<Collision> collision;
};

// A designation is usable iff the 16 induced measurement words are distinct.
ValidationResult validate_designation(const Designation& mv);

struct ValidationError : std::runtime_error {
    Collision collision;
    explicit ValidationError(Collision c)
        : std::runtime_error("designation invalid: v(" + std::to_string(c.i) + ") = v(" +
                             std::to_string(c.j) + ")"),
          collision(c) {}
};

struct SyndromeTableRow {
    int index = 0;
    BitVec10 x;
    BitVec4 v;
};

// The 16 rows (i, x(i), v(i)); throws ValidationError if mv is unusable.
std::array<SyndromeTableRow, 16> table1(const Designation& mv);
std::string table1_tsv(const Designation& mv);

std::string to_text(const Designation& mv);
Designation parse_designation(const std::string& text);

}  // namespace epc
