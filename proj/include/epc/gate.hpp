#pragma once
// Two-bit gate alphabet acting on the 10-bit pair state, plus sequence
// composition. Sequences are stored in reduction order: applying the gates
// first-to-last reduces an encoding matrix; the physical (encoding) order is
// the reverse.

#include "epc/gf2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace epc {

enum class GateKind : uint8_t { BXOR, By, SxBx, Sz };

struct Gate {
    GateKind kind = GateKind::By;
    int8_t a = 1;  // BXOR: source pair; otherwise the pair
    int8_t b = 0;  // BXOR: target pair; otherwise unused

    static Gate bxor(int source, int target);
    static Gate by(int pair);
    static Gate sxbx(int pair);
    static Gate sz(int pair);

    int source() const { return a; }
    int target() const { return b; }
    int pair() const { return a; }

    // Structural identity; BXOR(a,b) != BXOR(b,a). The derived ordering
    // doubles as the canonical tie-break order on gates.
    friend auto operator<=>(const Gate&, const Gate&) = default;
};

using GateSequence = std::vector<Gate>;

struct AffineMap {
    Mat10 matrix = Mat10::identity();
    BitVec10 offset;
    friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

enum class Direction { forward, backward };

std::string gate_name(const Gate& g);

// Action on a state vector:
//   BXOR(S,T): phase_S ^= phase_T, amp_T ^= amp_S
//   By(k):     swap phase_k <-> amp_k
//   SxBx(k):   amp_k ^= phase_k
//   Sz(k):     phase_k ^= 1
BitVec10 apply_gate(const Gate& g, BitVec10 x);
AffineMap gate_matrix(const Gate& g);

// Left-multiplication by the gate matrix, i.e. the row operations
//   BXOR(S,T): row(2S-1) ^= row(2T-1); row(2T) ^= row(2S)
//   By(k):     swap rows 2k-1, 2k
//   SxBx(k):   row(2k) ^= row(2k-1)
void apply_gate_rows(Mat10& m, const Gate& g);  // linear gates only

// backward: first-to-last (reduction replay); forward: last-to-first
// (physical encoding).
BitVec10 apply_sequence(const GateSequence& s, BitVec10 x, Direction dir);
AffineMap sequence_matrix(const GateSequence& s, Direction dir);

std::vector<Gate> all_gate_instances();     // 35: 20 BXOR + 5 By + 5 SxBx + 5 Sz
std::vector<Gate> linear_gate_instances();  // the 30 without Sz

// {"order":"reduction","gates":[{"op":"BXOR","source":2,"target":4}, ...]}
std::string sequence_to_json(const GateSequence& s);
GateSequence sequence_from_json(const std::string& text);

}  // namespace epc
