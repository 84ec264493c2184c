#pragma once

#include <string>

#include "epc/gate.hpp"

namespace epc {

// Monospaced five-lane gate-array diagram. Time slots run left to right in
// reduction order; BXOR is a source dot / target xor with a vertical
// connector, single-pair gates are boxed labels. A footer states the
// physical playback direction.
std::string render_sequence(const GateSequence& seq);

// Inverse of render_sequence; throws ParseError on malformed diagrams.
GateSequence parse_diagram(const std::string& text);

}  // namespace epc
