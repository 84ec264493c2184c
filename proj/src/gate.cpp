#include "epc/gate.hpp"

#include <json.hpp>

namespace epc {

namespace {
void check_pair(int k, const char* what) { detail::check_range(k, 1, kPairs, what); }
}  // namespace

Gate Gate::bxor(int source, int target) {
    check_pair(source, "source");
    check_pair(target, "target");
    if (source == target) throw std::invalid_argument("BXOR source == target");
    return Gate{GateKind::BXOR, static_cast<int8_t>(source), static_cast<int8_t>(target)};
}

Gate Gate::by(int pair) {
    check_pair(pair, "pair");
    return Gate{GateKind::By, static_cast<int8_t>(pair), 0};
}

Gate Gate::sxbx(int pair) {
    check_pair(pair, "pair");
    return Gate{GateKind::SxBx, static_cast<int8_t>(pair), 0};
}

Gate Gate::sz(int pair) {
    check_pair(pair, "pair");
    return Gate{GateKind::Sz, static_cast<int8_t>(pair), 0};
}

std::string gate_name(const Gate& g) {
    switch (g.kind) {
        case GateKind::BXOR:
            return "BXOR(" + std::to_string(g.source()) + "->" + std::to_string(g.target()) + ")";
        case GateKind::By: return "By(" + std::to_string(g.pair()) + ")";
        case GateKind::SxBx: return "SxBx(" + std::to_string(g.pair()) + ")";
        case GateKind::Sz: return "Sz(" + std::to_string(g.pair()) + ")";
    }
    return "?";
}

BitVec10 apply_gate(const Gate& g, BitVec10 x) {
    uint16_t v = x.bits;
    switch (g.kind) {
        case GateKind::BXOR: {
            int s = g.source(), t = g.target();
            uint16_t phase_t = static_cast<uint16_t>((v >> (2 * t - 2)) & 1u);
            uint16_t amp_s = static_cast<uint16_t>((v >> (2 * s - 1)) & 1u);
            v ^= static_cast<uint16_t>(phase_t << (2 * s - 2));
            v ^= static_cast<uint16_t>(amp_s << (2 * t - 1));
            break;
        }
        case GateKind::By: {
            int k = g.pair();
            uint16_t lo = static_cast<uint16_t>((v >> (2 * k - 2)) & 1u);
            uint16_t hi = static_cast<uint16_t>((v >> (2 * k - 1)) & 1u);
            v = static_cast<uint16_t>(v & ~(3u << (2 * k - 2)));
            v |= static_cast<uint16_t>((hi << (2 * k - 2)) | (lo << (2 * k - 1)));
            break;
        }
        case GateKind::SxBx: {
            int k = g.pair();
            uint16_t phase = static_cast<uint16_t>((v >> (2 * k - 2)) & 1u);
            v ^= static_cast<uint16_t>(phase << (2 * k - 1));
            break;
        }
        case GateKind::Sz:
            v ^= static_cast<uint16_t>(1u << (2 * g.pair() - 2));
            break;
    }
    return BitVec10(v);
}

AffineMap gate_matrix(const Gate& g) {
    AffineMap m;
    m.matrix = Mat10{};
    m.offset = apply_gate(g, BitVec10());
    for (int j = 0; j < kBits; ++j) {
        BitVec10 col = apply_gate(g, BitVec10(static_cast<uint16_t>(1u << j))) ^ m.offset;
        for (int i = 0; i < kBits; ++i)
            if ((col.bits >> i) & 1u) m.matrix.row[i] |= static_cast<uint16_t>(1u << j);
    }
    return m;
}

void apply_gate_rows(Mat10& m, const Gate& g) {
    switch (g.kind) {
        case GateKind::BXOR: {
            int s = g.source(), t = g.target();
            m.row[static_cast<size_t>(2 * s - 2)] ^= m.row[static_cast<size_t>(2 * t - 2)];
            m.row[static_cast<size_t>(2 * t - 1)] ^= m.row[static_cast<size_t>(2 * s - 1)];
            break;
        }
        case GateKind::By: {
            int k = g.pair();
            std::swap(m.row[static_cast<size_t>(2 * k - 2)], m.row[static_cast<size_t>(2 * k - 1)]);
            break;
        }
        case GateKind::SxBx: {
            int k = g.pair();
            m.row[static_cast<size_t>(2 * k - 1)] ^= m.row[static_cast<size_t>(2 * k - 2)];
            break;
        }
        case GateKind::Sz:
            throw std::invalid_argument("Sz is affine; no row-operation form");
    }
}

BitVec10 apply_sequence(const GateSequence& s, BitVec10 x, Direction dir) {
    if (dir == Direction::backward) {
        for (const Gate& g : s) x = apply_gate(g, x);
    } else {
        for (auto it = s.rbegin(); it != s.rend(); ++it) x = apply_gate(*it, x);
    }
    return x;
}

AffineMap sequence_matrix(const GateSequence& s, Direction dir) {
    AffineMap acc;  // identity
    auto step = [&acc](const Gate& g) {
        AffineMap gm = gate_matrix(g);
        acc.matrix = mat_mul(gm.matrix, acc.matrix);
        acc.offset = mat_vec(gm.matrix, acc.offset) ^ gm.offset;
    };
    if (dir == Direction::backward) {
        for (const Gate& g : s) step(g);
    } else {
        for (auto it = s.rbegin(); it != s.rend(); ++it) step(*it);
    }
    return acc;
}

std::vector<Gate> linear_gate_instances() {
    std::vector<Gate> out;
    for (int s = 1; s <= kPairs; ++s)
        for (int t = 1; t <= kPairs; ++t)
            if (s != t) out.push_back(Gate::bxor(s, t));
    for (int k = 1; k <= kPairs; ++k) out.push_back(Gate::by(k));
    for (int k = 1; k <= kPairs; ++k) out.push_back(Gate::sxbx(k));
    return out;
}

std::vector<Gate> all_gate_instances() {
    std::vector<Gate> out = linear_gate_instances();
    for (int k = 1; k <= kPairs; ++k) out.push_back(Gate::sz(k));
    return out;
}

std::string sequence_to_json(const GateSequence& s) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : s) {
        nlohmann::json jg;
        switch (g.kind) {
            case GateKind::BXOR:
                jg = {{"op", "BXOR"}, {"source", g.source()}, {"target", g.target()}};
                break;
            case GateKind::By: jg = {{"op", "By"}, {"pair", g.pair()}}; break;
            case GateKind::SxBx: jg = {{"op", "SxBx"}, {"pair", g.pair()}}; break;
            case GateKind::Sz: jg = {{"op", "Sz"}, {"pair", g.pair()}}; break;
        }
        gates.push_back(jg);
    }
    nlohmann::json j{{"order", "reduction"}, {"gates", gates}};
    return j.dump(2) + "\n";
}

GateSequence sequence_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error_at(text, e.byte, "malformed JSON");
    }
    if (j.at("order").get<std::string>() != "reduction")
        throw std::runtime_error("sequence order must be \"reduction\"");
    GateSequence out;
    for (const auto& jg : j.at("gates")) {
        std::string op = jg.at("op").get<std::string>();
        if (op == "BXOR")
            out.push_back(Gate::bxor(jg.at("source").get<int>(), jg.at("target").get<int>()));
        else if (op == "By")
            out.push_back(Gate::by(jg.at("pair").get<int>()));
        else if (op == "SxBx")
            out.push_back(Gate::sxbx(jg.at("pair").get<int>()));
        else if (op == "Sz")
            out.push_back(Gate::sz(jg.at("pair").get<int>()));
        else
            throw std::runtime_error("unknown gate op: " + op);
    }
    return out;
}

}  // namespace epc
