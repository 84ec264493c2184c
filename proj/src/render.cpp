#include "epc/render.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "epc/gf2.hpp"

namespace epc {

namespace {

constexpr const char* kDot = "●";    // source marker
constexpr const char* kOplus = "⊕";  // target marker
constexpr const char* kFooter = "physical (forward) order: right to left";

std::string box_label(const Gate& g) {
    switch (g.kind) {
        case GateKind::By: return "[By]";
        case GateKind::SxBx: return "[SxBx]";
        case GateKind::Sz: return "[Sz]";
        case GateKind::BXOR: break;
    }
    return "";
}

// display width in codepoints (all glyphs used are single-column)
size_t cp_width(const std::string& s) {
    size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xc0u) != 0x80u) ++n;
    return n;
}

}  // namespace

std::string render_sequence(const GateSequence& seq) {
    std::vector<std::array<std::string, 5>> slots;
    for (const Gate& g : seq) {
        std::array<std::string, 5> cell;
        cell.fill("-");
        if (g.kind == GateKind::BXOR) {
            int s = g.source(), t = g.target();
            cell[static_cast<size_t>(s - 1)] = kDot;
            cell[static_cast<size_t>(t - 1)] = kOplus;
            for (int k = std::min(s, t) + 1; k < std::max(s, t); ++k)
                cell[static_cast<size_t>(k - 1)] = "|";
        } else {
            cell[static_cast<size_t>(g.pair() - 1)] = box_label(g);
        }
        slots.push_back(std::move(cell));
    }

    std::string out;
    for (int lane = 0; lane < 5; ++lane) {
        out += std::to_string(lane + 1);
        out += " -";
        for (const auto& slot : slots) {
            size_t width = 1;
            for (const auto& c : slot) width = std::max(width, cp_width(c));
            const std::string& c = slot[static_cast<size_t>(lane)];
            out += c;
            out.append(width - cp_width(c), '-');
            out += '-';
        }
        out += '\n';
    }
    out += '\n';
    out += kFooter;
    out += '\n';
    return out;
}

namespace {

struct Token {
    int lane;    // 0-based
    size_t col;  // codepoint column within the lane body
    char kind;   // 'o' dot, 'x' oplus, '|' pipe, 'B' By, 'S' SxBx, 'Z' Sz
};

}  // namespace

GateSequence parse_diagram(const std::string& text) {
    std::vector<std::string> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.size() < 5) throw ParseError(static_cast<int>(lines.size()) + 1, 1, "expected five lanes");

    std::vector<Token> tokens;
    for (int lane = 0; lane < 5; ++lane) {
        const std::string& line = lines[static_cast<size_t>(lane)];
        std::string prefix = std::to_string(lane + 1) + " ";
        if (line.rfind(prefix, 0) != 0)
            throw ParseError(lane + 1, 1, "lane must start with \"" + prefix + "\"");
        size_t i = prefix.size();
        size_t col = 0;
        while (i < line.size()) {
            unsigned char c = static_cast<unsigned char>(line[i]);
            if (c == '-') {
                ++i;
                ++col;
            } else if (c == '|') {
                tokens.push_back({lane, col, '|'});
                ++i;
                ++col;
            } else if (c == '[') {
                size_t close = line.find(']', i);
                if (close == std::string::npos)
                    throw ParseError(lane + 1, static_cast<int>(col) + 3, "unterminated box");
                std::string label = line.substr(i, close - i + 1);
                char kind;
                if (label == "[By]")
                    kind = 'B';
                else if (label == "[SxBx]")
                    kind = 'S';
                else if (label == "[Sz]")
                    kind = 'Z';
                else
                    throw ParseError(lane + 1, static_cast<int>(col) + 3, "unknown box " + label);
                tokens.push_back({lane, col, kind});
                col += label.size();
                i = close + 1;
            } else if ((c & 0x80u) != 0) {
                // multibyte glyph: dot or oplus
                size_t len = 1;
                while (i + len < line.size() &&
                       (static_cast<unsigned char>(line[i + len]) & 0xc0u) == 0x80u)
                    ++len;
                std::string glyph = line.substr(i, len);
                if (glyph == kDot)
                    tokens.push_back({lane, col, 'o'});
                else if (glyph == kOplus)
                    tokens.push_back({lane, col, 'x'});
                else
                    throw ParseError(lane + 1, static_cast<int>(col) + 3, "unknown glyph");
                i += len;
                ++col;
            } else {
                throw ParseError(lane + 1, static_cast<int>(col) + 3,
                                 std::string("unexpected character '") + static_cast<char>(c) + "'");
            }
        }
    }

    std::map<size_t, std::vector<Token>> slots;
    for (const Token& t : tokens) slots[t.col].push_back(t);

    GateSequence out;
    for (auto& [col, ts] : slots) {
        int boxes = 0, dots = 0, opluses = 0;
        for (const Token& t : ts) {
            if (t.kind == 'B' || t.kind == 'S' || t.kind == 'Z') ++boxes;
            if (t.kind == 'o') ++dots;
            if (t.kind == 'x') ++opluses;
        }
        if (boxes == 1 && ts.size() == 1) {
            const Token& t = ts.front();
            int pair = t.lane + 1;
            if (t.kind == 'B')
                out.push_back(Gate::by(pair));
            else if (t.kind == 'S')
                out.push_back(Gate::sxbx(pair));
            else
                out.push_back(Gate::sz(pair));
            continue;
        }
        if (dots == 1 && opluses == 1) {
            int s = 0, t = 0;
            std::vector<int> pipes;
            for (const Token& tk : ts) {
                if (tk.kind == 'o') s = tk.lane + 1;
                if (tk.kind == 'x') t = tk.lane + 1;
                if (tk.kind == '|') pipes.push_back(tk.lane + 1);
            }
            std::vector<int> expect;
            for (int k = std::min(s, t) + 1; k < std::max(s, t); ++k) expect.push_back(k);
            std::sort(pipes.begin(), pipes.end());
            if (pipes != expect)
                throw ParseError(1, static_cast<int>(col) + 3, "bad connector in time slot");
            if (ts.size() != 2 + expect.size())
                throw ParseError(1, static_cast<int>(col) + 3, "overfull time slot");
            out.push_back(Gate::bxor(s, t));
            continue;
        }
        throw ParseError(1, static_cast<int>(col) + 3, "unrecognized time slot");
    }
    return out;
}

}  // namespace epc
