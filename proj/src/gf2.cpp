#include "epc/gf2.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace epc {

bool det2(Block2 b) {
    // b11*b22 ^ b12*b21
    unsigned n = b.bits;
    return (((n & 1u) & (n >> 3)) ^ ((n >> 1) & (n >> 2))) & 1u;
}

Mat10 Mat10::identity() {
    Mat10 m;
    for (int i = 0; i < kBits; ++i) m.row[i] = static_cast<uint16_t>(1u << i);
    return m;
}

Mat10 mat_mul(const Mat10& a, const Mat10& b) {
    Mat10 out;
    for (int i = 0; i < kBits; ++i) {
        uint16_t acc = 0;
        uint16_t sel = a.row[i];
        while (sel) {
            int k = std::countr_zero(sel);
            acc ^= b.row[k];
            sel = static_cast<uint16_t>(sel & (sel - 1));
        }
        out.row[i] = acc;
    }
    return out;
}

BitVec10 mat_vec(const Mat10& m, BitVec10 x) {
    uint16_t out = 0;
    for (int i = 0; i < kBits; ++i)
        out |= static_cast<uint16_t>((std::popcount(static_cast<unsigned>(m.row[i] & x.bits)) & 1) << i);
    return BitVec10(out);
}

Mat10 transpose(const Mat10& m) {
    Mat10 out;
    for (int i = 0; i < kBits; ++i)
        for (int j = 0; j < kBits; ++j)
            if ((m.row[i] >> j) & 1u) out.row[j] |= static_cast<uint16_t>(1u << i);
    return out;
}

std::optional<Mat10> inverse(const Mat10& m) {
    // Gauss-Jordan on [m | I].
    std::array<uint16_t, 10> a = m.row;
    Mat10 inv = Mat10::identity();
    for (int c = 0; c < kBits; ++c) {
        int piv = -1;
        for (int r = c; r < kBits; ++r)
            if ((a[r] >> c) & 1u) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[c], a[piv]);
        std::swap(inv.row[c], inv.row[piv]);
        for (int r = 0; r < kBits; ++r) {
            if (r != c && ((a[r] >> c) & 1u)) {
                a[r] ^= a[c];
                inv.row[r] ^= inv.row[c];
            }
        }
    }
    return inv;
}

bool is_invertible(const Mat10& m) { return inverse(m).has_value(); }

Mat10 symplectic_form() {
    Mat10 j;
    for (int k = 1; k <= kPairs; ++k) {
        j.set(2 * k - 1, 2 * k, true);
        j.set(2 * k, 2 * k - 1, true);
    }
    return j;
}

bool symplectic_check(const Mat10& m) {
    Mat10 j = symplectic_form();
    return mat_mul(transpose(m), mat_mul(j, m)) == j;
}

Block2 block_at(const Mat10& m, int pair, int group) {
    detail::check_range(pair, 1, kPairs, "pair");
    detail::check_range(group, 1, kPairs, "group");
    int r0 = 2 * pair - 2, c0 = 2 * group - 2;
    unsigned r1 = (m.row[r0] >> c0) & 3u;
    unsigned r2 = (m.row[r0 + 1] >> c0) & 3u;
    return Block2::from_rows(static_cast<int>(r1), static_cast<int>(r2));
}

void set_block(Mat10& m, int pair, int group, Block2 b) {
    detail::check_range(pair, 1, kPairs, "pair");
    detail::check_range(group, 1, kPairs, "group");
    int r0 = 2 * pair - 2, c0 = 2 * group - 2;
    m.row[r0] = static_cast<uint16_t>((m.row[r0] & ~(3u << c0)) | ((b.bits & 3u) << c0));
    m.row[r0 + 1] = static_cast<uint16_t>((m.row[r0 + 1] & ~(3u << c0)) | (((b.bits >> 2) & 3u) << c0));
}

ParseError::ParseError(int line_, int column_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                         ": " + msg),
      line(line_),
      column(column_) {}

ParseError parse_error_at(const std::string& text, size_t byte, const std::string& msg) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return ParseError(line, col, msg);
}

namespace {

std::string bits_to_line(unsigned bits, int n) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((bits >> i) & 1u) s[static_cast<size_t>(i)] = '1';
    return s;
}

// Reads exactly `rows` lines of `width` binary digits, then end of input.
std::vector<uint16_t> parse_bit_lines(const std::string& text, int rows, int width) {
    std::vector<uint16_t> out;
    size_t pos = 0;
    for (int r = 1; r <= rows; ++r) {
        if (pos >= text.size())
            throw ParseError(r, 1, "unexpected end of input");
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos)
            throw ParseError(r, static_cast<int>(text.size() - pos) + 1, "missing final newline");
        std::string line = text.substr(pos, nl - pos);
        if (static_cast<int>(line.size()) != width) {
            int col = static_cast<int>(std::min(line.size(), static_cast<size_t>(width))) + 1;
            throw ParseError(r, col, "expected " + std::to_string(width) + " binary digits");
        }
        uint16_t bits = 0;
        for (int c = 0; c < width; ++c) {
            char ch = line[static_cast<size_t>(c)];
            if (ch == '1')
                bits = static_cast<uint16_t>(bits | (1u << c));
            else if (ch != '0')
                throw ParseError(r, c + 1, "expected '0' or '1'");
        }
        out.push_back(bits);
        pos = nl + 1;
    }
    if (pos != text.size())
        throw ParseError(rows + 1, 1, "trailing content after row " + std::to_string(rows));
    return out;
}

}  // namespace

std::string to_text(const Mat10& m) {
    std::string s;
    for (int i = 0; i < kBits; ++i) {
        s += bits_to_line(m.row[i], kBits);
        s += '\n';
    }
    return s;
}

std::string to_text(BitVec10 v) { return bits_to_line(v.bits, kBits) + "\n"; }

std::string to_text(BitVec4 v) { return bits_to_line(v.bits, 4) + "\n"; }

Mat10 parse_mat10(const std::string& text) {
    auto rows = parse_bit_lines(text, kBits, kBits);
    Mat10 m;
    for (int i = 0; i < kBits; ++i) m.row[i] = rows[static_cast<size_t>(i)];
    return m;
}

BitVec10 parse_bitvec10(const std::string& text) {
    return BitVec10(parse_bit_lines(text, 1, kBits)[0]);
}

}  // namespace epc
