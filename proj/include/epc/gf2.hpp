#pragma once
// Dense GF(2) linear algebra on 10-bit words sized for five Bell pairs.
// Component k (1-based) sits in bit k-1; components 2k-1 / 2k are the phase
// and amplitude bits of pair k.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace epc {

inline constexpr int kPairs = 5;
inline constexpr int kBits = 10;

namespace detail {
inline void check_range(int v, int lo, int hi, const char* what) {
    if (v < lo || v > hi)
        throw std::out_of_range(std::string(what) + " out of range: " + std::to_string(v));
}
}  // namespace detail

// 10-component vector over GF(2).
struct BitVec10 {
    uint16_t bits = 0;

    constexpr BitVec10() = default;
    explicit constexpr BitVec10(uint16_t raw) : bits(static_cast<uint16_t>(raw & 0x3ffu)) {}

    bool get(int comp) const {
        detail::check_range(comp, 1, kBits, "component");
        return (bits >> (comp - 1)) & 1u;
    }
    void set(int comp, bool v) {
        detail::check_range(comp, 1, kBits, "component");
        if (v)
            bits = static_cast<uint16_t>(bits | (1u << (comp - 1)));
        else
            bits = static_cast<uint16_t>(bits & ~(1u << (comp - 1)));
    }
    BitVec10& operator^=(BitVec10 o) {
        bits ^= o.bits;
        return *this;
    }
    friend constexpr BitVec10 operator^(BitVec10 a, BitVec10 b) {
        return BitVec10(static_cast<uint16_t>(a.bits ^ b.bits));
    }
    friend constexpr bool operator==(BitVec10, BitVec10) = default;
};

// 4-component vector over GF(2) (the measurement word).
struct BitVec4 {
    uint8_t bits = 0;

    constexpr BitVec4() = default;
    explicit constexpr BitVec4(uint8_t raw) : bits(static_cast<uint8_t>(raw & 0xfu)) {}

    bool get(int comp) const {
        detail::check_range(comp, 1, 4, "component");
        return (bits >> (comp - 1)) & 1u;
    }
    void set(int comp, bool v) {
        detail::check_range(comp, 1, 4, "component");
        if (v)
            bits = static_cast<uint8_t>(bits | (1u << (comp - 1)));
        else
            bits = static_cast<uint8_t>(bits & ~(1u << (comp - 1)));
    }
    friend constexpr bool operator==(BitVec4, BitVec4) = default;
};

// 2x2 block over GF(2); entry (r,c), 1-based, lives in bit (r-1)*2 + (c-1).
struct Block2 {
    uint8_t bits = 0;

    constexpr Block2() = default;
    explicit constexpr Block2(uint8_t raw) : bits(static_cast<uint8_t>(raw & 0xfu)) {}
    static Block2 from_rows(int r1, int r2) {
        return Block2(static_cast<uint8_t>((r1 & 3) | ((r2 & 3) << 2)));
    }

    bool at(int r, int c) const {
        detail::check_range(r, 1, 2, "row");
        detail::check_range(c, 1, 2, "column");
        return (bits >> ((r - 1) * 2 + (c - 1))) & 1u;
    }
    friend constexpr bool operator==(Block2, Block2) = default;
};

bool det2(Block2 b);

// 10x10 matrix over GF(2); row r (1-based) stored in row[r-1], column c in
// bit c-1.
struct Mat10 {
    std::array<uint16_t, 10> row{};

    static Mat10 identity();
    BitVec10 row_vec(int r) const {
        detail::check_range(r, 1, kBits, "row");
        return BitVec10(row[r - 1]);
    }
    bool get(int r, int c) const {
        detail::check_range(r, 1, kBits, "row");
        detail::check_range(c, 1, kBits, "column");
        return (row[r - 1] >> (c - 1)) & 1u;
    }
    void set(int r, int c, bool v) {
        detail::check_range(r, 1, kBits, "row");
        detail::check_range(c, 1, kBits, "column");
        if (v)
            row[r - 1] = static_cast<uint16_t>(row[r - 1] | (1u << (c - 1)));
        else
            row[r - 1] = static_cast<uint16_t>(row[r - 1] & ~(1u << (c - 1)));
    }
    friend bool operator==(const Mat10&, const Mat10&) = default;
};

Mat10 mat_mul(const Mat10& a, const Mat10& b);
BitVec10 mat_vec(const Mat10& m, BitVec10 x);
Mat10 transpose(const Mat10& m);
bool is_invertible(const Mat10& m);
std::optional<Mat10> inverse(const Mat10& m);

// The block form diag([[0,1],[1,0]], x5); m preserves it iff m^T J m = J.
Mat10 symplectic_form();
bool symplectic_check(const Mat10& m);

// Rows 2*pair-1, 2*pair; columns 2*group-1, 2*group (1-based throughout).
Block2 block_at(const Mat10& m, int pair, int group);
void set_block(Mat10& m, int pair, int group, Block2 b);

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg);
};

// ParseError located at a byte offset of text (for wrapped JSON errors).
ParseError parse_error_at(const std::string& text, size_t byte, const std::string& msg);

// Plain-text codec: '0'/'1' rows, one per line, row 1 first, no inner
// whitespace, final newline required.
std::string to_text(const Mat10& m);
std::string to_text(BitVec10 v);
std::string to_text(BitVec4 v);
Mat10 parse_mat10(const std::string& text);
BitVec10 parse_bitvec10(const std::string& text);

struct Mat10Hash {
    size_t operator()(const Mat10& m) const {
        uint64_t lo = 0, hi = 0;
        for (int i = 0; i < 5; ++i) lo |= static_cast<uint64_t>(m.row[i]) << (10 * i);
        for (int i = 5; i < 10; ++i) hi |= static_cast<uint64_t>(m.row[i]) << (10 * (i - 5));
        uint64_t h = lo * 0x9e3779b97f4a7c15ull;
        h ^= hi + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<size_t>(h);
    }
};

}  // namespace epc
