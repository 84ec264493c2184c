#include "epc/gf2.hpp"

#include <random>
#include <unordered_set>

#include "gtest/gtest.h"

using namespace epc;

namespace {

Mat10 random_invertible(std::mt19937_64& rng) {
    while (true) {
        Mat10 m;
        for (auto& r : m.row) r = static_cast<uint16_t>(rng() & 0x3ff);
        if (is_invertible(m)) return m;
    }
}

}  // namespace

TEST(BitVec10, ComponentMapping) {
    BitVec10 v;
    v.set(1, true);
    v.set(10, true);
    EXPECT_EQ(v.bits, 0b1000000001u);
    EXPECT_TRUE(v.get(1));
    EXPECT_FALSE(v.get(2));
    EXPECT_TRUE(v.get(10));
    v.set(1, false);
    EXPECT_EQ(v.bits, 0b1000000000u);
    EXPECT_THROW(v.get(0), std::out_of_range);
    EXPECT_THROW(v.get(11), std::out_of_range);
}

TEST(BitVec10, XorOps) {
    BitVec10 a(0b0101u), b(0b0011u);
    EXPECT_EQ((a ^ b).bits, 0b0110u);
    a ^= b;
    EXPECT_EQ(a.bits, 0b0110u);
}

TEST(BitVec4, ComponentMapping) {
    BitVec4 v;
    v.set(3, true);
    EXPECT_EQ(v.bits, 0b100u);
    EXPECT_TRUE(v.get(3));
    EXPECT_THROW(v.set(5, true), std::out_of_range);
}

TEST(Block2, EntryLayoutAndDet) {
    Block2 b = Block2::from_rows(0b01, 0b10);  // identity
    EXPECT_TRUE(b.at(1, 1));
    EXPECT_FALSE(b.at(1, 2));
    EXPECT_FALSE(b.at(2, 1));
    EXPECT_TRUE(b.at(2, 2));
    EXPECT_TRUE(det2(b));
    EXPECT_FALSE(det2(Block2::from_rows(0b11, 0b11)));
    EXPECT_FALSE(det2(Block2(0)));
    int invertible = 0;
    for (int raw = 0; raw < 16; ++raw)
        if (det2(Block2(static_cast<uint8_t>(raw)))) ++invertible;
    EXPECT_EQ(invertible, 6);  // |GL(2,2)|
}

TEST(Mat10, IdentityAndAccessors) {
    Mat10 id = Mat10::identity();
    for (int r = 1; r <= 10; ++r)
        for (int c = 1; c <= 10; ++c) EXPECT_EQ(id.get(r, c), r == c);
    Mat10 m;
    m.set(3, 7, true);
    EXPECT_TRUE(m.get(3, 7));
    EXPECT_EQ(m.row_vec(3).bits, 1u << 6);
    m.set(3, 7, false);
    EXPECT_EQ(m, Mat10{});
}

TEST(Mat10, MulVecAgreement) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Mat10 a = random_invertible(rng), b = random_invertible(rng);
        BitVec10 x(static_cast<uint16_t>(rng() & 0x3ff));
        EXPECT_EQ(mat_vec(mat_mul(a, b), x), mat_vec(a, mat_vec(b, x)));
    }
}

TEST(Mat10, InverseRoundTrip) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        Mat10 m = random_invertible(rng);
        auto inv = inverse(m);
        ASSERT_TRUE(inv.has_value());
        EXPECT_EQ(mat_mul(m, *inv), Mat10::identity());
        EXPECT_EQ(mat_mul(*inv, m), Mat10::identity());
    }
}

TEST(Mat10, SingularDetected) {
    Mat10 m = Mat10::identity();
    m.row[4] = m.row[3];
    EXPECT_FALSE(is_invertible(m));
    EXPECT_FALSE(inverse(m).has_value());
    EXPECT_FALSE(is_invertible(Mat10{}));
    EXPECT_TRUE(is_invertible(Mat10::identity()));
}

TEST(Mat10, TransposeInvolution) {
    std::mt19937_64 rng(13);
    Mat10 m = random_invertible(rng);
    EXPECT_EQ(transpose(transpose(m)), m);
    EXPECT_TRUE(m.get(2, 9) == transpose(m).get(9, 2));
}

TEST(Mat10, SymplecticForm) {
    Mat10 j = symplectic_form();
    for (int p = 0; p < 5; ++p) {
        EXPECT_TRUE(j.get(2 * p + 1, 2 * p + 2));
        EXPECT_TRUE(j.get(2 * p + 2, 2 * p + 1));
    }
    EXPECT_TRUE(symplectic_check(Mat10::identity()));
    Mat10 shear = Mat10::identity();
    shear.set(1, 3, true);  // couples pairs 1 and 2 asymmetrically
    EXPECT_FALSE(symplectic_check(shear));
}

TEST(Mat10, BlockAccess) {
    Mat10 m;
    set_block(m, 2, 4, Block2::from_rows(0b01, 0b11));
    EXPECT_EQ(block_at(m, 2, 4), Block2::from_rows(0b01, 0b11));
    EXPECT_TRUE(m.get(3, 7));
    EXPECT_TRUE(m.get(4, 7));
    EXPECT_TRUE(m.get(4, 8));
    EXPECT_EQ(block_at(m, 2, 3), Block2(0));
}

TEST(TextCodec, RoundTrip) {
    std::mt19937_64 rng(17);
    Mat10 m = random_invertible(rng);
    EXPECT_EQ(parse_mat10(to_text(m)), m);
    BitVec10 v(0b1010011001u);
    EXPECT_EQ(to_text(v), "1001100101\n");  // component 1 printed first
    EXPECT_EQ(parse_bitvec10(to_text(v)), v);
}

TEST(TextCodec, ParseErrors) {
    EXPECT_THROW(parse_mat10("10\n"), ParseError);
    std::string good = to_text(Mat10::identity());
    std::string bad = good;
    bad[3] = '2';
    EXPECT_THROW(parse_mat10(bad), ParseError);
    std::string truncated = good.substr(0, good.size() - 1);  // missing final newline
    EXPECT_THROW(parse_mat10(truncated), ParseError);
    try {
        parse_mat10(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 1);
        EXPECT_EQ(e.column, 4);
    }
}

TEST(Mat10Hash, SpreadsDistinctMatrices) {
    std::mt19937_64 rng(19);
    std::unordered_set<size_t> seen;
    for (int i = 0; i < 200; ++i) seen.insert(Mat10Hash{}(random_invertible(rng)));
    EXPECT_GT(seen.size(), 195u);
}
