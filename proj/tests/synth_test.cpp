#include "epc/synth.hpp"

#include <set>

#include "gtest/gtest.h"

#include "epc/verify.hpp"
#include "golden.hpp"

using namespace epc;

namespace {

Mat10 replay(const Mat10& start, const GateSequence& seq) {
    Mat10 m = start;
    for (const Gate& g : seq) apply_gate_rows(m, g);
    return m;
}

int bxor_count(const GateSequence& seq) {
    int n = 0;
    for (const Gate& g : seq) n += g.kind == GateKind::BXOR;
    return n;
}

}  // namespace

TEST(Unknowns, IdsAndNames) {
    EXPECT_EQ(unknown_id("a1"), 0);
    EXPECT_EQ(unknown_id("b1"), 10);
    EXPECT_EQ(unknown_id("f10"), 59);
    EXPECT_EQ(unknown_name(0), "a1");
    EXPECT_EQ(unknown_name(59), "f10");
    EXPECT_EQ(unknown_name(unknown_id("d7")), "d7");
    EXPECT_THROW(unknown_id("g1"), std::invalid_argument);
    EXPECT_THROW(unknown_id("a11"), std::invalid_argument);
    EXPECT_THROW(unknown_name(60), std::out_of_range);
}

TEST(ColumnOrder, GroupFirst) {
    EXPECT_EQ(order_with_group_first(1), kIdentityOrder);
    ColumnOrder o3 = order_with_group_first(3);
    EXPECT_EQ(o3[0], 3);
    std::set<int> all(o3.begin(), o3.end());
    EXPECT_EQ(all.size(), 5u);
}

TEST(Template, DesignationRowsEmbedded) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    TemplateMatrix t = build_template(mv, kIdentityOrder);
    const int designation_rows[4] = {3, 5, 7, 9};  // 0-based rows 4, 6, 8, 10
    for (int j = 0; j < 4; ++j)
        for (int c = 0; c < 10; ++c) {
            const AffineForm& f = t.cell[static_cast<size_t>(designation_rows[j])][static_cast<size_t>(c)];
            EXPECT_EQ(f.mask, 0u);
            EXPECT_EQ(f.constant, mv.rows[static_cast<size_t>(j)].get(c + 1));
        }
    // unknown rows carry one unknown per cell: a,b rows 1-2, then c,d,e,f
    EXPECT_EQ(t.cell[0][0].mask, uint64_t{1} << unknown_id("a1"));
    EXPECT_EQ(t.cell[1][9].mask, uint64_t{1} << unknown_id("b10"));
    EXPECT_EQ(t.cell[2][4].mask, uint64_t{1} << unknown_id("c5"));
    EXPECT_EQ(t.cell[8][7].mask, uint64_t{1} << unknown_id("f8"));
    EXPECT_FALSE(t.cell[0][0].constant);
}

TEST(IxForm, Classification) {
    EXPECT_TRUE(is_ix_form(Mat10::identity()));
    EXPECT_FALSE(is_ix_form(Mat10{}));
    // block permutation with an off-diagonal det-1 block
    Mat10 m;
    set_block(m, 1, 2, Block2::from_rows(0b01, 0b10));
    set_block(m, 2, 1, Block2::from_rows(0b10, 0b11));
    set_block(m, 3, 3, Block2::from_rows(0b01, 0b10));
    set_block(m, 4, 5, Block2::from_rows(0b11, 0b01));
    set_block(m, 5, 4, Block2::from_rows(0b01, 0b10));
    EXPECT_TRUE(is_ix_form(m));
    // doubled block in one block-row breaks the form
    set_block(m, 1, 4, Block2::from_rows(0b01, 0b10));
    EXPECT_FALSE(is_ix_form(m));
    EXPECT_FALSE(is_ix_form(golden::make_mat(golden::kMatrixA1Alpha1)));
}

TEST(EliminateBlock, AllShapesWithinDepthSix) {
    std::vector<Block2> invertible, singular;
    for (int raw = 0; raw < 16; ++raw) {
        Block2 b(static_cast<uint8_t>(raw));
        (det2(b) ? invertible : singular).push_back(b);
    }
    ASSERT_EQ(invertible.size(), 6u);
    ASSERT_EQ(singular.size(), 10u);
    int shapes = 0;
    for (Block2 pivot : invertible)
        for (Block2 target : singular) {
            GateSequence seq = eliminate_block(pivot, target, 2, 4);
            EXPECT_LE(seq.size(), 6u);
            Mat10 m;
            set_block(m, 2, 1, pivot);
            set_block(m, 4, 1, target);
            Mat10 after = replay(m, seq);
            EXPECT_EQ(block_at(after, 4, 1), Block2(0));
            EXPECT_TRUE(det2(block_at(after, 2, 1)));
            // gates only touch the two pairs involved
            for (int r : {1, 2, 5, 6, 9, 10}) EXPECT_EQ(after.row_vec(r), m.row_vec(r));
            ++shapes;
        }
    EXPECT_EQ(shapes, 60);
    EXPECT_TRUE(eliminate_block(invertible[0], Block2(0), 1, 2).empty());
}

TEST(Synthesize, CanonicalPathA1Alpha1) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    auto path = named_choice_path("A1alpha1");
    ASSERT_TRUE(path.has_value());
    SolutionRecord rec = synthesize(mv, *path);
    EXPECT_EQ(rec.m_w, golden::make_mat(golden::kMatrixA1Alpha1));
    EXPECT_EQ(rec.sequence.size(), 12u);
    EXPECT_EQ(bxor_count(rec.sequence), 7);
    EXPECT_EQ(rec.counts, (std::array<int, 5>{384, 104, 6, 1, 1}));
    EXPECT_EQ(replay(rec.m_w, rec.sequence), rec.i_x);
    EXPECT_TRUE(is_ix_form(rec.i_x));
    EXPECT_EQ(rec.jobs.size(), 7u);
    for (int j = 0; j < 4; ++j)
        EXPECT_EQ(rec.m_w.row_vec(2 * j + 4), mv.rows[static_cast<size_t>(j)]);
}

TEST(Synthesize, CanonicalPathC1Beta1) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    auto path = named_choice_path("C1beta1");
    ASSERT_TRUE(path.has_value());
    SolutionRecord rec = synthesize(mv, *path);
    EXPECT_EQ(rec.m_w, golden::make_mat(golden::kMatrixC1Beta1));
    EXPECT_EQ(rec.sequence.size(), 14u);
    EXPECT_EQ(bxor_count(rec.sequence), 6);
    EXPECT_EQ(rec.counts, (std::array<int, 5>{384, 104, 5, 1, 1}));
    EXPECT_EQ(replay(rec.m_w, rec.sequence), rec.i_x);
    EXPECT_TRUE(is_ix_form(rec.i_x));
}

TEST(Synthesize, NamedPathInventory) {
    for (const char* name : golden::kNamedPaths) EXPECT_TRUE(named_choice_path(name).has_value()) << name;
    EXPECT_FALSE(named_choice_path("A1delta1").has_value());
    EXPECT_FALSE(named_choice_path("").has_value());
}

TEST(Synthesize, InfeasiblePathRejected) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    auto path = named_choice_path("A1alpha1");
    ASSERT_TRUE(path.has_value());
    path->stages[0].pivot = 4;  // stage 1 must pivot on the kept pair
    EXPECT_THROW(synthesize(mv, *path), InfeasiblePathError);
}

TEST(StageCounts, MatchReference) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    auto path = named_choice_path("A1alpha1");
    ASSERT_TRUE(path.has_value());
    std::vector<StageChoice> none;
    EXPECT_EQ(count_stage_branches(mv, kIdentityOrder, none, false), 384);
    std::vector<StageChoice> one{path->stages[0]};
    EXPECT_EQ(count_stage_branches(mv, kIdentityOrder, one, false), 104);
    EXPECT_EQ(count_stage_branches(mv, kIdentityOrder, one, true), 72);
    std::vector<StageChoice> two{path->stages[0], path->stages[1]};
    EXPECT_EQ(count_stage_branches(mv, kIdentityOrder, two, false), 6);
}

TEST(Enumerate, LimitAndValidity) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    EnumerateOptions opts;
    opts.limit = 8;
    std::vector<SolutionRecord> records;
    enumerate_solutions(mv, kIdentityOrder, opts,
                        [&](const SolutionRecord& rec) {
                            records.push_back(rec);
                            return true;
                        });
    ASSERT_EQ(records.size(), 8u);
    std::set<std::string> mws;
    for (const SolutionRecord& rec : records) {
        EXPECT_TRUE(is_invertible(rec.m_w));
        EXPECT_TRUE(check_correction(rec.m_w));
        EXPECT_TRUE(is_ix_form(rec.i_x));
        EXPECT_EQ(replay(rec.m_w, rec.sequence), rec.i_x);
        mws.insert(to_text(rec.m_w));
    }
    EXPECT_EQ(mws.size(), records.size());
    // early-stop sink
    int seen = 0;
    EnumerateOptions unlimited;
    enumerate_solutions(mv, kIdentityOrder, unlimited,
                        [&](const SolutionRecord&) { return ++seen < 3; });
    EXPECT_EQ(seen, 3);
}

TEST(RelateDesignations, SingleBxorBridge) {
    Designation a = golden::make_designation(golden::kDesignationRows);
    Designation b = golden::make_designation(golden::kShiftedDesignationRows);
    auto seq = relate_designations(a, b);
    ASSERT_TRUE(seq.has_value());
    ASSERT_EQ(seq->size(), 1u);
    EXPECT_EQ((*seq)[0], Gate::bxor(3, 2));
    auto self = relate_designations(a, a);
    ASSERT_TRUE(self.has_value());
    EXPECT_TRUE(self->empty());
    EXPECT_FALSE(relate_designations(a, Designation{}).has_value());
}

TEST(MonteCarlo, PinnedSeed) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    auto rec = monte_carlo_search(mv, golden::kRandomSeed, 1000000);
    ASSERT_TRUE(rec.has_value());
    EXPECT_EQ(rec->sequence.size(), golden::kRandomDraws);
    EXPECT_EQ(rec->m_w, golden::make_mat(golden::kRandomMatrix));
    EXPECT_EQ(rec->designation, golden::make_designation(golden::kRandomDesignation));
    EXPECT_EQ(rec->i_x, Mat10::identity());
    for (size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(gate_name(rec->sequence[i]), golden::kRandomFirstGates[i]);
        EXPECT_EQ(gate_name(rec->sequence[rec->sequence.size() - 3 + i]),
                  golden::kRandomLastGates[i]);
    }
    EXPECT_FALSE(monte_carlo_search(mv, golden::kRandomSeed, 0).has_value());
    EXPECT_FALSE(monte_carlo_search(mv, golden::kRandomSeed, golden::kRandomDraws - 2).has_value());
}

TEST(RecordJson, RoundTrip) {
    Designation mv = golden::make_designation(golden::kDesignationRows);
    SolutionRecord rec = synthesize(mv, *named_choice_path("A1alpha1"));
    SolutionRecord back = record_from_json(record_to_json(rec));
    EXPECT_EQ(back.designation, rec.designation);
    EXPECT_EQ(back.m_w, rec.m_w);
    EXPECT_EQ(back.i_x, rec.i_x);
    EXPECT_EQ(back.sequence, rec.sequence);
    EXPECT_EQ(back.counts, rec.counts);
    EXPECT_EQ(back.path.column_order, rec.path.column_order);
    EXPECT_EQ(back.path.stages.size(), rec.path.stages.size());
    EXPECT_TRUE(back.jobs.empty());  // jobs are derived, not serialized
}

TEST(PathJson, RoundTripAndNames) {
    ChoicePath path = *named_choice_path("C1beta1");
    ChoicePath back = path_from_json(path_to_json(path));
    EXPECT_EQ(back.column_order, path.column_order);
    ASSERT_EQ(back.stages.size(), path.stages.size());
    for (size_t i = 0; i < path.stages.size(); ++i) {
        EXPECT_EQ(back.stages[i].pivot, path.stages[i].pivot);
        EXPECT_EQ(back.stages[i].assign, path.stages[i].assign);
    }
    ChoicePath named = path_from_json("{\"name\": \"A1gamma2\"}");
    EXPECT_EQ(named.stages.size(), named_choice_path("A1gamma2")->stages.size());
    EXPECT_THROW(path_from_json("{\"name\": \"bogus\"}"), std::runtime_error);
    EXPECT_THROW(path_from_json("not json"), ParseError);
}
