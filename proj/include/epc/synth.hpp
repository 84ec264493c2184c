#pragma once
// Staged synthesis of encoding matrices from a measurement designation.
//
// The template fixes rows 4,6,8,10 to the designation rows and leaves six
// unknown rows (a,b at pairs' top, then c,d,e,f at rows 3,5,7,9), sixty
// unknown bits in all. Column groups are processed left-to-right; each stage
// picks a pivot pair (determinant-1 block in the active group), eliminates
// every other live pair's block with two-bit gates, then freezes the pivot,
// which turns its remaining row entries into linear relations on the
// unknowns. Stage choices (pivot + free-bit assignment) form a ChoicePath.

#include "epc/bell.hpp"
#include "epc/gate.hpp"
#include "epc/gf2.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace epc {

// One cell of the symbolic template: XOR of unknowns (mask over the 60
// unknown ids) plus a constant.
struct AffineForm {
    uint64_t mask = 0;
    bool constant = false;
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

// Unknown ids: family a..f = 0..5, id = family*10 + (column-1).
int unknown_id(std::string_view name);
std::string unknown_name(int id);

struct TemplateMatrix {
    std::array<std::array<AffineForm, 10>, 10> cell{};  // [row-1][col-1]
};

// column_order[s] = original column group placed at position s+1.
using ColumnOrder = std::array<int, 5>;
inline constexpr ColumnOrder kIdentityOrder{1, 2, 3, 4, 5};
ColumnOrder order_with_group_first(int group);

// Designation rows are laid out under the permuted column groups; unknown
// ids refer to permuted column positions.
TemplateMatrix build_template(const Designation& mv, const ColumnOrder& order);

struct StageChoice {
    int pivot = 0;
    std::vector<std::pair<int, bool>> assign;  // (unknown id, value), id-sorted
};

struct ChoicePath {
    ColumnOrder column_order = kIdentityOrder;
    std::vector<StageChoice> stages;  // leading stages; omitted ones must be forced
};

struct EliminationJob {
    int pivot = 0;
    int target = 0;
    int group = 0;  // original column group
    friend bool operator==(const EliminationJob&, const EliminationJob&) = default;
};

struct SolutionRecord {
    Designation designation;
    ChoicePath path;
    Mat10 m_w;
    Mat10 i_x;
    GateSequence sequence;          // reduction order; replaying it on m_w gives i_x
    std::array<int, 5> counts{};    // feasible branches per stage along this path
    std::vector<EliminationJob> jobs;  // one per BXOR; not serialized
};

struct InfeasiblePathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff every 2x2 block is zero or determinant-1, with exactly one
// determinant-1 block per block-row and per block-column.
bool is_ix_form(const Mat10& m);

// Minimal gate word (breadth-first, lexicographic tie-break over By(alpha),
// By(beta), SxBx(alpha), SxBx(beta), BXOR(alpha->beta), BXOR(beta->alpha))
// driving the target block to zero. Requires det(pivot)=1, det(target)=0.
GateSequence eliminate_block(Block2 pivot, Block2 target, int pivot_pair, int target_pair);

SolutionRecord synthesize(const Designation& mv, const ChoicePath& path);

struct EnumerateOptions {
    uint64_t limit = 0;                    // 0 = no limit
    bool swap_stage1_eliminations = false; // interchange the stage-1 elimination steps
};

// Depth-first enumeration over all feasible paths, canonical order (pivot
// ascending, then assignments with the lowest unknown id most significant).
// The sink returns false to stop early.
void enumerate_solutions(const Designation& mv, const ColumnOrder& order,
                         const EnumerateOptions& opts,
                         const std::function<bool(const SolutionRecord&)>& sink);

// Number of det-feasible branches at stage prefix.size()+1 after applying
// the given leading choices.
int count_stage_branches(const Designation& mv, const ColumnOrder& order,
                         const std::vector<StageChoice>& prefix, bool swap_stage1_eliminations);

// Shortest measured-pair BXOR word whose induced row transformation maps
// mv1 to mv2; empty when mv1 == mv2, nullopt when no linear relation exists
// or either designation is unusable.
std::optional<GateSequence> relate_designations(const Designation& mv1, const Designation& mv2);

// Uniform draws from the 30 linear gate instances, appended to the physical
// chain until the accumulated forward matrix induces a usable designation
// (rows 4,6,8,10). Returns the record (i_x = identity) or nullopt after
// max_len draws.
std::optional<SolutionRecord> monte_carlo_search(const Designation& mv, uint64_t seed,
                                                 uint64_t max_len);

// "A1alpha1".."A1gamma2", "C1beta1".
std::optional<ChoicePath> named_choice_path(std::string_view name);

std::string record_to_json(const SolutionRecord& rec);
SolutionRecord record_from_json(const std::string& text);  // jobs left empty

std::string path_to_json(const ChoicePath& path);
ChoicePath path_from_json(const std::string& text);  // accepts {"name": "..."} too

}  // namespace epc
