#include "epc/synth.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <deque>
#include <mutex>
#include <random>

#include <json.hpp>

namespace epc {

namespace {

constexpr int kUnknowns = 60;
constexpr const char* kFamilies = "abcdef";

// Unknown rows of the template: rows 1,2 then 3,5,7,9 (1-based).
constexpr int kFamilyRow[6] = {1, 2, 3, 5, 7, 9};

int family_of_row(int row0) {
    switch (row0) {
        case 0: return 0;
        case 1: return 1;
        case 2: return 2;
        case 4: return 3;
        case 6: return 4;
        case 8: return 5;
        default: return -1;
    }
}

}  // namespace

int unknown_id(std::string_view name) {
    if (name.size() < 2 || name.size() > 3) throw std::invalid_argument("bad unknown name");
    const char* fam = std::strchr(kFamilies, name[0]);
    if (!fam || name[0] == '\0') throw std::invalid_argument("bad unknown family");
    int col = 0;
    for (size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("bad unknown index");
        col = col * 10 + (name[i] - '0');
    }
    if (col < 1 || col > 10) throw std::invalid_argument("unknown index out of range");
    return static_cast<int>(fam - kFamilies) * 10 + col - 1;
}

std::string unknown_name(int id) {
    if (id < 0 || id >= kUnknowns) throw std::out_of_range("unknown id");
    return std::string(1, kFamilies[id / 10]) + std::to_string(id % 10 + 1);
}

ColumnOrder order_with_group_first(int group) {
    detail::check_range(group, 1, kPairs, "group");
    ColumnOrder order{};
    order[0] = group;
    int at = 1;
    for (int g = 1; g <= kPairs; ++g)
        if (g != group) order[at++] = g;
    return order;
}

namespace {

void check_order(const ColumnOrder& order) {
    uint8_t seen = 0;
    for (int g : order) {
        detail::check_range(g, 1, kPairs, "group");
        seen |= static_cast<uint8_t>(1u << g);
    }
    if (seen != 0b111110) throw std::invalid_argument("column order must be a permutation of 1..5");
}

}  // namespace

TemplateMatrix build_template(const Designation& mv, const ColumnOrder& order) {
    check_order(order);
    auto val = validate_designation(mv);
    if (!val.ok) throw ValidationError(*val.collision);
    TemplateMatrix t;
    for (int r = 0; r < 10; ++r) {
        int fam = family_of_row(r);
        for (int c = 0; c < 10; ++c) {
            if (fam >= 0) {
                t.cell[r][c] = {1ull << (fam * 10 + c), false};
            } else {
                int des = (r - 3) / 2;  // rows 3,5,7,9 -> designation rows 0..3
                int oc = 2 * (order[c / 2] - 1) + (c % 2);
                t.cell[r][c] = {0, mv.rows[static_cast<size_t>(des)].get(oc + 1)};
            }
        }
    }
    return t;
}

bool is_ix_form(const Mat10& m) {
    uint8_t colused = 0;
    for (int p = 1; p <= kPairs; ++p) {
        int hit = 0;
        for (int g = 1; g <= kPairs; ++g) {
            Block2 b = block_at(m, p, g);
            if (b.bits == 0) continue;
            if (!det2(b)) return false;
            if (hit) return false;
            hit = g;
        }
        if (!hit) return false;
        if (colused & (1u << hit)) return false;
        colused = static_cast<uint8_t>(colused | (1u << hit));
    }
    return true;
}

// --------------------------------------------------------------------------
// eliminate_block: breadth-first over the 256 (pivot, target) block states.

namespace {

enum Move : uint8_t { kBya, kByb, kSxa, kSxb, kBab, kBba };

struct MoveState {
    uint8_t p, t;
};

MoveState apply_move(MoveState s, Move m) {
    auto rows = [](uint8_t n) { return std::pair<uint8_t, uint8_t>{uint8_t(n & 3), uint8_t(n >> 2)}; };
    auto nib = [](uint8_t r1, uint8_t r2) { return uint8_t((r1 & 3) | ((r2 & 3) << 2)); };
    auto [p1, p2] = rows(s.p);
    auto [t1, t2] = rows(s.t);
    switch (m) {
        case kBya: return {nib(p2, p1), s.t};
        case kByb: return {s.p, nib(t2, t1)};
        case kSxa: return {nib(p1, uint8_t(p2 ^ p1)), s.t};
        case kSxb: return {s.p, nib(t1, uint8_t(t2 ^ t1))};
        case kBab: return {nib(uint8_t(p1 ^ t1), p2), nib(t1, uint8_t(t2 ^ p2))};
        case kBba: return {nib(p1, uint8_t(p2 ^ t2)), nib(uint8_t(t1 ^ p1), t2)};
    }
    return s;
}

// word table indexed by p | t<<4, built once
std::array<std::vector<uint8_t>, 256>& elim_table() {
    static std::array<std::vector<uint8_t>, 256> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        for (int p = 0; p < 16; ++p) {
            Block2 pb(static_cast<uint8_t>(p));
            if (!det2(pb)) continue;
            for (int t = 0; t < 16; ++t) {
                Block2 tb(static_cast<uint8_t>(t));
                if (det2(tb)) continue;
                if (t == 0) {
                    table[static_cast<size_t>(p | (t << 4))] = {};
                    continue;
                }
                // BFS, moves expanded in canonical order -> lex-min shortest
                std::array<int16_t, 256> prev;
                prev.fill(-1);
                std::array<int8_t, 256> via{};
                auto key = [](MoveState s) { return static_cast<size_t>(s.p | (s.t << 4)); };
                MoveState start{static_cast<uint8_t>(p), static_cast<uint8_t>(t)};
                std::deque<MoveState> q{start};
                prev[key(start)] = static_cast<int16_t>(key(start));
                MoveState goal{0, 0};
                bool found = false;
                while (!q.empty() && !found) {
                    MoveState cur = q.front();
                    q.pop_front();
                    if (cur.t == 0) { goal = cur; found = true; break; }
                    for (uint8_t m = 0; m < 6; ++m) {
                        MoveState ns = apply_move(cur, static_cast<Move>(m));
                        if (prev[key(ns)] < 0) {
                            prev[key(ns)] = static_cast<int16_t>(key(cur));
                            via[key(ns)] = static_cast<int8_t>(m);
                            q.push_back(ns);
                        }
                    }
                }
                if (!found) throw std::logic_error("block elimination unreachable");
                std::vector<uint8_t> word;
                size_t cur = key(goal);
                while (cur != key(start)) {
                    word.push_back(static_cast<uint8_t>(via[cur]));
                    cur = static_cast<size_t>(prev[cur]);
                }
                std::reverse(word.begin(), word.end());
                if (word.size() > 6) throw std::logic_error("block elimination too deep");
                table[static_cast<size_t>(p | (t << 4))] = std::move(word);
            }
        }
    });
    return table;
}

Gate move_gate(uint8_t m, int alpha, int beta) {
    switch (static_cast<Move>(m)) {
        case kBya: return Gate::by(alpha);
        case kByb: return Gate::by(beta);
        case kSxa: return Gate::sxbx(alpha);
        case kSxb: return Gate::sxbx(beta);
        case kBab: return Gate::bxor(alpha, beta);
        case kBba: return Gate::bxor(beta, alpha);
    }
    throw std::logic_error("bad move");
}

}  // namespace

GateSequence eliminate_block(Block2 pivot, Block2 target, int pivot_pair, int target_pair) {
    detail::check_range(pivot_pair, 1, kPairs, "pivot pair");
    detail::check_range(target_pair, 1, kPairs, "target pair");
    if (pivot_pair == target_pair) throw std::invalid_argument("pivot pair == target pair");
    if (!det2(pivot)) throw std::invalid_argument("pivot block must have determinant 1");
    if (det2(target)) throw std::invalid_argument("target block must have determinant 0");
    const auto& word = elim_table()[static_cast<size_t>(pivot.bits | (target.bits << 4))];
    GateSequence out;
    out.reserve(word.size());
    for (uint8_t m : word) out.push_back(move_gate(m, pivot_pair, target_pair));
    return out;
}

// --------------------------------------------------------------------------
// staged synthesis

namespace {

struct Work {
    ColumnOrder order{};
    std::array<std::array<AffineForm, 10>, 10> W{};
    std::array<AffineForm, kUnknowns> solved{};
    uint64_t solved_set = 0;
    uint8_t frozen = 0;
    GateSequence seq;
    std::vector<EliminationJob> jobs;
    std::array<int, 5> counts{};

    bool is_solved(int id) const { return (solved_set >> id) & 1u; }
};

Work make_work(const TemplateMatrix& t, const ColumnOrder& order) {
    Work w;
    w.order = order;
    w.W = t.cell;
    return w;
}

AffineForm reduce_form(const Work& w, AffineForm f) {
    int guard = 0;
    while (uint64_t hit = f.mask & w.solved_set) {
        int id = std::countr_zero(hit);
        f.mask ^= 1ull << id;
        f.mask ^= w.solved[static_cast<size_t>(id)].mask;
        f.constant = f.constant != w.solved[static_cast<size_t>(id)].constant;
        if (++guard > 4096) throw std::logic_error("constraint reduction diverged");
    }
    return f;
}

void subst_into_w(Work& w, int id) {
    const AffineForm f = w.solved[static_cast<size_t>(id)];
    for (auto& row : w.W)
        for (auto& cell : row)
            if ((cell.mask >> id) & 1u) {
                cell.mask ^= (1ull << id) ^ f.mask;
                cell.constant = cell.constant != f.constant;
            }
}

void assign_unknown(Work& w, int id, bool val) {
    w.solved[static_cast<size_t>(id)] = {0, val};
    w.solved_set |= 1ull << id;
    subst_into_w(w, id);
}

void add_constraint(Work& w, AffineForm f) {
    f = reduce_form(w, f);
    if (f.mask == 0) {
        if (f.constant) throw InfeasiblePathError("frozen rows contradict earlier choices");
        return;
    }
    int id = std::countr_zero(f.mask);
    w.solved[static_cast<size_t>(id)] = {f.mask ^ (1ull << id), f.constant};
    w.solved_set |= 1ull << id;
    subst_into_w(w, id);
}

std::vector<int> live_pairs(const Work& w) {
    std::vector<int> out;
    for (int p = 1; p <= kPairs; ++p)
        if (!((w.frozen >> p) & 1u)) out.push_back(p);
    return out;
}

std::vector<int> stage_unknowns(const Work& w, int pos, const std::vector<int>& live) {
    uint64_t mask = 0;
    for (int p : live)
        for (int r : {2 * p - 2, 2 * p - 1})
            for (int c : {2 * pos - 2, 2 * pos - 1})
                mask |= w.W[static_cast<size_t>(r)][static_cast<size_t>(c)].mask;
    std::vector<int> ids;
    while (mask) {
        ids.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return ids;
}

uint8_t eval_block(const Work& w, int pair, int pos, uint64_t trial) {
    uint8_t out = 0;
    int bitpos = 0;
    for (int r : {2 * pair - 2, 2 * pair - 1})
        for (int c : {2 * pos - 2, 2 * pos - 1}) {
            const AffineForm& f = w.W[static_cast<size_t>(r)][static_cast<size_t>(c)];
            unsigned v = static_cast<unsigned>(f.constant) ^
                         (static_cast<unsigned>(std::popcount(f.mask & trial)) & 1u);
            out = static_cast<uint8_t>(out | (v << bitpos));
            ++bitpos;
        }
    return out;
}

struct Branch {
    int pivot = 0;
    std::vector<std::pair<int, bool>> assign;
};

std::vector<Branch> stage_branches(const Work& w, int pos) {
    std::vector<int> live = live_pairs(w);
    std::vector<int> ids = stage_unknowns(w, pos, live);
    int n = static_cast<int>(ids.size());
    std::vector<int> pivots = (pos == 1) ? std::vector<int>{1} : live;
    std::vector<Branch> out;
    for (int pivot : pivots) {
        for (uint32_t a = 0; a < (1u << n); ++a) {
            uint64_t trial = 0;
            for (int j = 0; j < n; ++j)
                if ((a >> (n - 1 - j)) & 1u) trial |= 1ull << ids[static_cast<size_t>(j)];
            bool ok = true;
            for (int p : live) {
                bool d = det2(Block2(eval_block(w, p, pos, trial)));
                if (d != (p == pivot)) { ok = false; break; }
            }
            if (!ok) continue;
            Branch br;
            br.pivot = pivot;
            for (int j = 0; j < n; ++j)
                br.assign.emplace_back(ids[static_cast<size_t>(j)], (a >> (n - 1 - j)) & 1u);
            out.push_back(std::move(br));
        }
    }
    return out;
}

void apply_row_gate_sym(Work& w, const Gate& g) {
    auto xor_rows = [&w](int dst, int src) {
        for (int c = 0; c < 10; ++c) {
            auto& d = w.W[static_cast<size_t>(dst)][static_cast<size_t>(c)];
            const auto& s = w.W[static_cast<size_t>(src)][static_cast<size_t>(c)];
            d.mask ^= s.mask;
            d.constant = d.constant != s.constant;
        }
    };
    switch (g.kind) {
        case GateKind::By:
            std::swap(w.W[static_cast<size_t>(2 * g.pair() - 2)], w.W[static_cast<size_t>(2 * g.pair() - 1)]);
            break;
        case GateKind::SxBx:
            xor_rows(2 * g.pair() - 1, 2 * g.pair() - 2);
            break;
        case GateKind::BXOR:
            xor_rows(2 * g.source() - 2, 2 * g.target() - 2);
            xor_rows(2 * g.target() - 1, 2 * g.source() - 1);
            break;
        case GateKind::Sz:
            throw std::logic_error("Sz cannot appear during reduction");
    }
    w.seq.push_back(g);
}

uint8_t concrete_block(const Work& w, int pair, int pos) {
    uint8_t out = 0;
    int bitpos = 0;
    for (int r : {2 * pair - 2, 2 * pair - 1})
        for (int c : {2 * pos - 2, 2 * pos - 1}) {
            const AffineForm& f = w.W[static_cast<size_t>(r)][static_cast<size_t>(c)];
            if (f.mask != 0) throw std::logic_error("active block not concrete");
            out = static_cast<uint8_t>(out | (static_cast<unsigned>(f.constant) << bitpos));
            ++bitpos;
        }
    return out;
}

void run_stage(Work& w, int pos, int pivot, const std::vector<std::pair<int, bool>>& assign,
               bool swap_stage1) {
    std::vector<int> live = live_pairs(w);
    if (std::find(live.begin(), live.end(), pivot) == live.end())
        throw InfeasiblePathError("stage " + std::to_string(pos) + ": pivot pair " +
                                  std::to_string(pivot) + " is frozen or out of range");
    if (pos == 1 && pivot != 1)
        throw InfeasiblePathError("stage 1 pivot must be the kept pair (pair 1)");
    std::vector<int> ids = stage_unknowns(w, pos, live);
    std::vector<int> given;
    for (auto& [id, v] : assign) given.push_back(id);
    std::vector<int> sorted_given = given;
    std::sort(sorted_given.begin(), sorted_given.end());
    if (sorted_given != ids) {
        std::string msg = "stage " + std::to_string(pos) + " expects assignments for {";
        for (size_t i = 0; i < ids.size(); ++i)
            msg += (i ? "," : "") + unknown_name(ids[i]);
        msg += "}";
        throw InfeasiblePathError(msg);
    }
    uint64_t trial = 0;
    for (auto& [id, v] : assign)
        if (v) trial |= 1ull << id;
    for (int p : live) {
        bool d = det2(Block2(eval_block(w, p, pos, trial)));
        if (d != (p == pivot))
            throw InfeasiblePathError("stage " + std::to_string(pos) +
                                      ": determinant condition fails at pair " + std::to_string(p));
    }
    for (auto& [id, v] : assign) assign_unknown(w, id, v);

    std::vector<int> targets;
    for (int p : live)
        if (p != pivot) targets.push_back(p);
    std::sort(targets.begin(), targets.end());
    if (pos == 2 || (pos == 1 && swap_stage1)) std::reverse(targets.begin(), targets.end());

    for (int t : targets) {
        uint8_t tn = concrete_block(w, t, pos);
        if (tn == 0) continue;
        uint8_t pn = concrete_block(w, pivot, pos);
        for (const Gate& g : eliminate_block(Block2(pn), Block2(tn), pivot, t))
            apply_row_gate_sym(w, g);
        if (concrete_block(w, t, pos) != 0) throw std::logic_error("elimination failed");
        w.jobs.push_back({pivot, t, w.order[static_cast<size_t>(pos - 1)]});
    }

    for (int c = 2 * pos; c < 10; ++c)
        for (int r : {2 * pivot - 2, 2 * pivot - 1})
            add_constraint(w, w.W[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    w.frozen = static_cast<uint8_t>(w.frozen | (1u << pivot));
}

SolutionRecord finish(const Work& w, const TemplateMatrix& tmpl, const Designation& mv,
                      const ChoicePath& path_taken) {
    // resolve every unknown to a constant
    std::array<int8_t, kUnknowns> val;
    val.fill(-1);
    auto resolve = [&](auto&& self, int id) -> bool {
        if (val[static_cast<size_t>(id)] >= 0) return val[static_cast<size_t>(id)];
        if (!w.is_solved(id)) throw std::logic_error("unsolved unknown " + unknown_name(id));
        const AffineForm& f = w.solved[static_cast<size_t>(id)];
        bool v = f.constant;
        uint64_t m = f.mask;
        while (m) {
            int j = std::countr_zero(m);
            m &= m - 1;
            v = v != self(self, j);
        }
        val[static_cast<size_t>(id)] = v;
        return v;
    };
    for (int id = 0; id < kUnknowns; ++id) resolve(resolve, id);

    auto eval_cells = [&](const std::array<std::array<AffineForm, 10>, 10>& cells) {
        Mat10 m;
        for (int r = 0; r < 10; ++r) {
            uint16_t acc = 0;
            for (int c = 0; c < 10; ++c) {
                const AffineForm& f = cells[static_cast<size_t>(r)][static_cast<size_t>(c)];
                bool v = f.constant;
                uint64_t msk = f.mask;
                while (msk) {
                    int j = std::countr_zero(msk);
                    msk &= msk - 1;
                    v = v != static_cast<bool>(val[static_cast<size_t>(j)]);
                }
                if (v) acc = static_cast<uint16_t>(acc | (1u << c));
            }
            m.row[static_cast<size_t>(r)] = acc;
        }
        return m;
    };
    Mat10 mw_perm = eval_cells(tmpl.cell);
    Mat10 ix_perm = eval_cells(w.W);

    auto unpermute = [&](const Mat10& m) {
        Mat10 out;
        for (int r = 0; r < 10; ++r)
            for (int s = 0; s < 5; ++s) {
                int g = w.order[static_cast<size_t>(s)] - 1;
                uint16_t bits = static_cast<uint16_t>((m.row[static_cast<size_t>(r)] >> (2 * s)) & 3u);
                out.row[static_cast<size_t>(r)] =
                    static_cast<uint16_t>(out.row[static_cast<size_t>(r)] | (bits << (2 * g)));
            }
        return out;
    };
    SolutionRecord rec;
    rec.designation = mv;
    rec.path = path_taken;
    rec.m_w = unpermute(mw_perm);
    rec.i_x = unpermute(ix_perm);
    rec.sequence = w.seq;
    rec.counts = w.counts;
    rec.jobs = w.jobs;

    Mat10 chk = rec.m_w;
    for (const Gate& g : rec.sequence) apply_gate_rows(chk, g);
    if (!(chk == rec.i_x)) throw std::logic_error("sequence replay does not reach i_x");
    if (!is_ix_form(rec.i_x)) throw std::logic_error("i_x is not in legal form");
    for (int j = 0; j < 4; ++j)
        if (rec.m_w.row[static_cast<size_t>(2 * j + 3)] != mv.rows[static_cast<size_t>(j)].bits)
            throw std::logic_error("designation row embedding violated");
    return rec;
}

StageChoice to_choice(const Branch& br) {
    StageChoice c;
    c.pivot = br.pivot;
    c.assign = br.assign;
    return c;
}

}  // namespace

SolutionRecord synthesize(const Designation& mv, const ChoicePath& path) {
    check_order(path.column_order);
    if (path.stages.size() > 5) throw InfeasiblePathError("more than five stages");
    TemplateMatrix tmpl = build_template(mv, path.column_order);
    Work w = make_work(tmpl, path.column_order);
    ChoicePath taken;
    taken.column_order = path.column_order;
    for (int pos = 1; pos <= 5; ++pos) {
        std::vector<Branch> branches = stage_branches(w, pos);
        w.counts[static_cast<size_t>(pos - 1)] = static_cast<int>(branches.size());
        StageChoice choice;
        if (static_cast<size_t>(pos) <= path.stages.size()) {
            choice = path.stages[static_cast<size_t>(pos - 1)];
            std::sort(choice.assign.begin(), choice.assign.end());
        } else if (branches.size() == 1) {
            choice = to_choice(branches[0]);
        } else if (branches.empty()) {
            throw InfeasiblePathError("stage " + std::to_string(pos) + " has no feasible branch");
        } else {
            throw InfeasiblePathError("stage " + std::to_string(pos) + " has " +
                                      std::to_string(branches.size()) +
                                      " feasible branches but no choice was given");
        }
        run_stage(w, pos, choice.pivot, choice.assign, false);
        taken.stages.push_back(choice);
    }
    return finish(w, tmpl, mv, taken);
}

void enumerate_solutions(const Designation& mv, const ColumnOrder& order,
                         const EnumerateOptions& opts,
                         const std::function<bool(const SolutionRecord&)>& sink) {
    check_order(order);
    if (!validate_designation(mv).ok) return;  // invalid designation: empty stream
    TemplateMatrix tmpl = build_template(mv, order);
    uint64_t emitted = 0;
    bool stop = false;

    auto rec = [&](auto&& self, const Work& w, std::vector<StageChoice>& trail, int pos) -> void {
        if (stop) return;
        if (pos > 5) {
            ChoicePath taken;
            taken.column_order = order;
            taken.stages = trail;
            SolutionRecord r = finish(w, tmpl, mv, taken);
            ++emitted;
            if (!sink(r)) stop = true;
            if (opts.limit && emitted >= opts.limit) stop = true;
            return;
        }
        std::vector<Branch> branches = stage_branches(w, pos);
        for (const Branch& br : branches) {
            if (stop) return;
            Work child = w;
            child.counts[static_cast<size_t>(pos - 1)] = static_cast<int>(branches.size());
            try {
                run_stage(child, pos, br.pivot, br.assign, opts.swap_stage1_eliminations);
            } catch (const InfeasiblePathError&) {
                continue;
            }
            trail.push_back(to_choice(br));
            self(self, child, trail, pos + 1);
            trail.pop_back();
        }
    };
    Work w = make_work(tmpl, order);
    std::vector<StageChoice> trail;
    rec(rec, w, trail, 1);
}

int count_stage_branches(const Designation& mv, const ColumnOrder& order,
                         const std::vector<StageChoice>& prefix, bool swap_stage1_eliminations) {
    check_order(order);
    TemplateMatrix tmpl = build_template(mv, order);
    Work w = make_work(tmpl, order);
    int pos = 1;
    for (const StageChoice& c : prefix) {
        std::vector<std::pair<int, bool>> assign = c.assign;
        std::sort(assign.begin(), assign.end());
        run_stage(w, pos, c.pivot, assign, swap_stage1_eliminations);
        ++pos;
    }
    return static_cast<int>(stage_branches(w, pos).size());
}

// --------------------------------------------------------------------------
// named paths

namespace {

StageChoice make_choice(int pivot, std::initializer_list<std::pair<const char*, int>> assigns) {
    StageChoice c;
    c.pivot = pivot;
    for (auto& [n, v] : assigns) c.assign.emplace_back(unknown_id(n), v != 0);
    std::sort(c.assign.begin(), c.assign.end());
    return c;
}

const StageChoice& stage1_kept() {
    static StageChoice s = make_choice(1, {{"a1", 1}, {"a2", 0}, {"b1", 0}, {"b2", 1},
                                           {"c1", 0}, {"c2", 0}, {"d1", 0}, {"d2", 0},
                                           {"e1", 0}, {"e2", 0}, {"f1", 0}, {"f2", 0}});
    return s;
}

const StageChoice& stage2_a() {
    static StageChoice s = make_choice(2, {{"c3", 1}, {"c4", 0}, {"d3", 0}, {"d4", 0},
                                           {"e3", 0}, {"e4", 0}, {"f3", 0}, {"f4", 0}});
    return s;
}

const StageChoice& stage2_c() {
    static StageChoice s = make_choice(5, {{"c3", 0}, {"c4", 0}, {"d3", 0}, {"d4", 0},
                                           {"e3", 0}, {"e4", 0}, {"f3", 1}, {"f4", 0}});
    return s;
}

}  // namespace

std::optional<ChoicePath> named_choice_path(std::string_view name) {
    ChoicePath p;
    if (name == "C1beta1") {
        p.stages = {stage1_kept(), stage2_c(),
                    make_choice(3, {{"e5", 0}, {"e6", 0}, {"f5", 0}, {"f6", 0}})};
        return p;
    }
    struct Entry {
        const char* name;
        int pivot;
        int e5, e6, f5, f6;
    };
    static const Entry entries[] = {
        {"A1alpha1", 3, 0, 1, 0, 0}, {"A1alpha2", 3, 0, 1, 1, 1},
        {"A1beta1", 4, 1, 1, 0, 0},  {"A1beta2", 4, 1, 1, 0, 1},
        {"A1gamma1", 5, 0, 0, 0, 1}, {"A1gamma2", 5, 0, 0, 1, 1},
    };
    for (const Entry& e : entries) {
        if (name == e.name) {
            p.stages = {stage1_kept(), stage2_a(),
                        make_choice(e.pivot, {{"e5", e.e5}, {"e6", e.e6}, {"f5", e.f5}, {"f6", e.f6}})};
            return p;
        }
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// designation relations

namespace {

using Row4 = std::array<uint8_t, 4>;  // 4x4 matrix, bit c of row r = entry (r,c)

std::optional<Row4> inv4(const Row4& m) {
    Row4 a = m;
    Row4 inv = {1, 2, 4, 8};
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if ((a[static_cast<size_t>(r)] >> c) & 1u) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(piv)]);
        std::swap(inv[static_cast<size_t>(c)], inv[static_cast<size_t>(piv)]);
        for (int r = 0; r < 4; ++r)
            if (r != c && ((a[static_cast<size_t>(r)] >> c) & 1u)) {
                a[static_cast<size_t>(r)] ^= a[static_cast<size_t>(c)];
                inv[static_cast<size_t>(r)] ^= inv[static_cast<size_t>(c)];
            }
    }
    return inv;
}

Row4 mul4(const Row4& a, const Row4& b) {
    Row4 out{};
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k)
            if ((a[static_cast<size_t>(r)] >> k) & 1u) out[static_cast<size_t>(r)] ^= b[static_cast<size_t>(k)];
    return out;
}

}  // namespace

std::optional<GateSequence> relate_designations(const Designation& mv1, const Designation& mv2) {
    if (!validate_designation(mv1).ok || !validate_designation(mv2).ok) return std::nullopt;
    // select four independent columns of mv1
    std::array<int, 4> sel{};
    int nsel = 0;
    std::array<uint8_t, 4> basis{};
    for (int c = 0; c < 10 && nsel < 4; ++c) {
        uint8_t col = 0;
        for (int r = 0; r < 4; ++r)
            if (mv1.rows[static_cast<size_t>(r)].get(c + 1)) col = static_cast<uint8_t>(col | (1u << r));
        uint8_t red = col;
        for (int b = 0; b < nsel; ++b) {
            int lead = std::countr_zero(static_cast<unsigned>(basis[static_cast<size_t>(b)]));
            if ((red >> lead) & 1u) red ^= basis[static_cast<size_t>(b)];
        }
        if (red) {
            basis[static_cast<size_t>(nsel)] = red;
            sel[static_cast<size_t>(nsel)] = c;
            ++nsel;
        }
    }
    if (nsel < 4) return std::nullopt;

    auto pick = [&](const Designation& mv) {
        Row4 m{};
        for (int r = 0; r < 4; ++r)
            for (int j = 0; j < 4; ++j)
                if (mv.rows[static_cast<size_t>(r)].get(sel[static_cast<size_t>(j)] + 1))
                    m[static_cast<size_t>(r)] = static_cast<uint8_t>(m[static_cast<size_t>(r)] | (1u << j));
        return m;
    };
    auto m1inv = inv4(pick(mv1));
    if (!m1inv) return std::nullopt;
    Row4 g = mul4(pick(mv2), *m1inv);
    // verify on all ten columns: row r of (g * mv1) vs mv2
    for (int r = 0; r < 4; ++r) {
        uint16_t acc = 0;
        for (int j = 0; j < 4; ++j)
            if ((g[static_cast<size_t>(r)] >> j) & 1u) acc ^= mv1.rows[static_cast<size_t>(j)].bits;
        if (acc != mv2.rows[static_cast<size_t>(r)].bits) return std::nullopt;
    }
    if (!inv4(g)) return std::nullopt;

    // BFS over the measured-pair BXOR transvections (row T-1 ^= row S-1)
    auto pack = [](const Row4& m) {
        return static_cast<uint16_t>(m[0] | (m[1] << 4) | (m[2] << 8) | (m[3] << 12));
    };
    uint16_t start = pack(Row4{1, 2, 4, 8});
    uint16_t goal = pack(g);
    if (start == goal) return GateSequence{};
    std::vector<std::pair<int, int>> gens;
    for (int s = 2; s <= 5; ++s)
        for (int t = 2; t <= 5; ++t)
            if (s != t) gens.emplace_back(s, t);
    std::vector<int32_t> prev(1u << 16, -1);
    std::vector<int8_t> via(1u << 16, -1);
    std::deque<uint16_t> q{start};
    prev[start] = start;
    while (!q.empty() && prev[goal] < 0) {
        uint16_t cur = q.front();
        q.pop_front();
        for (size_t gi = 0; gi < gens.size(); ++gi) {
            auto [s, t] = gens[gi];
            Row4 rows = {static_cast<uint8_t>(cur & 0xf), static_cast<uint8_t>((cur >> 4) & 0xf),
                         static_cast<uint8_t>((cur >> 8) & 0xf), static_cast<uint8_t>((cur >> 12) & 0xf)};
            rows[static_cast<size_t>(t - 2)] ^= rows[static_cast<size_t>(s - 2)];
            uint16_t ns = pack(rows);
            if (prev[ns] < 0) {
                prev[ns] = cur;
                via[ns] = static_cast<int8_t>(gi);
                q.push_back(ns);
            }
        }
    }
    if (prev[goal] < 0) return std::nullopt;
    GateSequence out;
    uint16_t cur = goal;
    while (cur != start) {
        auto [s, t] = gens[static_cast<size_t>(via[cur])];
        out.push_back(Gate::bxor(s, t));
        cur = static_cast<uint16_t>(prev[cur]);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

// --------------------------------------------------------------------------
// Monte Carlo search

std::optional<SolutionRecord> monte_carlo_search(const Designation& mv, uint64_t seed,
                                                 uint64_t max_len) {
    auto val = validate_designation(mv);
    if (!val.ok) throw ValidationError(*val.collision);
    const std::vector<Gate> gates = linear_gate_instances();
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        uint64_t r;
        do {
            r = rng() & 31u;
        } while (r >= 30u);
        return static_cast<size_t>(r);
    };
    Mat10 fwd = Mat10::identity();
    GateSequence draws;
    auto xs = canonical_syndromes();
    for (uint64_t n = 0; n < max_len; ++n) {
        const Gate& g = gates[draw()];
        apply_gate_rows(fwd, g);
        draws.push_back(g);
        // induced designation usable <=> 16 distinct measurement words
        uint16_t seen = 0;
        bool distinct = true;
        for (const BitVec10& x : xs) {
            uint8_t v = 0;
            for (int j = 0; j < 4; ++j) {
                unsigned p =
                    static_cast<unsigned>(fwd.row[static_cast<size_t>(2 * j + 3)] & x.bits);
                p ^= p >> 8; p ^= p >> 4; p ^= p >> 2; p ^= p >> 1;
                v = static_cast<uint8_t>(v | ((p & 1u) << j));
            }
            if ((seen >> v) & 1u) { distinct = false; break; }
            seen = static_cast<uint16_t>(seen | (1u << v));
        }
        if (!distinct) continue;
        SolutionRecord rec;
        for (int j = 0; j < 4; ++j)
            rec.designation.rows[static_cast<size_t>(j)] =
                BitVec10(fwd.row[static_cast<size_t>(2 * j + 3)]);
        rec.m_w = fwd;
        rec.i_x = Mat10::identity();
        rec.sequence.assign(draws.rbegin(), draws.rend());
        rec.path.column_order = kIdentityOrder;
        return rec;
    }
    return std::nullopt;
}

// --------------------------------------------------------------------------
// JSON

namespace {

std::string row_string(uint16_t bits, int n = 10) {
    std::string s(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((bits >> i) & 1u) s[static_cast<size_t>(i)] = '1';
    return s;
}

uint16_t row_bits(const std::string& s, int n = 10) {
    if (static_cast<int>(s.size()) != n) throw std::runtime_error("bad row length");
    uint16_t bits = 0;
    for (int i = 0; i < n; ++i) {
        if (s[static_cast<size_t>(i)] == '1')
            bits = static_cast<uint16_t>(bits | (1u << i));
        else if (s[static_cast<size_t>(i)] != '0')
            throw std::runtime_error("bad row digit");
    }
    return bits;
}

nlohmann::json path_json(const ChoicePath& p) {
    nlohmann::json stages = nlohmann::json::array();
    for (const StageChoice& c : p.stages) {
        nlohmann::json assign = nlohmann::json::object();
        for (auto& [id, v] : c.assign) assign[unknown_name(id)] = v ? 1 : 0;
        stages.push_back({{"pivot", c.pivot}, {"assign", assign}});
    }
    return {{"column_order", p.column_order}, {"stages", stages}};
}

ChoicePath path_from(const nlohmann::json& j) {
    if (j.contains("name")) {
        auto p = named_choice_path(j.at("name").get<std::string>());
        if (!p) throw std::runtime_error("unknown path name: " + j.at("name").get<std::string>());
        return *p;
    }
    ChoicePath p;
    if (j.contains("column_order")) {
        auto v = j.at("column_order").get<std::vector<int>>();
        if (v.size() != 5) throw std::runtime_error("column_order must have five groups");
        std::copy(v.begin(), v.end(), p.column_order.begin());
    }
    if (j.contains("stages")) {
        for (const auto& js : j.at("stages")) {
            StageChoice c;
            c.pivot = js.at("pivot").get<int>();
            if (js.contains("assign"))
                for (auto& [k, v] : js.at("assign").items())
                    c.assign.emplace_back(unknown_id(k), v.get<int>() != 0);
            std::sort(c.assign.begin(), c.assign.end());
            p.stages.push_back(std::move(c));
        }
    }
    return p;
}

}  // namespace

std::string path_to_json(const ChoicePath& path) { return path_json(path).dump(2) + "\n"; }

namespace {
nlohmann::json parse_json(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error_at(text, e.byte, "malformed JSON");
    }
}
}  // namespace

ChoicePath path_from_json(const std::string& text) {
    return path_from(parse_json(text));
}

std::string record_to_json(const SolutionRecord& rec) {
    nlohmann::json j;
    nlohmann::json des = nlohmann::json::array();
    for (const BitVec10& r : rec.designation.rows) des.push_back(row_string(r.bits));
    j["designation"] = des;
    j["path"] = path_json(rec.path);
    nlohmann::json mw = nlohmann::json::array(), ix = nlohmann::json::array();
    for (uint16_t r : rec.m_w.row) mw.push_back(row_string(r));
    for (uint16_t r : rec.i_x.row) ix.push_back(row_string(r));
    j["m_w"] = mw;
    j["i_x"] = ix;
    j["sequence"] = nlohmann::json::parse(sequence_to_json(rec.sequence));
    nlohmann::json counts;
    for (int s = 0; s < 5; ++s)
        counts["stage" + std::to_string(s + 1)] = rec.counts[static_cast<size_t>(s)];
    j["counts"] = counts;
    return j.dump(2) + "\n";
}

SolutionRecord record_from_json(const std::string& text) {
    nlohmann::json j = parse_json(text);
    SolutionRecord rec;
    auto des = j.at("designation").get<std::vector<std::string>>();
    if (des.size() != 4) throw std::runtime_error("designation must have four rows");
    for (int r = 0; r < 4; ++r)
        rec.designation.rows[static_cast<size_t>(r)] = BitVec10(row_bits(des[static_cast<size_t>(r)]));
    rec.path = path_from(j.at("path"));
    auto mw = j.at("m_w").get<std::vector<std::string>>();
    auto ix = j.at("i_x").get<std::vector<std::string>>();
    if (mw.size() != 10 || ix.size() != 10) throw std::runtime_error("matrix must have ten rows");
    for (int r = 0; r < 10; ++r) {
        rec.m_w.row[static_cast<size_t>(r)] = row_bits(mw[static_cast<size_t>(r)]);
        rec.i_x.row[static_cast<size_t>(r)] = row_bits(ix[static_cast<size_t>(r)]);
    }
    rec.sequence = sequence_from_json(j.at("sequence").dump());
    if (j.contains("counts"))
        for (int s = 0; s < 5; ++s) {
            std::string key = "stage" + std::to_string(s + 1);
            if (j.at("counts").contains(key)) rec.counts[static_cast<size_t>(s)] = j.at("counts").at(key).get<int>();
        }
    return rec;
}

}  // namespace epc
