#include "epc/optimize.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <vector>

namespace epc {

ObjectiveValue sequence_cost(const GateSequence& seq) {
    ObjectiveValue v;
    v.total_ops = static_cast<int>(seq.size());
    for (const Gate& g : seq)
        if (g.kind == GateKind::BXOR) ++v.bxor_ops;
    return v;
}

namespace {

std::pair<int, int> cost_key(const ObjectiveValue& v, Objective obj) {
    if (obj == Objective::bxor_then_total) return {v.bxor_ops, v.total_ops};
    return {v.total_ops, v.bxor_ops};
}

}  // namespace

bool cost_better(const ObjectiveValue& a, const ObjectiveValue& b, Objective objective) {
    return cost_key(a, objective) < cost_key(b, objective);
}

DepthExceededError::DepthExceededError(int depth)
    : std::runtime_error("no reduction within " + std::to_string(depth) + " gates"),
      max_depth(depth) {}

OptimizationResult permute_and_reduce(const SolutionRecord& rec, Objective objective) {
    std::vector<EliminationJob> jobs = rec.jobs;
    if (jobs.empty() && !rec.path.stages.empty())
        jobs = synthesize(rec.designation, rec.path).jobs;
    if (jobs.empty()) {
        OptimizationResult r;
        r.best = rec.sequence;
        r.best_i_x = rec.i_x;
        r.objective_value = sequence_cost(rec.sequence);
        r.explored = 1;
        r.certified = false;
        return r;
    }

    std::vector<size_t> idx(jobs.size());
    std::iota(idx.begin(), idx.end(), 0);
    OptimizationResult best;
    bool have = false;
    uint64_t explored = 0;
    do {
        ++explored;
        Mat10 m = rec.m_w;
        GateSequence seq;
        bool ok = true;
        for (size_t i : idx) {
            const EliminationJob& job = jobs[i];
            Block2 pb = block_at(m, job.pivot, job.group);
            Block2 tb = block_at(m, job.target, job.group);
            if (!det2(pb) || det2(tb)) {
                ok = false;
                break;
            }
            if (tb.bits == 0) continue;
            for (const Gate& g : eliminate_block(pb, tb, job.pivot, job.target)) {
                apply_gate_rows(m, g);
                seq.push_back(g);
            }
        }
        if (!ok || !is_ix_form(m)) continue;
        ObjectiveValue v = sequence_cost(seq);
        if (!have || cost_better(v, best.objective_value, objective) ||
            (v == best.objective_value && seq < best.best)) {
            best.best = std::move(seq);
            best.best_i_x = m;
            best.objective_value = v;
            have = true;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (!have) throw std::logic_error("no feasible elimination order");
    best.explored = explored;
    best.certified = true;
    return best;
}

// --------------------------------------------------------------------------
// Exhaustive minimal-sequence search.
//
// By and SxBx act as row operations inside a single pair, so the per-pair
// GL(2) row action is free as far as the BXOR count goes.  Working modulo
// that action (canonical form: each pair's rows replaced by the two smallest
// nonzero vectors of their span), BXOR moves become edges of a quotient graph
// whose distance to the 120 block-permutation cosets equals the minimum BXOR
// count of any reduction.  Bidirectional breadth-first search certifies that
// minimum.  The fill-minimal realization is then found by a layered dynamic
// program over actual matrices using compound moves (a per-pair adjustment
// followed by one BXOR, costed by the adjustment's gate word length), with
// each layer pruned to the corridor of cosets consistent with the BXOR
// budget.  Budgets are tried in increasing order, so the result minimizes
// the BXOR count first and the gate total second.

namespace {

// ---- per-pair GL(2) elements, encoded by their action on an ordered row
// pair: variant v maps (r1, r2) to a pair drawn from {r1, r2, r1^r2}
void local_variant(uint16_t r1, uint16_t r2, int variant, uint16_t& o1, uint16_t& o2) {
    uint16_t c = r1 ^ r2;
    switch (variant) {
        case 0: o1 = r1; o2 = r2; break;
        case 1: o1 = r2; o2 = r1; break;
        case 2: o1 = r1; o2 = c; break;
        case 3: o1 = c; o2 = r1; break;
        case 4: o1 = r2; o2 = c; break;
        default: o1 = c; o2 = r2; break;
    }
}

// slot codes per variant: 1 = r1, 2 = r2, 3 = r1^r2
constexpr int kSlot1[6] = {1, 2, 1, 3, 2, 3};
constexpr int kSlot2[6] = {2, 1, 3, 1, 3, 2};
// minimum word length in {By, SxBx} realizing each variant as row ops
constexpr int kFillLen[6] = {0, 1, 1, 2, 2, 3};

int variant_from_slots(int s1, int s2) {
    for (int v = 0; v < 6; ++v)
        if (kSlot1[v] == s1 && kSlot2[v] == s2) return v;
    return -1;
}

// compose: apply b first, then a
int compose_variant(int a, int b) {
    int x = kSlot1[b], y = kSlot2[b];
    auto pick = [&](int s) { return s == 1 ? x : (s == 2 ? y : (x ^ y)); };
    return variant_from_slots(pick(kSlot1[a]), pick(kSlot2[a]));
}

int invert_variant(int v) {
    for (int w = 0; w < 6; ++w)
        if (compose_variant(v, w) == 0) return w;
    return -1;
}

// gate word realizing a variant as row ops on one pair
void append_fill_word(GateSequence& seq, int variant, int pair) {
    switch (variant) {
        case 0: break;
        case 1: seq.push_back(Gate::by(pair)); break;
        case 2: seq.push_back(Gate::sxbx(pair)); break;
        case 3:
            seq.push_back(Gate::sxbx(pair));
            seq.push_back(Gate::by(pair));
            break;
        case 4:
            seq.push_back(Gate::by(pair));
            seq.push_back(Gate::sxbx(pair));
            break;
        default:
            seq.push_back(Gate::by(pair));
            seq.push_back(Gate::sxbx(pair));
            seq.push_back(Gate::by(pair));
            break;
    }
}

Mat10 pair_canon(const Mat10& m) {
    Mat10 out = m;
    for (int p = 0; p < 5; ++p) {
        uint16_t a = m.row[static_cast<size_t>(2 * p)];
        uint16_t b = m.row[static_cast<size_t>(2 * p + 1)];
        uint16_t c = a ^ b;
        if (a == 0 || b == 0 || a == b) continue;  // degenerate; leave as-is
        uint16_t lo = std::min({a, b, c});
        uint16_t hi = (a == lo) ? std::min(b, c) : (b == lo ? std::min(a, c) : std::min(a, b));
        out.row[static_cast<size_t>(2 * p)] = lo;
        out.row[static_cast<size_t>(2 * p + 1)] = hi;
    }
    return out;
}

// variant per pair taking the canonical rows to the matrix's actual rows
std::array<int, 5> twist_of(const Mat10& m, const Mat10& canon) {
    std::array<int, 5> tw{};
    for (int p = 0; p < 5; ++p) {
        uint16_t c1 = canon.row[static_cast<size_t>(2 * p)];
        uint16_t c2 = canon.row[static_cast<size_t>(2 * p + 1)];
        uint16_t m1 = m.row[static_cast<size_t>(2 * p)];
        uint16_t m2 = m.row[static_cast<size_t>(2 * p + 1)];
        tw[static_cast<size_t>(p)] = 0;
        for (int v = 0; v < 6; ++v) {
            uint16_t o1, o2;
            local_variant(c1, c2, v, o1, o2);
            if (o1 == m1 && o2 == m2) {
                tw[static_cast<size_t>(p)] = v;
                break;
            }
        }
    }
    return tw;
}

// child coset under a compound move: variants applied to pairs s,t of the
// canonical representative, then the BXOR row action
Mat10 coset_child(const Mat10& x, int s, int t, int hs, int ht) {
    Mat10 m = x;
    local_variant(x.row[static_cast<size_t>(2 * s - 2)], x.row[static_cast<size_t>(2 * s - 1)],
                  hs, m.row[static_cast<size_t>(2 * s - 2)], m.row[static_cast<size_t>(2 * s - 1)]);
    local_variant(x.row[static_cast<size_t>(2 * t - 2)], x.row[static_cast<size_t>(2 * t - 1)],
                  ht, m.row[static_cast<size_t>(2 * t - 2)], m.row[static_cast<size_t>(2 * t - 1)]);
    m.row[static_cast<size_t>(2 * s - 2)] ^= m.row[static_cast<size_t>(2 * t - 2)];
    m.row[static_cast<size_t>(2 * t - 1)] ^= m.row[static_cast<size_t>(2 * s - 1)];
    return pair_canon(m);
}

template <typename Fn>
void quotient_edges(const Mat10& x, Fn&& fn) {
    for (int s = 1; s <= 5; ++s)
        for (int t = 1; t <= 5; ++t) {
            if (s == t) continue;
            for (int hs = 0; hs < 6; ++hs)
                for (int ht = 0; ht < 6; ++ht) fn(coset_child(x, s, t, hs, ht));
        }
}

// ---- compact exact-membership set for one large BFS layer
struct PackedKey {
    uint64_t a, b;
    bool operator==(const PackedKey& o) const { return a == o.a && b == o.b; }
};

PackedKey pack_key(const Mat10& m) {
    uint64_t a = 0, b = 0;
    for (int i = 0; i < 5; ++i) a |= static_cast<uint64_t>(m.row[static_cast<size_t>(i)]) << (10 * i);
    for (int i = 5; i < 10; ++i) b |= static_cast<uint64_t>(m.row[static_cast<size_t>(i)]) << (10 * (i - 5));
    return {a, b};
}

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct FlatSet {
    std::vector<PackedKey> slot;
    uint64_t mask = 0;
    size_t count = 0;
    bool saturated = false;

    void init(size_t want) {
        size_t cap = 1024;
        while (cap < want) cap <<= 1;
        slot.assign(cap, PackedKey{~0ull, ~0ull});
        mask = cap - 1;
        count = 0;
    }
    bool insert(const PackedKey& k) {
        if (count + (count >> 2) >= slot.size()) {  // load factor 0.8
            saturated = true;
            return false;
        }
        size_t i = (mix64(k.a) ^ mix64(k.b * 0x6a09e667f3bcc909ull)) & mask;
        while (true) {
            PackedKey& s = slot[i];
            if (s.a == ~0ull && s.b == ~0ull) {
                s = k;
                ++count;
                return true;
            }
            if (s == k) return false;
            i = (i + 1) & mask;
        }
    }
    bool contains(const PackedKey& k) const {
        if (slot.empty()) return false;
        size_t i = (mix64(k.a) ^ mix64(k.b * 0x6a09e667f3bcc909ull)) & mask;
        while (true) {
            const PackedKey& s = slot[i];
            if (s.a == ~0ull && s.b == ~0ull) return false;
            if (s == k) return true;
            i = (i + 1) & mask;
        }
    }
};

using DistMap = std::unordered_map<Mat10, uint8_t, Mat10Hash>;

constexpr size_t kMapLayerLimit = 2'500'000;   // projected inserts before switching to flat
constexpr size_t kFlatByteLimit = 1'600'000'000;  // hard cap for one flat layer
constexpr int kBranchEstimate = 60;

struct Side {
    DistMap dist;                 // exact distances, complete through radius r
    std::vector<Mat10> frontier;  // states at radius r
    FlatSet flat;                 // exact layer at radius r+1, built at most once
    bool has_flat = false;
    bool stuck = false;
    int r = 0;

    int reach() const { return r + (has_flat ? 1 : 0); }
    bool growable() const { return !stuck && !frontier.empty(); }

    // -1 = unknown (distance exceeds reach)
    int lookup(const Mat10& x) const {
        auto it = dist.find(x);
        if (it != dist.end()) return it->second;
        if (has_flat && flat.contains(pack_key(x))) return r + 1;
        return -1;
    }
};

struct Quotient {
    Side fwd, bwd;
    int best_meet = -1;
    uint64_t expanded = 0;

    explicit Quotient(const Mat10& start) {
        Mat10 s = pair_canon(start);
        fwd.dist.emplace(s, 0);
        fwd.frontier.push_back(s);
        std::array<int, 5> perm{1, 2, 3, 4, 5};
        do {
            Mat10 m;
            for (int p = 0; p < 5; ++p) {
                int g = perm[static_cast<size_t>(p)] - 1;
                m.row[static_cast<size_t>(2 * p)] = static_cast<uint16_t>(1u << (2 * g));
                m.row[static_cast<size_t>(2 * p + 1)] = static_cast<uint16_t>(1u << (2 * g + 1));
            }
            Mat10 cm = pair_canon(m);
            if (bwd.dist.emplace(cm, 0).second) {
                bwd.frontier.push_back(cm);
                if (cm == s) best_meet = 0;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    void note_meet(int sum) {
        if (best_meet < 0 || sum < best_meet) best_meet = sum;
    }

    void grow(Side& mine, Side& other) {
        size_t projected = mine.frontier.size() * kBranchEstimate;
        int depth = mine.r + 1;
        if (projected <= kMapLayerLimit) {
            std::vector<Mat10> next;
            for (const Mat10& x : mine.frontier) {
                ++expanded;
                quotient_edges(x, [&](const Mat10& y) {
                    if (!mine.dist.try_emplace(y, static_cast<uint8_t>(depth)).second) return;
                    next.push_back(y);
                    int d = other.lookup(y);
                    if (d >= 0) note_meet(depth + d);
                });
            }
            mine.frontier = std::move(next);
            mine.r = depth;
            if (mine.frontier.empty()) mine.stuck = true;
            return;
        }
        // large layer: build once as a flat exact-membership set, then stop
        size_t want = projected + (projected >> 1);
        if (want * sizeof(PackedKey) > kFlatByteLimit) {
            mine.stuck = true;
            return;
        }
        mine.flat.init(want);
        for (const Mat10& x : mine.frontier) {
            ++expanded;
            quotient_edges(x, [&](const Mat10& y) {
                if (mine.dist.count(y)) return;
                if (mine.flat.insert(pack_key(y))) {
                    int d = other.lookup(y);
                    if (d >= 0) note_meet(depth + d);
                }
            });
            if (mine.flat.saturated) break;
        }
        if (mine.flat.saturated) {
            mine.flat = FlatSet{};  // incomplete layer is unusable as an exact set
        } else {
            mine.has_flat = true;
        }
        mine.stuck = true;
    }

    bool grow_once() {
        bool fok = fwd.growable(), bok = bwd.growable();
        if (!fok && !bok) return false;
        // backward layers do most of the corridor pruning; bias toward them
        bool pick_fwd = fok && (!bok || fwd.frontier.size() <= bwd.frontier.size() / 3);
        grow(pick_fwd ? fwd : bwd, pick_fwd ? bwd : fwd);
        return true;
    }

    // certified minimum BXOR count, or -1 if provably > bound / unreachable
    int min_bxor(int bound) {
        while (true) {
            if (best_meet >= 0 && fwd.reach() + bwd.reach() >= best_meet) return best_meet;
            if (fwd.reach() + bwd.reach() >= bound) return -1;  // any missed meet exceeds bound
            if (!grow_once()) break;
        }
        // a layer hit the memory cap before certification: unexplored shells
        // could hide a shorter meet, so an uncertified value must not be used
        if ((fwd.stuck && !fwd.frontier.empty()) || (bwd.stuck && !bwd.frontier.empty()))
            throw std::runtime_error("search capacity exceeded");
        return best_meet;  // both searches closed their components: exact
    }
};

struct DpEdge {
    uint8_t s, t, hs, ht;  // variants relative to the canonical representative
};

struct DpEntry {
    uint16_t total;
    PackedKey prev;
    DpEdge via;
};

struct PackedKeyHash {
    size_t operator()(const PackedKey& k) const {
        return static_cast<size_t>(mix64(k.a) ^ mix64(k.b * 0x6a09e667f3bcc909ull));
    }
};

Mat10 unpack_key(const PackedKey& k) {
    Mat10 m;
    for (int i = 0; i < 5; ++i)
        m.row[static_cast<size_t>(i)] = static_cast<uint16_t>((k.a >> (10 * i)) & 0x3ff);
    for (int i = 5; i < 10; ++i)
        m.row[static_cast<size_t>(i)] = static_cast<uint16_t>((k.b >> (10 * (i - 5))) & 0x3ff);
    return m;
}

bool key_less(const PackedKey& x, const PackedKey& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
}

// Layered dynamic program over actual matrices: layer k holds every matrix
// reachable with exactly k BXORs whose coset stays inside the corridor
// consistent with the BXOR budget, keeping the cheapest gate total per matrix
// (future cost depends only on the matrix).  Each layer is processed grouped
// by coset, so the corridor test runs once per coset without storing edge
// lists.  Returns the cheapest realization at exactly b_budget BXORs, if any.
std::optional<OptimizationResult> dp_search(const Mat10& start, int b_budget, int b_star,
                                            int max_depth, Quotient& q, uint64_t& expanded) {
    const int slack = b_budget - b_star;
    const int fill_allowance = max_depth - b_budget;
    using Layer = std::unordered_map<PackedKey, DpEntry, PackedKeyHash>;
    std::vector<Layer> layers(static_cast<size_t>(b_budget) + 1);
    layers[0].emplace(pack_key(start), DpEntry{0, {~0ull, ~0ull}, {0, 0, 0, 0}});

    std::vector<std::pair<PackedKey, PackedKey>> order;  // (coset key, state key)
    std::vector<DpEdge> edges;
    for (int k = 0; k < b_budget; ++k) {
        Layer& cur = layers[static_cast<size_t>(k)];
        Layer& nxt = layers[static_cast<size_t>(k) + 1];
        if (cur.empty()) return std::nullopt;
        const int kc = k + 1;
        const int need = b_budget - kc;

        order.clear();
        order.reserve(cur.size());
        for (const auto& [pk, ent] : cur)
            order.emplace_back(pack_key(pair_canon(unpack_key(pk))), pk);
        std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
            return key_less(x.first, y.first) ||
                   (x.first == y.first && key_less(x.second, y.second));
        });

        bool have_canon = false;
        PackedKey canon_key{};
        Mat10 canon{};
        for (const auto& [ck, pk] : order) {
            if (!have_canon || !(ck == canon_key)) {
                have_canon = true;
                canon_key = ck;
                canon = unpack_key(ck);
                edges.clear();
                for (int s = 1; s <= 5; ++s)
                    for (int t = 1; t <= 5; ++t) {
                        if (s == t) continue;
                        for (int hs = 0; hs < 6; ++hs)
                            for (int ht = 0; ht < 6; ++ht) {
                                Mat10 y = coset_child(canon, s, t, hs, ht);
                                int df = q.fwd.lookup(y);
                                if (df >= 0 && df < kc - slack) continue;
                                int db = q.bwd.lookup(y);
                                if (db >= 0) {
                                    if (db > need) continue;
                                } else if (need <= q.bwd.reach()) {
                                    continue;  // backward layers are complete: state is too far
                                }
                                edges.push_back({static_cast<uint8_t>(s), static_cast<uint8_t>(t),
                                                 static_cast<uint8_t>(hs),
                                                 static_cast<uint8_t>(ht)});
                            }
                    }
            }
            ++expanded;
            const DpEntry& ent = cur.find(pk)->second;
            Mat10 m = unpack_key(pk);
            std::array<int, 5> tw = twist_of(m, canon);
            for (const DpEdge& e : edges) {
                int vs = compose_variant(e.hs, invert_variant(tw[static_cast<size_t>(e.s) - 1]));
                int vt = compose_variant(e.ht, invert_variant(tw[static_cast<size_t>(e.t) - 1]));
                int total = ent.total + kFillLen[vs] + kFillLen[vt] + 1;
                if (total > max_depth) continue;
                if (total - kc > fill_allowance) continue;  // remaining BXORs each cost >= 1
                Mat10 nm = m;
                local_variant(m.row[static_cast<size_t>(2 * e.s - 2)],
                              m.row[static_cast<size_t>(2 * e.s - 1)], vs,
                              nm.row[static_cast<size_t>(2 * e.s - 2)],
                              nm.row[static_cast<size_t>(2 * e.s - 1)]);
                local_variant(m.row[static_cast<size_t>(2 * e.t - 2)],
                              m.row[static_cast<size_t>(2 * e.t - 1)], vt,
                              nm.row[static_cast<size_t>(2 * e.t - 2)],
                              nm.row[static_cast<size_t>(2 * e.t - 1)]);
                nm.row[static_cast<size_t>(2 * e.s - 2)] ^= nm.row[static_cast<size_t>(2 * e.t - 2)];
                nm.row[static_cast<size_t>(2 * e.t - 1)] ^= nm.row[static_cast<size_t>(2 * e.s - 1)];
                DpEntry cand{static_cast<uint16_t>(total), pk, e};
                auto [slot, fresh] = nxt.try_emplace(pack_key(nm), cand);
                if (!fresh && slot->second.total > cand.total) slot->second = cand;
            }
            if (nxt.size() > 25'000'000) throw std::runtime_error("search capacity exceeded");
        }
    }

    const Layer& last = layers[static_cast<size_t>(b_budget)];
    const DpEntry* best = nullptr;
    PackedKey best_key{};
    for (const auto& [pk, ent] : last) {
        if (!is_ix_form(unpack_key(pk))) continue;
        if (!best || ent.total < best->total ||
            (ent.total == best->total && key_less(pk, best_key))) {
            best = &ent;
            best_key = pk;
        }
    }
    if (!best) return std::nullopt;

    std::vector<DpEdge> moves;
    PackedKey at = best_key;
    for (int k = b_budget; k > 0; --k) {
        const DpEntry& ent = layers[static_cast<size_t>(k)].at(at);
        moves.push_back(ent.via);
        at = ent.prev;
    }
    std::reverse(moves.begin(), moves.end());

    OptimizationResult res;
    GateSequence seq;
    Mat10 m = start;
    for (const DpEdge& e : moves) {
        Mat10 canon = pair_canon(m);
        std::array<int, 5> tw = twist_of(m, canon);
        int vs = compose_variant(e.hs, invert_variant(tw[static_cast<size_t>(e.s) - 1]));
        int vt = compose_variant(e.ht, invert_variant(tw[static_cast<size_t>(e.t) - 1]));
        append_fill_word(seq, vs, e.s);
        append_fill_word(seq, vt, e.t);
        seq.push_back(Gate::bxor(e.s, e.t));
        Mat10 nm = m;
        local_variant(m.row[static_cast<size_t>(2 * e.s - 2)],
                      m.row[static_cast<size_t>(2 * e.s - 1)], vs,
                      nm.row[static_cast<size_t>(2 * e.s - 2)],
                      nm.row[static_cast<size_t>(2 * e.s - 1)]);
        local_variant(m.row[static_cast<size_t>(2 * e.t - 2)],
                      m.row[static_cast<size_t>(2 * e.t - 1)], vt,
                      nm.row[static_cast<size_t>(2 * e.t - 2)],
                      nm.row[static_cast<size_t>(2 * e.t - 1)]);
        nm.row[static_cast<size_t>(2 * e.s - 2)] ^= nm.row[static_cast<size_t>(2 * e.t - 2)];
        nm.row[static_cast<size_t>(2 * e.t - 1)] ^= nm.row[static_cast<size_t>(2 * e.s - 1)];
        m = nm;
    }
    if (!is_ix_form(m)) throw std::logic_error("internal: reconstructed sequence is not reduced");
    res.best = std::move(seq);
    res.best_i_x = m;
    res.objective_value = sequence_cost(res.best);
    res.certified = true;
    return res;
}

OptimizationResult bxor_first_search(const Mat10& m_w, int max_depth) {
    Quotient q(m_w);
    int b_star = q.min_bxor(max_depth);
    if (b_star < 0) throw DepthExceededError(max_depth);
    uint64_t expanded = 0;
    for (int b_budget = b_star; b_budget <= max_depth; ++b_budget) {
        auto res = dp_search(m_w, b_budget, b_star, max_depth, q, expanded);
        if (res) {
            res->explored = q.expanded + expanded;
            return *res;
        }
    }
    throw DepthExceededError(max_depth);
}

struct PathNode {
    Mat10 m;
    uint32_t parent;
    int8_t gate;
    uint8_t bxor;
    uint16_t total;
};

// plain cheapest-first over single gates (used for the total_ops objective)
OptimizationResult uniform_search(const Mat10& m_w, Objective objective, int max_depth) {
    const std::vector<Gate> gates = linear_gate_instances();
    std::vector<PathNode> nodes;
    nodes.push_back({m_w, 0, -1, 0, 0});
    std::unordered_map<Mat10, uint32_t, Mat10Hash> best;  // state -> packed best cost
    auto packed = [&](const PathNode& n) {
        auto [k1, k2] = cost_key({n.bxor, n.total}, objective);
        return static_cast<uint32_t>((k1 << 16) | k2);
    };
    best.emplace(m_w, packed(nodes[0]));

    using Entry = std::tuple<uint32_t, uint64_t, uint32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    uint64_t tick = 0;
    pq.emplace(packed(nodes[0]), tick++, 0);
    uint64_t expanded = 0;

    while (!pq.empty()) {
        auto [cost, order, ni] = pq.top();
        pq.pop();
        PathNode cur = nodes[static_cast<size_t>(ni)];
        auto it = best.find(cur.m);
        if (it == best.end() || it->second != cost) continue;  // stale entry
        if (is_ix_form(cur.m)) {
            OptimizationResult res;
            res.best_i_x = cur.m;
            res.objective_value = {cur.bxor, cur.total};
            res.explored = expanded + 1;
            res.certified = true;
            GateSequence seq;
            for (uint32_t at = ni; nodes[static_cast<size_t>(at)].gate >= 0;
                 at = nodes[static_cast<size_t>(at)].parent)
                seq.push_back(gates[static_cast<size_t>(nodes[static_cast<size_t>(at)].gate)]);
            std::reverse(seq.begin(), seq.end());
            res.best = std::move(seq);
            return res;
        }
        ++expanded;
        if (cur.total >= max_depth) continue;
        for (size_t gi = 0; gi < gates.size(); ++gi) {
            PathNode next;
            next.m = cur.m;
            apply_gate_rows(next.m, gates[gi]);
            next.parent = ni;
            next.gate = static_cast<int8_t>(gi);
            next.bxor = static_cast<uint8_t>(cur.bxor + (gates[gi].kind == GateKind::BXOR));
            next.total = static_cast<uint16_t>(cur.total + 1);
            uint32_t c = packed(next);
            auto [slot, fresh] = best.try_emplace(next.m, c);
            if (!fresh && slot->second <= c) continue;
            slot->second = c;
            nodes.push_back(next);
            if (nodes.size() > 60'000'000) throw std::runtime_error("search capacity exceeded");
            pq.emplace(c, tick++, static_cast<uint32_t>(nodes.size() - 1));
        }
    }
    throw DepthExceededError(max_depth);
}

}  // namespace

OptimizationResult minimal_sequence(const Mat10& m_w, Objective objective, int max_depth) {
    if (max_depth < 0) throw std::invalid_argument("max_depth must be non-negative");
    if (!is_invertible(m_w)) throw std::invalid_argument("matrix is singular");

    if (is_ix_form(m_w)) {
        OptimizationResult res;
        res.best_i_x = m_w;
        res.explored = 1;
        res.certified = true;
        return res;
    }
    if (objective == Objective::bxor_then_total) return bxor_first_search(m_w, max_depth);
    return uniform_search(m_w, objective, max_depth);
}

}  // namespace epc
