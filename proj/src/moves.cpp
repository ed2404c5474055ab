#include "spider/moves.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "spider/errors.hpp"

namespace spider {

std::string MoveSpec::to_string() const {
    switch (kind) {
        case Kind::R1Add:
            return "R1+ comp " + std::to_string(comp1) + " pos " + std::to_string(pos1) +
                   " sign " + (sign > 0 ? std::string("+") : std::string("-")) +
                   (over_first ? " OU" : " UO");
        case Kind::R1Remove:
            return "R1- crossing " + std::to_string(crossing_a);
        case Kind::R2Add:
            return "R2+ over (" + std::to_string(comp1) + "," + std::to_string(pos1) +
                   ") under (" + std::to_string(comp2) + "," + std::to_string(pos2) +
                   ") sign " + (sign > 0 ? "+" : "-");
        case Kind::R2Remove:
            return "R2- crossings (" + std::to_string(crossing_a) + "," +
                   std::to_string(crossing_b) + ")";
        case Kind::R3:
            return "R3 segments (" + std::to_string(r3_comp[0]) + "," +
                   std::to_string(r3_pos[0]) + ")(" + std::to_string(r3_comp[1]) + "," +
                   std::to_string(r3_pos[1]) + ")(" + std::to_string(r3_comp[2]) + "," +
                   std::to_string(r3_pos[2]) + ")";
    }
    return "?";
}

namespace {

using Code = std::vector<std::vector<Passage>>;

int next_pos(const Code& code, int ci, int pi) {
    return (pi + 1) % static_cast<int>(code[ci].size());
}

Diagram apply_r1_add(const Diagram& d, const MoveSpec& m) {
    Code code = d.components();
    if (m.comp1 < 0 || m.comp1 >= static_cast<int>(code.size()))
        throw DomainError("R1+ component out of range");
    auto& comp = code[m.comp1];
    if (m.pos1 < 0 || m.pos1 > static_cast<int>(comp.size()))
        throw DomainError("R1+ position out of range");
    if (m.sign != 1 && m.sign != -1) throw DomainError("R1+ sign must be +1 or -1");
    int id = d.crossing_count() + 1;
    Passage first{id, m.over_first ? Role::Over : Role::Under, m.sign};
    Passage second{id, m.over_first ? Role::Under : Role::Over, m.sign};
    comp.insert(comp.begin() + m.pos1, {first, second});
    return Diagram::from_components(std::move(code));
}

Diagram apply_r1_remove(const Diagram& d, const MoveSpec& m) {
    Code code = d.components();
    for (int ci = 0; ci < static_cast<int>(code.size()); ++ci) {
        auto& comp = code[ci];
        int len = static_cast<int>(comp.size());
        for (int pi = 0; pi < len; ++pi) {
            int qi = next_pos(code, ci, pi);
            if (pi == qi) continue;
            if (comp[pi].crossing != m.crossing_a || comp[qi].crossing != m.crossing_a)
                continue;
            // erase the larger index first
            comp.erase(comp.begin() + std::max(pi, qi));
            comp.erase(comp.begin() + std::min(pi, qi));
            return Diagram::from_components(std::move(code));
        }
    }
    throw DomainError("R1- passages of crossing " + std::to_string(m.crossing_a) +
                      " are not adjacent on one component");
}

Diagram apply_r2_add(const Diagram& d, const MoveSpec& m) {
    Code code = d.components();
    auto in_range = [&](int ci, int pi) {
        return ci >= 0 && ci < static_cast<int>(code.size()) && pi >= 0 &&
               pi <= static_cast<int>(code[ci].size());
    };
    if (!in_range(m.comp1, m.pos1) || !in_range(m.comp2, m.pos2))
        throw DomainError("R2+ site out of range");
    if (m.sign != 1 && m.sign != -1) throw DomainError("R2+ sign must be +1 or -1");
    int a = d.crossing_count() + 1;
    int b = d.crossing_count() + 2;
    std::vector<Passage> overs{{a, Role::Over, m.sign}, {b, Role::Over, -m.sign}};
    std::vector<Passage> unders{{b, Role::Under, -m.sign}, {a, Role::Under, m.sign}};
    // insert at the later site first so the earlier index stays valid
    if (m.comp1 == m.comp2 && m.pos1 <= m.pos2) {
        code[m.comp2].insert(code[m.comp2].begin() + m.pos2, unders.begin(), unders.end());
        code[m.comp1].insert(code[m.comp1].begin() + m.pos1, overs.begin(), overs.end());
    } else {
        code[m.comp1].insert(code[m.comp1].begin() + m.pos1, overs.begin(), overs.end());
        code[m.comp2].insert(code[m.comp2].begin() + m.pos2, unders.begin(), unders.end());
    }
    return Diagram::from_components(std::move(code));
}

// positions of the four passages of an R2- site, or nullopt
struct R2Site {
    int over_comp, over_pos; // position of O a (followed by O b)
    int under_comp, under_pos; // position of U b (followed by U a)
};

std::vector<R2Site> r2_sites(const Code& code, int a, int b) {
    std::vector<R2Site> found;
    std::vector<std::pair<int, int>> over_starts, under_starts;
    for (int ci = 0; ci < static_cast<int>(code.size()); ++ci) {
        const auto& comp = code[ci];
        int len = static_cast<int>(comp.size());
        for (int pi = 0; pi < len; ++pi) {
            int qi = (pi + 1) % len;
            if (qi == pi) continue;
            const Passage& p = comp[pi];
            const Passage& q = comp[qi];
            if (p.crossing == a && q.crossing == b && p.role == Role::Over &&
                q.role == Role::Over)
                over_starts.push_back({ci, pi});
            if (p.crossing == b && q.crossing == a && p.role == Role::Under &&
                q.role == Role::Under)
                under_starts.push_back({ci, pi});
        }
    }
    for (auto [oc, op] : over_starts)
        for (auto [uc, up] : under_starts) {
            // all four positions distinct
            int len_o = static_cast<int>(code[oc].size());
            std::pair<int, int> pos[4] = {{oc, op},
                                          {oc, (op + 1) % len_o},
                                          {uc, up},
                                          {uc, (up + 1) % static_cast<int>(code[uc].size())}};
            bool distinct = true;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (pos[i] == pos[j]) distinct = false;
            if (distinct) found.push_back({oc, op, uc, up});
        }
    return found;
}

Diagram apply_r2_remove(const Diagram& d, const MoveSpec& m) {
    const Code& code = d.components();
    int a = m.crossing_a, b = m.crossing_b;
    int sign_a = 0, sign_b = 0;
    for (const auto& comp : code)
        for (const auto& p : comp) {
            if (p.crossing == a) sign_a = p.sign;
            if (p.crossing == b) sign_b = p.sign;
        }
    if (sign_a == 0 || sign_b == 0)
        throw DomainError("R2- names unknown crossings");
    if (sign_a != -sign_b)
        throw DomainError("R2- crossings must carry opposite signs");
    auto sites = r2_sites(code, a, b);
    if (sites.empty())
        throw DomainError("R2- pattern [Oa Ob]/[Ub Ua] not present for crossings (" +
                          std::to_string(a) + "," + std::to_string(b) + ")");
    const R2Site& site = sites.front();
    Code out = code;
    std::vector<std::pair<int, int>> to_erase = {
        {site.over_comp, site.over_pos},
        {site.over_comp, (site.over_pos + 1) % static_cast<int>(code[site.over_comp].size())},
        {site.under_comp, site.under_pos},
        {site.under_comp,
         (site.under_pos + 1) % static_cast<int>(code[site.under_comp].size())}};
    std::sort(to_erase.begin(), to_erase.end(),
              [](const auto& x, const auto& y) { return x > y; });
    for (auto [ci, pi] : to_erase) out[ci].erase(out[ci].begin() + pi);
    return Diagram::from_components(std::move(out));
}

// ---------------------------------------------------------------------------
// R3
//
// A site is three strand segments, each holding two adjacent passages of
// different crossings, jointly covering three crossings twice each, with
// one segment over at both its crossings, one under at both, one mixed.
// Labeling the crossings r = top/mixed, q = top/bottom, p = mixed/bottom,
// the segment orders (o = +1 when p or q comes first, see below) and the
// crossing signs of a planar triangle always satisfy
//
//   s_p * o_M * o_B == s_q * o_T * o_B == s_r * o_T * o_M
//
// with the common value +1 for one triangle chirality and -1 for its
// mirror; both are genuine moves. Applying the move swaps the two passages
// of each segment (each strand now meets its crossings in opposite order).

struct R3Segment {
    int comp, pos; // segment = positions (pos, pos+1)
    int c_first, c_second;
    Role role_first, role_second;
};

bool load_segment(const Code& code, int ci, int pi, R3Segment& seg) {
    if (ci < 0 || ci >= static_cast<int>(code.size())) return false;
    const auto& comp = code[ci];
    int len = static_cast<int>(comp.size());
    if (len < 2 || pi < 0 || pi >= len) return false;
    int qi = (pi + 1) % len;
    seg.comp = ci;
    seg.pos = pi;
    seg.c_first = comp[pi].crossing;
    seg.c_second = comp[qi].crossing;
    seg.role_first = comp[pi].role;
    seg.role_second = comp[qi].role;
    return seg.c_first != seg.c_second;
}

bool r3_site_check(const Code& code, const std::array<int, 3>& comps,
                   const std::array<int, 3>& poss, std::string* why,
                   std::array<R3Segment, 3>* segs_out) {
    std::array<R3Segment, 3> segs;
    for (int i = 0; i < 3; ++i) {
        if (!load_segment(code, comps[i], poss[i], segs[i])) {
            if (why) *why = "segment does not hold two passages of distinct crossings";
            return false;
        }
    }
    // six distinct positions
    std::vector<std::pair<int, int>> positions;
    for (const auto& s : segs) {
        int len = static_cast<int>(code[s.comp].size());
        positions.push_back({s.comp, s.pos});
        positions.push_back({s.comp, (s.pos + 1) % len});
    }
    std::sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end()) {
        if (why) *why = "segments overlap";
        return false;
    }
    // three crossings, each on exactly two segments
    std::map<int, int> count;
    for (const auto& s : segs) {
        ++count[s.c_first];
        ++count[s.c_second];
    }
    if (count.size() != 3 ||
        !std::all_of(count.begin(), count.end(), [](auto& kv) { return kv.second == 2; })) {
        if (why) *why = "segments do not cover three crossings twice each";
        return false;
    }
    // role pattern: one all-over (T), one all-under (B), one mixed (M)
    int t = -1, b = -1, mid = -1;
    for (int i = 0; i < 3; ++i) {
        if (segs[i].role_first == Role::Over && segs[i].role_second == Role::Over)
            t = i;
        else if (segs[i].role_first == Role::Under && segs[i].role_second == Role::Under)
            b = i;
        else
            mid = i;
    }
    if (t < 0 || b < 0 || mid < 0) {
        if (why) *why = "segments lack the over/over, under/under, mixed pattern";
        return false;
    }
    auto shared = [&](int i, int j) {
        if (segs[i].c_first == segs[j].c_first || segs[i].c_first == segs[j].c_second)
            return segs[i].c_first;
        return segs[i].c_second;
    };
    int r = shared(t, mid), q = shared(t, b), p = shared(mid, b);
    // segment orders
    int o_t = segs[t].c_first == q ? 1 : -1;
    int o_m = segs[mid].c_first == p ? 1 : -1;
    int o_b = segs[b].c_first == p ? 1 : -1;
    auto sign_of = [&](int crossing) {
        for (const auto& comp : code)
            for (const auto& pass : comp)
                if (pass.crossing == crossing) return pass.sign;
        return 0;
    };
    int s_p = sign_of(p), s_q = sign_of(q), s_r = sign_of(r);
    int v1 = s_p * o_m * o_b, v2 = s_q * o_t * o_b, v3 = s_r * o_t * o_m;
    if (v1 != v2 || v2 != v3) {
        if (why) *why = "crossing signs do not match a planar triangle for these orders";
        return false;
    }
    if (segs_out) *segs_out = segs;
    return true;
}

Diagram apply_r3(const Diagram& d, const MoveSpec& m) {
    Code code = d.components();
    std::string why;
    std::array<R3Segment, 3> segs;
    if (!r3_site_check(code, m.r3_comp, m.r3_pos, &why, &segs))
        throw DomainError("R3 inapplicable: " + why);
    for (const auto& s : segs) {
        int len = static_cast<int>(code[s.comp].size());
        std::swap(code[s.comp][s.pos], code[s.comp][(s.pos + 1) % len]);
    }
    return Diagram::from_components(std::move(code));
}

} // namespace

Diagram apply_move(const Diagram& d, const MoveSpec& m) {
    switch (m.kind) {
        case MoveSpec::Kind::R1Add: return apply_r1_add(d, m);
        case MoveSpec::Kind::R1Remove: return apply_r1_remove(d, m);
        case MoveSpec::Kind::R2Add: return apply_r2_add(d, m);
        case MoveSpec::Kind::R2Remove: return apply_r2_remove(d, m);
        case MoveSpec::Kind::R3: return apply_r3(d, m);
    }
    throw DomainError("unknown move kind");
}

std::vector<MoveSpec> enumerate_r1_removals(const Diagram& d) {
    std::vector<MoveSpec> out;
    const Code& code = d.components();
    for (int ci = 0; ci < static_cast<int>(code.size()); ++ci) {
        const auto& comp = code[ci];
        int len = static_cast<int>(comp.size());
        for (int pi = 0; pi < len; ++pi) {
            int qi = (pi + 1) % len;
            if (qi == pi) continue;
            if (comp[pi].crossing == comp[qi].crossing) {
                MoveSpec m;
                m.kind = MoveSpec::Kind::R1Remove;
                m.crossing_a = comp[pi].crossing;
                out.push_back(m);
            }
        }
    }
    // a 2-passage component yields the same site twice
    std::sort(out.begin(), out.end(),
              [](const MoveSpec& x, const MoveSpec& y) { return x.crossing_a < y.crossing_a; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const MoveSpec& x, const MoveSpec& y) {
                              return x.crossing_a == y.crossing_a;
                          }),
              out.end());
    return out;
}

std::vector<MoveSpec> enumerate_r2_removals(const Diagram& d) {
    std::vector<MoveSpec> out;
    const Code& code = d.components();
    std::vector<int> sign(d.crossing_count() + 1, 0);
    for (const auto& comp : code)
        for (const auto& p : comp) sign[p.crossing] = p.sign;
    for (int a = 1; a <= d.crossing_count(); ++a)
        for (int b = 1; b <= d.crossing_count(); ++b) {
            if (a == b || sign[a] != -sign[b]) continue;
            if (!r2_sites(code, a, b).empty()) {
                MoveSpec m;
                m.kind = MoveSpec::Kind::R2Remove;
                m.crossing_a = a;
                m.crossing_b = b;
                out.push_back(m);
            }
        }
    return out;
}

std::vector<MoveSpec> enumerate_r3_moves(const Diagram& d) {
    std::vector<MoveSpec> out;
    const Code& code = d.components();
    std::vector<std::pair<int, int>> segments;
    for (int ci = 0; ci < static_cast<int>(code.size()); ++ci) {
        int len = static_cast<int>(code[ci].size());
        for (int pi = 0; pi < len; ++pi) {
            R3Segment seg;
            if (load_segment(code, ci, pi, seg)) segments.push_back({ci, pi});
        }
    }
    for (std::size_t i = 0; i < segments.size(); ++i)
        for (std::size_t j = i + 1; j < segments.size(); ++j)
            for (std::size_t k = j + 1; k < segments.size(); ++k) {
                std::array<int, 3> comps{segments[i].first, segments[j].first,
                                         segments[k].first};
                std::array<int, 3> poss{segments[i].second, segments[j].second,
                                        segments[k].second};
                if (r3_site_check(code, comps, poss, nullptr, nullptr)) {
                    MoveSpec m;
                    m.kind = MoveSpec::Kind::R3;
                    m.r3_comp = comps;
                    m.r3_pos = poss;
                    out.push_back(m);
                }
            }
    return out;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

MoveSpec random_r1_add(const Diagram& d, std::mt19937_64& rng) {
    MoveSpec m;
    m.kind = MoveSpec::Kind::R1Add;
    m.comp1 = static_cast<int>(bounded(rng, d.components().size()));
    m.pos1 = static_cast<int>(bounded(rng, d.components()[m.comp1].size() + 1));
    m.sign = bounded(rng, 2) ? 1 : -1;
    m.over_first = bounded(rng, 2) != 0;
    return m;
}

MoveSpec random_r2_add(const Diagram& d, std::mt19937_64& rng) {
    MoveSpec m;
    m.kind = MoveSpec::Kind::R2Add;
    m.comp1 = static_cast<int>(bounded(rng, d.components().size()));
    m.pos1 = static_cast<int>(bounded(rng, d.components()[m.comp1].size() + 1));
    m.comp2 = static_cast<int>(bounded(rng, d.components().size()));
    m.pos2 = static_cast<int>(bounded(rng, d.components()[m.comp2].size() + 1));
    m.sign = bounded(rng, 2) ? 1 : -1;
    return m;
}

} // namespace

Diagram random_equivalent(const Diagram& d, int count, std::uint64_t seed,
                          const WalkOptions& opts, std::vector<MoveSpec>* trace) {
    std::mt19937_64 rng(seed);
    Diagram cur = d;
    for (int step = 0; step < count; ++step) {
        bool can_insert1 = cur.crossing_count() + 1 <= opts.max_crossings;
        bool can_insert2 = cur.crossing_count() + 2 <= opts.max_crossings;
        std::vector<MoveSpec> removals1 = enumerate_r1_removals(cur);
        std::vector<MoveSpec> removals2 = enumerate_r2_removals(cur);
        std::vector<MoveSpec> r3s = enumerate_r3_moves(cur);

        std::vector<int> kinds; // 0 R1+, 1 R2+, 2 R1-, 3 R2-, 4 R3
        if (can_insert1) kinds.push_back(0);
        if (can_insert2) kinds.push_back(1);
        if (!removals1.empty()) kinds.push_back(2);
        if (!removals2.empty()) kinds.push_back(3);
        if (!r3s.empty()) kinds.push_back(4);
        if (kinds.empty()) kinds = {0, 1}; // over the soft cap, nothing else applies

        MoveSpec m;
        switch (kinds[bounded(rng, kinds.size())]) {
            case 0: m = random_r1_add(cur, rng); break;
            case 1: m = random_r2_add(cur, rng); break;
            case 2: m = removals1[bounded(rng, removals1.size())]; break;
            case 3: m = removals2[bounded(rng, removals2.size())]; break;
            case 4: m = r3s[bounded(rng, r3s.size())]; break;
        }
        cur = apply_move(cur, m);
        if (trace) trace->push_back(m);
    }
    return cur;
}

} // namespace spider
