#include "spider/invariants.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <thread>

#include "spider/errors.hpp"

namespace spider {

namespace {

// flat position indexing across components
struct CodeIndex {
    const Diagram& d;
    std::vector<int> comp_start;     // flat index of each component's position 0
    std::vector<const Passage*> at;  // flat -> passage
    std::vector<int> comp_of;        // flat -> component
    std::vector<int> partner;        // flat -> flat (other passage of crossing)
    int total = 0;

    explicit CodeIndex(const Diagram& diagram) : d(diagram) {
        const auto& comps = d.components();
        comp_start.resize(comps.size());
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            comp_start[ci] = total;
            total += static_cast<int>(comps[ci].size());
        }
        at.resize(total);
        comp_of.resize(total);
        partner.assign(total, -1);
        std::vector<int> first(d.crossing_count() + 1, -1);
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
            for (std::size_t pi = 0; pi < comps[ci].size(); ++pi) {
                int flat = comp_start[ci] + static_cast<int>(pi);
                at[flat] = &comps[ci][pi];
                comp_of[flat] = static_cast<int>(ci);
                int& f = first[comps[ci][pi].crossing];
                if (f < 0) {
                    f = flat;
                } else {
                    partner[f] = flat;
                    partner[flat] = f;
                }
            }
        }
    }

    int next(int flat) const {
        int ci = comp_of[flat];
        int len = static_cast<int>(d.components()[ci].size());
        int local = flat - comp_start[ci];
        return comp_start[ci] + (local + 1) % len;
    }
};

} // namespace

std::pair<Web, LaurentPoly>
resolve_state(const Diagram& d, const State& s, const RuleSet& rules) {
    int n = d.crossing_count();
    if (static_cast<int>(s.size()) != n)
        throw DomainError("state covers " + std::to_string(s.size()) +
                          " crossings, diagram has " + std::to_string(n));
    CodeIndex idx(d);

    // vertex ids for webbed crossings, in crossing order
    std::vector<int> vertex_of(n + 1, -1);
    int webbed_count = 0;
    for (int c = 1; c <= n; ++c)
        if (s[c - 1]) vertex_of[c] = webbed_count++;

    Web w;
    w.sources = webbed_count;
    w.sinks = webbed_count;
    // internal edges
    for (int c = 1; c <= n; ++c)
        if (s[c - 1]) w.edges.push_back({vertex_of[c], vertex_of[c]});

    auto webbed_at = [&](int flat) { return s[idx.at[flat]->crossing - 1]; };

    // strand edges: walk forward from each webbed out-port until the next
    // webbed in-port; oriented crossings pass the walk through to the
    // partner passage's out-port
    std::vector<char> departed(idx.total, 0);
    for (int p = 0; p < idx.total; ++p) {
        if (!webbed_at(p)) continue;
        departed[p] = 1;
        int q = idx.next(p);
        while (!webbed_at(q)) {
            int out = idx.partner[q];
            departed[out] = 1;
            q = idx.next(out);
        }
        w.edges.push_back({vertex_of[idx.at[p]->crossing], vertex_of[idx.at[q]->crossing]});
    }
    // closed oriented cycles
    for (int p = 0; p < idx.total; ++p) {
        if (departed[p] || webbed_at(p)) continue;
        int cur = p;
        do {
            departed[cur] = 1;
            cur = idx.partner[idx.next(cur)];
        } while (cur != p);
        ++w.circles;
    }
    // components with no passages are bare circles
    for (const auto& comp : d.components())
        if (comp.empty()) ++w.circles;

    std::sort(w.edges.begin(), w.edges.end());

    std::vector<int> sign_of(n + 1, 0);
    for (const auto& comp : d.components())
        for (const auto& pass : comp) sign_of[pass.crossing] = pass.sign;
    LaurentPoly coeff = LaurentPoly::one();
    for (int c = 1; c <= n; ++c) coeff *= rules.crossing_coeff(sign_of[c], s[c - 1]);
    return {std::move(w), std::move(coeff)};
}

Web kus(const Diagram& d) {
    State all_webbed(d.crossing_count(), true);
    return resolve_state(d, all_webbed, RuleSet::standard()).first;
}

namespace {

void check_limit(const Diagram& d, int limit) {
    if (d.crossing_count() > limit)
        throw LimitError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings, over the expansion limit " + std::to_string(limit),
                         limit);
}

} // namespace

WebCombination expand(const Diagram& d, Reducer& reducer, const ExpandOptions& opts,
                      ExpandStats* stats) {
    check_limit(d, opts.crossing_limit);
    int n = d.crossing_count();
    std::uint64_t total = 1ull << n;

    int threads = opts.threads > 0 ? opts.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (static_cast<std::uint64_t>(threads) > total) threads = static_cast<int>(total);

    std::atomic<std::uint64_t> state_count{0};
    std::vector<WebCombination> partial(threads);
    auto worker = [&](int t) {
        std::uint64_t begin = total * t / threads;
        std::uint64_t end = total * (t + 1) / threads;
        WebCombination acc;
        State s(n);
        for (std::uint64_t mask = begin; mask < end; ++mask) {
            for (int c = 0; c < n; ++c) s[c] = (mask >> c) & 1;
            auto [web, coeff] = resolve_state(d, s, reducer.rules());
            acc += reducer.normal_form(web).scaled(coeff);
            ++state_count;
        }
        partial[t] = std::move(acc);
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    WebCombination result;
    for (auto& p : partial) result += p;
    if (stats) stats->states = state_count.load();
    return result;
}

WebCombination normalized_bracket(const Diagram& d, Reducer& reducer,
                                  const ExpandOptions& opts) {
    WebCombination raw = expand(d, reducer, opts);
    return raw.scaled(LaurentPoly::monomial(1, -8 * d.writhe()));
}

MinimalityCertificate minimality_certificate(const Diagram& d) {
    if (d.components().size() != 1)
        throw DomainError("minimality certificate needs a single-component diagram");
    MinimalityCertificate cert;
    cert.crossing_count = d.crossing_count();
    Web w = kus(d);
    cert.kus_vertex_count = w.vertex_count();
    cert.kus = canonical_form(w);
    if (d.crossing_count() == 0) {
        // vacuous: nothing to minimize
        cert.verdict = MinimalityCertificate::Verdict::Minimal;
        return cert;
    }
    std::vector<ReductionSite> sites = find_sites(w);
    if (sites.empty()) {
        cert.verdict = MinimalityCertificate::Verdict::Minimal;
        return cert;
    }
    cert.verdict = MinimalityCertificate::Verdict::Inconclusive;
    cert.witness = sites.front();
    const ReductionSite& site = *cert.witness;
    switch (site.kind) {
        case ReductionSite::Kind::Circle:
            cert.witness_text = "circle";
            break;
        case ReductionSite::Kind::Bigon: {
            // source/sink indices of the unoriented state are crossing order
            const WebEdge& e = w.edges[site.bigon_edges[0]];
            cert.witness_text = "bigon: parallel edges from source(crossing " +
                                std::to_string(e.tail + 1) + ") to sink(crossing " +
                                std::to_string(e.head + 1) + ")";
            break;
        }
        case ReductionSite::Kind::Square:
            cert.witness_text = "square on crossings (" +
                                std::to_string(site.square_vertices[0] + 1) + "," +
                                std::to_string(site.square_vertices[1] + 1) + "," +
                                std::to_string(site.square_vertices[2] + 1) + "," +
                                std::to_string(site.square_vertices[3] + 1) + ")";
            break;
    }
    return cert;
}

DistinguishReport distinguish(const Diagram& d1, const Diagram& d2, Reducer& reducer,
                              const ExpandOptions& opts) {
    DistinguishReport rep;
    rep.bracket1 = normalized_bracket(d1, reducer, opts);
    rep.bracket2 = normalized_bracket(d2, reducer, opts);
    rep.equal = rep.bracket1 == rep.bracket2;
    if (!rep.equal) {
        // first differing key in canonical order
        auto it1 = rep.bracket1.terms().begin();
        auto it2 = rep.bracket2.terms().begin();
        while (true) {
            if (it1 == rep.bracket1.terms().end()) {
                rep.first_difference = {it2->first, LaurentPoly(), it2->second};
                break;
            }
            if (it2 == rep.bracket2.terms().end()) {
                rep.first_difference = {it1->first, it1->second, LaurentPoly()};
                break;
            }
            if (it1->first < it2->first) {
                rep.first_difference = {it1->first, it1->second, LaurentPoly()};
                break;
            }
            if (it2->first < it1->first) {
                rep.first_difference = {it2->first, LaurentPoly(), it2->second};
                break;
            }
            if (it1->second != it2->second) {
                rep.first_difference = {it1->first, it1->second, it2->second};
                break;
            }
            ++it1;
            ++it2;
        }
    }
    return rep;
}

LaurentPoly kauffman_f(const Diagram& d, int crossing_limit) {
    if (d.components().size() != 1)
        throw DomainError("kauffman_f needs a single-component diagram");
    check_limit(d, crossing_limit);
    int n = d.crossing_count();
    CodeIndex idx(d);
    auto table = d.crossing_table();

    // ports: 2 per position, in = 2p, out = 2p+1
    int ports = 2 * idx.total;
    std::vector<int> uf(ports);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](int a, int b) { uf[find(a)] = find(b); };

    const LaurentPoly delta = LaurentPoly::parse("-a^2 - a^-2");
    LaurentPoly bracket;
    std::uint64_t total = 1ull << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::iota(uf.begin(), uf.end(), 0);
        // arcs out(p) ~ in(next(p))
        for (int p = 0; p < idx.total; ++p) unite(2 * p + 1, 2 * idx.next(p));
        int exponent = 0;
        for (int c = 1; c <= n; ++c) {
            const auto& cr = table[c - 1];
            int over = idx.comp_start[cr.over.comp] + cr.over.pos;
            int under = idx.comp_start[cr.under.comp] + cr.under.pos;
            bool crossed = (mask >> (c - 1)) & 1;
            if (crossed) {
                // disoriented smoothing: in~in, out~out
                unite(2 * over, 2 * under);
                unite(2 * over + 1, 2 * under + 1);
                exponent -= cr.sign;
            } else {
                // oriented smoothing: over-in ~ under-out, under-in ~ over-out
                unite(2 * over, 2 * under + 1);
                unite(2 * under, 2 * over + 1);
                exponent += cr.sign;
            }
        }
        int loops = 0;
        for (int p = 0; p < ports; ++p)
            if (find(p) == p) ++loops;
        if (idx.total == 0) loops = 1; // bare unknot component
        bracket += delta.pow(loops - 1).shifted(exponent);
    }
    // (-a^3)^(-w)
    int w = d.writhe();
    LaurentPoly norm = LaurentPoly::monomial(w % 2 == 0 ? 1 : -1, -3 * w);
    return bracket * norm;
}

bool leading_term_check(const Diagram& d, const Diagram& d2, Reducer& reducer,
                        const ExpandOptions& opts) {
    CanonicalWeb key = canonical_form(kus(d));
    LaurentPoly c1 = normalized_bracket(d, reducer, opts).coefficient(key);
    if (c1.is_zero()) return false;
    LaurentPoly c2 = normalized_bracket(d2, reducer, opts).coefficient(key);
    return c1 == c2;
}

} // namespace spider
