#include "spider/spider.hpp"

#include <algorithm>
#include <mutex>

#include "spider/errors.hpp"

namespace spider {

WebCombination WebCombination::identity() {
    return term(CanonicalWeb{}, LaurentPoly::one());
}

WebCombination WebCombination::term(CanonicalWeb key, LaurentPoly coeff) {
    WebCombination c;
    if (!coeff.is_zero()) c.terms_.emplace(std::move(key), std::move(coeff));
    return c;
}

LaurentPoly WebCombination::coefficient(const CanonicalWeb& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? LaurentPoly() : it->second;
}

WebCombination& WebCombination::operator+=(const WebCombination& o) {
    for (const auto& [key, coeff] : o.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

WebCombination WebCombination::operator+(const WebCombination& o) const {
    WebCombination r = *this;
    r += o;
    return r;
}

WebCombination WebCombination::scaled(const LaurentPoly& p) const {
    WebCombination r;
    if (p.is_zero()) return r;
    for (const auto& [key, coeff] : terms_) r.terms_.emplace(key, coeff * p);
    return r;
}

WebCombination WebCombination::operator*(const WebCombination& o) const {
    WebCombination r;
    for (const auto& [k1, c1] : terms_) {
        for (const auto& [k2, c2] : o.terms_) {
            CanonicalWeb key;
            key.circles = 0;
            key.components.reserve(k1.components.size() + k2.components.size());
            std::merge(k1.components.begin(), k1.components.end(), k2.components.begin(),
                       k2.components.end(), std::back_inserter(key.components));
            r += term(std::move(key), c1 * c2);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

std::pair<Web, LaurentPoly> smooth_circle(const Web& w, const RuleSet& rules) {
    if (w.circles < 1) throw DomainError("no circle to smooth");
    Web out = w;
    --out.circles;
    return {std::move(out), rules.delta};
}

std::pair<Web, LaurentPoly>
reduce_bigon(const Web& w, const ReductionSite& site, const RuleSet& rules) {
    if (site.kind != ReductionSite::Kind::Bigon) throw DomainError("site is not a bigon");
    auto [e1, e2] = site.bigon_edges;
    if (e1 < 0 || e2 < 0 || e1 >= static_cast<int>(w.edges.size()) ||
        e2 >= static_cast<int>(w.edges.size()) || e1 == e2)
        throw DomainError("bigon site references invalid edges");
    if (w.edges[e1].tail != w.edges[e2].tail || w.edges[e1].head != w.edges[e2].head)
        throw DomainError("bigon site edges are not parallel");
    int u = w.edges[e1].tail; // source
    int v = w.edges[e1].head; // sink
    // third edges: u's remaining out-edge and v's remaining in-edge
    int u_third = -1, v_third = -1;
    for (int e = 0; e < static_cast<int>(w.edges.size()); ++e) {
        if (e == e1 || e == e2) continue;
        if (w.edges[e].tail == u) u_third = e;
        if (w.edges[e].head == v) v_third = e;
    }
    if (u_third < 0 || v_third < 0) throw DomainError("bigon endpoints lack a third edge");
    // the strand entering v continues out of u; if both third edges are the
    // same edge (theta), the splice closes into a circle
    Web out = surgery(w, {u}, {v}, {e1, e2}, {{v_third, u_third}});
    return {std::move(out), rules.bigon};
}

std::pair<Web, Web> resolve_square(const Web& w, const ReductionSite& site) {
    if (site.kind != ReductionSite::Kind::Square) throw DomainError("site is not a square");
    auto [s1, t1, s2, t2] = site.square_vertices;
    auto [a, b, c, d] = site.square_edges; // s1->t1, s2->t1, s2->t2, s1->t2
    if (s1 == s2 || t1 == t2) throw DomainError("square site vertices are not distinct");
    auto edge_ok = [&](int e, int tail, int head) {
        return e >= 0 && e < static_cast<int>(w.edges.size()) && w.edges[e].tail == tail &&
               w.edges[e].head == head;
    };
    if (!edge_ok(a, s1, t1) || !edge_ok(b, s2, t1) || !edge_ok(c, s2, t2) ||
        !edge_ok(d, s1, t2))
        throw DomainError("square site edges do not form the 4-cycle");
    int ids[4] = {a, b, c, d};
    std::sort(ids, ids + 4);
    if (std::unique(ids, ids + 4) != ids + 4)
        throw DomainError("square site edges are not distinct");
    // external edges, one per corner
    int s1_out = -1, s2_out = -1, t1_in = -1, t2_in = -1;
    for (int e = 0; e < static_cast<int>(w.edges.size()); ++e) {
        if (e == a || e == b || e == c || e == d) continue;
        if (w.edges[e].tail == s1) s1_out = e;
        if (w.edges[e].tail == s2) s2_out = e;
        if (w.edges[e].head == t1) t1_in = e;
        if (w.edges[e].head == t2) t2_in = e;
    }
    if (s1_out < 0 || s2_out < 0 || t1_in < 0 || t2_in < 0)
        throw DomainError("square corner lacks an external edge");
    std::vector<int> rm_src{s1, s2}, rm_snk{t1, t2}, del{a, b, c, d};
    Web first = surgery(w, rm_src, rm_snk, del, {{t1_in, s1_out}, {t2_in, s2_out}});
    Web second = surgery(w, rm_src, rm_snk, del, {{t1_in, s2_out}, {t2_in, s1_out}});
    return {std::move(first), std::move(second)};
}

// ---------------------------------------------------------------------------

Reducer::Reducer(RuleSet rules, bool check) : rules_(std::move(rules)) {
    if (check) rules_.check_consistency();
}

std::size_t Reducer::memo_size() const {
    std::shared_lock lock(memo_mutex_);
    return memo_.size();
}

WebCombination Reducer::normal_form(const Web& w) {
    WebCombination result = WebCombination::identity();
    for (const Web& comp : split_components(w)) {
        if (comp.vertex_count() == 0) continue;
        CanonicalWeb cw = canonical_form(comp);
        const std::string& key = cw.components.front();
        bool hit = false;
        WebCombination nf;
        {
            std::shared_lock lock(memo_mutex_);
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                nf = it->second;
                hit = true;
            }
        }
        if (!hit) {
            nf = component_normal_form(comp, key);
            std::unique_lock lock(memo_mutex_);
            memo_.insert_or_assign(key, nf); // deterministic value, races benign
        }
        result = result * nf;
    }
    if (w.circles > 0) result = result.scaled(rules_.delta.pow(w.circles));
    return result;
}

WebCombination Reducer::component_normal_form(const Web& comp, const std::string& key) {
    std::vector<ReductionSite> sites = find_sites(comp);
    if (sites.empty()) {
        CanonicalWeb cw;
        cw.components.push_back(key);
        return WebCombination::term(std::move(cw), LaurentPoly::one());
    }
    const ReductionSite& site = sites.front(); // circles > bigons > squares
    switch (site.kind) {
        case ReductionSite::Kind::Circle: {
            auto [rest, factor] = smooth_circle(comp, rules_);
            return normal_form(rest).scaled(factor);
        }
        case ReductionSite::Kind::Bigon: {
            auto [rest, factor] = reduce_bigon(comp, site, rules_);
            return normal_form(rest).scaled(factor);
        }
        case ReductionSite::Kind::Square: {
            auto [first, second] = resolve_square(comp, site);
            return normal_form(first) + normal_form(second);
        }
    }
    throw DomainError("unreachable site kind");
}

WebCombination Reducer::normal_form_random(const Web& w, std::mt19937_64& rng) {
    std::vector<ReductionSite> sites = find_sites(w);
    if (sites.empty()) {
        // no circles (they are sites), every component irreducible
        return WebCombination::term(canonical_form(w), LaurentPoly::one());
    }
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % sites.size();
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    const ReductionSite& site = sites[x % sites.size()];
    switch (site.kind) {
        case ReductionSite::Kind::Circle: {
            auto [rest, factor] = smooth_circle(w, rules_);
            return normal_form_random(rest, rng).scaled(factor);
        }
        case ReductionSite::Kind::Bigon: {
            auto [rest, factor] = reduce_bigon(w, site, rules_);
            return normal_form_random(rest, rng).scaled(factor);
        }
        case ReductionSite::Kind::Square: {
            auto [first, second] = resolve_square(w, site);
            return normal_form_random(first, rng) + normal_form_random(second, rng);
        }
    }
    throw DomainError("unreachable site kind");
}

WebCombination Reducer::mul_web(const WebCombination& c, const Web& w) {
    return c * normal_form(w);
}

} // namespace spider
