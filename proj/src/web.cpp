#include "spider/web.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <unordered_map>

#include "spider/errors.hpp"

namespace spider {

Web Web::validate(int sources, int sinks, std::vector<WebEdge> edges, int circles) {
    if (sources < 0 || sinks < 0 || circles < 0)
        throw ValidationError("negative vertex or circle count");
    std::vector<int> out_deg(sources, 0), in_deg(sinks, 0);
    for (const auto& e : edges) {
        if (e.tail < 0 || e.tail >= sources)
            throw ValidationError("edge tail " + std::to_string(e.tail) +
                                  " is not a source vertex");
        if (e.head < 0 || e.head >= sinks)
            throw ValidationError("edge head " + std::to_string(e.head) +
                                  " is not a sink vertex");
        ++out_deg[e.tail];
        ++in_deg[e.head];
    }
    for (int i = 0; i < sources; ++i)
        if (out_deg[i] != 3)
            throw ValidationError("source " + std::to_string(i) + " has out-degree " +
                                  std::to_string(out_deg[i]) + ", expected 3");
    for (int j = 0; j < sinks; ++j)
        if (in_deg[j] != 3)
            throw ValidationError("sink " + std::to_string(j) + " has in-degree " +
                                  std::to_string(in_deg[j]) + ", expected 3");
    Web w;
    w.sources = sources;
    w.sinks = sinks;
    w.edges = std::move(edges);
    w.circles = circles;
    std::sort(w.edges.begin(), w.edges.end());
    return w;
}

std::string Web::raw_key() const {
    std::string key = std::to_string(sources) + "/" + std::to_string(sinks) + "/" +
                      std::to_string(circles) + ":";
    std::vector<WebEdge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& e : sorted) {
        key += std::to_string(e.tail);
        key += ">";
        key += std::to_string(e.head);
        key += ";";
    }
    return key;
}

std::string CanonicalWeb::to_string() const {
    std::string out = "circles:" + std::to_string(circles);
    if (!components.empty()) {
        out += "; ";
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (i) out += "|";
            out += components[i];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// connected components

std::vector<Web> split_components(const Web& w) {
    int n = w.vertex_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : w.edges) parent[find(e.tail)] = find(w.sources + e.head);

    std::map<int, int> comp_index;
    for (int v = 0; v < n; ++v) {
        int r = find(v);
        comp_index.emplace(r, static_cast<int>(comp_index.size()));
    }
    std::vector<Web> comps(comp_index.size());
    std::vector<std::map<int, int>> src_local(comps.size()), snk_local(comps.size());
    for (int i = 0; i < w.sources; ++i) {
        int c = comp_index[find(i)];
        src_local[c].emplace(i, comps[c].sources++);
    }
    for (int j = 0; j < w.sinks; ++j) {
        int c = comp_index[find(w.sources + j)];
        snk_local[c].emplace(j, comps[c].sinks++);
    }
    for (const auto& e : w.edges) {
        int c = comp_index[find(e.tail)];
        comps[c].edges.push_back({src_local[c][e.tail], snk_local[c][e.head]});
    }
    return comps;
}

// ---------------------------------------------------------------------------
// canonical form: partition refinement with backtracking over the residual
// symmetry, taking the lexicographically least encoding

namespace {

struct ComponentCanon {
    const Web& w; // connected, circles ignored
    int n;        // sources + sinks
    // adjacency with multiplicities, by combined vertex index
    // (sources 0..S-1, sinks S..S+T-1)
    std::vector<std::vector<std::pair<int, int>>> adj; // (neighbor, multiplicity)
    std::string best;

    explicit ComponentCanon(const Web& web) : w(web), n(web.vertex_count()), adj(n) {
        std::map<std::pair<int, int>, int> mult;
        for (const auto& e : w.edges) ++mult[{e.tail, w.sources + e.head}];
        for (const auto& [key, m] : mult) {
            adj[key.first].push_back({key.second, m});
            adj[key.second].push_back({key.first, m});
        }
    }

    // stable (equitable) refinement; colors are renumbered 0..k-1 keeping
    // the previous relative order as primary key, so the result is always a
    // refinement of the input and iteration reaches a fixed point
    void refine(std::vector<int>& color) const {
        while (true) {
            std::vector<std::pair<std::vector<int>, int>> sorted(n);
            for (int v = 0; v < n; ++v) {
                std::vector<int> s;
                s.push_back(color[v]);
                std::vector<std::pair<int, int>> nb;
                nb.reserve(adj[v].size());
                for (auto [u, m] : adj[v]) nb.push_back({color[u], m});
                std::sort(nb.begin(), nb.end());
                for (auto [c, m] : nb) {
                    s.push_back(c);
                    s.push_back(m);
                }
                sorted[v] = {std::move(s), v};
            }
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> next(n);
            int classes = 0;
            for (int i = 0; i < n; ++i) {
                if (i > 0 && sorted[i].first != sorted[i - 1].first) ++classes;
                next[sorted[i].second] = classes;
            }
            if (next == color) break;
            color = std::move(next);
        }
    }

    bool discrete(const std::vector<int>& color) const {
        std::vector<char> seen(n, 0);
        for (int c : color) {
            if (seen[c]) return false;
            seen[c] = 1;
        }
        return true;
    }

    std::string encode(const std::vector<int>& color) const {
        // vertex with color rank r gets canonical index r within its role
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b]; });
        std::vector<int> canon(n, -1);
        int s_next = 0, t_next = 0;
        for (int v : order) {
            if (v < w.sources)
                canon[v] = s_next++;
            else
                canon[v] = t_next++;
        }
        std::vector<std::pair<int, int>> edges;
        edges.reserve(w.edges.size());
        for (const auto& e : w.edges) edges.push_back({canon[e.tail], canon[w.sources + e.head]});
        std::sort(edges.begin(), edges.end());
        std::string out = "s" + std::to_string(w.sources) + ",t" + std::to_string(w.sinks) + ";";
        for (auto [a, b] : edges)
            out += "(" + std::to_string(a) + "->" + std::to_string(b) + ")";
        return out;
    }

    void search(std::vector<int> color) {
        refine(color);
        if (discrete(color)) {
            std::string enc = encode(color);
            if (best.empty() || enc < best) best = std::move(enc);
            return;
        }
        // first non-singleton cell in color order
        int max_color = *std::max_element(color.begin(), color.end());
        std::vector<std::vector<int>> cells(max_color + 1);
        for (int v = 0; v < n; ++v) cells[color[v]].push_back(v);
        for (const auto& cell : cells) {
            if (cell.size() < 2) continue;
            for (int v : cell) {
                std::vector<int> branched = color;
                branched[v] = max_color + 1;
                search(std::move(branched));
            }
            return;
        }
    }

    std::string run() {
        std::vector<int> color(n);
        for (int v = 0; v < n; ++v) color[v] = v < w.sources ? 0 : 1;
        if (n == 0) return "s0,t0;";
        search(std::move(color));
        return best;
    }
};

} // namespace

namespace {

// process-wide memo from raw component keys to canonical strings; values
// are deterministic so overlapping inserts are benign
class CanonicalCache {
public:
    bool lookup(const std::string& raw, std::string& out) const {
        std::shared_lock lock(mutex_);
        auto it = map_.find(raw);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const std::string& raw, const std::string& canon) {
        std::unique_lock lock(mutex_);
        map_.insert_or_assign(raw, canon);
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, std::string> map_;
};

CanonicalCache& canonical_cache() {
    static CanonicalCache cache;
    return cache;
}

} // namespace

CanonicalWeb canonical_form(const Web& w) {
    CanonicalWeb cw;
    cw.circles = w.circles;
    for (const Web& comp : split_components(w)) {
        if (comp.vertex_count() == 0) continue;
        std::string raw = comp.raw_key();
        std::string canon;
        if (!canonical_cache().lookup(raw, canon)) {
            canon = ComponentCanon(comp).run();
            canonical_cache().store(raw, canon);
        }
        cw.components.push_back(std::move(canon));
    }
    std::sort(cw.components.begin(), cw.components.end());
    return cw;
}

Web web_from_canonical(const CanonicalWeb& cw) {
    Web w;
    w.circles = cw.circles;
    for (const std::string& comp : cw.components) {
        // "s<S>,t<T>;(a->b)(c->d)..."
        std::size_t i = 0;
        auto read_int = [&](std::size_t& pos) {
            std::size_t start = pos;
            if (pos < comp.size() && comp[pos] == '-') ++pos;
            while (pos < comp.size() && std::isdigit(static_cast<unsigned char>(comp[pos]))) ++pos;
            return std::stoi(comp.substr(start, pos - start));
        };
        if (comp[i] != 's') throw ParseError("expected 's' in web component", i);
        ++i;
        int s = read_int(i);
        if (comp[i] != ',' || comp[i + 1] != 't')
            throw ParseError("expected ',t' in web component", i);
        i += 2;
        int t = read_int(i);
        if (comp[i] != ';') throw ParseError("expected ';' in web component", i);
        ++i;
        int s_base = w.sources, t_base = w.sinks;
        w.sources += s;
        w.sinks += t;
        while (i < comp.size()) {
            if (comp[i] != '(') throw ParseError("expected '(' in web component", i);
            ++i;
            int a = read_int(i);
            if (comp.compare(i, 2, "->") != 0)
                throw ParseError("expected '->' in web component", i);
            i += 2;
            int b = read_int(i);
            if (comp[i] != ')') throw ParseError("expected ')' in web component", i);
            ++i;
            w.edges.push_back({s_base + a, t_base + b});
        }
    }
    return Web::validate(w.sources, w.sinks, w.edges, w.circles);
}

// ---------------------------------------------------------------------------
// reduction sites

std::vector<ReductionSite> find_sites(const Web& w) {
    std::vector<ReductionSite> sites;
    for (int c = 0; c < w.circles; ++c) {
        ReductionSite s;
        s.kind = ReductionSite::Kind::Circle;
        sites.push_back(s);
    }
    // bigons: all pairs of parallel edges, grouped by (tail, head)
    std::map<std::pair<int, int>, std::vector<int>> parallel;
    for (int e = 0; e < static_cast<int>(w.edges.size()); ++e)
        parallel[{w.edges[e].tail, w.edges[e].head}].push_back(e);
    for (const auto& [key, ids] : parallel) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                ReductionSite s;
                s.kind = ReductionSite::Kind::Bigon;
                s.bigon_edges = {ids[i], ids[j]};
                sites.push_back(s);
            }
        }
    }
    // squares: 4-cycles s1 -> t1 <- s2 -> t2 <- s1 on distinct vertices,
    // one site per choice of parallel copies
    for (int s1 = 0; s1 < w.sources; ++s1) {
        for (int s2 = s1 + 1; s2 < w.sources; ++s2) {
            for (int t1 = 0; t1 < w.sinks; ++t1) {
                for (int t2 = t1 + 1; t2 < w.sinks; ++t2) {
                    auto a = parallel.find({s1, t1});
                    auto b = parallel.find({s2, t1});
                    auto c = parallel.find({s2, t2});
                    auto d = parallel.find({s1, t2});
                    if (a == parallel.end() || b == parallel.end() || c == parallel.end() ||
                        d == parallel.end())
                        continue;
                    for (int ea : a->second)
                        for (int eb : b->second)
                            for (int ec : c->second)
                                for (int ed : d->second) {
                                    ReductionSite s;
                                    s.kind = ReductionSite::Kind::Square;
                                    s.square_vertices = {s1, t1, s2, t2};
                                    s.square_edges = {ea, eb, ec, ed};
                                    sites.push_back(s);
                                }
                }
            }
        }
    }
    return sites;
}

bool is_irreducible(const Web& w) { return find_sites(w).empty(); }

// ---------------------------------------------------------------------------
// surgery

Web surgery(const Web& w, const std::vector<int>& removed_sources,
            const std::vector<int>& removed_sinks, const std::vector<int>& deleted_edges,
            const std::vector<Splice>& splices) {
    std::vector<char> src_gone(w.sources, 0), snk_gone(w.sinks, 0);
    for (int s : removed_sources) src_gone[s] = 1;
    for (int t : removed_sinks) snk_gone[t] = 1;
    std::vector<char> edge_gone(w.edges.size(), 0);
    for (int e : deleted_edges) edge_gone[e] = 1;

    std::vector<int> next(w.edges.size(), -1);
    for (const Splice& sp : splices) {
        assert(!edge_gone[sp.in_edge] && !edge_gone[sp.out_edge]);
        assert(snk_gone[w.edges[sp.in_edge].head]);
        assert(src_gone[w.edges[sp.out_edge].tail]);
        next[sp.in_edge] = sp.out_edge;
    }

    // renumber surviving vertices
    std::vector<int> src_map(w.sources, -1), snk_map(w.sinks, -1);
    Web out;
    for (int i = 0; i < w.sources; ++i)
        if (!src_gone[i]) src_map[i] = out.sources++;
    for (int j = 0; j < w.sinks; ++j)
        if (!snk_gone[j]) snk_map[j] = out.sinks++;

    std::vector<char> visited(w.edges.size(), 0);
    // open chains: start at a surviving edge whose tail is alive
    for (int e = 0; e < static_cast<int>(w.edges.size()); ++e) {
        if (edge_gone[e] || src_gone[w.edges[e].tail]) continue;
        int cur = e;
        visited[cur] = 1;
        while (snk_gone[w.edges[cur].head]) {
            cur = next[cur];
            assert(cur >= 0 && "splice chain must continue through a removed sink");
            visited[cur] = 1;
        }
        out.edges.push_back({src_map[w.edges[e].tail], snk_map[w.edges[cur].head]});
    }
    // closed chains become circles
    int circles = w.circles;
    for (int e = 0; e < static_cast<int>(w.edges.size()); ++e) {
        if (edge_gone[e] || visited[e]) continue;
        int cur = e;
        while (!visited[cur]) {
            visited[cur] = 1;
            assert(snk_gone[w.edges[cur].head] && next[cur] >= 0);
            cur = next[cur];
        }
        ++circles;
    }
    out.circles = circles;
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// ---------------------------------------------------------------------------
// subgraph containment

namespace {

struct SubgraphSearch {
    // multiplicity matrices host and pattern: [source][sink] -> count
    std::vector<std::vector<int>> hm, pm;
    int hs, ht, ps, pt;
    std::vector<int> src_img, snk_img; // pattern -> host
    std::vector<char> src_used, snk_used;

    bool feasible_source(int p, int h) const {
        // all already-mapped sink neighbors must have enough multiplicity
        for (int j = 0; j < pt; ++j) {
            if (pm[p][j] == 0 || snk_img[j] < 0) continue;
            if (hm[h][snk_img[j]] < pm[p][j]) return false;
        }
        return true;
    }
    bool feasible_sink(int p, int h) const {
        for (int i = 0; i < ps; ++i) {
            if (pm[i][p] == 0 || src_img[i] < 0) continue;
            if (hm[src_img[i]][h] < pm[i][p]) return false;
        }
        return true;
    }

    bool extend(const std::vector<std::pair<bool, int>>& order, std::size_t k) {
        if (k == order.size()) return true;
        auto [is_source, p] = order[k];
        if (is_source) {
            for (int h = 0; h < hs; ++h) {
                if (src_used[h] || !feasible_source(p, h)) continue;
                src_used[h] = 1;
                src_img[p] = h;
                if (extend(order, k + 1)) return true;
                src_used[h] = 0;
                src_img[p] = -1;
            }
        } else {
            for (int h = 0; h < ht; ++h) {
                if (snk_used[h] || !feasible_sink(p, h)) continue;
                snk_used[h] = 1;
                snk_img[p] = h;
                if (extend(order, k + 1)) return true;
                snk_used[h] = 0;
                snk_img[p] = -1;
            }
        }
        return false;
    }
};

} // namespace

bool contains_subgraph(const Web& host, const Web& pattern) {
    if (pattern.circles != 0)
        throw DomainError("subgraph pattern must not contain circles");
    if (pattern.sources > host.sources || pattern.sinks > host.sinks) return false;
    if (pattern.vertex_count() == 0) return true;

    SubgraphSearch s;
    s.hs = host.sources;
    s.ht = host.sinks;
    s.ps = pattern.sources;
    s.pt = pattern.sinks;
    s.hm.assign(s.hs, std::vector<int>(s.ht, 0));
    s.pm.assign(s.ps, std::vector<int>(s.pt, 0));
    for (const auto& e : host.edges) ++s.hm[e.tail][e.head];
    for (const auto& e : pattern.edges) ++s.pm[e.tail][e.head];
    s.src_img.assign(s.ps, -1);
    s.snk_img.assign(s.pt, -1);
    s.src_used.assign(s.hs, 0);
    s.snk_used.assign(s.ht, 0);

    // order pattern vertices so each one (after the first of a component)
    // touches an already-placed neighbor
    std::vector<std::pair<bool, int>> order;
    std::vector<char> placed_s(s.ps, 0), placed_t(s.pt, 0);
    auto place_component = [&](bool is_source, int start) {
        std::vector<std::pair<bool, int>> stack{{is_source, start}};
        (is_source ? placed_s : placed_t)[start] = 1;
        while (!stack.empty()) {
            auto [src, v] = stack.back();
            stack.pop_back();
            order.push_back({src, v});
            if (src) {
                for (int j = 0; j < s.pt; ++j)
                    if (s.pm[v][j] > 0 && !placed_t[j]) {
                        placed_t[j] = 1;
                        stack.push_back({false, j});
                    }
            } else {
                for (int i = 0; i < s.ps; ++i)
                    if (s.pm[i][v] > 0 && !placed_s[i]) {
                        placed_s[i] = 1;
                        stack.push_back({true, i});
                    }
            }
        }
    };
    for (int i = 0; i < s.ps; ++i)
        if (!placed_s[i]) place_component(true, i);
    for (int j = 0; j < s.pt; ++j)
        if (!placed_t[j]) place_component(false, j);

    return s.extend(order, 0);
}

} // namespace spider
