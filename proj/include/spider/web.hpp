#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace spider {

/// Directed edge of a web; tail is a source vertex, head a sink vertex,
/// each in its own index space.
struct WebEdge {
    int tail = 0;
    int head = 0;
    bool operator==(const WebEdge&) const = default;
    bool operator<(const WebEdge& o) const {
        return tail != o.tail ? tail < o.tail : head < o.head;
    }
};

/// Trivalent bipartite directed multigraph plus vertexless circles.
/// Sources have out-degree exactly 3 and no in-edges, sinks the reverse.
struct Web {
    int sources = 0;
    int sinks = 0;
    std::vector<WebEdge> edges; // multiset; index in this vector = edge id
    int circles = 0;

    int vertex_count() const { return sources + sinks; }
    bool is_empty() const { return sources == 0 && sinks == 0 && circles == 0; }

    /// Degree/bipartiteness check; ValidationError names the offending vertex.
    static Web validate(int sources, int sinks, std::vector<WebEdge> edges, int circles);

    /// Deterministic but label-dependent serialization (memo key, debugging).
    std::string raw_key() const;

    bool operator==(const Web& o) const = default;
};

/// Isomorphism-invariant encoding: circle count plus the sorted multiset of
/// per-component canonical strings. Equal iff the webs are isomorphic as
/// directed multigraphs with equal circle counts.
struct CanonicalWeb {
    int circles = 0;
    std::vector<std::string> components; // sorted

    std::string to_string() const;
    bool operator==(const CanonicalWeb&) const = default;
    bool operator<(const CanonicalWeb& o) const {
        if (circles != o.circles) return circles < o.circles;
        return components < o.components;
    }
};

CanonicalWeb canonical_form(const Web& w);

/// Rebuild a Web (with fresh labels) from a canonical encoding.
Web web_from_canonical(const CanonicalWeb& cw);

struct ReductionSite {
    enum class Kind { Circle, Bigon, Square };
    Kind kind = Kind::Circle;
    // Bigon: ids of the two parallel edges.
    std::array<int, 2> bigon_edges{};
    // Square: cycle s1 -> t1 <- s2 -> t2 <- s1 on distinct vertices.
    std::array<int, 4> square_vertices{}; // s1, t1, s2, t2
    std::array<int, 4> square_edges{};    // s1->t1, s2->t1, s2->t2, s1->t2
};

/// All circles, parallel-edge pairs and 4-cycles on distinct vertices, in a
/// deterministic order: circles, then bigons by (tail, head, edge pair),
/// then squares by (s1, t1, s2, t2, edge ids).
std::vector<ReductionSite> find_sites(const Web& w);

bool is_irreducible(const Web& w);

/// Injective role- and multiplicity-preserving embedding test.
/// `pattern` must have no circles.
bool contains_subgraph(const Web& host, const Web& pattern);

/// Shared surgery helper: delete vertices and edges, then reconnect the
/// surviving edges through the deleted region. Each splice pair says the
/// head of `in_edge` continues as the tail of `out_edge`; a chain of
/// splices that closes on itself becomes a circle.
struct Splice {
    int in_edge;
    int out_edge;
};
Web surgery(const Web& w, const std::vector<int>& removed_sources,
            const std::vector<int>& removed_sinks, const std::vector<int>& deleted_edges,
            const std::vector<Splice>& splices);

/// Connected vertex components with their incident edges, each with a
/// zero circle count; the input's circles stay with the caller.
std::vector<Web> split_components(const Web& w);

} // namespace spider
