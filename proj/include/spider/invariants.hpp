#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spider/diagram.hpp"
#include "spider/spider.hpp"

namespace spider {

/// Per-crossing choice of local state. Index c-1 holds crossing c;
/// true = webbed (vertex-inserting) smoothing, false = oriented.
using State = std::vector<bool>;

struct ExpandOptions {
    int crossing_limit = 16;
    int threads = 0; // 0 = hardware concurrency
};

struct ExpandStats {
    std::uint64_t states = 0; // resolve_state invocations
};

/// Build the web of one state by walking the Gauss code. The oriented
/// choice joins strands through the crossing; the webbed choice inserts a
/// sink (both inbound arcs) and a source (both outbound arcs) joined by an
/// internal edge. Closed arc cycles without vertices become circles.
/// Returns the web and the product of the per-crossing coefficients.
std::pair<Web, LaurentPoly>
resolve_state(const Diagram& d, const State& s, const RuleSet& rules);

/// All-webbed state; exactly 2n vertices.
Web kus(const Diagram& d);

/// The bracket as a sum over all 2^n states of coeff * normal_form(web).
/// LimitError if the diagram exceeds opts.crossing_limit.
WebCombination expand(const Diagram& d, Reducer& reducer, const ExpandOptions& opts = {},
                      ExpandStats* stats = nullptr);

/// expand scaled by A^(-8 * writhe).
WebCombination normalized_bracket(const Diagram& d, Reducer& reducer,
                                  const ExpandOptions& opts = {});

struct MinimalityCertificate {
    enum class Verdict { Minimal, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    CanonicalWeb kus;
    int crossing_count = 0;
    int kus_vertex_count = 0;
    std::optional<ReductionSite> witness; // set iff Inconclusive
    std::string witness_text;             // human-readable site description
};

/// Verdict is Minimal iff the unoriented state is irreducible (the zero
/// crossing diagram is Minimal vacuously). A reducible unoriented state
/// only ever yields Inconclusive: the criterion is sufficient, not
/// necessary. Single-component diagrams only.
MinimalityCertificate minimality_certificate(const Diagram& d);

struct DistinguishReport {
    bool equal = false;
    WebCombination bracket1, bracket2;
    // first key whose coefficients differ, with both coefficients
    std::optional<std::tuple<CanonicalWeb, LaurentPoly, LaurentPoly>> first_difference;
};

/// Compares normalized brackets term by term. Unequal brackets certify
/// inequivalent links; equal brackets certify nothing.
DistinguishReport distinguish(const Diagram& d1, const Diagram& d2, Reducer& reducer,
                              const ExpandOptions& opts = {});

/// Normalized Kauffman bracket (Jones polynomial in the variable a):
/// state sum with loop value -a^2-a^-2, normalized by (-a^3)^(-writhe).
/// Single-component diagrams only.
LaurentPoly kauffman_f(const Diagram& d, int crossing_limit = 16);

/// True iff canonical_form(kus(d)) appears in normalized_bracket(d2) with
/// the same (nonzero) coefficient it has in normalized_bracket(d).
bool leading_term_check(const Diagram& d, const Diagram& d2, Reducer& reducer,
                        const ExpandOptions& opts = {});

} // namespace spider
