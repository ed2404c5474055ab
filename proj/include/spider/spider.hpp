#pragma once

#include <map>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>

#include "spider/laurent.hpp"
#include "spider/ruleset.hpp"
#include "spider/web.hpp"

namespace spider {

/// Finite linear combination of irreducible webs with Laurent coefficients.
/// Keys carry no circles and every component is irreducible; no zero
/// coefficients are stored.
class WebCombination {
public:
    WebCombination() = default;

    static WebCombination identity(); // { empty web -> 1 }
    static WebCombination term(CanonicalWeb key, LaurentPoly coeff);

    const std::map<CanonicalWeb, LaurentPoly>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    LaurentPoly coefficient(const CanonicalWeb& key) const;

    WebCombination& operator+=(const WebCombination& o);
    WebCombination operator+(const WebCombination& o) const;
    WebCombination scaled(const LaurentPoly& p) const;
    /// Module product: multiset union of component lists, coefficients
    /// multiplied (both sides must already be in normal form).
    WebCombination operator*(const WebCombination& o) const;

    bool operator==(const WebCombination& o) const { return terms_ == o.terms_; }
    bool operator!=(const WebCombination& o) const { return !(*this == o); }

private:
    std::map<CanonicalWeb, LaurentPoly> terms_;
};

/// One circle removed, factor delta. DomainError if no circle is present.
std::pair<Web, LaurentPoly> smooth_circle(const Web& w, const RuleSet& rules);

/// Remove a parallel pair and its endpoints, splice the two remaining
/// third edges (a splice that closes on itself becomes a circle).
/// Factor bigon. DomainError unless the site is a parallel pair.
std::pair<Web, LaurentPoly>
reduce_bigon(const Web& w, const ReductionSite& site, const RuleSet& rules);

/// Both reconnections of a square, each with unit coefficient.
/// DomainError unless the site is a 4-cycle on distinct vertices.
std::pair<Web, Web> resolve_square(const Web& w, const ReductionSite& site);

/// Rewrites webs to their unique normal form. Holds the process-wide memo
/// table (canonical component key -> normal form); safe for concurrent use.
class Reducer {
public:
    explicit Reducer(RuleSet rules = RuleSet::standard(), bool check = true);

    const RuleSet& rules() const { return rules_; }

    /// Exhaustive reduction, circles > bigons > squares, memoized per
    /// connected component.
    WebCombination normal_form(const Web& w);

    /// Same normal form computed with a uniformly random applicable site at
    /// every step; not memoized. Exercises confluence.
    WebCombination normal_form_random(const Web& w, std::mt19937_64& rng);

    /// normal_form of the disjoint union of `c`'s terms with `w`.
    WebCombination mul_web(const WebCombination& c, const Web& w);

    std::size_t memo_size() const;

private:
    RuleSet rules_;
    std::unordered_map<std::string, WebCombination> memo_;
    mutable std::shared_mutex memo_mutex_;

    WebCombination component_normal_form(const Web& comp, const std::string& key);
};

} // namespace spider
