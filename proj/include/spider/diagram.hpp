#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace spider {

enum class Role { Over, Under };

/// One visit of a strand to a classical crossing.
struct Passage {
    int crossing = 0; // 1-based id, dense 1..n after validation
    Role role = Role::Over;
    int sign = 1; // +1 or -1, shared by both passages of the crossing

    bool operator==(const Passage&) const = default;
};

enum class Parity { Even, Odd };

/// Oriented virtual link diagram as signed Gauss codes, one cyclic
/// sequence per component. Virtual crossings leave no trace in the code
/// and none is kept: no computation here depends on them.
///
/// Validated invariants: every crossing id occurs exactly twice, once
/// Over and once Under, with equal signs; ids are renumbered to 1..n in
/// first-appearance order.
class Diagram {
public:
    Diagram() : components_(1) {} // unknot: one empty component

    /// Validates and renumbers. ValidationError names the offending crossing.
    static Diagram from_components(std::vector<std::vector<Passage>> comps);

    /// Grammar per component: (('O'|'U') int ('+'|'-'))*, components
    /// separated by ','; whitespace ignored.
    static Diagram parse(std::string_view text);

    /// Whole-file form: '#' starts a comment, physical lines are joined.
    static Diagram parse_file_text(std::string_view text);

    std::string format() const;

    const std::vector<std::vector<Passage>>& components() const { return components_; }
    int crossing_count() const { return crossings_; }

    int writhe() const;

    /// Half the signed count of crossings shared by the two components.
    /// DomainError unless the diagram has exactly 2 components.
    int linking_number() const;

    /// Parity of the number of chords interleaved with `crossing_id` on the
    /// cyclic code. Single-component diagrams only.
    Parity chord_parity(int crossing_id) const;

    /// True iff every chord is odd (vacuously true for the unknot).
    bool is_odd_diagram() const;

    Diagram mirror() const;

    /// Both passages of each crossing: {(comp,pos) of Over, (comp,pos) of Under}.
    struct PassageRef {
        int comp = 0;
        int pos = 0;
    };
    struct CrossingRef {
        PassageRef over, under;
        int sign = 1;
    };
    std::vector<CrossingRef> crossing_table() const;

    /// Equality up to crossing renumbering and cyclic rotation per component.
    static bool equivalent_codes(const Diagram& a, const Diagram& b);

    bool operator==(const Diagram& o) const { return components_ == o.components_; }

private:
    std::vector<std::vector<Passage>> components_;
    int crossings_ = 0;

    friend class MoveEngine;
};

} // namespace spider
