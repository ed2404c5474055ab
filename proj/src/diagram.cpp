#include "spider/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "spider/errors.hpp"

namespace spider {

namespace {

// Relabel crossings 1..n in first-appearance order. Keeps fixtures and
// post-move diagrams comparable.
void renumber(std::vector<std::vector<Passage>>& comps) {
    std::map<int, int> relabel;
    int next = 1;
    for (auto& comp : comps) {
        for (auto& p : comp) {
            auto [it, fresh] = relabel.emplace(p.crossing, next);
            if (fresh) ++next;
            p.crossing = it->second;
        }
    }
}

} // namespace

Diagram Diagram::from_components(std::vector<std::vector<Passage>> comps) {
    if (comps.empty()) comps.emplace_back();
    struct Seen {
        int over = 0, under = 0;
        int sign = 0;
        bool sign_conflict = false;
    };
    std::map<int, Seen> seen;
    for (const auto& comp : comps) {
        for (const auto& p : comp) {
            if (p.crossing <= 0)
                throw ValidationError("crossing ids must be positive, got " +
                                      std::to_string(p.crossing));
            if (p.sign != 1 && p.sign != -1)
                throw ValidationError("crossing " + std::to_string(p.crossing) +
                                      " has sign outside {+1,-1}");
            Seen& s = seen[p.crossing];
            (p.role == Role::Over ? s.over : s.under)++;
            if (s.sign == 0)
                s.sign = p.sign;
            else if (s.sign != p.sign)
                s.sign_conflict = true;
        }
    }
    for (const auto& [id, s] : seen) {
        if (s.over != 1 || s.under != 1)
            throw ValidationError(
                "crossing " + std::to_string(id) + " must appear exactly once Over and once "
                "Under (got " + std::to_string(s.over) + " Over, " +
                std::to_string(s.under) + " Under)");
        if (s.sign_conflict)
            throw ValidationError("crossing " + std::to_string(id) +
                                  " carries inconsistent signs");
    }
    renumber(comps);
    Diagram d;
    d.components_ = std::move(comps);
    d.crossings_ = static_cast<int>(seen.size());
    return d;
}

Diagram Diagram::parse(std::string_view text) {
    std::vector<std::vector<Passage>> comps(1);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        char c = text[i];
        if (c == ',') {
            comps.emplace_back();
            ++i;
            continue;
        }
        if (c != 'O' && c != 'U')
            throw ParseError(std::string("expected 'O' or 'U', got '") + c + "'", i);
        Passage p;
        p.role = c == 'O' ? Role::Over : Role::Under;
        ++i;
        skip_ws();
        std::size_t digit_start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digit_start) throw ParseError("expected crossing number", i);
        p.crossing = std::stoi(std::string(text.substr(digit_start, i - digit_start)));
        skip_ws();
        if (i >= text.size() || (text[i] != '+' && text[i] != '-'))
            throw ParseError("expected '+' or '-' sign", i);
        p.sign = text[i] == '+' ? 1 : -1;
        ++i;
        comps.back().push_back(p);
    }
    return from_components(std::move(comps));
}

Diagram Diagram::parse_file_text(std::string_view text) {
    std::string joined;
    bool in_comment = false;
    for (char c : text) {
        if (c == '#') in_comment = true;
        if (c == '\n') in_comment = false;
        if (!in_comment) joined.push_back(c);
    }
    return parse(joined);
}

std::string Diagram::format() const {
    std::string out;
    bool first_comp = true;
    for (const auto& comp : components_) {
        if (!first_comp) out += ",";
        first_comp = false;
        for (const auto& p : comp) {
            out += p.role == Role::Over ? 'O' : 'U';
            out += std::to_string(p.crossing);
            out += p.sign > 0 ? '+' : '-';
        }
    }
    return out;
}

int Diagram::writhe() const {
    int w = 0;
    for (const auto& comp : components_)
        for (const auto& p : comp)
            if (p.role == Role::Over) w += p.sign;
    return w;
}

int Diagram::linking_number() const {
    if (components_.size() != 2)
        throw DomainError("linking number needs exactly 2 components, got " +
                          std::to_string(components_.size()));
    // sign sum over crossings whose passages lie on different components
    std::map<int, int> comp_of_first;
    int sum = 0;
    for (int ci = 0; ci < 2; ++ci) {
        for (const auto& p : components_[ci]) {
            auto [it, fresh] = comp_of_first.emplace(p.crossing, ci);
            if (!fresh && it->second != ci) sum += p.sign;
        }
    }
    return sum / 2;
}

Parity Diagram::chord_parity(int crossing_id) const {
    if (components_.size() != 1)
        throw DomainError("chord parity is defined for single-component diagrams");
    const auto& code = components_[0];
    int a = -1, b = -1;
    for (int i = 0; i < static_cast<int>(code.size()); ++i) {
        if (code[i].crossing == crossing_id) (a < 0 ? a : b) = i;
    }
    if (a < 0 || b < 0)
        throw DomainError("unknown crossing id " + std::to_string(crossing_id));
    int linked = 0;
    for (int id = 1; id <= crossings_; ++id) {
        if (id == crossing_id) continue; // a chord is unlinked with itself
        int inside = 0;
        for (int i = a + 1; i < b; ++i)
            if (code[i].crossing == id) ++inside;
        if (inside == 1) ++linked;
    }
    return linked % 2 == 0 ? Parity::Even : Parity::Odd;
}

bool Diagram::is_odd_diagram() const {
    for (int id = 1; id <= crossings_; ++id)
        if (chord_parity(id) == Parity::Even) return false;
    return true;
}

Diagram Diagram::mirror() const {
    std::vector<std::vector<Passage>> comps = components_;
    for (auto& comp : comps) {
        for (auto& p : comp) {
            p.role = p.role == Role::Over ? Role::Under : Role::Over;
            p.sign = -p.sign;
        }
    }
    return from_components(std::move(comps));
}

std::vector<Diagram::CrossingRef> Diagram::crossing_table() const {
    std::vector<CrossingRef> table(crossings_);
    for (int ci = 0; ci < static_cast<int>(components_.size()); ++ci) {
        const auto& comp = components_[ci];
        for (int pi = 0; pi < static_cast<int>(comp.size()); ++pi) {
            const Passage& p = comp[pi];
            CrossingRef& r = table[p.crossing - 1];
            (p.role == Role::Over ? r.over : r.under) = PassageRef{ci, pi};
            r.sign = p.sign;
        }
    }
    return table;
}

namespace {

std::string encode_rotation(const std::vector<std::vector<Passage>>& comps,
                            const std::vector<int>& rot) {
    // renumber in first-appearance order under the given rotations, then
    // serialize; the lexicographically least serialization is canonical
    std::map<int, int> relabel;
    int next = 1;
    std::string out;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        const auto& comp = comps[ci];
        out += "|";
        for (std::size_t k = 0; k < comp.size(); ++k) {
            const Passage& p = comp[(rot[ci] + k) % comp.size()];
            auto [it, fresh] = relabel.emplace(p.crossing, next);
            if (fresh) ++next;
            out += p.role == Role::Over ? 'O' : 'U';
            out += std::to_string(it->second);
            out += p.sign > 0 ? '+' : '-';
        }
    }
    return out;
}

void min_encoding_rec(const std::vector<std::vector<Passage>>& comps, std::vector<int>& rot,
                      std::size_t ci, std::string& best) {
    if (ci == comps.size()) {
        std::string enc = encode_rotation(comps, rot);
        if (best.empty() || enc < best) best = std::move(enc);
        return;
    }
    std::size_t n = std::max<std::size_t>(comps[ci].size(), 1);
    for (std::size_t r = 0; r < n; ++r) {
        rot[ci] = static_cast<int>(r);
        min_encoding_rec(comps, rot, ci + 1, best);
    }
}

std::string canonical_code(const Diagram& d) {
    std::vector<int> rot(d.components().size(), 0);
    std::string best;
    min_encoding_rec(d.components(), rot, 0, best);
    return best;
}

} // namespace

bool Diagram::equivalent_codes(const Diagram& a, const Diagram& b) {
    if (a.components_.size() != b.components_.size()) return false;
    if (a.crossings_ != b.crossings_) return false;
    return canonical_code(a) == canonical_code(b);
}

} // namespace spider
