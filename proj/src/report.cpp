#include "spider/report.hpp"

#include "spider/errors.hpp"

namespace spider {

using nlohmann::json;

Diagram diagram_from_json(const json& j) {
    if (!j.is_object() || !j.contains("components") || !j["components"].is_array())
        throw ValidationError("diagram JSON needs a \"components\" array");
    std::vector<std::vector<Passage>> comps;
    for (const auto& comp : j["components"]) {
        if (!comp.is_array()) throw ValidationError("each component must be an array");
        std::vector<Passage> passages;
        for (const auto& entry : comp) {
            if (!entry.is_array() || entry.size() != 3 || !entry[0].is_string() ||
                !entry[1].is_number_integer() || !entry[2].is_number_integer())
                throw ValidationError("passage entries are [\"O\"|\"U\", id, sign]");
            std::string role = entry[0].get<std::string>();
            if (role != "O" && role != "U")
                throw ValidationError("passage role must be \"O\" or \"U\"");
            passages.push_back(
                {entry[1].get<int>(), role == "O" ? Role::Over : Role::Under,
                 entry[2].get<int>()});
        }
        comps.push_back(std::move(passages));
    }
    return Diagram::from_components(std::move(comps));
}

json bracket_json(const Diagram& d, const WebCombination& combo, bool normalized) {
    json terms = json::array();
    for (const auto& [key, coeff] : combo.terms())
        terms.push_back({{"web", key.to_string()}, {"coeff", coeff.format()}});
    return json{{"diagram", d.format()},
                {"normalized", normalized},
                {"writhe", d.writhe()},
                {"terms", terms}};
}

std::string bracket_text(const WebCombination& combo) {
    if (combo.terms().empty()) return "0\n";
    std::string out;
    for (const auto& [key, coeff] : combo.terms())
        out += key.to_string() + " -> " + coeff.format() + "\n";
    return out;
}

json certificate_json(const MinimalityCertificate& cert) {
    json j{{"verdict",
            cert.verdict == MinimalityCertificate::Verdict::Minimal ? "MINIMAL"
                                                                    : "INCONCLUSIVE"},
           {"n", cert.crossing_count},
           {"kus", cert.kus.to_string()},
           {"kus_vertices", cert.kus_vertex_count}};
    j["witness"] = cert.witness ? json(cert.witness_text) : json(nullptr);
    return j;
}

std::string certificate_text(const MinimalityCertificate& cert) {
    if (cert.verdict == MinimalityCertificate::Verdict::Minimal) {
        if (cert.crossing_count == 0) return "MINIMAL (n=0)\n";
        return "MINIMAL (n=" + std::to_string(cert.crossing_count) +
               ", K_us vertices=" + std::to_string(cert.kus_vertex_count) + ")\n";
    }
    return "INCONCLUSIVE: " + cert.witness_text +
           " (n=" + std::to_string(cert.crossing_count) +
           ", K_us vertices=" + std::to_string(cert.kus_vertex_count) + ")\n";
}

json kus_json(const Diagram& d, const Web& w) {
    return json{{"diagram", d.format()},
                {"kus", canonical_form(w).to_string()},
                {"vertices", w.vertex_count()},
                {"irreducible", is_irreducible(w)}};
}

std::string kus_text(const Web& w) {
    return canonical_form(w).to_string() + "\nirreducible: " +
           (is_irreducible(w) ? "true" : "false") + "\n";
}

json parity_json(const Diagram& d) {
    json chords = json::array();
    for (int id = 1; id <= d.crossing_count(); ++id)
        chords.push_back({{"id", id},
                          {"parity", d.chord_parity(id) == Parity::Odd ? "odd" : "even"}});
    return json{{"diagram", d.format()},
                {"odd_diagram", d.is_odd_diagram()},
                {"chords", chords}};
}

std::string parity_text(const Diagram& d) {
    std::string out = "odd diagram: ";
    out += d.is_odd_diagram() ? "true" : "false";
    if (d.crossing_count() > 0) {
        out += "; chords:";
        for (int id = 1; id <= d.crossing_count(); ++id) {
            out += " " + std::to_string(id) + ":";
            out += d.chord_parity(id) == Parity::Odd ? "odd" : "even";
        }
    }
    out += "\n";
    return out;
}

json kauffman_json(const Diagram& d, const LaurentPoly& f) {
    json j{{"diagram", d.format()}, {"f", f.format('a')}};
    j["span"] = f.is_zero() ? json(nullptr) : json(f.span());
    return j;
}

std::string kauffman_text(const LaurentPoly& f) {
    std::string out = "f = " + f.format('a') + "\n";
    if (!f.is_zero()) out += "span = " + std::to_string(f.span()) + "\n";
    return out;
}

json distinguish_json(const DistinguishReport& rep) {
    json j{{"equal", rep.equal}};
    if (rep.first_difference) {
        const auto& [key, c1, c2] = *rep.first_difference;
        j["first_difference"] = {{"web", key.to_string()},
                                 {"coeff1", c1.format()},
                                 {"coeff2", c2.format()}};
    } else {
        j["first_difference"] = nullptr;
    }
    return j;
}

std::string distinguish_text(const DistinguishReport& rep) {
    if (rep.equal) return "EQUAL\n";
    const auto& [key, c1, c2] = *rep.first_difference;
    return "NOT EQUAL\nfirst difference at " + key.to_string() + ": " + c1.format() +
           " vs " + c2.format() + "\n";
}

} // namespace spider
