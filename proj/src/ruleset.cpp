#include "spider/ruleset.hpp"

#include <sstream>
#include <string>

#include "spider/errors.hpp"

namespace spider {

RuleSet RuleSet::standard() {
    RuleSet r;
    r.delta = LaurentPoly::parse("A^6 + 1 + A^-6");
    r.bigon = LaurentPoly::parse("A^3 + A^-3");
    r.pos_oriented = LaurentPoly::parse("A^2");
    r.pos_web = LaurentPoly::parse("-A^-1");
    r.neg_oriented = LaurentPoly::parse("A^-2");
    r.neg_web = LaurentPoly::parse("-A");
    return r;
}

void RuleSet::check_consistency() const {
    const LaurentPoly a8 = LaurentPoly::monomial(1, 8);
    const LaurentPoly a8inv = LaurentPoly::monomial(1, -8);
    if (pos_oriented * delta + pos_web * bigon != a8)
        throw ValidationError(
            "rule set inconsistent: pos_oriented*delta + pos_web*bigon != A^8 (got " +
            (pos_oriented * delta + pos_web * bigon).format() + ")");
    if (neg_oriented * delta + neg_web * bigon != a8inv)
        throw ValidationError(
            "rule set inconsistent: neg_oriented*delta + neg_web*bigon != A^-8 (got " +
            (neg_oriented * delta + neg_web * bigon).format() + ")");
}

RuleSet RuleSet::load(std::string_view text, bool check) {
    RuleSet r = standard();
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (blank) continue;
            throw ValidationError("ruleset line " + std::to_string(line_no) +
                                  ": expected 'name = polynomial'");
        }
        std::string name = line.substr(0, eq);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        LaurentPoly value = LaurentPoly::parse(line.substr(eq + 1));
        if (name == "delta")
            r.delta = value;
        else if (name == "bigon")
            r.bigon = value;
        else if (name == "pos_oriented")
            r.pos_oriented = value;
        else if (name == "pos_web")
            r.pos_web = value;
        else if (name == "neg_oriented")
            r.neg_oriented = value;
        else if (name == "neg_web")
            r.neg_web = value;
        else
            throw ValidationError("ruleset line " + std::to_string(line_no) +
                                  ": unknown rule name '" + name + "'");
    }
    if (check) r.check_consistency();
    return r;
}

} // namespace spider
