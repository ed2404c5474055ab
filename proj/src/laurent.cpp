#include "spider/laurent.hpp"

#include <cctype>

#include "spider/errors.hpp"

namespace spider {

LaurentPoly LaurentPoly::monomial(BigInt coeff, int exp) {
    LaurentPoly p;
    if (!coeff.is_zero()) p.terms_.emplace(exp, std::move(coeff));
    return p;
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second == BigInt(1);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [exp, c] : o.terms_) {
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    LaurentPoly r = *this;
    r += o;
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(exp, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    for (const auto& [e1, c1] : terms_) {
        for (const auto& [e2, c2] : o.terms_) {
            int exp = e1 + e2;
            auto it = r.terms_.find(exp);
            if (it == r.terms_.end()) {
                BigInt prod = c1 * c2;
                if (!prod.is_zero()) r.terms_.emplace(exp, std::move(prod));
            } else {
                it->second += c1 * c2;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
    auto a = terms_.begin(), b = o.terms_.begin();
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
    }
    return b != o.terms_.end();
}

int LaurentPoly::span() const {
    if (terms_.empty()) throw DomainError("undefined span of the zero polynomial");
    return terms_.rbegin()->first - terms_.begin()->first;
}

int LaurentPoly::min_exp() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no exponents");
    return terms_.begin()->first;
}

int LaurentPoly::max_exp() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no exponents");
    return terms_.rbegin()->first;
}

LaurentPoly LaurentPoly::substitute_inverse() const {
    LaurentPoly r;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(-exp, c);
    return r;
}

LaurentPoly LaurentPoly::shifted(int shift) const {
    LaurentPoly r;
    for (const auto& [exp, c] : terms_) r.terms_.emplace(exp + shift, c);
    return r;
}

LaurentPoly LaurentPoly::pow(int k) const {
    LaurentPoly r = one();
    LaurentPoly base = *this;
    for (; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        if (k > 1) base *= base;
    }
    return r;
}

std::string LaurentPoly::format(char variable) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [exp, coeff] = *it;
        bool negative = coeff.sign() < 0;
        std::string mag = (negative ? -coeff : coeff).to_string();
        if (first) {
            if (negative) out += "-";
            first = false;
        } else {
            out += negative ? " - " : " + ";
        }
        bool unit = mag == "1";
        if (exp == 0) {
            out += mag;
        } else {
            if (!unit) {
                out += mag;
                out += "*";
            }
            out += variable;
            if (exp != 1) {
                out += "^";
                out += std::to_string(exp);
            }
        }
    }
    return out;
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return text[pos];
    }
};

// [int] with optional sign
bool parse_int(Cursor& c, std::string& out) {
    c.skip_ws();
    std::size_t start = c.pos;
    if (c.pos < c.text.size() && (c.text[c.pos] == '+' || c.text[c.pos] == '-')) ++c.pos;
    std::size_t digits = 0;
    while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
        ++c.pos;
        ++digits;
    }
    if (digits == 0) {
        c.pos = start;
        return false;
    }
    out = std::string(c.text.substr(start, c.pos - start));
    return true;
}

} // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
    Cursor c{text};
    LaurentPoly result;
    bool first = true;
    while (true) {
        if (c.done()) {
            if (first) throw ParseError("empty polynomial", c.pos);
            break;
        }
        int sign = 1;
        char op = c.peek();
        if (op == '+' || op == '-') {
            if (op == '-') sign = -1;
            ++c.pos;
            if (c.done()) throw ParseError("dangling operator", c.pos);
        } else if (!first) {
            throw ParseError("expected '+' or '-'", c.pos);
        }
        // term = [int]['*']['A'|'a']['^' int]
        BigInt coeff(1);
        bool have_coeff = false;
        std::string lit;
        if (parse_int(c, lit)) {
            coeff = BigInt::from_string(lit);
            have_coeff = true;
        }
        if (!c.done() && c.peek() == '*') {
            if (!have_coeff) throw ParseError("'*' without coefficient", c.pos);
            ++c.pos;
            if (c.done()) throw ParseError("dangling '*'", c.pos);
        }
        int exp = 0;
        bool have_var = false;
        if (!c.done() && (c.peek() == 'A' || c.peek() == 'a')) {
            have_var = true;
            exp = 1;
            ++c.pos;
            if (!c.done() && c.peek() == '^') {
                ++c.pos;
                std::string e;
                if (!parse_int(c, e)) throw ParseError("expected exponent after '^'", c.pos);
                try {
                    exp = std::stoi(e);
                } catch (const std::exception&) {
                    throw ParseError("exponent out of range", c.pos);
                }
            }
        }
        if (!have_coeff && !have_var) throw ParseError("expected term", c.pos);
        if (sign < 0) coeff = -coeff;
        result += monomial(std::move(coeff), exp);
        first = false;
    }
    return result;
}

} // namespace spider
