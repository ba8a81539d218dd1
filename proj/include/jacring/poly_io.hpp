#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "jacring/poly.hpp"

namespace jacring {

namespace detail {

struct PolyLexer {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::string integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer at position " + std::to_string(start));
        return std::string(text.substr(start, pos - start));
    }

    // Variable token x0..x9; returns the index.
    int variable() {
        skip_ws();
        if (pos + 1 >= text.size() || text[pos] != 'x' || !std::isdigit(static_cast<unsigned char>(text[pos + 1])))
            throw ParseError("expected variable x0..x9 at position " + std::to_string(pos));
        int idx = text[pos + 1] - '0';
        pos += 2;
        return idx;
    }
};

inline int max_variable_index(std::string_view text) {
    int mx = -1;
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == 'x' && std::isdigit(static_cast<unsigned char>(text[i + 1])))
            mx = std::max(mx, text[i + 1] - '0');
    return mx;
}

}  // namespace detail

// Parses the textual polynomial grammar: terms joined by + or -, each term
// `coeff*x0^e0*x1^e1*...` with an integer or a/b rational coefficient;
// whitespace is ignored. If nvars < 0 the variable count is inferred from
// the highest variable index present.
template <class F>
GradedPolynomial<F> parse_polynomial(std::string_view text, const F& field, int nvars = -1) {
    if (nvars < 0) nvars = std::max(1, detail::max_variable_index(text) + 1);
    detail::PolyLexer lex{text};

    struct RawTerm {
        mpq_class coeff;
        Monomial mono;
    };
    std::vector<RawTerm> raw;

    bool first = true;
    while (!lex.eof()) {
        int sign = 1;
        if (lex.accept('+')) {
            sign = 1;
        } else if (lex.accept('-')) {
            sign = -1;
        } else if (!first) {
            throw ParseError("expected + or - between terms at position " + std::to_string(lex.pos));
        }
        first = false;
        if (lex.eof()) throw ParseError("dangling sign at end of polynomial");

        mpq_class coeff = 1;
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
            mpz_class num(lex.integer());
            if (lex.accept('/')) {
                mpz_class den(lex.integer());
                if (den == 0) throw ParseError("zero denominator in coefficient");
                coeff = mpq_class(num, den);
                coeff.canonicalize();
            } else {
                coeff = mpq_class(num);
            }
            saw_factor = true;
            if (!lex.accept('*')) {
                raw.push_back({sign * coeff, Monomial::unit(nvars)});
                continue;
            }
        }

        std::vector<int> exps(static_cast<std::size_t>(nvars), 0);
        bool saw_var = false;
        while (true) {
            int var = lex.variable();
            if (var >= nvars) throw ParseError("variable x" + std::to_string(var) + " out of range");
            int exp = 1;
            if (lex.accept('^')) exp = std::stoi(lex.integer());
            exps[static_cast<std::size_t>(var)] += exp;
            saw_var = true;
            if (!lex.accept('*')) break;
        }
        if (!saw_factor && !saw_var) throw ParseError("empty term at position " + std::to_string(lex.pos));
        raw.push_back({sign * coeff, Monomial(std::move(exps))});
    }

    if (raw.empty()) throw ParseError("empty polynomial text");

    int degree = 0;
    bool have_nonzero = false;
    for (const auto& t : raw) {
        if (sgn(t.coeff) == 0) continue;
        if (!have_nonzero) {
            degree = t.mono.degree();
            have_nonzero = true;
        } else if (t.mono.degree() != degree) {
            throw NotHomogeneousError("polynomial text mixes degrees " + std::to_string(degree) + " and " +
                                      std::to_string(t.mono.degree()));
        }
    }

    GradedPolynomial<F> out(nvars, degree, field);
    for (const auto& t : raw) {
        if (sgn(t.coeff) == 0) continue;
        out.add_term(t.mono, field.from_rat(t.coeff));
    }
    return out;
}

}  // namespace jacring
