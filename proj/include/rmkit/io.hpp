// Text forms: the quadratic-irrational grammar `(p + q*sqrt(D))/r`, the
// continued-fraction form `[a0; a1, (p1, p2, ...)]`, and `a,b,c,d` matrices.
// Parsing is exact and round-trips with the formatters bit for bit.
#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rmkit/bigint.hpp"
#include "rmkit/contfrac.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/matrix2z.hpp"
#include "rmkit/quadratic.hpp"

namespace rmkit {

inline std::string format_int(const Int& v) { return v.get_str(); }

inline std::string format_rat(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace detail {

class TextCursor {
public:
    explicit TextCursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!eat(c))
            throw ParseError(std::string("expected '") + c + "' in " + what);
    }
    bool eat_word(std::string_view w) {
        skip_ws();
        if (s_.compare(i_, w.size(), w) != 0) return false;
        i_ += w.size();
        return true;
    }

    Int read_uint(const char* what) {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && s_[i_] >= '0' && s_[i_] <= '9') ++i_;
        if (i_ == start)
            throw ParseError(std::string("expected digits in ") + what);
        return Int(std::string(s_.substr(start, i_ - start)), 10);
    }

    Int read_int(const char* what) {
        int sgn = 1;
        if (eat('-')) sgn = -1;
        else eat('+');
        Int v = read_uint(what);
        return sgn < 0 ? Int(-v) : v;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

// Accumulates A + B*sqrt(rad) with one radicand and sign tag.
struct SurdAccum {
    Rat rational;
    Rat radical;
    Int radicand = 0;
    Sign sign = Sign::real;
    bool have_radical = false;

    void add_rational(const Rat& v) { rational += v; }

    void add_radical(const Rat& coef, Int n) {
        Sign s = Sign::real;
        if (n < 0) {
            s = Sign::imaginary;
            n = -n;
        }
        if (n == 0 || is_perfect_square(n))
            throw RationalValueError("parse: perfect-square radicand");
        SquarefreeSplit split = squarefree_split(n);
        Rat c = coef * Rat(split.root);
        if (!have_radical) {
            have_radical = true;
            radicand = split.squarefree;
            sign = s;
        } else if (radicand != split.squarefree || sign != s) {
            throw ParseError("parse: mixed radicands");
        }
        radical += c;
    }

    void add(const SurdAccum& o, const Rat& scale) {
        add_rational(o.rational * scale);
        if (o.have_radical) {
            Rat c = o.radical * scale;
            if (!have_radical) {
                have_radical = true;
                radicand = o.radicand;
                sign = o.sign;
            } else if (radicand != o.radicand || sign != o.sign) {
                throw ParseError("parse: mixed radicands");
            }
            radical += c;
        }
    }
};

inline SurdAccum parse_sum(TextCursor& cur);

// term := '(' sum ')' ['/' int] | 'sqrt' '(' int ')' ['/' int]
//       | int ['*' 'sqrt' '(' int ')'] ['/' int]
inline SurdAccum parse_term(TextCursor& cur) {
    SurdAccum out;
    if (cur.eat('(')) {
        SurdAccum inner = parse_sum(cur);
        cur.expect(')', "parenthesized group");
        Rat scale(1);
        if (cur.eat('/')) {
            Int den = cur.read_int("denominator");
            if (den == 0) throw DivisionByZeroError("parse: zero denominator");
            scale = make_rat(1, den);
        }
        out.add(inner, scale);
        return out;
    }
    if (cur.eat_word("sqrt")) {
        cur.expect('(', "sqrt");
        Int n = cur.read_int("radicand");
        cur.expect(')', "sqrt");
        Rat coef(1);
        if (cur.eat('/')) {
            Int den = cur.read_int("denominator");
            if (den == 0) throw DivisionByZeroError("parse: zero denominator");
            coef = make_rat(1, den);
        }
        out.add_radical(coef, n);
        return out;
    }
    Int v = cur.read_uint("number");
    if (cur.eat('*')) {
        if (!cur.eat_word("sqrt")) throw ParseError("parse: expected sqrt after '*'");
        cur.expect('(', "sqrt");
        Int n = cur.read_int("radicand");
        cur.expect(')', "sqrt");
        Rat coef(v);
        if (cur.eat('/')) {
            Int den = cur.read_int("denominator");
            if (den == 0) throw DivisionByZeroError("parse: zero denominator");
            coef *= make_rat(1, den);
        }
        out.add_radical(coef, n);
        return out;
    }
    Rat val(v);
    if (cur.eat('/')) {
        Int den = cur.read_int("denominator");
        if (den == 0) throw DivisionByZeroError("parse: zero denominator");
        val *= make_rat(1, den);
    }
    out.add_rational(val);
    return out;
}

inline SurdAccum parse_sum(TextCursor& cur) {
    SurdAccum out;
    int sgn = 1;
    if (cur.eat('-')) sgn = -1;
    else cur.eat('+');
    for (;;) {
        SurdAccum t = parse_term(cur);
        out.add(t, Rat(sgn));
        if (cur.eat('+')) sgn = 1;
        else if (cur.eat('-')) sgn = -1;
        else break;
    }
    return out;
}

}  // namespace detail

inline QuadraticIrrational parse_quadratic(std::string_view text) {
    detail::TextCursor cur(text);
    detail::SurdAccum acc = detail::parse_sum(cur);
    if (!cur.done()) throw ParseError("parse: trailing input");
    if (!acc.have_radical || acc.radical == 0)
        throw RationalValueError("parse: value is rational");
    Int ra = acc.rational.get_den(), rb = acc.radical.get_den();
    Int g = gcd(ra, rb);
    Int r = ra / g * rb;
    Int p = acc.rational.get_num() * (r / ra);
    Int q = acc.radical.get_num() * (r / rb);
    return QuadraticIrrational::canonicalize(p, q, r, acc.radicand, acc.sign);
}

inline std::string format_quadratic(const QuadraticIrrational& x) {
    std::string root = "sqrt(";
    if (!x.is_real()) root += "-";
    root += x.d().get_str() + ")";
    auto radical = [&](const Int& q) {
        if (q == 1) return root;
        if (q == -1) return "-" + root;
        return q.get_str() + "*" + root;
    };
    if (x.p() == 0) {
        std::string s = radical(x.q());
        if (x.r() != 1) s += "/" + x.r().get_str();
        return s;
    }
    std::string inner = x.p().get_str();
    if (x.q() > 0)
        inner += "+" + radical(x.q());
    else
        inner += "-" + radical(-x.q());
    if (x.r() == 1) return inner;
    return "(" + inner + ")/" + x.r().get_str();
}

inline ContinuedFraction parse_cf(std::string_view text) {
    detail::TextCursor cur(text);
    cur.expect('[', "continued fraction");
    std::vector<Int> pre, per;
    while (cur.peek() != '(') {
        if (cur.done()) throw ParseError("parse: unterminated continued fraction");
        pre.push_back(cur.read_int("digit"));
        if (cur.eat(';') || cur.eat(',')) continue;
        if (cur.peek() == '(') break;
        throw ParseError("parse: expected separator in continued fraction");
    }
    cur.expect('(', "period");
    for (;;) {
        per.push_back(cur.read_int("period digit"));
        if (cur.eat(',')) continue;
        break;
    }
    cur.expect(')', "period");
    cur.expect(']', "continued fraction");
    if (!cur.done()) throw ParseError("parse: trailing input");
    return ContinuedFraction(std::move(pre), std::move(per));
}

inline std::string format_cf(const ContinuedFraction& cf) {
    std::string s = "[";
    const auto& pre = cf.preperiod();
    for (std::size_t i = 0; i < pre.size(); ++i) {
        s += pre[i].get_str();
        s += (i == 0) ? "; " : ", ";
    }
    s += "(";
    const auto& per = cf.period();
    for (std::size_t i = 0; i < per.size(); ++i) {
        if (i) s += ", ";
        s += per[i].get_str();
    }
    s += ")]";
    return s;
}

// Comma-separated row-major entries: "a,b,c,d".
inline Matrix2Z parse_matrix(std::string_view text) {
    detail::TextCursor cur(text);
    Int a = cur.read_int("matrix entry");
    cur.expect(',', "matrix");
    Int b = cur.read_int("matrix entry");
    cur.expect(',', "matrix");
    Int c = cur.read_int("matrix entry");
    cur.expect(',', "matrix");
    Int d = cur.read_int("matrix entry");
    if (!cur.done()) throw ParseError("parse: trailing input after matrix");
    return Matrix2Z{std::move(a), std::move(b), std::move(c), std::move(d)};
}

inline std::string format_matrix(const Matrix2Z& m) {
    return "(" + m.a.get_str() + ", " + m.b.get_str() + "; " + m.c.get_str() +
           ", " + m.d.get_str() + ")";
}

inline std::ostream& operator<<(std::ostream& os, const QuadraticIrrational& x) {
    return os << format_quadratic(x);
}
inline std::ostream& operator<<(std::ostream& os, const ContinuedFraction& cf) {
    return os << format_cf(cf);
}
inline std::ostream& operator<<(std::ostream& os, const Matrix2Z& m) {
    return os << format_matrix(m);
}

}  // namespace rmkit
