#include "monoq/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include "monoq/text.hpp"

namespace monoq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Every term is x_coeff * x * y^x_exp + y_part(y) + constant.
struct NormalForm {
    Rational x_coeff;
    long x_exp = 0;
    Polynomial y_part;
    Rational constant;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

NormalForm normal_form(const PatternTerm& t) {
    return std::visit(
        overloaded{
            [](const term::VarX&) { return NormalForm{Rational(1), 0, {}, {}}; },
            [](const term::VarY&) { return NormalForm{Rational(0), 0, Polynomial::variable(), {}}; },
            [](const term::Affine& a) { return NormalForm{a.x_coeff, 0, a.poly.compose_scaled(a.y_scale), {}}; },
            [](const term::MulPow& m) { return NormalForm{Rational(1), m.exponent, {}, {}}; },
            [](const term::Offset& o) { return NormalForm{Rational(1), 0, {}, o.constant}; },
        },
        t.node());
}

}  // namespace

PatternTerm PatternTerm::affine(Rational x_coeff, Polynomial poly, Rational y_scale) {
    if (x_coeff.is_zero()) {
        throw Error("affine term needs a nonzero coefficient on x");
    }
    if (y_scale.is_zero()) {
        throw Error("affine term needs a nonzero scale on y");
    }
    if (!poly.has_zero_constant_term()) {
        throw Error("constant term must be zero");
    }
    return PatternTerm(term::Affine{std::move(x_coeff), std::move(poly), std::move(y_scale)});
}

PatternTerm PatternTerm::mul_pow(long exponent) {
    if (exponent == 0) {
        throw Error("exponent of y in x*y^a must be nonzero");
    }
    return PatternTerm(term::MulPow{exponent});
}

PatternTerm PatternTerm::offset(Rational constant) {
    if (constant.is_zero()) {
        throw Error("offset term needs a nonzero constant");
    }
    return PatternTerm(term::Offset{std::move(constant)});
}

Rational PatternTerm::eval(const Rational& x, const Rational& y) const {
    return std::visit(
        overloaded{
            [&](const term::VarX&) { return x; },
            [&](const term::VarY&) { return y; },
            [&](const term::Affine& a) { return a.x_coeff * x + a.poly.eval(a.y_scale * y); },
            [&](const term::MulPow& m) { return x * y.pow(m.exponent); },
            [&](const term::Offset& o) { return x + o.constant; },
        },
        node_);
}

bool PatternTerm::uses_x() const {
    return !std::holds_alternative<term::VarY>(node_);
}

bool PatternTerm::uses_y() const {
    return std::visit(overloaded{
                          [](const term::VarX&) { return false; },
                          [](const term::VarY&) { return true; },
                          [](const term::Affine& a) { return !a.poly.is_zero(); },
                          [](const term::MulPow&) { return true; },
                          [](const term::Offset&) { return false; },
                      },
                      node_);
}

bool PatternTerm::same_map(const PatternTerm& other) const {
    return normal_form(*this) == normal_form(other);
}

bool operator==(const PatternTerm& a, const PatternTerm& b) {
    if (a.node_.index() != b.node_.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [](const term::VarX&, const term::VarX&) { return true; },
            [](const term::VarY&, const term::VarY&) { return true; },
            [](const term::Affine& l, const term::Affine& r) {
                return l.x_coeff == r.x_coeff && l.poly == r.poly && l.y_scale == r.y_scale;
            },
            [](const term::MulPow& l, const term::MulPow& r) { return l.exponent == r.exponent; },
            [](const term::Offset& l, const term::Offset& r) { return l.constant == r.constant; },
            [](const auto&, const auto&) { return false; },
        },
        a.node_, b.node_);
}

namespace {

std::string x_prefix(const Rational& c) {
    if (c == Rational(1)) {
        return "x";
    }
    if (c == Rational(-1)) {
        return "-x";
    }
    return c.to_string() + "*x";
}

// Appends " + body" or " - body" depending on the leading sign of `body`.
std::string signed_tail(const std::string& body) {
    if (!body.empty() && body.front() == '-') {
        return " - " + body.substr(1);
    }
    return " + " + body;
}

}  // namespace

std::string PatternTerm::to_string() const {
    return std::visit(
        overloaded{
            [](const term::VarX&) { return std::string("x"); },
            [](const term::VarY&) { return std::string("y"); },
            [](const term::Affine& a) {
                std::string out = x_prefix(a.x_coeff);
                if (a.poly.is_zero()) {
                    return out;
                }
                if (a.y_scale == Rational(1)) {
                    return out + signed_tail(a.poly.to_string('y'));
                }
                return out + " + (" + a.poly.to_string('t') + ")(" + a.y_scale.to_string() + "*y)";
            },
            [](const term::MulPow& m) {
                const long mag = m.exponent < 0 ? -m.exponent : m.exponent;
                std::string out = m.exponent < 0 ? "x/y" : "x*y";
                return mag == 1 ? out : out + "^" + std::to_string(mag);
            },
            [](const term::Offset& o) { return "x" + signed_tail(o.constant.to_string()); },
        },
        node_);
}

Family::Family(std::vector<PatternTerm> terms, FamilyOptions options)
    : terms_(std::move(terms)), options_(options) {
    if (terms_.empty()) {
        throw Error("a family needs at least one term");
    }
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].is_offset() && !options_.allow_offset) {
            throw Error("constant term must be zero (term '" + terms_[i].to_string() +
                        "'; affine offsets need the allow-offset flag)");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (terms_[i].same_map(terms_[j])) {
                throw Error("duplicate term '" + terms_[i].to_string() + "'");
            }
        }
    }
}

bool Family::requires_nonzero_x() const {
    return options_.strict_nonzero_x ||
           std::any_of(terms_.begin(), terms_.end(), [](const PatternTerm& t) { return t.is_mul_pow(); });
}

bool Family::depends_on_y() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const PatternTerm& t) { return t.uses_y(); });
}

std::vector<Polynomial> Family::additive_polynomials() const {
    std::vector<Polynomial> out;
    for (const auto& t : terms_) {
        if (const auto* a = std::get_if<term::Affine>(&t.node()); a && a->x_coeff == Rational(1) && !a->poly.is_zero()) {
            out.push_back(a->poly.compose_scaled(a->y_scale));
        }
    }
    return out;
}

std::vector<long> Family::exponents() const {
    std::vector<long> out;
    for (const auto& t : terms_) {
        if (const auto* m = std::get_if<term::MulPow>(&t.node())) {
            out.push_back(m->exponent);
        }
    }
    return out;
}

std::string Family::to_string() const {
    return text::join(terms_, "; ", [](const PatternTerm& t) { return t.to_string(); });
}

namespace {

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char ch : s) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            out += ch;
        }
    }
    return out;
}

[[noreturn]] void term_error(std::size_t column, const std::string& what, std::string_view term) {
    throw Error("pattern syntax error at position " + std::to_string(column) + ": " + what + " in term '" +
                std::string(term) + "'");
}

Rational parse_coefficient(const std::string& s, std::size_t column, std::string_view raw) {
    if (s.empty() || s == "+") {
        return Rational(1);
    }
    if (s == "-") {
        return Rational(-1);
    }
    try {
        return Rational::parse(s);
    } catch (const Error& e) {
        term_error(column, e.what(), raw);
    }
}

// Splits "(P)(c*y)" into P and c.
bool parse_applied(const std::string& rest, std::string& poly_text, std::string& scale_text) {
    if (rest.empty() || rest.front() != '(') {
        return false;
    }
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i] == '(') {
            ++depth;
        } else if (rest[i] == ')' && --depth == 0) {
            close = i;
            break;
        }
    }
    if (close == std::string::npos || close + 1 >= rest.size() || rest[close + 1] != '(' || rest.back() != ')') {
        return false;
    }
    poly_text = rest.substr(1, close - 1);
    std::string arg = rest.substr(close + 2, rest.size() - close - 3);
    if (arg.empty() || arg.back() != 'y') {
        return false;
    }
    arg.pop_back();
    if (!arg.empty() && arg.back() == '*') {
        arg.pop_back();
    }
    scale_text = arg;
    return true;
}

PatternTerm parse_term(std::string_view raw, const FamilyOptions& options) {
    const std::string s = strip_spaces(raw);
    if (s.empty()) {
        term_error(0, "empty term", raw);
    }
    if (s == "x") {
        return PatternTerm::x();
    }
    if (s == "y") {
        return PatternTerm::y();
    }
    static const std::regex mul_pow(R"(x([*/])y(?:\^(-?\d+))?)");
    std::smatch m;
    if (std::regex_match(s, m, mul_pow)) {
        long a = m[2].matched ? static_cast<long>(text::parse_int(m[2].str())) : 1;
        if (a == 0) {
            term_error(s.find('^') + 1, "exponent must be nonzero", raw);
        }
        return PatternTerm::mul_pow(m[1].str() == "/" ? -a : a);
    }

    const auto xpos = s.find('x');
    if (xpos == std::string::npos) {
        term_error(0, "term must mention x or be exactly 'y'", raw);
    }
    std::string coeff_text = s.substr(0, xpos);
    if (!coeff_text.empty() && coeff_text.back() == '*') {
        coeff_text.pop_back();
    }
    const Rational x_coeff = parse_coefficient(coeff_text, 0, raw);
    if (x_coeff.is_zero()) {
        term_error(0, "coefficient of x must be nonzero", raw);
    }
    std::string rest = s.substr(xpos + 1);
    if (rest.empty()) {
        return PatternTerm::affine(x_coeff, Polynomial());
    }
    if (rest.front() != '+' && rest.front() != '-') {
        term_error(xpos + 1, "expected '+' or '-' after x", raw);
    }
    const bool negated = rest.front() == '-';
    std::string body = rest.substr(1);

    std::string poly_text;
    std::string scale_text;
    Polynomial poly;
    Rational scale(1);
    try {
        if (parse_applied(body, poly_text, scale_text)) {
            poly = Polynomial::parse(poly_text, "t");
            scale = parse_coefficient(scale_text, xpos + 2, raw);
        } else {
            poly = Polynomial::parse(body, "ty");
        }
    } catch (const Error& e) {
        term_error(xpos + 2, e.what(), raw);
    }
    if (negated) {
        poly = Rational(-1) * poly;
    }
    if (!poly.has_zero_constant_term()) {
        const bool pure_constant = poly.degree() == 0u;
        if (options.allow_offset && pure_constant && x_coeff == Rational(1) && scale == Rational(1)) {
            return PatternTerm::offset(poly.coefficient(0));
        }
        term_error(xpos + 1,
                   "constant term must be zero (got " + poly.coefficient(0).to_string() +
                       (pure_constant ? "; affine offsets need the allow-offset flag)" : ")"),
                   raw);
    }
    if (scale.is_zero()) {
        term_error(xpos + 2, "scale of y must be nonzero", raw);
    }
    return PatternTerm::affine(x_coeff, poly, scale);
}

}  // namespace

Family parse_family(std::string_view text, FamilyOptions options) {
    std::vector<PatternTerm> terms;
    std::size_t index = 0;
    for (auto piece : text::split(text, ';')) {
        ++index;
        if (text::trim(piece).empty()) {
            if (index == 1 && text::trim(text).empty()) {
                throw Error("empty family");
            }
            continue;
        }
        try {
            terms.push_back(parse_term(piece, options));
        } catch (const Error& e) {
            throw Error("term " + std::to_string(index) + ": " + e.what());
        }
    }
    return Family(std::move(terms), options);
}

namespace {

struct CatalogCall {
    std::string name;
    std::vector<long> ints;
    std::vector<Polynomial> polys;
    bool has_list = false;
};

CatalogCall parse_call(std::string_view key) {
    const std::string s = strip_spaces(key);
    CatalogCall call;
    const auto open = s.find('(');
    if (open == std::string::npos) {
        call.name = s;
        return call;
    }
    if (s.back() != ')') {
        throw Error("malformed catalog key '" + std::string(key) + "'");
    }
    call.name = s.substr(0, open);
    std::string args = s.substr(open + 1, s.size() - open - 2);
    const auto lb = args.find('[');
    if (lb != std::string::npos) {
        const auto rb = args.find(']', lb);
        if (rb == std::string::npos || rb + 1 != args.size()) {
            throw Error("polynomial list must be the last argument in '" + std::string(key) + "'");
        }
        call.has_list = true;
        const std::string list = args.substr(lb + 1, rb - lb - 1);
        if (!list.empty()) {
            for (auto p : text::split(list, ',')) {
                call.polys.push_back(Polynomial::parse(p, "ty"));
            }
        }
        args = args.substr(0, lb);
        if (!args.empty() && args.back() == ',') {
            args.pop_back();
        }
    }
    if (!args.empty()) {
        for (auto a : text::split(args, ',')) {
            call.ints.push_back(static_cast<long>(text::parse_int(a)));
        }
    }
    return call;
}

void expect_shape(const CatalogCall& call, std::size_t ints, bool list) {
    if (call.ints.size() != ints || call.has_list != list) {
        throw Error("wrong arguments for catalog family '" + call.name + "'");
    }
}

void push_linear_shifts(std::vector<PatternTerm>& terms, long k) {
    if (k < 1) {
        throw Error("k must be at least 1");
    }
    for (long j = 1; j <= k; ++j) {
        terms.push_back(PatternTerm::shift(Polynomial::monomial(Rational(j), 1)));
    }
}

void push_poly_shifts(std::vector<PatternTerm>& terms, const std::vector<Polynomial>& polys) {
    if (polys.empty()) {
        throw Error("polynomial list must be nonempty");
    }
    for (const auto& p : polys) {
        terms.push_back(PatternTerm::shift(p));
    }
}

}  // namespace

Family builtin_family(std::string_view key, FamilyOptions options) {
    const CatalogCall call = parse_call(key);
    std::vector<PatternTerm> terms;
    if (call.name == "schur") {
        expect_shape(call, 0, false);
        terms = {PatternTerm::x(), PatternTerm::y(), PatternTerm::shift(Polynomial::variable())};
    } else if (call.name == "vdw") {
        expect_shape(call, 1, false);
        terms = {PatternTerm::x()};
        push_linear_shifts(terms, call.ints[0]);
    } else if (call.name == "moreira") {
        expect_shape(call, 1, true);
        if (static_cast<std::size_t>(call.ints[0]) != call.polys.size()) {
            throw Error("moreira(k, ps) needs exactly k polynomials");
        }
        terms = {PatternTerm::x(), PatternTerm::mul_pow(1)};
        push_poly_shifts(terms, call.polys);
    } else if (call.name == "bowen-sabok") {
        expect_shape(call, 1, false);
        terms = {PatternTerm::x(), PatternTerm::y(), PatternTerm::mul_pow(1)};
        push_linear_shifts(terms, call.ints[0]);
    } else if (call.name == "bowen-sabok-power") {
        expect_shape(call, 2, false);
        terms = {PatternTerm::x(), PatternTerm::y(), PatternTerm::mul_pow(call.ints[0])};
        push_linear_shifts(terms, call.ints[1]);
    } else if (call.name == "thm1-quotient" || call.name == "thm1-product") {
        expect_shape(call, 1, true);
        if (call.ints[0] < 1) {
            throw Error("exponent a must be at least 1");
        }
        const long a = call.name == "thm1-quotient" ? -call.ints[0] : call.ints[0];
        terms = {PatternTerm::x(), PatternTerm::mul_pow(a)};
        push_poly_shifts(terms, call.polys);
    } else if (call.name == "question-hs") {
        expect_shape(call, 0, false);
        terms = {PatternTerm::x(), PatternTerm::y(), PatternTerm::mul_pow(1),
                 PatternTerm::shift(Polynomial::variable())};
    } else {
        throw Error("unknown catalog family '" + std::string(key) + "'");
    }
    return Family(std::move(terms), options);
}

Family resolve_family(std::string_view text, FamilyOptions options) {
    static const std::regex key_shape(R"(\s*[a-z][a-z0-9-]+\s*(\(.*\))?\s*)");
    const std::string s(text);
    if (std::regex_match(s, key_shape)) {
        return builtin_family(text, options);
    }
    return parse_family(text, options);
}

std::vector<std::string> catalog_names() {
    return {"schur",
            "vdw(k)",
            "moreira(k,[p1,...,pk])",
            "bowen-sabok(k)",
            "bowen-sabok-power(n,k)",
            "thm1-quotient(a,[p1,...,pk])",
            "thm1-product(a,[p1,...,pk])",
            "question-hs"};
}

std::vector<std::string> catalog_samples() {
    return {"schur",
            "vdw(2)",
            "moreira(1,[t^2])",
            "bowen-sabok(1)",
            "bowen-sabok-power(-2,1)",
            "thm1-quotient(1,[t])",
            "thm1-product(1,[t])",
            "question-hs"};
}

std::vector<Rational> instantiate(const Family& family, const Rational& x, const Rational& y) {
    if (y.is_zero() || (x.is_zero() && family.requires_nonzero_x())) {
        throw Error("invalid instantiation point");
    }
    std::vector<Rational> values;
    values.reserve(family.size());
    for (const auto& t : family.terms()) {
        values.push_back(t.eval(x, y));
    }
    return values;
}

}  // namespace monoq
