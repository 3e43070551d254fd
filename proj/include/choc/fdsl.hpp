#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "choc/core.hpp"

// Expression language for monotone functions on tuples of nonnegative
// integers. Grammar:
//
//   expr    := sum
//   sum     := atom ('+' atom)*
//   atom    := primary ('/' INT)*            floor division, left-assoc
//   primary := INT | VAR | 'max(' expr (',' expr)+ ')'
//            | 'min(' expr (',' expr)+ ')' | '(' expr ')'
//            | '[' expr '>' INT ']'
//   VAR     := 'x' INDEX
//
// Every construct preserves monotonicity, so everything expressible is
// monotone on all of Z>=0^s; check_monotone is a runtime assertion kept
// to guard future grammar growth.

namespace choc::fdsl {

struct ParseDiagnostic {
    std::size_t offset = 0;
    std::string message;
    std::string expected;
};

struct ParseError : std::runtime_error {
    explicit ParseError(ParseDiagnostic d)
        : std::runtime_error(d.message + " at offset " + std::to_string(d.offset) +
                             (d.expected.empty() ? "" : " (expected " + d.expected + ")")),
          diagnostic(std::move(d)) {}
    ParseDiagnostic diagnostic;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Literal, Variable, Add, Max, Min, FloorDiv, Threshold };

    Kind kind;
    Coord value = 0;       // Literal value, FloorDiv divisor, Threshold limit
    int var_index = 0;     // Variable: 1-based index
    std::vector<ExprPtr> kids;
};

inline ExprPtr make_literal(Coord v) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Literal, v, 0, {}});
}
inline ExprPtr make_variable(int index) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Variable, 0, index, {}});
}
inline ExprPtr make_add(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Add, 0, 0, {std::move(a), std::move(b)}});
}
inline ExprPtr make_max(std::vector<ExprPtr> kids) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Max, 0, 0, std::move(kids)});
}
inline ExprPtr make_min(std::vector<ExprPtr> kids) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Min, 0, 0, std::move(kids)});
}
inline ExprPtr make_floor_div(ExprPtr e, Coord divisor) {
    return std::make_shared<Expr>(Expr{Expr::Kind::FloorDiv, divisor, 0, {std::move(e)}});
}
inline ExprPtr make_threshold(ExprPtr e, Coord limit) {
    return std::make_shared<Expr>(Expr{Expr::Kind::Threshold, limit, 0, {std::move(e)}});
}

inline Coord eval_expr(const Expr& e, std::span<const Coord> coords) {
    switch (e.kind) {
        case Expr::Kind::Literal:
            return e.value;
        case Expr::Kind::Variable:
            return coords[static_cast<std::size_t>(e.var_index - 1)];
        case Expr::Kind::Add:
            return eval_expr(*e.kids[0], coords) + eval_expr(*e.kids[1], coords);
        case Expr::Kind::Max: {
            Coord m = eval_expr(*e.kids[0], coords);
            for (std::size_t i = 1; i < e.kids.size(); ++i)
                m = std::max(m, eval_expr(*e.kids[i], coords));
            return m;
        }
        case Expr::Kind::Min: {
            Coord m = eval_expr(*e.kids[0], coords);
            for (std::size_t i = 1; i < e.kids.size(); ++i)
                m = std::min(m, eval_expr(*e.kids[i], coords));
            return m;
        }
        case Expr::Kind::FloorDiv:
            return eval_expr(*e.kids[0], coords) / e.value;
        case Expr::Kind::Threshold:
            return eval_expr(*e.kids[0], coords) > e.value ? 1 : 0;
    }
    return 0;  // unreachable
}

inline void print_expr(const Expr& e, std::ostream& os) {
    switch (e.kind) {
        case Expr::Kind::Literal:
            os << e.value;
            break;
        case Expr::Kind::Variable:
            os << 'x' << e.var_index;
            break;
        case Expr::Kind::Add:
            print_expr(*e.kids[0], os);
            os << " + ";
            // right operand needs parens when it is itself a sum, or
            // reparsing would reassociate to the left
            if (e.kids[1]->kind == Expr::Kind::Add) {
                os << '(';
                print_expr(*e.kids[1], os);
                os << ')';
            } else {
                print_expr(*e.kids[1], os);
            }
            break;
        case Expr::Kind::Max:
        case Expr::Kind::Min:
            os << (e.kind == Expr::Kind::Max ? "max(" : "min(");
            for (std::size_t i = 0; i < e.kids.size(); ++i) {
                if (i) os << ", ";
                print_expr(*e.kids[i], os);
            }
            os << ')';
            break;
        case Expr::Kind::FloorDiv:
            if (e.kids[0]->kind == Expr::Kind::Add) {
                os << '(';
                print_expr(*e.kids[0], os);
                os << ')';
            } else {
                print_expr(*e.kids[0], os);
            }
            os << '/' << e.value;
            break;
        case Expr::Kind::Threshold:
            os << '[';
            print_expr(*e.kids[0], os);
            os << " > " << e.value << ']';
            break;
    }
}

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.value != b.value || a.var_index != b.var_index ||
        a.kids.size() != b.kids.size())
        return false;
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!expr_equal(*a.kids[i], *b.kids[i])) return false;
    return true;
}

class FunctionSpec {
public:
    FunctionSpec(int arity, ExprPtr root) : arity_(arity), root_(std::move(root)) {}

    int arity() const { return arity_; }
    const Expr& root() const { return *root_; }

    Coord eval(std::span<const Coord> coords) const {
        if (coords.size() != static_cast<std::size_t>(arity_))
            throw ArityError("expected " + std::to_string(arity_) + " coordinates, got " +
                             std::to_string(coords.size()));
        return eval_expr(*root_, coords);
    }

    Coord eval(std::initializer_list<Coord> coords) const {
        return eval(std::span<const Coord>(coords.begin(), coords.size()));
    }

    std::string print() const {
        std::ostringstream os;
        print_expr(*root_, os);
        return os.str();
    }

    bool operator==(const FunctionSpec& other) const {
        return arity_ == other.arity_ && expr_equal(*root_, *other.root_);
    }

private:
    int arity_;
    ExprPtr root_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, int arity) : text_(text), arity_(arity) {}

    ExprPtr run() {
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input", "end of input");
        return e;
    }

private:
    std::string_view text_;
    int arity_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::string expected = "") {
        throw ParseError({pos_, msg, std::move(expected)});
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail("syntax error", std::string("'") + c + "'");
    }

    bool peek_word(std::string_view w) {
        skip_ws();
        return text_.substr(pos_, w.size()) == w;
    }

    Coord parse_int() {
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("syntax error", "integer");
        std::uint64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > 0xffffffffull) fail("integer literal too large");
            ++pos_;
        }
        return static_cast<Coord>(v);
    }

    ExprPtr parse_sum() {
        ExprPtr e = parse_atom();
        while (eat('+')) e = make_add(std::move(e), parse_atom());
        return e;
    }

    ExprPtr parse_atom() {
        ExprPtr e = parse_primary();
        while (eat('/')) {
            Coord d = parse_int();
            if (d == 0) fail("division by zero", "positive divisor");
            e = make_floor_div(std::move(e), d);
        }
        return e;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input", "expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return make_literal(parse_int());
        if (c == 'x') {
            ++pos_;
            Coord idx = parse_int();
            if (idx == 0 || idx > static_cast<Coord>(arity_))
                fail("variable index out of range for arity " + std::to_string(arity_));
            return make_variable(static_cast<int>(idx));
        }
        if (peek_word("max(") || peek_word("min(")) {
            bool is_max = peek_word("max(");
            pos_ += 4;
            std::vector<ExprPtr> kids;
            kids.push_back(parse_sum());
            expect(',');
            kids.push_back(parse_sum());
            while (eat(',')) kids.push_back(parse_sum());
            expect(')');
            return is_max ? make_max(std::move(kids)) : make_min(std::move(kids));
        }
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            expect(')');
            return e;
        }
        if (c == '[') {
            ++pos_;
            ExprPtr e = parse_sum();
            expect('>');
            Coord limit = parse_int();
            expect(']');
            return make_threshold(std::move(e), limit);
        }
        fail("syntax error", "integer, variable, max(, min(, '(' or '['");
    }
};

}  // namespace detail

// Throws ParseError (carrying a ParseDiagnostic) on malformed input.
inline FunctionSpec parse(std::string_view text, int arity) {
    if (arity < 1) throw ArityError("arity must be >= 1");
    return FunctionSpec(arity, detail::Parser(text, arity).run());
}

struct MonotoneWitness {
    std::vector<Coord> lower, upper;  // lower <= upper pointwise but F(lower) > F(upper)
};

// Single-step scan: compares F(u) with F(u + e_i) over the bounded box,
// which suffices by transitivity.
template <typename Fn>
std::optional<MonotoneWitness> check_monotone_fn(Fn&& f, std::span<const Coord> bounds) {
    std::vector<Coord> u(bounds.size(), 0);
    for (;;) {
        Coord fu = f(std::span<const Coord>(u));
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (u[i] >= bounds[i]) continue;
            std::vector<Coord> v = u;
            ++v[i];
            if (f(std::span<const Coord>(v)) < fu) return MonotoneWitness{u, v};
        }
        std::size_t i = 0;
        while (i < u.size() && u[i] == bounds[i]) u[i++] = 0;
        if (i == u.size()) return std::nullopt;
        ++u[i];
    }
}

inline std::optional<MonotoneWitness> check_monotone(const FunctionSpec& spec,
                                                     std::span<const Coord> bounds) {
    if (bounds.size() != static_cast<std::size_t>(spec.arity()))
        throw ArityError("bounds arity mismatch");
    return check_monotone_fn([&](std::span<const Coord> c) { return spec.eval(c); }, bounds);
}

}  // namespace choc::fdsl
