#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmpack/qasm.hpp"

namespace qmpack::qasm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kMaxMacroDepth = 64;

// ---------------------------------------------------------------- lexing

enum class Tok {
    Ident,
    Number,
    String,
    Semicolon,
    Comma,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Arrow,
    Plus,
    Minus,
    Star,
    Slash,
    Bad,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    bool is_integer = false;
    std::int64_t integer = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= text_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                advance();
            t.kind = Tok::Ident;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return lex_number(t);
        }
        if (c == '"') {
            advance();
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '"') advance();
            t.kind = Tok::String;
            t.text = text_.substr(start, pos_ - start);
            if (pos_ < text_.size()) advance();  // closing quote
            return t;
        }
        if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
            advance();
            advance();
            t.kind = Tok::Arrow;
            return t;
        }
        advance();
        switch (c) {
            case ';': t.kind = Tok::Semicolon; return t;
            case ',': t.kind = Tok::Comma; return t;
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '[': t.kind = Tok::LBracket; return t;
            case ']': t.kind = Tok::RBracket; return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '-': t.kind = Tok::Minus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            default:
                t.kind = Tok::Bad;
                t.text = std::string(1, c);
                return t;
        }
    }

private:
    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Token t) {
        std::size_t start = pos_;
        bool has_dot = false, has_exp = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '.' && !has_dot && !has_exp) {
                has_dot = true;
                advance();
            } else if ((c == 'e' || c == 'E') && !has_exp && pos_ > start) {
                has_exp = true;
                advance();
                if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) advance();
            } else {
                break;
            }
        }
        t.kind = Tok::Number;
        t.text = text_.substr(start, pos_ - start);
        t.number = std::stod(t.text);
        if (!has_dot && !has_exp && t.text.size() <= 18) {
            t.is_integer = true;
            t.integer = std::stoll(t.text);
        }
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ------------------------------------------------------- angle expression

struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static std::optional<Rat> make(std::int64_t n, std::int64_t d) {
        if (d == 0) return std::nullopt;
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return Rat{n, d};
    }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool zero() const { return num == 0; }
};

std::optional<Rat> rat_add(Rat a, Rat b) {
    // overflow-checked via __int128
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) return std::nullopt;
    return Rat::make(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

std::optional<Rat> rat_mul(Rat a, Rat b) {
    __int128 n = static_cast<__int128>(a.num) * b.num;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX) return std::nullopt;
    return Rat::make(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

/// Value of an angle expression: exact form a + b*pi when representable.
struct SymVal {
    bool exact = false;
    Rat a{0, 1};
    Rat b{0, 1};
    double approx = 0.0;

    static SymVal from_rat(Rat r) { return {true, r, Rat{0, 1}, r.to_double()}; }
    static SymVal pi() { return {true, Rat{0, 1}, Rat{1, 1}, kPi}; }
    static SymVal inexact(double v) { return {false, {}, {}, v}; }

    double value() const {
        if (!exact) return approx;
        return a.to_double() + b.to_double() * kPi;
    }
};

SymVal sym_neg(const SymVal& v) {
    if (!v.exact) return SymVal::inexact(-v.approx);
    return {true, Rat{-v.a.num, v.a.den}, Rat{-v.b.num, v.b.den}, -v.value()};
}

SymVal sym_add(const SymVal& x, const SymVal& y, bool subtract) {
    SymVal yy = subtract ? sym_neg(y) : y;
    if (x.exact && yy.exact) {
        auto a = rat_add(x.a, yy.a);
        auto b = rat_add(x.b, yy.b);
        if (a && b) return {true, *a, *b, 0.0};
    }
    return SymVal::inexact(x.value() + yy.value());
}

SymVal sym_mul(const SymVal& x, const SymVal& y) {
    if (x.exact && y.exact) {
        if (x.b.zero() || y.b.zero()) {
            // (a1 + b1 pi) * a2  or  a1 * (a2 + b2 pi)
            const SymVal& scalar = x.b.zero() ? x : y;
            const SymVal& other = x.b.zero() ? y : x;
            auto a = rat_mul(scalar.a, other.a);
            auto b = rat_mul(scalar.a, other.b);
            if (a && b) return {true, *a, *b, 0.0};
        }
    }
    return SymVal::inexact(x.value() * y.value());
}

SymVal sym_div(const SymVal& x, const SymVal& y) {
    if (x.exact && y.exact && y.b.zero() && !y.a.zero()) {
        Rat inv{y.a.den, y.a.num};
        auto norm = Rat::make(inv.num, inv.den);
        if (norm) {
            auto a = rat_mul(x.a, *norm);
            auto b = rat_mul(x.b, *norm);
            if (a && b) return {true, *a, *b, 0.0};
        }
    }
    return SymVal::inexact(x.value() / y.value());
}

Angle sym_to_angle(const SymVal& v) {
    if (v.exact && v.a.zero() && !v.b.zero())
        return Angle::pi_multiple(v.b.num, v.b.den);
    return Angle::literal(v.value());
}

// expression AST kept for macro bodies (formal parameters bound at expansion)
struct Expr {
    enum class Kind { Number, Pi, Param, Neg, Add, Sub, Mul, Div } kind;
    double number = 0.0;
    bool number_is_int = false;
    std::int64_t integer = 0;
    int param_index = -1;
    std::unique_ptr<Expr> lhs, rhs;
};

SymVal eval_expr(const Expr& e, const std::vector<SymVal>& params) {
    switch (e.kind) {
        case Expr::Kind::Number:
            if (e.number_is_int) return SymVal::from_rat(Rat{e.integer, 1});
            return SymVal::inexact(e.number);
        case Expr::Kind::Pi: return SymVal::pi();
        case Expr::Kind::Param: return params[static_cast<std::size_t>(e.param_index)];
        case Expr::Kind::Neg: return sym_neg(eval_expr(*e.lhs, params));
        case Expr::Kind::Add: return sym_add(eval_expr(*e.lhs, params), eval_expr(*e.rhs, params), false);
        case Expr::Kind::Sub: return sym_add(eval_expr(*e.lhs, params), eval_expr(*e.rhs, params), true);
        case Expr::Kind::Mul: return sym_mul(eval_expr(*e.lhs, params), eval_expr(*e.rhs, params));
        case Expr::Kind::Div: return sym_div(eval_expr(*e.lhs, params), eval_expr(*e.rhs, params));
    }
    return SymVal::inexact(0.0);
}

// --------------------------------------------------------------- parser

struct Register {
    std::string name;
    int size = 0;
    int offset = 0;  // index of element 0 in the flat space
};

struct MacroCall {
    std::string gate;
    std::vector<std::unique_ptr<Expr>> params;
    std::vector<int> arg_indices;  // formal qubit slots; barrier may list several
    int line = 1;
    int col = 1;
};

struct Macro {
    std::string name;
    int n_params = 0;
    int n_args = 0;
    std::vector<MacroCall> body;
};

struct ParseError {
    Diagnostic diag;
};

const std::map<std::string, GateKind>& builtin_gates() {
    static const std::map<std::string, GateKind> table = {
        {"u1", GateKind::U1}, {"u2", GateKind::U2},  {"u3", GateKind::U3},
        {"rz", GateKind::Rz}, {"sx", GateKind::Sx},  {"x", GateKind::X},
        {"h", GateKind::H},   {"t", GateKind::T},    {"tdg", GateKind::Tdg},
        {"s", GateKind::S},   {"sdg", GateKind::Sdg}, {"cx", GateKind::Cx},
    };
    return table;
}

class Parser {
public:
    Parser(const SourceProgram& src) : lexer_(src.text) {
        cur_ = lexer_.next();
        result_.circuit.name = circuit_name(src.origin);
    }

    ParseResult run() {
        try {
            parse_program();
        } catch (const ParseError& e) {
            result_.diagnostics.push_back(e.diag);
        }
        result_.ok = result_.diagnostics.empty();
        if (!result_.ok) {
            std::string nm = result_.circuit.name;
            result_.circuit = CircuitIR{};
            result_.circuit.name = nm;
        } else {
            result_.circuit.validate();
        }
        return std::move(result_);
    }

private:
    static std::string circuit_name(const std::string& origin) {
        std::size_t slash = origin.find_last_of("/\\");
        std::string base = slash == std::string::npos ? origin : origin.substr(slash + 1);
        std::size_t dot = base.find_last_of('.');
        if (dot != std::string::npos && dot > 0) base = base.substr(0, dot);
        return base.empty() ? "circuit" : base;
    }

    [[noreturn]] void fail(const std::string& msg) { fail_at(msg, cur_.line, cur_.col); }

    [[noreturn]] void fail_at(const std::string& msg, int line, int col) {
        throw ParseError{Diagnostic{Severity::Error, msg, line, col}};
    }

    void record_error(const std::string& msg, int line, int col) {
        result_.diagnostics.push_back(Diagnostic{Severity::Error, msg, line, col});
    }

    void bump() { cur_ = lexer_.next(); }

    bool at(Tok k) const { return cur_.kind == k; }

    Token expect(Tok k, const std::string& what) {
        if (cur_.kind != k) fail("expected " + what);
        Token t = cur_;
        bump();
        return t;
    }

    bool at_ident(const char* word) const {
        return cur_.kind == Tok::Ident && cur_.text == word;
    }

    // skip to just past the next ';' (error recovery)
    void synchronize() {
        int brace = 0;
        while (!at(Tok::End)) {
            if (at(Tok::LBrace)) ++brace;
            if (at(Tok::RBrace) && brace > 0) --brace;
            if (at(Tok::Semicolon) && brace == 0) {
                bump();
                return;
            }
            bump();
        }
    }

    void parse_program() {
        // header
        if (!at_ident("OPENQASM")) fail("expected OPENQASM 2.0 header");
        bump();
        Token ver = expect(Tok::Number, "version number");
        if (ver.text != "2.0") fail_at("unsupported OpenQASM version '" + ver.text + "'", ver.line, ver.col);
        expect(Tok::Semicolon, "';'");

        while (!at(Tok::End)) {
            try {
                parse_statement();
            } catch (const ParseError& e) {
                result_.diagnostics.push_back(e.diag);
                synchronize();
            }
        }
        if (result_.circuit.n_qubits == 0 && result_.diagnostics.empty())
            record_error("program declares no qubits", 1, 1);
    }

    void parse_statement() {
        if (at_ident("include")) {
            bump();
            Token path = expect(Tok::String, "include path");
            if (path.text != "qelib1.inc")
                fail_at("only the standard header \"qelib1.inc\" may be included", path.line, path.col);
            expect(Tok::Semicolon, "';'");
            return;
        }
        if (at_ident("qreg") || at_ident("creg")) {
            parse_register_decl();
            return;
        }
        if (at_ident("gate")) {
            parse_gate_def();
            return;
        }
        if (at_ident("barrier")) {
            parse_barrier();
            return;
        }
        if (at_ident("measure")) {
            parse_measure();
            return;
        }
        if (at_ident("if") || at_ident("reset") || at_ident("opaque")) {
            fail("unsupported statement '" + cur_.text + "'");
        }
        if (at(Tok::Bad)) fail("unexpected character '" + cur_.text + "'");
        if (at(Tok::Ident)) {
            parse_application();
            return;
        }
        fail("malformed statement");
    }

    void parse_register_decl() {
        bool quantum = cur_.text == "qreg";
        bump();
        Token name = expect(Tok::Ident, "register name");
        expect(Tok::LBracket, "'['");
        Token size = expect(Tok::Number, "register size");
        if (!size.is_integer || size.integer <= 0)
            fail_at("register size must be a positive integer", size.line, size.col);
        expect(Tok::RBracket, "']'");
        expect(Tok::Semicolon, "';'");
        auto& table = quantum ? qregs_ : cregs_;
        if (qregs_.count(name.text) || cregs_.count(name.text))
            fail_at("register '" + name.text + "' already declared", name.line, name.col);
        Register reg;
        reg.name = name.text;
        reg.size = static_cast<int>(size.integer);
        int& total = quantum ? result_.circuit.n_qubits : result_.circuit.n_clbits;
        reg.offset = total;
        total += reg.size;
        order_.push_back(name.text);
        table[name.text] = reg;
    }

    std::unique_ptr<Expr> parse_expr(const std::map<std::string, int>* formals) {
        auto lhs = parse_term(formals);
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool plus = at(Tok::Plus);
            bump();
            auto rhs = parse_term(formals);
            auto node = std::make_unique<Expr>();
            node->kind = plus ? Expr::Kind::Add : Expr::Kind::Sub;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_term(const std::map<std::string, int>* formals) {
        auto lhs = parse_factor(formals);
        while (at(Tok::Star) || at(Tok::Slash)) {
            bool mul = at(Tok::Star);
            bump();
            auto rhs = parse_factor(formals);
            auto node = std::make_unique<Expr>();
            node->kind = mul ? Expr::Kind::Mul : Expr::Kind::Div;
            node->lhs = std::move(lhs);
            node->rhs = std::move(rhs);
            lhs = std::move(node);
        }
        return lhs;
    }

    std::unique_ptr<Expr> parse_factor(const std::map<std::string, int>* formals) {
        if (at(Tok::Minus)) {
            bump();
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Neg;
            node->lhs = parse_factor(formals);
            return node;
        }
        if (at(Tok::Plus)) {
            bump();
            return parse_factor(formals);
        }
        if (at(Tok::LParen)) {
            bump();
            auto e = parse_expr(formals);
            expect(Tok::RParen, "')'");
            return e;
        }
        if (at(Tok::Number)) {
            auto node = std::make_unique<Expr>();
            node->kind = Expr::Kind::Number;
            node->number = cur_.number;
            node->number_is_int = cur_.is_integer;
            node->integer = cur_.integer;
            bump();
            return node;
        }
        if (at(Tok::Ident)) {
            if (cur_.text == "pi") {
                bump();
                auto node = std::make_unique<Expr>();
                node->kind = Expr::Kind::Pi;
                return node;
            }
            if (formals) {
                auto it = formals->find(cur_.text);
                if (it != formals->end()) {
                    auto node = std::make_unique<Expr>();
                    node->kind = Expr::Kind::Param;
                    node->param_index = it->second;
                    bump();
                    return node;
                }
            }
            fail("unknown identifier '" + cur_.text + "' in expression");
        }
        fail("malformed expression");
    }

    // one qubit operand: reg or reg[idx]; returns flat indices (full register
    // broadcast yields all of them)
    struct Operand {
        std::vector<int> indices;
        bool whole_register = false;
        int line = 1, col = 1;
    };

    Operand parse_qubit_operand() {
        Token name = expect(Tok::Ident, "register name");
        auto it = qregs_.find(name.text);
        if (it == qregs_.end())
            fail_at("undeclared quantum register '" + name.text + "'", name.line, name.col);
        Operand op;
        op.line = name.line;
        op.col = name.col;
        if (at(Tok::LBracket)) {
            bump();
            Token idx = expect(Tok::Number, "index");
            if (!idx.is_integer || idx.integer < 0 || idx.integer >= it->second.size)
                fail_at("index out of range for register '" + name.text + "'", idx.line, idx.col);
            expect(Tok::RBracket, "']'");
            op.indices.push_back(it->second.offset + static_cast<int>(idx.integer));
        } else {
            op.whole_register = true;
            for (int i = 0; i < it->second.size; ++i) op.indices.push_back(it->second.offset + i);
        }
        return op;
    }

    Operand parse_clbit_operand() {
        Token name = expect(Tok::Ident, "register name");
        auto it = cregs_.find(name.text);
        if (it == cregs_.end())
            fail_at("undeclared classical register '" + name.text + "'", name.line, name.col);
        Operand op;
        op.line = name.line;
        op.col = name.col;
        if (at(Tok::LBracket)) {
            bump();
            Token idx = expect(Tok::Number, "index");
            if (!idx.is_integer || idx.integer < 0 || idx.integer >= it->second.size)
                fail_at("index out of range for register '" + name.text + "'", idx.line, idx.col);
            expect(Tok::RBracket, "']'");
            op.indices.push_back(it->second.offset + static_cast<int>(idx.integer));
        } else {
            op.whole_register = true;
            for (int i = 0; i < it->second.size; ++i) op.indices.push_back(it->second.offset + i);
        }
        return op;
    }

    void parse_barrier() {
        bump();
        std::vector<int> qubits;
        while (true) {
            Operand op = parse_qubit_operand();
            qubits.insert(qubits.end(), op.indices.begin(), op.indices.end());
            if (at(Tok::Comma)) {
                bump();
                continue;
            }
            break;
        }
        expect(Tok::Semicolon, "';'");
        GateOp g;
        g.kind = GateKind::Barrier;
        g.qubits = std::move(qubits);
        result_.circuit.gates.push_back(std::move(g));
    }

    void parse_measure() {
        Token kw = cur_;
        bump();
        Operand src = parse_qubit_operand();
        expect(Tok::Arrow, "'->'");
        Operand dst = parse_clbit_operand();
        if (src.indices.size() != dst.indices.size())
            fail_at("measure source and target sizes differ", kw.line, kw.col);
        expect(Tok::Semicolon, "';'");
        for (std::size_t i = 0; i < src.indices.size(); ++i) {
            GateOp g;
            g.kind = GateKind::Measure;
            g.qubits = {src.indices[i]};
            g.clbit = dst.indices[i];
            result_.circuit.gates.push_back(std::move(g));
        }
    }

    void parse_gate_def() {
        bump();
        Token name = expect(Tok::Ident, "gate name");
        if (builtin_gates().count(name.text) || name.text == "ccx" || name.text == "swap" ||
            macros_.count(name.text))
            fail_at("gate '" + name.text + "' already defined", name.line, name.col);
        Macro macro;
        macro.name = name.text;
        std::map<std::string, int> formal_params;
        std::map<std::string, int> formal_args;
        if (at(Tok::LParen)) {
            bump();
            if (!at(Tok::RParen)) {
                while (true) {
                    Token p = expect(Tok::Ident, "parameter name");
                    formal_params[p.text] = macro.n_params++;
                    if (at(Tok::Comma)) {
                        bump();
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen, "')'");
        }
        while (true) {
            Token a = expect(Tok::Ident, "qubit argument");
            formal_args[a.text] = macro.n_args++;
            if (at(Tok::Comma)) {
                bump();
                continue;
            }
            break;
        }
        expect(Tok::LBrace, "'{'");
        while (!at(Tok::RBrace)) {
            if (at(Tok::End)) fail("unterminated gate body");
            MacroCall call;
            Token g = expect(Tok::Ident, "gate name");
            call.gate = g.text;
            call.line = g.line;
            call.col = g.col;
            if (call.gate == "measure" || call.gate == "if" || call.gate == "reset")
                fail_at("'" + call.gate + "' is not allowed inside a gate body", g.line, g.col);
            if (at(Tok::LParen)) {
                bump();
                if (!at(Tok::RParen)) {
                    while (true) {
                        call.params.push_back(parse_expr(&formal_params));
                        if (at(Tok::Comma)) {
                            bump();
                            continue;
                        }
                        break;
                    }
                }
                expect(Tok::RParen, "')'");
            }
            while (true) {
                Token arg = expect(Tok::Ident, "qubit argument");
                auto it = formal_args.find(arg.text);
                if (it == formal_args.end())
                    fail_at("unknown qubit argument '" + arg.text + "'", arg.line, arg.col);
                call.arg_indices.push_back(it->second);
                if (at(Tok::Comma)) {
                    bump();
                    continue;
                }
                break;
            }
            expect(Tok::Semicolon, "';'");
            macro.body.push_back(std::move(call));
        }
        expect(Tok::RBrace, "'}'");
        macros_[macro.name] = std::move(macro);
    }

    void emit_builtin(GateKind kind, const std::vector<SymVal>& params,
                      const std::vector<int>& qubits, int line, int col) {
        int want = gate_param_count(kind);
        if (static_cast<int>(params.size()) != want)
            fail_at(std::string("gate '") + gate_name(kind) + "' expects " +
                        std::to_string(want) + " parameter(s)",
                    line, col);
        int arity = gate_arity(kind);
        if (static_cast<int>(qubits.size()) != arity)
            fail_at(std::string("gate '") + gate_name(kind) + "' expects " +
                        std::to_string(arity) + " qubit(s)",
                    line, col);
        for (std::size_t i = 0; i < qubits.size(); ++i)
            for (std::size_t j = i + 1; j < qubits.size(); ++j)
                if (qubits[i] == qubits[j])
                    fail_at("gate repeats a qubit operand", line, col);
        GateOp g;
        g.kind = kind;
        g.qubits = qubits;
        for (const SymVal& v : params) g.params.push_back(sym_to_angle(v));
        result_.circuit.gates.push_back(std::move(g));
    }

    void emit_call(const std::string& gate, const std::vector<SymVal>& params,
                   const std::vector<int>& qubits, int line, int col, int depth) {
        if (depth > kMaxMacroDepth) fail_at("gate expansion too deep", line, col);
        auto bi = builtin_gates().find(gate);
        if (bi != builtin_gates().end()) {
            emit_builtin(bi->second, params, qubits, line, col);
            return;
        }
        if (gate == "ccx") {
            expand_ccx(params, qubits, line, col);
            return;
        }
        if (gate == "swap") {
            expand_swap(params, qubits, line, col);
            return;
        }
        if (gate == "barrier") {
            GateOp g;
            g.kind = GateKind::Barrier;
            g.qubits = qubits;
            result_.circuit.gates.push_back(std::move(g));
            return;
        }
        auto mi = macros_.find(gate);
        if (mi == macros_.end()) fail_at("unsupported gate '" + gate + "'", line, col);
        const Macro& m = mi->second;
        if (static_cast<int>(params.size()) != m.n_params)
            fail_at("gate '" + gate + "' expects " + std::to_string(m.n_params) +
                        " parameter(s)",
                    line, col);
        if (static_cast<int>(qubits.size()) != m.n_args)
            fail_at("gate '" + gate + "' expects " + std::to_string(m.n_args) + " qubit(s)",
                    line, col);
        for (std::size_t i = 0; i < qubits.size(); ++i)
            for (std::size_t j = i + 1; j < qubits.size(); ++j)
                if (qubits[i] == qubits[j]) fail_at("gate repeats a qubit operand", line, col);
        for (const MacroCall& call : m.body) {
            std::vector<SymVal> sub_params;
            for (const auto& e : call.params) sub_params.push_back(eval_expr(*e, params));
            std::vector<int> sub_qubits;
            for (int slot : call.arg_indices) sub_qubits.push_back(qubits[static_cast<std::size_t>(slot)]);
            emit_call(call.gate, sub_params, sub_qubits, call.line, call.col, depth + 1);
        }
    }

    void expand_ccx(const std::vector<SymVal>& params, const std::vector<int>& q, int line,
                    int col) {
        if (!params.empty()) fail_at("gate 'ccx' takes no parameters", line, col);
        if (q.size() != 3 || q[0] == q[1] || q[0] == q[2] || q[1] == q[2])
            fail_at("gate 'ccx' expects 3 distinct qubits", line, col);
        int a = q[0], b = q[1], c = q[2];
        auto g1 = [&](GateKind k, int t) { emit_builtin(k, {}, {t}, line, col); };
        auto cx = [&](int x, int y) { emit_builtin(GateKind::Cx, {}, {x, y}, line, col); };
        g1(GateKind::H, c);
        cx(b, c);
        g1(GateKind::Tdg, c);
        cx(a, c);
        g1(GateKind::T, c);
        cx(b, c);
        g1(GateKind::Tdg, c);
        cx(a, c);
        g1(GateKind::T, b);
        g1(GateKind::T, c);
        g1(GateKind::H, c);
        cx(a, b);
        g1(GateKind::T, a);
        g1(GateKind::Tdg, b);
        cx(a, b);
    }

    void expand_swap(const std::vector<SymVal>& params, const std::vector<int>& q, int line,
                     int col) {
        if (!params.empty()) fail_at("gate 'swap' takes no parameters", line, col);
        if (q.size() != 2 || q[0] == q[1])
            fail_at("gate 'swap' expects 2 distinct qubits", line, col);
        emit_builtin(GateKind::Cx, {}, {q[0], q[1]}, line, col);
        emit_builtin(GateKind::Cx, {}, {q[1], q[0]}, line, col);
        emit_builtin(GateKind::Cx, {}, {q[0], q[1]}, line, col);
    }

    void parse_application() {
        Token name = cur_;
        bump();
        std::vector<SymVal> params;
        if (at(Tok::LParen)) {
            bump();
            if (!at(Tok::RParen)) {
                while (true) {
                    auto e = parse_expr(nullptr);
                    params.push_back(eval_expr(*e, {}));
                    if (at(Tok::Comma)) {
                        bump();
                        continue;
                    }
                    break;
                }
            }
            expect(Tok::RParen, "')'");
        }
        std::vector<Operand> operands;
        while (true) {
            operands.push_back(parse_qubit_operand());
            if (at(Tok::Comma)) {
                bump();
                continue;
            }
            break;
        }
        expect(Tok::Semicolon, "';'");

        bool any_whole = false;
        std::size_t broadcast = 1;
        for (const Operand& op : operands) {
            if (op.whole_register) {
                any_whole = true;
                if (broadcast == 1)
                    broadcast = op.indices.size();
                else if (broadcast != op.indices.size())
                    fail_at("register operands of mismatched size", name.line, name.col);
            }
        }
        if (any_whole) {
            for (const Operand& op : operands)
                if (!op.whole_register && operands.size() > 1)
                    fail_at("cannot mix whole-register and indexed operands", name.line,
                            name.col);
        }
        // the statement is fully consumed; a semantic failure here must not
        // swallow the next statement during recovery
        try {
            for (std::size_t rep = 0; rep < broadcast; ++rep) {
                std::vector<int> qubits;
                for (const Operand& op : operands)
                    qubits.push_back(op.whole_register ? op.indices[rep] : op.indices[0]);
                emit_call(name.text, params, qubits, name.line, name.col, 0);
            }
        } catch (const ParseError& e) {
            result_.diagnostics.push_back(e.diag);
        }
    }

    Lexer lexer_;
    Token cur_;
    ParseResult result_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
    std::vector<std::string> order_;
    std::map<std::string, Macro> macros_;
};

}  // namespace

std::string format_diagnostic(const Diagnostic& d, const std::string& origin) {
    std::ostringstream out;
    out << origin << ':' << d.line << ':' << d.column << ": "
        << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message;
    return out.str();
}

ParseResult parse_qasm(const SourceProgram& src) {
    if (src.text.empty()) {
        ParseResult r;
        r.diagnostics.push_back(Diagnostic{Severity::Error, "empty source program", 1, 1});
        return r;
    }
    Parser parser(src);
    return parser.run();
}

}  // namespace qmpack::qasm
