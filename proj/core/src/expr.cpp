#include "qg/expr.hpp"

#include <bit>
#include <cctype>
#include <map>
#include <sstream>

namespace qg {

// ---------------------------------------------------------------------------
// Context descriptors

EvalContext EvalContext::octonion() {
    EvalContext c;
    c.kind_ = Kind::Octonion;
    c.n_ = 3;
    c.alg_ = TwistedAlgebra::octonions();
    return c;
}

EvalContext EvalContext::clifford(int n) {
    EvalContext c;
    c.kind_ = Kind::Clifford;
    c.n_ = n;
    c.alg_ = TwistedAlgebra::clifford(n);
    return c;
}

EvalContext EvalContext::fuzzy(int n, int K, DiffCochain f) {
    if (f.metric().dim() != n) throw std::invalid_argument("cochain metric has wrong dimension");
    EvalContext c;
    c.kind_ = Kind::Fuzzy;
    c.n_ = n;
    c.K_ = K;
    c.f_ = std::move(f);
    return c;
}

namespace {

std::string strip_spaces(const std::string& s) {
    std::string r;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) r += ch;
    return r;
}

/// Key-value list "n=2,K=3,m=2,lambda=1/2" -> map.
std::map<std::string, std::string> parse_kv(const std::string& body, const std::string& where) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        std::string item = body.substr(pos, comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("bad context parameter \"" + item + "\" in " + where);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
        pos = comma + 1;
    }
    return kv;
}

} // namespace

EvalContext EvalContext::parse(const std::string& descriptor) {
    std::string s = strip_spaces(descriptor);
    // Accept the Greek spelling of the deformation parameter.
    for (std::size_t p; (p = s.find("\xce\xbb")) != std::string::npos;)
        s.replace(p, 2, "lambda");
    if (s == "octonion") return octonion();
    if (s.rfind("clifford", 0) == 0) {
        std::string rest = s.substr(8);
        int n = 0;
        if (!rest.empty() && rest.front() == '-') {
            n = std::stoi(rest.substr(1));
        } else if (rest.size() > 4 && rest.front() == '(' && rest.back() == ')') {
            auto kv = parse_kv(rest.substr(1, rest.size() - 2), descriptor);
            n = std::stoi(kv.at("n"));
        } else {
            throw std::invalid_argument("bad clifford context \"" + descriptor + "\"");
        }
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("clifford dimension out of range");
        return clifford(n);
    }
    if (s.rfind("fuzzy(", 0) == 0 && s.back() == ')') {
        auto kv = parse_kv(s.substr(6, s.size() - 7), descriptor);
        if (!kv.count("n") || !kv.count("K"))
            throw std::invalid_argument("fuzzy context needs n and K");
        int n = std::stoi(kv.at("n"));
        int K = std::stoi(kv.at("K"));
        int m = kv.count("m") ? std::stoi(kv.at("m")) : 1;
        if (n < 1 || K < 0 || m < 1) throw std::invalid_argument("bad fuzzy context parameters");
        Rational lambda = Rational(1) / m;
        if (kv.count("lambda")) lambda = Rational(kv.at("lambda"));
        return fuzzy(n, K, DiffCochain::negative_power(m, lambda, Metric::euclidean(n)));
    }
    throw std::invalid_argument("unknown context \"" + descriptor + "\"");
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError("unexpected input", pos_);
        return e;
    }

private:
    static ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "' " + what, pos_);
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (eat('+')) {
                Expr x;
                x.kind = Expr::Kind::Add;
                x.lhs = e;
                x.rhs = term();
                e = node(std::move(x));
            } else if (eat('-')) {
                Expr x;
                x.kind = Expr::Kind::Sub;
                x.lhs = e;
                x.rhs = term();
                e = node(std::move(x));
            } else {
                return e;
            }
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (eat('*')) {
            Expr x;
            x.kind = Expr::Kind::Mul;
            x.lhs = e;
            x.rhs = factor();
            e = node(std::move(x));
        }
        return e;
    }

    ExprPtr factor() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')', "to close the group");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return literal();
        if (std::isalpha(static_cast<unsigned char>(c))) return symbol();
        throw ParseError("expected a scalar, symbol, or '('", pos_);
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected digits", pos_);
        return s_.substr(start, pos_ - start);
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    ExprPtr literal() {
        std::string num = digits();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            num += "/" + digits();
        }
        Rational r(num);
        // An 'i' suffix (possibly space-separated) makes the literal
        // imaginary, but only when it is the bare identifier "i".
        std::size_t save = pos_;
        skip();
        if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t id_start = pos_;
            if (identifier() == "i") {
                Expr x;
                x.literal = Scalar(Rational(0), r);
                return node(std::move(x));
            }
            pos_ = id_start;
        }
        pos_ = save;
        Expr x;
        x.literal = Scalar(r);
        return node(std::move(x));
    }

    int bracket_index() {
        expect('[', "after the symbol");
        skip();
        int i = std::stoi(digits());
        expect(']', "to close the index");
        return i;
    }

    ExprPtr symbol() {
        skip();
        std::size_t start = pos_;
        std::string name = identifier();
        Expr x;
        x.kind = Expr::Kind::Symbol;
        if (name == "d" || name == "inv") {
            x.kind = name == "d" ? Expr::Kind::D : Expr::Kind::Inv;
            expect('(', "after the operator");
            x.lhs = expr();
            expect(')', "to close the operator");
        } else if (name == "u") {
            x.symbol = Expr::SymbolKind::U;
        } else if (name == "v") {
            x.symbol = Expr::SymbolKind::V;
        } else if (name == "w") {
            x.symbol = Expr::SymbolKind::W;
        } else if (name == "e") {
            x.symbol = Expr::SymbolKind::E;
            expect('[', "after the symbol");
            skip();
            std::string bits = digits();
            expect(']', "to close the basis label");
            x.bits_len = int(bits.size());
            if (x.bits_len > kMaxDim) throw ParseError("basis label too long", start);
            for (std::size_t i = 0; i < bits.size(); ++i) {
                if (bits[i] == '1') x.bits |= 1u << i;
                else if (bits[i] != '0') throw ParseError("basis label must be binary", start);
            }
        } else if (name == "tau") {
            x.symbol = Expr::SymbolKind::Tau;
            x.index = bracket_index();
        } else if (name == "dx") {
            x.symbol = Expr::SymbolKind::Dx;
            x.index = bracket_index();
        } else if (name == "x") {
            x.symbol = Expr::SymbolKind::X;
            x.index = bracket_index();
        } else {
            throw ParseError("unknown symbol \"" + name + "\"", start);
        }
        return node(std::move(x));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

/// Reject symbols that do not exist in the context, with positions unknown
/// by now; reported as ParseError at position 0 (the AST does not retain
/// source spans).
void validate(const ExprPtr& e, const EvalContext& ctx) {
    if (!e) return;
    const int n = ctx.dim();
    if (e->kind == Expr::Kind::Symbol) {
        const bool fuzzy = ctx.is_fuzzy();
        switch (e->symbol) {
        case Expr::SymbolKind::U:
        case Expr::SymbolKind::V:
        case Expr::SymbolKind::W: {
            int i = int(e->symbol) - int(Expr::SymbolKind::U) + 1;
            if (fuzzy) throw ParseError("unknown symbol in a fuzzy context", 0);
            if (i > n) throw ParseError("generator index exceeds the dimension", 0);
            break;
        }
        case Expr::SymbolKind::E:
            if (fuzzy) throw ParseError("unknown symbol in a fuzzy context", 0);
            if (e->bits_len != n) throw ParseError("basis label has wrong dimension", 0);
            break;
        case Expr::SymbolKind::Tau:
            if (fuzzy) throw ParseError("unknown symbol in a fuzzy context", 0);
            if (e->index < 1 || e->index > n)
                throw ParseError("tau index out of range", 0);
            break;
        case Expr::SymbolKind::Dx:
        case Expr::SymbolKind::X:
            if (!fuzzy) throw ParseError("unknown symbol in a group context", 0);
            if (e->index < 1 || e->index > n)
                throw ParseError("coordinate index out of range", 0);
            break;
        }
    }
    validate(e->lhs, ctx);
    validate(e->rhs, ctx);
}

} // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

ExprPtr parse_expression(const std::string& text, const EvalContext& ctx) {
    ExprPtr e = parse_expression(text);
    validate(e, ctx);
    return e;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

/// 1 for +/-, 2 for *, 3 for atoms; children reprint with parens exactly
/// when re-parsing would regroup them.
int precedence(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        return 1;
    case Expr::Kind::Mul:
        return 2;
    default:
        return 3;
    }
}

void print(const ExprPtr& e, std::ostringstream& out, int min_prec) {
    const int prec = precedence(*e);
    const bool parens = prec < min_prec;
    if (parens) out << "(";
    switch (e->kind) {
    case Expr::Kind::Literal: {
        const Scalar& s = e->literal;
        if (s.im == 0) out << Scalar(s.re).str();
        else out << Scalar(s.im).str() << "i";
        break;
    }
    case Expr::Kind::Symbol:
        switch (e->symbol) {
        case Expr::SymbolKind::U: out << "u"; break;
        case Expr::SymbolKind::V: out << "v"; break;
        case Expr::SymbolKind::W: out << "w"; break;
        case Expr::SymbolKind::E: {
            out << "e[";
            for (int i = 0; i < e->bits_len; ++i) out << ((e->bits >> i) & 1u);
            out << "]";
            break;
        }
        case Expr::SymbolKind::Tau: out << "tau[" << e->index << "]"; break;
        case Expr::SymbolKind::Dx: out << "dx[" << e->index << "]"; break;
        case Expr::SymbolKind::X: out << "x[" << e->index << "]"; break;
        }
        break;
    case Expr::Kind::D:
    case Expr::Kind::Inv:
        out << (e->kind == Expr::Kind::D ? "d(" : "inv(");
        print(e->lhs, out, 0);
        out << ")";
        break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Mul: {
        const char* op = e->kind == Expr::Kind::Add ? " + "
                       : e->kind == Expr::Kind::Sub ? " - " : "*";
        print(e->lhs, out, prec);
        out << op;
        print(e->rhs, out, prec + 1); // left association: rhs at same level regroups
        break;
    }
    }
    if (parens) out << ")";
}

} // namespace

std::string print_expression(const ExprPtr& e) {
    std::ostringstream out;
    print(e, out, 0);
    return out.str();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

DifferentialForm group_value(const ExprPtr& e, const EvalContext& ctx) {
    const int n = ctx.dim();
    switch (e->kind) {
    case Expr::Kind::Literal:
        return DifferentialForm::monomial(GroupVector::zero(n), 0, e->literal);
    case Expr::Kind::Symbol:
        switch (e->symbol) {
        case Expr::SymbolKind::U:
        case Expr::SymbolKind::V:
        case Expr::SymbolKind::W: {
            int i = int(e->symbol) - int(Expr::SymbolKind::U) + 1;
            return DifferentialForm::monomial(GroupVector::unit(i, n), 0, Scalar(1));
        }
        case Expr::SymbolKind::E:
            return DifferentialForm::monomial(GroupVector(e->bits, n), 0, Scalar(1));
        case Expr::SymbolKind::Tau:
            return DifferentialForm::tau(e->index, n);
        default:
            throw EvalError("symbol has no meaning in a group context");
        }
    case Expr::Kind::Add:
        return group_value(e->lhs, ctx) + group_value(e->rhs, ctx);
    case Expr::Kind::Sub:
        return group_value(e->lhs, ctx) - group_value(e->rhs, ctx);
    case Expr::Kind::Mul:
        return bullet_wedge(group_value(e->lhs, ctx), group_value(e->rhs, ctx), ctx.algebra());
    case Expr::Kind::D:
        return d(group_value(e->lhs, ctx));
    case Expr::Kind::Inv: {
        DifferentialForm f = group_value(e->lhs, ctx);
        AlgebraElement g(n);
        for (const auto& [key, c] : f.terms()) {
            if (key.second != 0) throw EvalError("inv needs a degree-0 operand");
            g.add(key.first, c);
        }
        return DifferentialForm::from_function(invert(g));
    }
    }
    throw EvalError("malformed expression");
}

FuzzyForm fuzzy_value(const ExprPtr& e, const EvalContext& ctx) {
    const int n = ctx.dim();
    const int K = ctx.truncation();
    switch (e->kind) {
    case Expr::Kind::Literal:
        return FuzzyForm::from_function(Jet::constant(n, K, e->literal));
    case Expr::Kind::Symbol:
        switch (e->symbol) {
        case Expr::SymbolKind::X:
            return FuzzyForm::from_function(Jet::coordinate(n, K, e->index));
        case Expr::SymbolKind::Dx:
            return FuzzyForm::monomial(Jet::unit(n, K), 1u << (e->index - 1));
        default:
            throw EvalError("symbol has no meaning in a fuzzy context");
        }
    case Expr::Kind::Add:
        return fuzzy_value(e->lhs, ctx) + fuzzy_value(e->rhs, ctx);
    case Expr::Kind::Sub:
        return fuzzy_value(e->lhs, ctx) - fuzzy_value(e->rhs, ctx);
    case Expr::Kind::Mul:
        return bullet_wedge_fuzzy(fuzzy_value(e->lhs, ctx), fuzzy_value(e->rhs, ctx),
                                  ctx.cochain());
    case Expr::Kind::D:
        return d_fuzzy(fuzzy_value(e->lhs, ctx));
    case Expr::Kind::Inv: {
        FuzzyForm f = fuzzy_value(e->lhs, ctx);
        for (const auto& [mask, c] : f.components())
            if (mask != 0) throw EvalError("inv needs a degree-0 operand");
        return FuzzyForm::from_function(f.component(0).inverse());
    }
    }
    throw EvalError("malformed expression");
}

std::string basis_name(const GroupVector& a) {
    if (a.is_zero()) return "1";
    static const char* letters[] = {"u", "v", "w"};
    if (a.n <= 3 && std::popcount(a.bits) == 1)
        return letters[std::countr_zero(a.bits)];
    return "e[" + a.str() + "]";
}

} // namespace

Value evaluate(const ExprPtr& e, const EvalContext& ctx) {
    validate(e, ctx);
    if (ctx.is_fuzzy()) return fuzzy_value(e, ctx);
    return group_value(e, ctx);
}

std::string value_str(const Value& v) {
    if (std::holds_alternative<FuzzyForm>(v)) {
        const FuzzyForm& f = std::get<FuzzyForm>(v);
        if (f.components().size() == 1 && f.components().count(0)) return f.component(0).str();
        return f.str();
    }
    const DifferentialForm& f = std::get<DifferentialForm>(v);
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) out << " + ";
        first = false;
        std::string base = basis_name(key.first);
        for (int i = 1; i <= f.dim(); ++i) {
            if (!(key.second & (1u << (i - 1)))) continue;
            if (base == "1") base.clear();
            if (!base.empty()) base += "*";
            base += "tau[" + std::to_string(i) + "]";
        }
        if (base == "1") {
            out << c.str();
        } else if (c.is_one()) {
            out << base;
        } else if (c == Scalar(-1)) {
            out << "-" << base;
        } else {
            out << "(" << c.str() << ") " << base;
        }
    }
    return out.str();
}

} // namespace qg
