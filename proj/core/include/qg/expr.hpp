#ifndef QG_EXPR_HPP
#define QG_EXPR_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "qg/forms.hpp"
#include "qg/fuzzy.hpp"
#include "qg/quasialg.hpp"

namespace qg {

/// Syntax error with the offending input position (0-based).
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

/// Well-formed expression that cannot be evaluated (wrong degree, etc.).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression AST. User bracketing is preserved verbatim: nonassociative
/// products evaluate exactly as parenthesized, and unparenthesized chains
/// associate to the left.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Literal, Symbol, D, Inv, Add, Sub, Mul };
    enum class SymbolKind { U, V, W, E, Tau, Dx, X };

    Kind kind = Kind::Literal;
    Scalar literal;                   // Literal (pure real or pure imaginary)
    SymbolKind symbol = SymbolKind::U;
    std::uint32_t bits = 0;           // E: basis mask
    int bits_len = 0;                 // E: bitstring length as written
    int index = 0;                    // Tau / Dx / X
    ExprPtr lhs, rhs;                 // children (lhs only for D and Inv)
};

/// Evaluation context: a twisted group algebra ("octonion", "clifford-N")
/// or a fuzzy jet algebra ("fuzzy(n=..,K=..,m=..,lambda=..)"; m defaults
/// to 1 and lambda to 1/m, the negative-power specialization).
class EvalContext {
public:
    enum class Kind { Octonion, Clifford, Fuzzy };

    static EvalContext octonion();
    static EvalContext clifford(int n);
    static EvalContext fuzzy(int n, int K, DiffCochain f);
    /// Parses a context descriptor string as above.
    static EvalContext parse(const std::string& descriptor);

    Kind kind() const { return kind_; }
    int dim() const { return n_; }
    int truncation() const { return K_; }
    bool is_fuzzy() const { return kind_ == Kind::Fuzzy; }
    const TwistedAlgebra& algebra() const { return *alg_; }
    const DiffCochain& cochain() const { return *f_; }

private:
    EvalContext() = default;
    Kind kind_ = Kind::Octonion;
    int n_ = 0;
    int K_ = 0;
    std::optional<TwistedAlgebra> alg_;
    std::optional<DiffCochain> f_;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := scalar | symbol | 'd' '(' expr ')' | 'inv' '(' expr ')'
///           | '(' expr ')'
///   scalar := rational ['i']
///   symbol := 'u' | 'v' | 'w' | 'e' '[' bits ']' | 'tau' '[' int ']'
///           | 'dx' '[' int ']' | 'x' '[' int ']'
/// Throws ParseError with the input position on malformed input.
ExprPtr parse_expression(const std::string& text);

/// Parse and validate the symbols against a context (unknown symbol and
/// dimension mismatches are reported as ParseError at the symbol position).
ExprPtr parse_expression(const std::string& text, const EvalContext& ctx);

/// Minimal parenthesization preserving the AST:
/// parse(print(parse(s))) == parse(s).
std::string print_expression(const ExprPtr& e);

/// Evaluation result: differential forms over the group algebra (functions
/// are the degree-0 forms) or fuzzy forms over jets.
using Value = std::variant<DifferentialForm, FuzzyForm>;

/// Exact evaluation honoring the bracketing; products dispatch to
/// bullet_wedge / bullet_wedge_fuzzy, d to the exterior derivative, inv to
/// the pointwise (Fourier) or jet inverse of a degree-0 operand.
Value evaluate(const ExprPtr& e, const EvalContext& ctx);

/// Canonical rendering of a value ("v", "-1", "(1) + (1) x1^2", ...).
std::string value_str(const Value& v);

} // namespace qg

#endif
