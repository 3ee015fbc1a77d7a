#ifndef QG_MODULI_HPP
#define QG_MODULI_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

/// Float tolerances for the moduli computations. All arithmetic here is
/// short products of O(1) floats, so residuals are either exactly zero or
/// of the order of the search grid spacing; the defaults are generous.
/// The environment variable QUASIGAUGE_TOLERANCE, when set, overrides all
/// three values.
struct Tolerances {
    double flat = 1e-9;
    double herm = 1e-9;
    double invariance = 1e-10;
    /// Threshold separating vanishing from nonvanishing lambda values in the
    /// zero-pattern analysis; lambda values live on the search grid scale
    /// (O(1)), far above it.
    double zero = 1e-6;

    /// Defaults, with the QUASIGAUGE_TOLERANCE override applied.
    static Tolerances standard();
};

struct NotFlat : std::runtime_error {
    double residual;
    explicit NotFlat(double r)
        : std::runtime_error("connection is not flat (residual " + std::to_string(r) + ")"),
          residual(r) {}
};

struct FlatnessViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HolonomyObstruction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unitary U(1) Yang-Mills connection on Z_2^n in the link variables
/// phi^i = 1 + alpha^i, stored per vertex with the float backend.
/// Hermiticity conj(phi^i(x)) = phi^i(x + e_i) is structural: construction
/// goes through one complex value per unordered edge, or through a full
/// per-vertex table that is validated against the edge constraint.
class HermitianConnection {
public:
    using Complex = std::complex<double>;

    /// One value per edge in direction i (i = 1..n): edges[i-1] is indexed
    /// by the vertex mask x with bit i-1 clear, compacted in increasing x
    /// order (2^{n-1} entries). phi^i(x) takes the edge value on the x_i = 0
    /// endpoint and its conjugate on the other.
    static HermitianConnection from_edges(int n,
                                          const std::vector<std::vector<Complex>>& edges);

    /// Full per-vertex table phi[i-1][x]; throws std::invalid_argument if
    /// the hermiticity constraint fails beyond tol.herm.
    static HermitianConnection from_phi(int n, std::vector<std::vector<Complex>> phi,
                                        const Tolerances& tol = Tolerances::standard());

    int dim() const { return n_; }
    std::uint32_t vertices() const { return 1u << n_; }

    /// phi^i(x), i = 1..n.
    Complex phi(int i, std::uint32_t x) const { return phi_[std::size_t(i - 1)][x]; }
    /// lambda_i(x) = |phi^i(x)|.
    double lambda(int i, std::uint32_t x) const { return std::abs(phi(i, x)); }

    /// Restriction to the face x_i = value: an (n-1)-dimensional connection
    /// in the remaining directions (in increasing order).
    HermitianConnection face(int i, int value) const;

    /// Push the connection through the cube symmetry x -> perm(x) + shift
    /// (n = 3), where perm permutes coordinate indices (perm[i-1] is the
    /// image of direction i) and shift is a vertex mask.
    HermitianConnection transformed(const std::array<int, 3>& perm, std::uint32_t shift) const;

private:
    HermitianConnection(int n, std::vector<std::vector<Complex>> phi)
        : n_(n), phi_(std::move(phi)) {}
    int n_ = 0;
    std::vector<std::vector<Complex>> phi_; // phi_[i-1][vertex]
};

/// max over x and i<j of |phi^i(x) phi^j(x+e_i) - phi^j(x) phi^i(x+e_j)|,
/// the largest plaquette curvature component F^{ij} = rho_i phi^j - rho_j phi^i.
double flatness_residual(const HermitianConnection& c);

/// The gauge-invariant amplitude fields lambda_i(x). When the connection is
/// flat within tol.flat, the derived constraints lambda_i d^i lambda_j = 0
/// and d^i lambda_i = 0 are asserted and FlatnessViolation is thrown if they
/// fail beyond tolerance.
std::vector<std::vector<double>> gauge_invariants(const HermitianConnection& c,
                                                  const Tolerances& tol = Tolerances::standard());

/// Unitary gauge transform (phi^gamma)^i(x) = gamma(x) phi^i(x) / gamma(x+e_i)
/// by a pointwise-unitary gamma (|gamma(x)| = 1 enforced within tol.herm).
HermitianConnection gauge_transform_u1(const HermitianConnection& c,
                                       const std::vector<std::complex<double>>& gamma,
                                       const Tolerances& tol = Tolerances::standard());

/// For a flat connection, builds a unitary gamma with gamma(origin) = 1 on
/// each component of the nonzero-lambda edge graph (parallel transport along
/// spanning-tree paths) so that every transformed phi^i is real and >= 0
/// wherever lambda_i > 0. Path independence is verified on every non-tree
/// edge; a phase mismatch raises HolonomyObstruction, a residual above
/// tol.flat raises NotFlat.
std::pair<std::vector<std::complex<double>>, HermitianConnection>
phase_gauge_fix(const HermitianConnection& c, const Tolerances& tol = Tolerances::standard());

/// Classification of a flat connection by the zero pattern of its
/// gauge-invariant lambda fields.
struct FlatClassification {
    enum class Kind {
        ConstantMaximal, ///< all lambda_i constant and > 0
        Split,           ///< some lambda_i identically 0: two independent faces
        CubeCaseIII,     ///< n = 3, three disjoint nonzero edges, one per direction
        ZeroFamily,      ///< lambda identically 0 (alpha = -theta up to phases)
    };

    Kind kind = Kind::ZeroFamily;
    /// ConstantMaximal: the constant lambda_i per direction.
    /// CubeCaseIII: the three nonzero edge values in canonical order.
    std::vector<double> params;
    /// Split only: the direction with lambda identically zero, and the
    /// classifications of the x_dir = 0 and x_dir = 1 faces.
    int direction = 0;
    std::vector<FlatClassification> faces;
    /// CubeCaseIII only: image of the canonical base vertex, the direction
    /// permutation applied, and the pattern chirality (+1 for the standard
    /// configuration, -1 for its mirror image).
    std::uint32_t origin = 0;
    std::array<int, 3> orientation{1, 2, 3};
    int chirality = +1;

    std::string str() const;
};

/// Raised when a flat connection matches none of the classified families;
/// carries the lambda field for inspection, since such a solution would
/// falsify the completeness of the classification.
struct UnclassifiedPattern : std::runtime_error {
    std::vector<std::vector<double>> lambda;
    explicit UnclassifiedPattern(std::vector<std::vector<double>> l)
        : std::runtime_error("flat connection matches no classified family"),
          lambda(std::move(l)) {}
};

/// Decision procedure over the lambda zero pattern: constant maximal if some
/// vertex has all lambda_i nonzero; split (recursing on the two faces) if
/// some lambda_i vanishes identically; the n = 3 three-edge configuration
/// matched against the 48 cube symmetries otherwise. Throws NotFlat or
/// UnclassifiedPattern.
FlatClassification classify_flat(const HermitianConnection& c,
                                 const Tolerances& tol = Tolerances::standard());

/// Canonical family constructors; every output is flat and hermitian.
HermitianConnection canonical_maximal(const std::vector<double>& lambda);
HermitianConnection canonical_zero(int n);
/// Glue two (n-1)-dimensional connections as the x_dir = 0 / x_dir = 1 faces
/// of a split solution (lambda_dir identically zero).
HermitianConnection canonical_split(int direction, const HermitianConnection& face0,
                                    const HermitianConnection& face1);
/// The n = 3 case-(iii) solution
///   phi^1 = x2 x3 l, phi^2 = x1 (1-x3) m, phi^3 = (1-x1)(1-x2) v
/// (chirality +1), or its mirror image (chirality -1); l, m, v > 0.
HermitianConnection canonical_case_iii(double l, double m, double v, int chirality = +1);

/// One hit of the exhaustive search: a flat connection and its
/// classification, or the lambda field of an unclassified pattern.
struct SearchResult {
    HermitianConnection connection;
    double residual = 0.0;
    std::optional<FlatClassification> classification;
    std::vector<std::vector<double>> unclassified_lambda; // nonempty on failure
};

/// Enumerates hermitian connections with each edge value drawn from
/// amplitude * exp(i phase) over the given grids, keeps the flat ones and
/// classifies them. Unclassified hits are returned with the lambda field
/// instead of a classification.
std::vector<SearchResult> search_flat(int n, const std::vector<double>& amplitudes,
                                      const std::vector<double>& phases,
                                      const Tolerances& tol = Tolerances::standard());

} // namespace qg

#endif
