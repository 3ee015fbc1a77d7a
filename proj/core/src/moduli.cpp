#include "qg/moduli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

namespace qg {

namespace {

using Complex = std::complex<double>;

std::uint32_t bit(int i) { return 1u << (i - 1); }

/// Rank of x among the masks with bit i-1 clear.
std::uint32_t edge_index(std::uint32_t x, int i) {
    std::uint32_t low = bit(i) - 1;
    return (x & low) | ((x >> 1) & ~low);
}

} // namespace

Tolerances Tolerances::standard() {
    Tolerances t;
    if (const char* env = std::getenv("QUASIGAUGE_TOLERANCE")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) {
            t.flat = v;
            t.herm = v;
            t.invariance = v;
        }
    }
    return t;
}

HermitianConnection HermitianConnection::from_edges(
    int n, const std::vector<std::vector<Complex>>& edges) {
    if (n < 1 || edges.size() != std::size_t(n))
        throw std::invalid_argument("from_edges: need one edge table per direction");
    std::uint32_t half = 1u << (n - 1);
    std::vector<std::vector<Complex>> phi(std::size_t(n),
                                          std::vector<Complex>(std::size_t(1) << n));
    for (int i = 1; i <= n; ++i) {
        if (edges[std::size_t(i - 1)].size() != half)
            throw std::invalid_argument("from_edges: wrong edge table size");
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            Complex v = edges[std::size_t(i - 1)][edge_index(x, i)];
            phi[std::size_t(i - 1)][x] = (x & bit(i)) ? std::conj(v) : v;
        }
    }
    return HermitianConnection(n, std::move(phi));
}

HermitianConnection HermitianConnection::from_phi(int n, std::vector<std::vector<Complex>> phi,
                                                  const Tolerances& tol) {
    if (n < 1 || phi.size() != std::size_t(n))
        throw std::invalid_argument("from_phi: need one table per direction");
    for (int i = 1; i <= n; ++i) {
        if (phi[std::size_t(i - 1)].size() != (std::size_t(1) << n))
            throw std::invalid_argument("from_phi: wrong table size");
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            Complex here = phi[std::size_t(i - 1)][x];
            Complex there = phi[std::size_t(i - 1)][x ^ bit(i)];
            if (std::abs(std::conj(here) - there) > tol.herm)
                throw std::invalid_argument("from_phi: hermiticity violated in direction " +
                                            std::to_string(i));
        }
    }
    return HermitianConnection(n, std::move(phi));
}

HermitianConnection HermitianConnection::face(int i, int value) const {
    if (n_ < 2 || i < 1 || i > n_) throw std::invalid_argument("face: bad direction");
    int m = n_ - 1;
    std::vector<std::vector<Complex>> phi(std::size_t(m),
                                          std::vector<Complex>(std::size_t(1) << m));
    for (std::uint32_t y = 0; y < (1u << m); ++y) {
        // re-insert the fixed coordinate to address the parent vertex
        std::uint32_t low = bit(i) - 1;
        std::uint32_t x = (y & low) | ((y & ~low) << 1) | (value ? bit(i) : 0u);
        int k = 0;
        for (int j = 1; j <= n_; ++j) {
            if (j == i) continue;
            phi[std::size_t(k)][y] = phi_[std::size_t(j - 1)][x];
            ++k;
        }
    }
    return HermitianConnection(m, std::move(phi));
}

HermitianConnection HermitianConnection::transformed(const std::array<int, 3>& perm,
                                                     std::uint32_t shift) const {
    if (n_ != 3) throw std::invalid_argument("transformed: n = 3 only");
    auto sigma = [&](std::uint32_t x) {
        std::uint32_t y = 0;
        for (int i = 1; i <= 3; ++i)
            if (x & bit(i)) y |= bit(perm[std::size_t(i - 1)]);
        return y ^ shift;
    };
    std::vector<std::vector<Complex>> phi(3, std::vector<Complex>(8));
    for (std::uint32_t x = 0; x < 8; ++x)
        for (int i = 1; i <= 3; ++i)
            phi[std::size_t(perm[std::size_t(i - 1)] - 1)][sigma(x)] = phi_[std::size_t(i - 1)][x];
    return HermitianConnection(3, std::move(phi));
}

double flatness_residual(const HermitianConnection& c) {
    double worst = 0.0;
    for (std::uint32_t x = 0; x < c.vertices(); ++x)
        for (int i = 1; i <= c.dim(); ++i)
            for (int j = i + 1; j <= c.dim(); ++j) {
                Complex f = c.phi(i, x) * c.phi(j, x ^ bit(i)) -
                            c.phi(j, x) * c.phi(i, x ^ bit(j));
                worst = std::max(worst, std::abs(f));
            }
    return worst;
}

std::vector<std::vector<double>> gauge_invariants(const HermitianConnection& c,
                                                  const Tolerances& tol) {
    std::vector<std::vector<double>> lambda(std::size_t(c.dim()),
                                            std::vector<double>(c.vertices()));
    for (int i = 1; i <= c.dim(); ++i)
        for (std::uint32_t x = 0; x < c.vertices(); ++x)
            lambda[std::size_t(i - 1)][x] = c.lambda(i, x);

    if (flatness_residual(c) <= tol.flat) {
        // derived constraints: d^i lambda_i = 0 and lambda_i d^i lambda_j = 0.
        // lambda values live at grid scale; on a genuinely flat connection the
        // residual bounds any violation far below the zero threshold, so the
        // threshold itself is the natural constraint scale.
        double ctol = tol.zero;
        for (int i = 1; i <= c.dim(); ++i)
            for (std::uint32_t x = 0; x < c.vertices(); ++x) {
                double li = lambda[std::size_t(i - 1)][x];
                if (std::abs(lambda[std::size_t(i - 1)][x ^ bit(i)] - li) > ctol)
                    throw FlatnessViolation("d^i lambda_i != 0 on a flat connection");
                for (int j = 1; j <= c.dim(); ++j) {
                    double dj = lambda[std::size_t(j - 1)][x ^ bit(i)] -
                                lambda[std::size_t(j - 1)][x];
                    if (std::abs(li * dj) > ctol)
                        throw FlatnessViolation("lambda_i d^i lambda_j != 0 on a flat connection");
                }
            }
    }
    return lambda;
}

HermitianConnection gauge_transform_u1(const HermitianConnection& c,
                                       const std::vector<Complex>& gamma,
                                       const Tolerances& tol) {
    if (gamma.size() != c.vertices())
        throw std::invalid_argument("gauge_transform_u1: wrong gamma size");
    for (Complex g : gamma)
        if (std::abs(std::abs(g) - 1.0) > tol.herm)
            throw std::invalid_argument("gauge_transform_u1: gamma is not pointwise unitary");
    std::vector<std::vector<Complex>> phi(std::size_t(c.dim()),
                                          std::vector<Complex>(c.vertices()));
    for (int i = 1; i <= c.dim(); ++i)
        for (std::uint32_t x = 0; x < c.vertices(); ++x)
            phi[std::size_t(i - 1)][x] = gamma[x] * c.phi(i, x) / gamma[x ^ bit(i)];
    return HermitianConnection::from_phi(c.dim(), std::move(phi), tol);
}

std::pair<std::vector<Complex>, HermitianConnection>
phase_gauge_fix(const HermitianConnection& c, const Tolerances& tol) {
    double residual = flatness_residual(c);
    if (residual > tol.flat) throw NotFlat(residual);

    std::vector<Complex> gamma(c.vertices(), Complex(1.0, 0.0));
    std::vector<bool> visited(c.vertices(), false);
    // Phase-mismatch scale: on O(1) amplitudes flatness bounds plaquette
    // phase defects by residual / lambda^2, far below this; a genuine
    // obstruction (possible when amplitudes sit near the zero threshold,
    // where tiny residuals no longer pin the phases) shows up at O(1).
    double htol = tol.zero;

    for (std::uint32_t root = 0; root < c.vertices(); ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        std::deque<std::uint32_t> queue{root};
        while (!queue.empty()) {
            std::uint32_t x = queue.front();
            queue.pop_front();
            for (int i = 1; i <= c.dim(); ++i) {
                double li = c.lambda(i, x);
                if (li <= tol.zero) continue; // zero edges carry no transport
                std::uint32_t y = x ^ bit(i);
                Complex step = gamma[x] * c.phi(i, x) / li;
                if (!visited[y]) {
                    visited[y] = true;
                    gamma[y] = step;
                    queue.push_back(y);
                } else if (std::abs(gamma[y] - step) > htol) {
                    throw HolonomyObstruction(
                        "path-dependent transport at vertex " + std::to_string(y) +
                        " (plaquette phase holonomy nontrivial)");
                }
            }
        }
    }

    HermitianConnection fixed = gauge_transform_u1(c, gamma, tol);
    for (int i = 1; i <= c.dim(); ++i)
        for (std::uint32_t x = 0; x < c.vertices(); ++x)
            if (c.lambda(i, x) > tol.zero) {
                Complex v = fixed.phi(i, x);
                if (std::abs(v.imag()) > htol || v.real() < -htol)
                    throw HolonomyObstruction("phase not removable in direction " +
                                              std::to_string(i));
            }
    return {std::move(gamma), std::move(fixed)};
}

namespace {

// Canonical case-(iii) nonzero-edge pattern: for each direction the vertex
// mask of the edge endpoint with that coordinate equal to 0.
// phi^1 = x2 x3 l      -> edge base (0,1,1) = 0b110
// phi^2 = x1 (1-x3) m  -> edge base (1,0,0) = 0b001
// phi^3 = (1-x1)(1-x2) v -> edge base (0,0,0)
constexpr std::array<std::uint32_t, 3> kCaseIIIBase = {0b110, 0b001, 0b000};

int perm_sign(const std::array<int, 3>& perm) {
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (perm[std::size_t(a)] > perm[std::size_t(b)]) ++inversions;
    return inversions % 2 ? -1 : +1;
}

FlatClassification classify_lambda(const HermitianConnection& c,
                                   const std::vector<std::vector<double>>& lambda,
                                   const Tolerances& tol) {
    int n = c.dim();
    std::uint32_t size = c.vertices();
    double z = tol.zero;

    bool all_zero = true;
    for (const auto& row : lambda)
        for (double v : row)
            if (v > z) all_zero = false;
    if (all_zero) {
        FlatClassification r;
        r.kind = FlatClassification::Kind::ZeroFamily;
        return r;
    }

    // case 1: a vertex where every lambda_i is nonzero forces all of them
    // constant and positive
    for (std::uint32_t x = 0; x < size; ++x) {
        bool maximal = true;
        for (int i = 1; i <= n; ++i)
            if (lambda[std::size_t(i - 1)][x] <= z) maximal = false;
        if (!maximal) continue;
        FlatClassification r;
        r.kind = FlatClassification::Kind::ConstantMaximal;
        for (int i = 1; i <= n; ++i) {
            double v = lambda[std::size_t(i - 1)][0];
            for (std::uint32_t y = 0; y < size; ++y)
                if (std::abs(lambda[std::size_t(i - 1)][y] - v) > z)
                    throw UnclassifiedPattern(lambda);
            r.params.push_back(v);
        }
        return r;
    }

    // case 2/2': a direction with lambda identically zero splits the space
    // into two independent faces
    for (int i = 1; i <= n; ++i) {
        bool splits = true;
        for (std::uint32_t x = 0; x < size; ++x)
            if (lambda[std::size_t(i - 1)][x] > z) splits = false;
        if (!splits) continue;
        FlatClassification r;
        r.kind = FlatClassification::Kind::Split;
        r.direction = i;
        r.faces.push_back(classify_flat(c.face(i, 0), tol));
        r.faces.push_back(classify_flat(c.face(i, 1), tol));
        return r;
    }

    // case 3 (n = 3 only): no split and no maximal point leaves the
    // three-disjoint-edge configuration, matched against the 48 cube
    // symmetries x -> perm(x) + shift
    if (n != 3) throw UnclassifiedPattern(lambda);

    std::array<std::uint32_t, 3> base{}; // per direction: edge endpoint with bit clear
    for (int i = 1; i <= 3; ++i) {
        std::vector<std::uint32_t> hot;
        for (std::uint32_t x = 0; x < size; ++x)
            if (lambda[std::size_t(i - 1)][x] > z) hot.push_back(x);
        if (hot.size() != 2 || (hot[0] ^ hot[1]) != bit(i)) throw UnclassifiedPattern(lambda);
        base[std::size_t(i - 1)] = hot[0] & ~bit(i);
    }

    std::array<int, 3> perm = {1, 2, 3};
    std::sort(perm.begin(), perm.end());
    do {
        auto sigma = [&](std::uint32_t x, std::uint32_t shift) {
            std::uint32_t y = 0;
            for (int i = 1; i <= 3; ++i)
                if (x & bit(i)) y |= bit(perm[std::size_t(i - 1)]);
            return y ^ shift;
        };
        for (std::uint32_t shift = 0; shift < 8; ++shift) {
            bool match = true;
            for (int i = 1; i <= 3 && match; ++i) {
                int p = perm[std::size_t(i - 1)];
                std::uint32_t image = sigma(kCaseIIIBase[std::size_t(i - 1)], shift) & ~bit(p);
                if (base[std::size_t(p - 1)] != image) match = false;
            }
            if (!match) continue;
            FlatClassification r;
            r.kind = FlatClassification::Kind::CubeCaseIII;
            r.origin = shift; // image of the canonical base vertex (0,0,0)
            r.orientation = perm;
            r.chirality = perm_sign(perm) * (std::popcount(shift) % 2 ? -1 : +1);
            for (int i = 1; i <= 3; ++i) {
                int p = perm[std::size_t(i - 1)];
                std::uint32_t hot = base[std::size_t(p - 1)];
                r.params.push_back(lambda[std::size_t(p - 1)][hot]);
            }
            return r;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw UnclassifiedPattern(lambda);
}

} // namespace

FlatClassification classify_flat(const HermitianConnection& c, const Tolerances& tol) {
    double residual = flatness_residual(c);
    if (residual > tol.flat) throw NotFlat(residual);
    return classify_lambda(c, gauge_invariants(c, tol), tol);
}

HermitianConnection canonical_maximal(const std::vector<double>& lambda) {
    int n = int(lambda.size());
    std::vector<std::vector<Complex>> phi(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
        phi[std::size_t(i - 1)].assign(std::size_t(1) << n, Complex(lambda[std::size_t(i - 1)]));
    return HermitianConnection::from_phi(n, std::move(phi));
}

HermitianConnection canonical_zero(int n) {
    return canonical_maximal(std::vector<double>(std::size_t(n), 0.0));
}

HermitianConnection canonical_split(int direction, const HermitianConnection& face0,
                                    const HermitianConnection& face1) {
    int m = face0.dim();
    if (face1.dim() != m) throw std::invalid_argument("canonical_split: face dimensions differ");
    int n = m + 1;
    if (direction < 1 || direction > n)
        throw std::invalid_argument("canonical_split: bad direction");
    std::vector<std::vector<Complex>> phi(std::size_t(n),
                                          std::vector<Complex>(std::size_t(1) << n));
    std::uint32_t low = bit(direction) - 1;
    for (std::uint32_t y = 0; y < (1u << m); ++y)
        for (int side = 0; side < 2; ++side) {
            std::uint32_t x = (y & low) | ((y & ~low) << 1) | (side ? bit(direction) : 0u);
            const HermitianConnection& f = side ? face1 : face0;
            int k = 1;
            for (int j = 1; j <= n; ++j) {
                if (j == direction) {
                    phi[std::size_t(j - 1)][x] = 0.0;
                } else {
                    phi[std::size_t(j - 1)][x] = f.phi(k, y);
                    ++k;
                }
            }
        }
    return HermitianConnection::from_phi(n, std::move(phi));
}

HermitianConnection canonical_case_iii(double l, double m, double v, int chirality) {
    if (l <= 0 || m <= 0 || v <= 0)
        throw std::invalid_argument("canonical_case_iii: parameters must be positive");
    std::vector<std::vector<Complex>> phi(3, std::vector<Complex>(8));
    for (std::uint32_t x = 0; x < 8; ++x) {
        double x1 = (x & 1u) ? 1.0 : 0.0;
        double x2 = (x & 2u) ? 1.0 : 0.0;
        double x3 = (x & 4u) ? 1.0 : 0.0;
        phi[0][x] = x2 * x3 * l;
        phi[1][x] = x1 * (1.0 - x3) * m;
        phi[2][x] = (1.0 - x1) * (1.0 - x2) * v;
    }
    HermitianConnection c = HermitianConnection::from_phi(3, std::move(phi));
    if (chirality == +1) return c;
    if (chirality == -1) return c.transformed({1, 2, 3}, 0b100); // reflection: shift by e_3
    throw std::invalid_argument("canonical_case_iii: chirality must be +1 or -1");
}

std::vector<SearchResult> search_flat(int n, const std::vector<double>& amplitudes,
                                      const std::vector<double>& phases,
                                      const Tolerances& tol) {
    std::vector<Complex> values;
    for (double a : amplitudes)
        for (double p : phases) {
            Complex v = a * Complex(std::cos(p), std::sin(p));
            bool dup = false;
            for (Complex w : values)
                if (std::abs(v - w) < 1e-12) dup = true;
            if (!dup) values.push_back(v);
        }

    std::vector<SearchResult> results;
    if (values.empty() || n < 1) return results;

    std::size_t half = std::size_t(1) << (n - 1);
    std::size_t edges = std::size_t(n) * half;
    std::vector<std::size_t> odo(edges, 0);
    while (true) {
        std::vector<std::vector<Complex>> tables(static_cast<std::size_t>(n),
                                                 std::vector<Complex>(half));
        for (std::size_t e = 0; e < edges; ++e) tables[e / half][e % half] = values[odo[e]];
        HermitianConnection c = HermitianConnection::from_edges(n, tables);
        double residual = flatness_residual(c);
        if (residual <= tol.flat) {
            SearchResult r{c, residual, std::nullopt, {}};
            try {
                r.classification = classify_flat(c, tol);
            } catch (const UnclassifiedPattern& u) {
                r.unclassified_lambda = u.lambda;
            }
            results.push_back(std::move(r));
        }
        std::size_t k = 0;
        while (k < edges && ++odo[k] == values.size()) odo[k++] = 0;
        if (k == edges) break;
    }
    return results;
}

std::string FlatClassification::str() const {
    std::ostringstream out;
    switch (kind) {
    case Kind::ZeroFamily:
        out << "zero-family";
        break;
    case Kind::ConstantMaximal: {
        out << "constant-maximal(";
        for (std::size_t i = 0; i < params.size(); ++i) out << (i ? ", " : "") << params[i];
        out << ")";
        break;
    }
    case Kind::Split:
        out << "split(direction " << direction << "; " << faces[0].str() << " | "
            << faces[1].str() << ")";
        break;
    case Kind::CubeCaseIII:
        out << "case-iii(origin " << origin << ", orientation (" << orientation[0] << " "
            << orientation[1] << " " << orientation[2] << "), chirality "
            << (chirality > 0 ? "+1" : "-1") << ", params (";
        for (std::size_t i = 0; i < params.size(); ++i) out << (i ? ", " : "") << params[i];
        out << "))";
        break;
    }
    return out.str();
}

} // namespace qg
