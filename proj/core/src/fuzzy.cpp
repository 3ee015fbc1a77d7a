#include "qg/fuzzy.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <sstream>

namespace qg {

namespace {

int total_degree(const MultiIndex& p) { return std::accumulate(p.begin(), p.end(), 0); }

void require_compatible(const Jet& a, const Jet& b) {
    if (a.dim() != b.dim() || a.truncation() != b.truncation())
        throw std::invalid_argument("jets have incompatible dimension or truncation");
}

Rational rational_binomial(int top, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= Rational(top - j, j + 1);
    return r;
}

Rational rational_pow(const Rational& x, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= x;
    return r;
}

} // namespace

// ---------------------------------------------------------------------------
// Jet

Jet::Jet(int n, int K) : n_(n), K_(K) {
    if (n < 1 || K < 0) throw std::invalid_argument("Jet: need n >= 1 and K >= 0");
}

Jet Jet::constant(int n, int K, const Scalar& value) {
    Jet j(n, K);
    j.add_term(MultiIndex(std::size_t(n), 0), value);
    return j;
}

Jet Jet::coordinate(int n, int K, int mu) {
    if (mu < 1 || mu > n) throw std::invalid_argument("Jet::coordinate: bad index");
    MultiIndex p(std::size_t(n), 0);
    p[std::size_t(mu - 1)] = 1;
    return monomial(n, K, p, Scalar(1));
}

Jet Jet::monomial(int n, int K, const MultiIndex& p, const Scalar& coeff) {
    if (p.size() != std::size_t(n)) throw std::invalid_argument("Jet::monomial: bad multi-index");
    for (int e : p)
        if (e < 0) throw std::invalid_argument("Jet::monomial: negative exponent");
    Jet j(n, K);
    j.add_term(p, coeff);
    return j;
}

void Jet::add_term(const MultiIndex& p, const Scalar& c) {
    if (c.is_zero() || total_degree(p) > K_) return;
    auto it = coeffs_.find(p);
    if (it == coeffs_.end()) {
        coeffs_.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
}

Scalar Jet::coeff(const MultiIndex& p) const {
    auto it = coeffs_.find(p);
    return it == coeffs_.end() ? Scalar(0) : it->second;
}

Jet Jet::with_truncation(int K) const {
    Jet r(n_, K);
    for (const auto& [p, c] : coeffs_) r.add_term(p, c);
    return r;
}

Jet Jet::derivative(int i) const {
    if (i < 1 || i > n_) throw std::invalid_argument("Jet::derivative: bad direction");
    Jet r(n_, K_);
    for (const auto& [p, c] : coeffs_) {
        int e = p[std::size_t(i - 1)];
        if (e == 0) continue;
        MultiIndex q = p;
        q[std::size_t(i - 1)] = e - 1;
        r.add_term(q, Scalar(e) * c);
    }
    return r;
}

Jet operator+(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    Jet r = a;
    for (const auto& [p, c] : b.coeffs_) r.add_term(p, c);
    return r;
}

Jet operator-(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    Jet r = a;
    for (const auto& [p, c] : b.coeffs_) r.add_term(p, -c);
    return r;
}

Jet operator-(const Jet& a) { return Scalar(-1) * a; }

Jet operator*(const Scalar& s, const Jet& a) {
    Jet r(a.n_, a.K_);
    if (s.is_zero()) return r;
    for (const auto& [p, c] : a.coeffs_) r.add_term(p, s * c);
    return r;
}

Jet operator*(const Jet& a, const Jet& b) {
    require_compatible(a, b);
    Jet r(a.n_, a.K_);
    for (const auto& [p, cp] : a.coeffs_)
        for (const auto& [q, cq] : b.coeffs_) {
            MultiIndex s = p;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += q[i];
            r.add_term(s, cp * cq);
        }
    return r;
}

bool operator==(const Jet& a, const Jet& b) {
    return a.n_ == b.n_ && a.K_ == b.K_ && a.coeffs_ == b.coeffs_;
}

Jet Jet::inverse() const {
    MultiIndex zero(std::size_t(n_), 0);
    Scalar c0 = coeff(zero);
    if (c0.is_zero()) throw NonInvertibleJet();
    // a = c0 (1 + u) with u of positive degree: 1/a = (1/c0) sum (-u)^j,
    // a finite geometric series since u^{K+1} = 0 modulo truncation
    Scalar c0inv = Scalar(1) / c0;
    Jet u = c0inv * *this - unit(n_, K_);
    Jet result = unit(n_, K_);
    Jet power = unit(n_, K_);
    for (int j = 1; j <= K_; ++j) {
        power = Scalar(-1) * (power * u);
        if (power.is_zero()) break;
        result = result + power;
    }
    return c0inv * result;
}

std::string Jet::str() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : coeffs_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (int i = 1; i <= n_; ++i) {
            int e = p[std::size_t(i - 1)];
            if (e == 0) continue;
            out << " x" << i;
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Metric and DiffCochain

Metric Metric::euclidean(int n) {
    Metric m;
    m.eta.assign(std::size_t(n), std::vector<Rational>(std::size_t(n), 0));
    for (int i = 0; i < n; ++i) m.eta[std::size_t(i)][std::size_t(i)] = 1;
    return m;
}

Metric Metric::symplectic(Rational theta) {
    Metric m;
    m.eta.assign(2, std::vector<Rational>(2, 0));
    m.eta[0][1] = theta;
    m.eta[1][0] = -theta;
    return m;
}

Metric Metric::general(std::vector<std::vector<Rational>> entries) {
    Metric m;
    m.eta = std::move(entries);
    for (const auto& row : m.eta)
        if (row.size() != m.eta.size()) throw std::invalid_argument("Metric: not square");
    return m;
}

DiffCochain DiffCochain::negative_power(int m, Rational lambda, Metric eta) {
    if (m < 1) throw std::invalid_argument("negative_power: need m >= 1");
    DiffCochain f(Family::NegativePower, std::move(eta));
    f.m_ = m;
    f.lambda_ = std::move(lambda);
    return f;
}

DiffCochain DiffCochain::negative_power(int m, Metric eta) {
    return negative_power(m, Rational(1, m), std::move(eta));
}

DiffCochain DiffCochain::gaussian(Rational lambda, Metric eta) {
    DiffCochain f(Family::Gaussian, std::move(eta));
    f.lambda_ = std::move(lambda);
    return f;
}

DiffCochain DiffCochain::exponential(Rational lambda, Metric eta) {
    DiffCochain f(Family::Exponential, std::move(eta));
    f.lambda_ = std::move(lambda);
    return f;
}

DiffCochain DiffCochain::custom(std::vector<Scalar> series, Metric eta) {
    if (series.empty() || !series[0].is_one())
        throw std::invalid_argument("custom cochain: series must start with 1 (normalization)");
    DiffCochain f(Family::Custom, std::move(eta));
    f.series_ = std::move(series);
    return f;
}

Scalar DiffCochain::forward_coeff(int k) const {
    switch (family_) {
    case Family::NegativePower:
        // (1 + lambda t / m)^{-m}: C(m+k-1, k) (-lambda/m)^k
        return Scalar(rational_binomial(m_ + k - 1, k) * rational_pow(-lambda_ / m_, k));
    case Family::Gaussian: {
        // exp(-lambda t^2 / 2): even powers only
        if (k % 2) return Scalar(0);
        int j = k / 2;
        Rational fact = 1;
        for (int i = 2; i <= j; ++i) fact *= i;
        return Scalar(rational_pow(-lambda_ / 2, j) / fact);
    }
    case Family::Exponential: {
        Rational fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        return Scalar(rational_pow(lambda_, k) / fact);
    }
    case Family::Custom:
        return k < int(series_.size()) ? series_[std::size_t(k)] : Scalar(0);
    }
    return Scalar(0);
}

Scalar DiffCochain::inverse_coeff(int k) const {
    switch (family_) {
    case Family::NegativePower:
        // (1 + lambda t / m)^{m}: finite binomial sum
        return k <= m_ ? Scalar(rational_binomial(m_, k) * rational_pow(lambda_ / m_, k))
                       : Scalar(0);
    case Family::Gaussian: {
        if (k % 2) return Scalar(0);
        int j = k / 2;
        Rational fact = 1;
        for (int i = 2; i <= j; ++i) fact *= i;
        return Scalar(rational_pow(lambda_ / 2, j) / fact);
    }
    case Family::Exponential: {
        Rational fact = 1;
        for (int i = 2; i <= k; ++i) fact *= i;
        return Scalar(rational_pow(-lambda_, k) / fact);
    }
    case Family::Custom: {
        // formal inversion: b_0 = 1, b_k = -sum_{j=1..k} f_j b_{k-j}
        std::vector<Scalar> b(std::size_t(k) + 1, Scalar(0));
        b[0] = Scalar(1);
        for (int r = 1; r <= k; ++r)
            for (int j = 1; j <= r; ++j) b[std::size_t(r)] -= forward_coeff(j) * b[std::size_t(r - j)];
        return b[std::size_t(k)];
    }
    }
    return Scalar(0);
}

// ---------------------------------------------------------------------------
// Series application machinery

namespace {

/// A weighted tensor term; the scalar weight is folded into the first slot.
template <std::size_t N> using TensorTerm = std::array<Jet, N>;

/// One application of box = sum_{ij} eta_{ij} d^i (x) d^j to the (a, b)
/// slots of every term.
template <std::size_t N>
std::vector<TensorTerm<N>> apply_box(const std::vector<TensorTerm<N>>& terms,
                                     const Metric& eta, std::size_t slot_a,
                                     std::size_t slot_b) {
    std::vector<TensorTerm<N>> out;
    int n = eta.dim();
    for (const auto& t : terms)
        for (int i = 1; i <= n; ++i) {
            Jet da = t[slot_a].derivative(i);
            if (da.is_zero()) continue;
            for (int j = 1; j <= n; ++j) {
                const Rational& w = eta.eta[std::size_t(i - 1)][std::size_t(j - 1)];
                if (w == 0) continue;
                Jet db = t[slot_b].derivative(j);
                if (db.is_zero()) continue;
                TensorTerm<N> s = t;
                s[slot_a] = Scalar(w) * da;
                s[slot_b] = db;
                out.push_back(std::move(s));
            }
        }
    return out;
}

/// Applies the operator series sum_k coeff(k) O^k where O is a sum of boxes
/// over the given slot pairs; terminates because every box lowers jet
/// degrees. A non-negative max_order caps the series by hand.
template <std::size_t N, typename Coeff>
std::vector<TensorTerm<N>> apply_series(std::vector<TensorTerm<N>> terms, const Metric& eta,
                                        const std::vector<std::pair<std::size_t, std::size_t>>& ops,
                                        Coeff coeff, int max_order = -1) {
    std::vector<TensorTerm<N>> out;
    for (int k = 0; !terms.empty() && (max_order < 0 || k <= max_order); ++k) {
        Scalar ck = coeff(k);
        if (!ck.is_zero())
            for (const auto& t : terms) {
                TensorTerm<N> s = t;
                s[0] = ck * s[0];
                if (!s[0].is_zero()) out.push_back(std::move(s));
            }
        // O(terms) for the next power
        std::vector<TensorTerm<N>> next;
        for (const auto& [sa, sb] : ops) {
            auto part = apply_box(terms, eta, sa, sb);
            next.insert(next.end(), part.begin(), part.end());
        }
        terms = std::move(next);
    }
    return out;
}

Jet multiply_pairs(const std::vector<TensorTerm<2>>& terms, int n, int K) {
    Jet r(n, K);
    for (const auto& t : terms) r = r + t[0] * t[1];
    return r;
}

} // namespace

Jet bullet_jet_capped(const Jet& a, const Jet& b, const DiffCochain& F, int max_order) {
    require_compatible(a, b);
    if (a.dim() != F.metric().dim())
        throw std::invalid_argument("bullet_jet: cochain metric dimension mismatch");
    auto terms = apply_series<2>({{a, b}}, F.metric(), {{0, 1}},
                                 [&](int k) { return F.inverse_coeff(k); }, max_order);
    return multiply_pairs(terms, a.dim(), a.truncation());
}

Jet bullet_jet(const Jet& a, const Jet& b, const DiffCochain& F) {
    return bullet_jet_capped(a, b, F, -1);
}

Jet associator_jet(const Jet& a, const Jet& b, const Jet& c, const DiffCochain& F) {
    require_compatible(a, b);
    require_compatible(b, c);
    // Nested bullets need headroom: a term of an intermediate product above
    // the input truncation K can be differentiated back below K by the outer
    // bullet. At 3K nothing that can return below K is ever dropped.
    int K = a.truncation();
    Jet la = a.with_truncation(3 * K);
    Jet lb = b.with_truncation(3 * K);
    Jet lc = c.with_truncation(3 * K);
    Jet lhs = bullet_jet(bullet_jet(la, lb, F), lc, F);

    // Phi = f(box_23) f(box_12 + box_13) f(box_13 + box_23)^{-1} f(box_12)^{-1};
    // the four operator series commute, so they compose in any order.
    auto fwd = [&](int k) { return F.forward_coeff(k); };
    auto inv = [&](int k) { return F.inverse_coeff(k); };
    std::vector<TensorTerm<3>> terms{{la, lb, lc}};
    terms = apply_series<3>(std::move(terms), F.metric(), {{1, 2}}, fwd);
    terms = apply_series<3>(std::move(terms), F.metric(), {{0, 1}, {0, 2}}, fwd);
    terms = apply_series<3>(std::move(terms), F.metric(), {{0, 2}, {1, 2}}, inv);
    terms = apply_series<3>(std::move(terms), F.metric(), {{0, 1}}, inv);

    Jet rhs(a.dim(), 3 * K);
    for (const auto& t : terms) rhs = rhs + bullet_jet(t[0], bullet_jet(t[1], t[2], F), F);
    return (lhs - rhs).with_truncation(K);
}

Jet amplify_fuzzy(const Jet& g, const std::vector<int>& dirs) {
    Jet r = g;
    for (int i : dirs) r = r.derivative(i);
    return r;
}

// ---------------------------------------------------------------------------
// FuzzyForm

FuzzyForm FuzzyForm::from_function(const Jet& a) {
    FuzzyForm f(a.dim(), a.truncation());
    f.add_term(0, a);
    return f;
}

FuzzyForm FuzzyForm::monomial(const Jet& coeff, std::uint32_t dx_mask) {
    if (dx_mask >= (1u << coeff.dim()))
        throw std::invalid_argument("FuzzyForm::monomial: dx mask out of range");
    FuzzyForm f(coeff.dim(), coeff.truncation());
    f.add_term(dx_mask, coeff);
    return f;
}

void FuzzyForm::add_term(std::uint32_t mask, const Jet& c) {
    if (c.is_zero()) return;
    auto it = comps_.find(mask);
    if (it == comps_.end()) {
        comps_.emplace(mask, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) comps_.erase(it);
}

Jet FuzzyForm::component(std::uint32_t dx_mask) const {
    auto it = comps_.find(dx_mask);
    return it == comps_.end() ? Jet(n_, K_) : it->second;
}

FuzzyForm operator+(const FuzzyForm& a, const FuzzyForm& b) {
    if (a.n_ != b.n_ || a.K_ != b.K_)
        throw std::invalid_argument("forms have incompatible dimension or truncation");
    FuzzyForm r = a;
    for (const auto& [mask, c] : b.comps_) r.add_term(mask, c);
    return r;
}

FuzzyForm operator-(const FuzzyForm& a, const FuzzyForm& b) { return a + Scalar(-1) * b; }

FuzzyForm operator*(const Scalar& s, const FuzzyForm& a) {
    FuzzyForm r(a.dim(), a.truncation());
    for (const auto& [mask, c] : a.components()) {
        Jet sc = s * c;
        if (!sc.is_zero()) r = r + FuzzyForm::monomial(sc, mask);
    }
    return r;
}

bool operator==(const FuzzyForm& a, const FuzzyForm& b) {
    return a.n_ == b.n_ && a.K_ == b.K_ && a.comps_ == b.comps_;
}

std::string FuzzyForm::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mask, c] : comps_) {
        if (!first) out << "  +  ";
        first = false;
        out << "[" << c.str() << "]";
        for (int mu = 1; mu <= n_; ++mu)
            if (mask & (1u << (mu - 1))) out << " dx" << mu;
    }
    return out.str();
}

namespace {

/// Sign of merging ordered dx factor sets: (-1)^{inversions}, 0 on overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    int inversions = 0;
    for (std::uint32_t bit = a; bit; bit &= bit - 1) {
        std::uint32_t lowest = bit & ~(bit - 1);
        inversions += std::popcount(b & (lowest - 1));
    }
    return inversions % 2 ? -1 : +1;
}

} // namespace

FuzzyForm d_fuzzy(const FuzzyForm& omega) {
    FuzzyForm r(omega.dim(), omega.truncation());
    for (const auto& [mask, c] : omega.components())
        for (int mu = 1; mu <= omega.dim(); ++mu) {
            Jet dc = c.derivative(mu);
            if (dc.is_zero()) continue;
            std::uint32_t dxm = 1u << (mu - 1);
            int sign = wedge_sign(dxm, mask);
            if (sign == 0) continue;
            r.add_term(dxm | mask, sign < 0 ? Scalar(-1) * dc : dc);
        }
    return r;
}

FuzzyForm wedge_fuzzy(const FuzzyForm& a, const FuzzyForm& b) {
    if (a.dim() != b.dim() || a.truncation() != b.truncation())
        throw std::invalid_argument("forms have incompatible dimension or truncation");
    FuzzyForm r(a.dim(), a.truncation());
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            Jet c = ca * cb;
            if (sign < 0) c = Scalar(-1) * c;
            r.add_term(ma | mb, c);
        }
    return r;
}

FuzzyForm bullet_wedge_fuzzy(const FuzzyForm& a, const FuzzyForm& b, const DiffCochain& F) {
    if (a.dim() != b.dim() || a.truncation() != b.truncation())
        throw std::invalid_argument("forms have incompatible dimension or truncation");
    FuzzyForm r(a.dim(), a.truncation());
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            Jet c = bullet_jet(ca, cb, F);
            if (sign < 0) c = Scalar(-1) * c;
            r.add_term(ma | mb, c);
        }
    return r;
}

FuzzyForm amplify_fuzzy(const FuzzyForm& omega, const std::vector<int>& dirs) {
    FuzzyForm r(omega.dim(), omega.truncation());
    for (const auto& [mask, c] : omega.components()) {
        Jet dc = amplify_fuzzy(c, dirs);
        if (!dc.is_zero()) r = r + FuzzyForm::monomial(dc, mask);
    }
    return r;
}

FuzzyForm curvature_fuzzy(const FuzzyForm& alpha, const DiffCochain& F) {
    FuzzyForm r = d_fuzzy(alpha);
    auto fwd = [&](int k) { return F.forward_coeff(k); };
    // the forward series applied before the deformed wedge, per component
    for (const auto& [ma, ca] : alpha.components())
        for (const auto& [mb, cb] : alpha.components()) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            auto terms = apply_series<2>({{ca, cb}}, F.metric(), {{0, 1}}, fwd);
            for (const auto& t : terms) {
                Jet c = bullet_jet(t[0], t[1], F);
                if (sign < 0) c = Scalar(-1) * c;
                if (!c.is_zero()) r = r + FuzzyForm::monomial(c, ma | mb);
            }
        }
    return r;
}

FuzzyForm curvature_untwisted_fuzzy(const FuzzyForm& alpha) {
    return d_fuzzy(alpha) + wedge_fuzzy(alpha, alpha);
}

FuzzyForm pure_gauge_fuzzy(const Jet& gamma, const DiffCochain& F) {
    Jet ginv = gamma.inverse();
    FuzzyForm r(gamma.dim(), gamma.truncation());
    auto fwd = [&](int k) { return F.forward_coeff(k); };
    auto terms = apply_series<2>({{ginv, gamma}}, F.metric(), {{0, 1}}, fwd);
    for (const auto& t : terms)
        for (int mu = 1; mu <= gamma.dim(); ++mu) {
            Jet c = bullet_jet(t[0], t[1].derivative(mu), F);
            if (!c.is_zero()) r = r + FuzzyForm::monomial(c, 1u << (mu - 1));
        }
    return r;
}

namespace {

FuzzyForm twisted_conjugation_fuzzy(const FuzzyForm& alpha, const Jet& gamma,
                                    const DiffCochain& F, bool include_f12) {
    // lift the nested products as in associator_jet; the inverse is taken at
    // the lifted truncation so its higher terms are available to derivatives
    int K = alpha.truncation();
    Jet lgamma = gamma.with_truncation(3 * K);
    Jet ginv = lgamma.inverse();
    FuzzyForm r(alpha.dim(), K);
    auto fwd = [&](int k) { return F.forward_coeff(k); };
    for (const auto& [mask, comp] : alpha.components()) {
        std::vector<TensorTerm<3>> terms{{ginv, comp.with_truncation(3 * K), lgamma}};
        if (include_f12) terms = apply_series<3>(std::move(terms), F.metric(), {{0, 1}}, fwd);
        terms = apply_series<3>(std::move(terms), F.metric(), {{0, 2}, {1, 2}}, fwd);
        for (const auto& t : terms) {
            Jet c = bullet_jet(bullet_jet(t[0], t[1], F), t[2], F).with_truncation(K);
            if (!c.is_zero()) r = r + FuzzyForm::monomial(c, mask);
        }
    }
    return r;
}

} // namespace

FuzzyForm gauge_transform_fuzzy(const FuzzyForm& alpha, const Jet& gamma, const DiffCochain& F) {
    return twisted_conjugation_fuzzy(alpha, gamma, F, true) + pure_gauge_fuzzy(gamma, F);
}

FuzzyForm gauge_transform_fuzzy_displayed(const FuzzyForm& alpha, const Jet& gamma,
                                          const DiffCochain& F) {
    return twisted_conjugation_fuzzy(alpha, gamma, F, false) + pure_gauge_fuzzy(gamma, F);
}

FuzzyForm gauge_transform_untwisted_fuzzy(const FuzzyForm& alpha, const Jet& gamma) {
    Jet ginv = gamma.inverse();
    FuzzyForm r(alpha.dim(), alpha.truncation());
    for (const auto& [mask, comp] : alpha.components()) {
        Jet c = ginv * comp * gamma;
        if (!c.is_zero()) r = r + FuzzyForm::monomial(c, mask);
    }
    for (int mu = 1; mu <= alpha.dim(); ++mu) {
        Jet c = ginv * gamma.derivative(mu);
        if (!c.is_zero()) r = r + FuzzyForm::monomial(c, 1u << (mu - 1));
    }
    return r;
}

} // namespace qg
