#include "qg/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <utility>

namespace qg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Rational parse_rational(const std::string& s) {
    std::string t = trim(s);
    if (t.empty()) throw BadDocument("empty rational");
    try {
        return Rational(t);
    } catch (const std::exception&) {
        throw BadDocument("bad rational: \"" + s + "\"");
    }
}

std::string rational_str(const Rational& r) { return Scalar(r).str(); }

void require_schema(const Json& j, const std::string& id) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != id)
        throw BadDocument("expected schema \"" + id + "\"");
}

/// Mask to a bitstring with component 1 first, matching GroupVector::str().
std::string mask_str(std::uint32_t mask, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (mask >> i) & 1u ? '1' : '0';
    return s;
}

std::uint32_t parse_mask(const std::string& s, int n) {
    if (int(s.size()) != n) throw BadDocument("bitstring \"" + s + "\" has wrong length");
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
        if (s[std::size_t(i)] == '1') mask |= 1u << i;
        else if (s[std::size_t(i)] != '0') throw BadDocument("bad bitstring \"" + s + "\"");
    }
    return mask;
}

} // namespace

Scalar parse_scalar(const std::string& input) {
    std::string s = trim(input);
    bool has_imag = !s.empty() && s.back() == 'i';
    if (has_imag) s = trim(s.substr(0, s.size() - 1));
    if (s.empty()) throw BadDocument("empty scalar");
    if (!has_imag) return Scalar(parse_rational(s));
    // Split "p/q+r/s" / "p/q-r/s" after the leading (possibly signed) part.
    std::size_t pos = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') { pos = i; break; }
    if (pos == std::string::npos) return Scalar(Rational(0), parse_rational(s));
    std::string re = s.substr(0, pos);
    std::string im = s[pos] == '+' ? s.substr(pos + 1) : s.substr(pos);
    return Scalar(parse_rational(re), parse_rational(im));
}

// ---------------------------------------------------------------------------
// Cochain

Json cochain_to_json(const Cochain& f) {
    const int n = f.dim();
    Json values = Json::object();
    for (std::uint32_t a = 0; a < (1u << n); ++a)
        for (std::uint32_t b = 0; b < (1u << n); ++b) {
            GroupVector ga{a, n}, gb{b, n};
            values[ga.str() + "|" + gb.str()] = f.value(ga, gb).str();
        }
    Json j{{"schema", "qg.cochain.v1"}, {"n", n}, {"values", values}};
    if (f.exponent_form()) {
        const ExponentForm& e = *f.exponent_form();
        Json rows = Json::array();
        for (int r = 0; r < n; ++r) rows.push_back(mask_str(e.rows[std::size_t(r)], n));
        j["exponent"] = Json{{"rows", rows}, {"cubic", e.cubic}};
    }
    return j;
}

Cochain cochain_from_json(const Json& j) {
    require_schema(j, "qg.cochain.v1");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxDim) throw BadDocument("bad dimension");
    std::map<std::pair<GroupVector, GroupVector>, Scalar> values;
    if (j.contains("values"))
        for (const auto& [key, val] : j.at("values").items()) {
            auto bar = key.find('|');
            if (bar == std::string::npos) throw BadDocument("bad pair key \"" + key + "\"");
            GroupVector a{parse_mask(key.substr(0, bar), n), n};
            GroupVector b{parse_mask(key.substr(bar + 1), n), n};
            values[{a, b}] = parse_scalar(val.get<std::string>());
        }
    if (!j.contains("exponent")) {
        if (values.empty()) throw BadDocument("cochain needs values or an exponent form");
        return Cochain::from_table(n, std::move(values));
    }
    ExponentForm e;
    e.n = n;
    const Json& exp = j.at("exponent");
    const Json& rows = exp.at("rows");
    if (int(rows.size()) != n) throw BadDocument("exponent form needs n rows");
    for (int r = 0; r < n; ++r)
        e.rows[std::size_t(r)] = parse_mask(rows[std::size_t(r)].get<std::string>(), n);
    e.cubic = exp.value("cubic", false);
    if (e.cubic && n != 3) throw BadDocument("cubic exponent term requires n = 3");
    Cochain f = Cochain::from_exponent(e);
    for (const auto& [ab, v] : values)
        if (f.value(ab.first, ab.second) != v)
            throw BadDocument("values table contradicts the exponent form");
    return f;
}

// ---------------------------------------------------------------------------
// BidiffOperator

Json bidiff_to_json(const BidiffOperator& op) {
    std::vector<std::pair<std::pair<std::string, std::string>, Scalar>> rows;
    for (const auto& [lr, c] : op.terms)
        rows.push_back({{mask_str(lr.first, op.n), mask_str(lr.second, op.n)}, c});
    std::sort(rows.begin(), rows.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    Json terms = Json::array();
    for (const auto& [lr, c] : rows)
        terms.push_back(Json{{"left", lr.first}, {"right", lr.second}, {"coeff", c.str()}});
    return Json{{"schema", "qg.bidiff.v1"}, {"n", op.n}, {"terms", terms}};
}

BidiffOperator bidiff_from_json(const Json& j) {
    require_schema(j, "qg.bidiff.v1");
    BidiffOperator op;
    op.n = j.at("n").get<int>();
    if (op.n < 1 || op.n > kMaxDim) throw BadDocument("bad dimension");
    for (const Json& t : j.at("terms"))
        op.terms[{parse_mask(t.at("left").get<std::string>(), op.n),
                  parse_mask(t.at("right").get<std::string>(), op.n)}] =
            parse_scalar(t.at("coeff").get<std::string>());
    return op;
}

// ---------------------------------------------------------------------------
// Forms and connections

Json form_to_json(const DifferentialForm& omega) {
    const int n = omega.dim();
    Json terms = Json::array();
    for (const auto& [key, c] : omega.terms()) {
        Json taus = Json::array();
        for (int i = 1; i <= n; ++i)
            if (key.second & (1u << (i - 1))) taus.push_back(i);
        terms.push_back(Json{{"a", key.first.str()}, {"taus", taus}, {"coeff", c.str()}});
    }
    return Json{{"schema", "qg.form.v1"}, {"n", n}, {"terms", terms}};
}

DifferentialForm form_from_json(const Json& j) {
    require_schema(j, "qg.form.v1");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxDim) throw BadDocument("bad dimension");
    DifferentialForm omega(n);
    for (const Json& t : j.at("terms")) {
        GroupVector a = GroupVector::parse(t.at("a").get<std::string>());
        if (a.n != n) throw BadDocument("group vector has wrong dimension");
        std::uint32_t taus = 0;
        for (const Json& i : t.at("taus")) {
            int d = i.get<int>();
            if (d < 1 || d > n) throw BadDocument("tau index out of range");
            taus |= 1u << (d - 1);
        }
        omega.add(a, taus, parse_scalar(t.at("coeff").get<std::string>()));
    }
    return omega;
}

Json connection_to_json(const Connection& alpha) {
    return Json{{"schema", "qg.connection.v1"},
                {"alpha", form_to_json(alpha.alpha())},
                {"backend", "exact"}};
}

Connection connection_from_json(const Json& j) {
    require_schema(j, "qg.connection.v1");
    if (j.value("backend", "exact") != std::string("exact"))
        throw BadDocument("the float backend is carried by qg.hermitian.v1 documents");
    return Connection(form_from_json(j.at("alpha")));
}

// ---------------------------------------------------------------------------
// Jets and differential cochain specs

Json jet_to_json(const Jet& a) {
    Json terms = Json::array();
    for (const auto& [p, c] : a.terms())
        terms.push_back(Json{{"exponents", p}, {"coeff", c.str()}});
    return Json{{"schema", "qg.jet.v1"}, {"n", a.dim()}, {"K", a.truncation()}, {"terms", terms}};
}

Jet jet_from_json(const Json& j) {
    require_schema(j, "qg.jet.v1");
    const int n = j.at("n").get<int>();
    const int K = j.at("K").get<int>();
    Jet a(n, K);
    for (const Json& t : j.at("terms")) {
        MultiIndex p = t.at("exponents").get<MultiIndex>();
        if (int(p.size()) != n) throw BadDocument("exponent vector has wrong length");
        a = a + Jet::monomial(n, K, p, parse_scalar(t.at("coeff").get<std::string>()));
    }
    return a;
}

DiffCochain DiffCochainSpec::build() const {
    if (family == "negative-power") return DiffCochain::negative_power(m, lambda, eta);
    if (family == "gaussian") return DiffCochain::gaussian(lambda, eta);
    if (family == "exponential") return DiffCochain::exponential(lambda, eta);
    if (family == "custom") return DiffCochain::custom(series, eta);
    throw BadDocument("unknown cochain family \"" + family + "\"");
}

Json diff_cochain_to_json(const DiffCochainSpec& spec) {
    Json eta = Json::array();
    for (const auto& row : spec.eta.eta) {
        Json r = Json::array();
        for (const Rational& v : row) r.push_back(rational_str(v));
        eta.push_back(r);
    }
    Json j{{"schema", "qg.diffcochain.v1"}, {"family", spec.family}, {"eta", eta}};
    if (spec.family == "negative-power") j["m"] = spec.m;
    if (spec.family != "custom") j["lambda"] = rational_str(spec.lambda);
    if (spec.family == "custom") {
        Json series = Json::array();
        for (const Scalar& c : spec.series) series.push_back(c.str());
        j["series"] = series;
    }
    return j;
}

DiffCochainSpec diff_cochain_spec_from_json(const Json& j) {
    require_schema(j, "qg.diffcochain.v1");
    DiffCochainSpec spec;
    spec.family = j.at("family").get<std::string>();
    std::vector<std::vector<Rational>> eta;
    for (const Json& row : j.at("eta")) {
        std::vector<Rational> r;
        for (const Json& v : row) r.push_back(parse_rational(v.get<std::string>()));
        eta.push_back(std::move(r));
    }
    spec.eta = Metric::general(std::move(eta));
    if (spec.family == "negative-power") spec.m = j.at("m").get<int>();
    if (spec.family != "custom" && j.contains("lambda"))
        spec.lambda = parse_rational(j.at("lambda").get<std::string>());
    if (spec.family == "custom")
        for (const Json& c : j.at("series"))
            spec.series.push_back(parse_scalar(c.get<std::string>()));
    return spec;
}

// ---------------------------------------------------------------------------
// Moduli (float backend)

Json hermitian_to_json(const HermitianConnection& c) {
    const int n = c.dim();
    Json phi = Json::object();
    for (int i = 1; i <= n; ++i) {
        Json edges = Json::array();
        const std::uint32_t low = (1u << (i - 1)) - 1;
        for (std::uint32_t e = 0; e < (1u << (n - 1)); ++e) {
            std::uint32_t x = (e & low) | ((e & ~low) << 1);
            auto v = c.phi(i, x);
            edges.push_back(Json::array({v.real(), v.imag()}));
        }
        phi[std::to_string(i)] = edges;
    }
    return Json{{"schema", "qg.hermitian.v1"}, {"n", n}, {"phi", phi}};
}

HermitianConnection hermitian_from_json(const Json& j) {
    require_schema(j, "qg.hermitian.v1");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxDim) throw BadDocument("bad dimension");
    std::vector<std::vector<HermitianConnection::Complex>> edges(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const Json& row = j.at("phi").at(std::to_string(i));
        if (row.size() != (1u << (n - 1))) throw BadDocument("edge table has wrong size");
        for (const Json& v : row)
            edges[std::size_t(i - 1)].push_back(
                {v.at(0).get<double>(), v.at(1).get<double>()});
    }
    return HermitianConnection::from_edges(n, edges);
}

Json search_result_to_json(const SearchResult& r) {
    Json j{{"schema", "qg.moduli.v1"},
           {"n", r.connection.dim()},
           {"phi", hermitian_to_json(r.connection)["phi"]},
           {"residual", r.residual}};
    j["classification"] = r.classification ? Json(r.classification->str()) : Json(nullptr);
    if (!r.unclassified_lambda.empty()) j["unclassified_lambda"] = r.unclassified_lambda;
    return j;
}

} // namespace qg
