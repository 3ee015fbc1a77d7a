#ifndef QG_SERIALIZE_HPP
#define QG_SERIALIZE_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "qg/cochain.hpp"
#include "qg/fuzzy.hpp"
#include "qg/gauge.hpp"
#include "qg/moduli.hpp"
#include "qg/quasialg.hpp"

namespace qg {

using Json = nlohmann::json;

/// Malformed or wrong-schema document.
struct BadDocument : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inverse of Scalar::str(): accepts "p/q", "r/s i", and "p/q+r/s i"
/// (also the '-' spellings the printer produces).
Scalar parse_scalar(const std::string& s);

/// Every document carries a "schema" field; readers reject other schemas
/// with BadDocument.

/// {"schema":"qg.cochain.v1", "n", "values": {"a|b": scalar-string},
///  "exponent": {"rows": [bitstring per row], "cubic": bool} when present}
Json cochain_to_json(const Cochain& f);
Cochain cochain_from_json(const Json& j);

/// {"schema":"qg.bidiff.v1", "n",
///  "terms": [{"left","right","coeff"}] sorted lexicographically by bitstring}
Json bidiff_to_json(const BidiffOperator& op);
BidiffOperator bidiff_from_json(const Json& j);

/// {"schema":"qg.form.v1", "n",
///  "terms": [{"a": bitstring, "taus": sorted index list, "coeff"}]}
Json form_to_json(const DifferentialForm& omega);
DifferentialForm form_from_json(const Json& j);

/// {"schema":"qg.connection.v1", "alpha": form document, "backend": "exact"}
/// (the float backend lives in the moduli schema below).
Json connection_to_json(const Connection& alpha);
Connection connection_from_json(const Json& j);

/// {"schema":"qg.jet.v1", "n", "K",
///  "terms": [{"exponents": [..], "coeff": scalar-string}]}
Json jet_to_json(const Jet& a);
Jet jet_from_json(const Json& j);

/// Tagged description of a differential cochain, buildable into the
/// (accessor-free) DiffCochain value.
struct DiffCochainSpec {
    std::string family; // "negative-power" | "gaussian" | "exponential" | "custom"
    int m = 0;                  // negative-power only
    Rational lambda;            // negative-power, gaussian, exponential
    std::vector<Scalar> series; // custom only
    Metric eta;

    DiffCochain build() const;
};

/// {"schema":"qg.diffcochain.v1", "family", family fields,
///  "eta": rational-string matrix}
Json diff_cochain_to_json(const DiffCochainSpec& spec);
DiffCochainSpec diff_cochain_spec_from_json(const Json& j);

/// {"schema":"qg.hermitian.v1", "n",
///  "phi": per-direction edge table [[re, im], ..] indexed by the vertex
///  mask with the direction bit removed (float backend)}
Json hermitian_to_json(const HermitianConnection& c);
HermitianConnection hermitian_from_json(const Json& j);

/// One search hit as a JSON line:
/// {"schema":"qg.moduli.v1", "phi": edge table, "residual",
///  "classification": string or null, "unclassified_lambda" on failure}
Json search_result_to_json(const SearchResult& r);

} // namespace qg

#endif
