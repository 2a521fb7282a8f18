#pragma once

// JSON encodings shared by the CLI and the reports. Forms are [a, b, c];
// lattices are {"diag": [...]} when diagonal and {"gram": [[...], ...]}
// (row-major) otherwise.

#include <string>

#include <json.hpp>

#include "quinrep/escalation.hpp"
#include "quinrep/oracle.hpp"

namespace quinrep {

using Json = nlohmann::ordered_json;

Json to_json(const Form& f);
Json to_json(const GramLattice& lattice);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const RepresentationCertificate& cert);
Json to_json(const ExhaustionProof& proof);
Json to_json(const RepresentationResult& result);
Json to_json(const Decision& d);

/// Accepts [[...]], {"gram": [[...]]} or {"diag": [...]}.
GramLattice lattice_from_json(const Json& j);

/// "1,1,1,3,7" for a diagonal lattice or "@file.json" for a Gram file.
GramLattice parse_lattice_spec(const std::string& spec);

Form form_from_json(const Json& j);

} // namespace quinrep
