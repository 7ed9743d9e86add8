#pragma once

// JSON forms of the library types. Field order is fixed and doubles are
// written with 17 significant digits, so equal results give equal bytes.

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfx/factorize.hpp"
#include "cfx/lca_reduce.hpp"
#include "cfx/report.hpp"
#include "cfx/seq_core.hpp"

namespace cfx {

using Json = nlohmann::ordered_json;

/// Pretty-printed with two-space indent; non-finite doubles become null.
std::string dump_json(const Json& j);

Json to_json(const SeqZ& s);
Json to_json(const SeqZm& s);
Json to_json(const GroupFunction& f);
Json to_json(const Extremal& e);
Json to_json(const SupportZ& h);
Json to_json(const SupportZm& h);
Json to_json(const PdCertificate& c);
Json to_json(const SolveReport& r);
Json to_json(const Factorization& f);
Json to_json(const GroupDescriptor& g);
Json to_json(const GroupElement& x);
Json to_json(const OmegaDescriptor& omega);
Json to_json(const ReducedProblem& p);

/// {"domain":"Z"|"Zm","modulus":m?,"entries":[[k,re,im],...]}; im optional.
std::variant<SeqZ, SeqZm> seq_from_json(const Json& j);
SupportZ support_z_from_json(const Json& j);
SupportZm support_zm_from_json(const Json& j);
GroupDescriptor group_from_json(const Json& j);
/// Array of "p/q" strings or integers.
GroupElement element_from_json(const GroupDescriptor& g, const Json& j);
/// {"explicit":[[...],...]} or {"boxes":[[["lo","hi"],...],...]}; an end
/// may be null, "-inf" or "inf".
OmegaDescriptor omega_from_json(const GroupDescriptor& g, const Json& j);

/// "0,1,-1,5,-5" (whitespace allowed).
std::vector<int> parse_int_list(const std::string& text);
/// "1..6" or a single integer.
std::pair<int, int> parse_range(const std::string& text);

}  // namespace cfx
