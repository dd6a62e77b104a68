#ifndef NERETIN_JSON_IO_HPP
#define NERETIN_JSON_IO_HPP

#include <json.hpp>

#include "neretin/blocks.hpp"
#include "neretin/measure.hpp"
#include "neretin/sym_factor.hpp"

namespace neretin::io {

using Json = nlohmann::ordered_json;

std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

// permutations serialize as cycle strings and image arrays; either is accepted
Json perm_to_json(const perm::Permutation& p);
perm::Permutation perm_from_json(const Json& j, unsigned degree);
perm::Permutation perm_from_json(const Json& j);  // degree inferred

Json group_to_json(const perm::PermGroup& g);
perm::PermGroup group_from_json(const Json& j);

Json blocks_to_json(const perm::BlockSystem& b);
Json verdict_to_json(const perm::FactorizationVerdict& v);

Json leafset_to_json(const tree::LeafSet& l);
tree::LeafSet leafset_from_json(const Json& j, const tree::Signature& sig);
/// Textual grammar: "{" addr ("," addr)* "}".
tree::LeafSet leafset_parse(const std::string& text, const tree::Signature& sig);
std::string leafset_str(const tree::LeafSet& l);

Json clopen_to_json(const tree::Clopen& c);
tree::Clopen clopen_from_json(const Json& j, const tree::Signature& sig);

Json machine_to_json(const aa::TailMachine& m);
aa::TailMachine machine_from_json(const Json& j);

Json element_to_json(const aa::AlmostAuto& g);
aa::AlmostAuto element_from_json(const Json& j);

Json measure_to_json(const measure::CylinderMeasure& m);
measure::CylinderMeasure measure_from_json(const Json& j, const tree::Signature& sig);

Json certificate_to_json(const level::CocompactCertificate& c);

tree::Signature signature_from_json(const Json& j);
Json signature_to_json(const tree::Signature& sig);

} // namespace neretin::io

#endif
