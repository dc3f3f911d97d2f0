// Textual (JSON) forms of alphabets, points, sets, trees, certificates and
// families.

#ifndef TTREE_SERIALIZE_HPP
#define TTREE_SERIALIZE_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "ttree/partitions.hpp"
#include "ttree/star.hpp"

namespace ttree {

using Json = nlohmann::json;

/// Parses JSON text; throws ParseError.
Json parse_json(const std::string& text);

Json to_json(const Alphabet& alphabet);
Alphabet alphabet_from_json(const Json& j);

/// {"base":{"head":[...],"period":[...]},"patch":{}}; exact points only.
Json to_json(const Point& p);
Point point_from_json(const Json& j);

/// The descriptor tree; throws NotSerializable for programmatic sets.
Json to_json(const NatSet& a);
NatSet natset_from_json(const Json& j);

/// {"A":..., "ground":...}, plus "sizes" for alphabets other than constant 2.
Json to_json(const TrimmedTree& t);
TrimmedTree tree_from_json(const Json& j);

Json to_json(const InclusionCert& cert);
Json to_json(const PatternCell& cell);

/// A family is a list of trees.
Json to_json(const Family& family);
Family family_from_json(const Json& j);

}  // namespace ttree

#endif  // TTREE_SERIALIZE_HPP
