#include "ttree/serialize.hpp"

#include <set>

#include "ttree/errors.hpp"

namespace ttree {

namespace {

std::vector<bool> parse_bits(const Json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a 0/1 string");
  std::vector<bool> out;
  for (char c : j.get<std::string>()) {
    if (c != '0' && c != '1') throw ParseError(std::string(what) + " must be a 0/1 string");
    out.push_back(c == '1');
  }
  return out;
}

BitSeq parse_bitseq(const Json& j) {
  if (!j.is_object() || !j.contains("head") || !j.contains("period")) {
    throw ParseError("expected {\"head\":..., \"period\":...}");
  }
  auto period = parse_bits(j.at("period"), "period");
  if (period.empty()) throw ParseError("period must be non-empty");
  return BitSeq(parse_bits(j.at("head"), "head"), std::move(period));
}

Eventual<Symbol> parse_symbols(const Json& j) {
  if (!j.is_object() || !j.contains("head") || !j.contains("period")) {
    throw ParseError("expected {\"head\":[...], \"period\":[...]}");
  }
  auto list = [](const Json& v) {
    if (!v.is_array()) throw ParseError("expected an array of integers");
    std::vector<Symbol> out;
    for (const Json& x : v) {
      if (!x.is_number_unsigned()) throw ParseError("expected a non-negative integer");
      out.push_back(x.get<Symbol>());
    }
    return out;
  };
  auto period = list(j.at("period"));
  if (period.empty()) throw ParseError("period must be non-empty");
  return Eventual<Symbol>(list(j.at("head")), std::move(period));
}

Json symbols_json(const Eventual<Symbol>& e) { return {{"head", e.head()}, {"period", e.period()}}; }

std::size_t parse_index(const Json& j) {
  if (!j.is_number_unsigned()) throw ParseError("expected a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json to_json(const Alphabet& alphabet) { return {{"sizes", symbols_json(alphabet.sizes())}}; }

Alphabet alphabet_from_json(const Json& j) {
  const Json& body = j.is_object() && j.contains("sizes") ? j.at("sizes") : j;
  return Alphabet(parse_symbols(body));
}

Json to_json(const Point& p) {
  if (!p.is_exact()) throw NotSerializable("lazy point has no textual form");
  return {{"base", symbols_json(p.exact())}, {"patch", Json::object()}};
}

Point point_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("base")) throw ParseError("point needs a \"base\"");
  std::map<std::size_t, Symbol> patch;
  if (j.contains("patch")) {
    if (!j.at("patch").is_object()) throw ParseError("patch must be an object");
    for (const auto& [key, value] : j.at("patch").items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoull(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("patch key \"" + key + "\" is not an index");
      }
      if (!value.is_number_unsigned()) throw ParseError("patch values must be symbols");
      patch[idx] = value.get<Symbol>();
    }
  }
  return Point(parse_symbols(j.at("base")), patch);
}

Json to_json(const NatSet& a) { return Json::parse(a.describe()); }

NatSet natset_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw ParseError("set descriptor must have exactly one key");
  const auto& [kind, body] = *j.items().begin();
  if (kind == "up") return NatSet::up(parse_bitseq(body));
  if (kind == "tail") return NatSet::tail_from(parse_index(body));
  if (kind == "minus") {
    if (!body.is_object() || !body.contains("inner") || !body.contains("removed") ||
        !body.at("removed").is_array()) {
      throw ParseError("minus needs \"inner\" and \"removed\"");
    }
    std::set<std::size_t> removed;
    for (const Json& x : body.at("removed")) removed.insert(parse_index(x));
    return NatSet::minus_finite(natset_from_json(body.at("inner")), removed);
  }
  if (kind == "ad") {
    if (!body.is_object() || !body.contains("seed") || !body.contains("carrier")) {
      throw ParseError("ad needs \"seed\" and \"carrier\"");
    }
    return NatSet::ad_member(parse_bitseq(body.at("seed")), natset_from_json(body.at("carrier")));
  }
  if (kind == "alternate") return NatSet::alternate(natset_from_json(body));
  throw ParseError("unknown set descriptor \"" + kind + "\"");
}

Json to_json(const TrimmedTree& t) {
  const Point& ground = !t.ground().is_exact() && t.ground_source() ? *t.ground_source() : t.ground();
  Json out = {{"A", to_json(t.branching())}, {"ground", to_json(ground)}};
  if (!(t.alphabet() == Alphabet())) out["sizes"] = symbols_json(t.alphabet().sizes());
  return out;
}

TrimmedTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A")) throw ParseError("tree needs \"A\"");
  const Alphabet alphabet = j.contains("sizes") ? alphabet_from_json(j.at("sizes")) : Alphabet();
  const Point ground = j.contains("ground") ? point_from_json(j.at("ground")) : Point();
  return TrimmedTree(alphabet, natset_from_json(j.at("A")), ground);
}

Json to_json(const InclusionCert& cert) {
  Json out = {{"kind", to_string(cert.kind)}, {"k0", cert.k0}};
  if (cert.kind == CertKind::Horizon) out["depth"] = cert.depth;
  if (!cert.provenance.empty()) out["provenance"] = cert.provenance;
  return out;
}

Json to_json(const PatternCell& cell) {
  switch (cell.cell) {
    case Cell::Empty: return "empty";
    case Cell::Full: return "full";
    case Cell::Single: return {{"single", cell.symbol}};
  }
  return nullptr;
}

Json to_json(const Family& family) {
  Json out = Json::array();
  for (const StarSet& s : family) out.push_back(to_json(s.tree()));
  return out;
}

Family family_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("family must be a list of trees");
  Family out;
  for (const Json& t : j) out.emplace_back(tree_from_json(t));
  return out;
}

}  // namespace ttree
