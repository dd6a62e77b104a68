#include "neretin/json_io.hpp"

#include <algorithm>
#include <cctype>

namespace neretin::io {

using aa::AlmostAuto;
using aa::TailMachine;
using tree::Address;
using tree::Clopen;
using tree::LeafSet;
using tree::Signature;

std::string rational_str(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(Errc::bad_input, "cannot parse rational '" + s + "'");
  }
}

Json perm_to_json(const perm::Permutation& p) {
  Json j;
  j["degree"] = p.degree();
  j["cycles"] = p.cycle_string();
  j["images"] = p.images();
  return j;
}

perm::Permutation perm_from_json(const Json& j, unsigned degree) {
  if (j.is_string()) return perm::Permutation::from_cycles(degree, j.get<std::string>());
  if (j.is_array()) {
    auto imgs = j.get<std::vector<unsigned>>();
    if (imgs.size() != degree) fail(Errc::degree_mismatch, "image array of wrong length");
    return perm::Permutation(std::move(imgs));
  }
  if (j.is_object()) {
    if (j.contains("images")) return perm::Permutation(j["images"].get<std::vector<unsigned>>());
    if (j.contains("cycles"))
      return perm::Permutation::from_cycles(degree, j["cycles"].get<std::string>());
  }
  fail(Errc::bad_input, "permutation must be a cycle string, image array or object");
}

perm::Permutation perm_from_json(const Json& j) {
  if (j.is_array()) return perm::Permutation(j.get<std::vector<unsigned>>());
  if (j.is_object() && j.contains("images"))
    return perm::Permutation(j["images"].get<std::vector<unsigned>>());
  if (j.is_object() && j.contains("degree") && j.contains("cycles"))
    return perm::Permutation::from_cycles(j["degree"].get<unsigned>(),
                                          j["cycles"].get<std::string>());
  if (j.is_string()) {
    // infer the degree as max point + 1
    std::string s = j.get<std::string>();
    unsigned deg = 1;
    unsigned cur = 0;
    bool in_num = false;
    for (char c : s) {
      if (c >= '0' && c <= '9') {
        cur = cur * 10 + static_cast<unsigned>(c - '0');
        in_num = true;
      } else if (in_num) {
        deg = std::max(deg, cur + 1);
        cur = 0;
        in_num = false;
      }
    }
    if (in_num) deg = std::max(deg, cur + 1);
    return perm::Permutation::from_cycles(deg, s);
  }
  fail(Errc::bad_input, "cannot infer permutation degree");
}

Json group_to_json(const perm::PermGroup& g) {
  Json j;
  j["degree"] = g.degree();
  Json gens = Json::array();
  for (const auto& s : g.generators()) gens.push_back(s.cycle_string());
  j["generators"] = gens;
  j["order"] = g.order().str();
  return j;
}

perm::PermGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("degree"))
    fail(Errc::bad_input, "group needs {degree, generators}");
  unsigned degree = j["degree"].get<unsigned>();
  std::vector<perm::Permutation> gens;
  for (const auto& item : j.value("generators", Json::array()))
    gens.push_back(perm_from_json(item, degree));
  return perm::PermGroup(degree, std::move(gens));
}

Json blocks_to_json(const perm::BlockSystem& b) {
  Json j;
  j["degree"] = b.degree;
  j["blocks"] = b.blocks;
  return j;
}

Json verdict_to_json(const perm::FactorizationVerdict& v) {
  Json j;
  j["verdict"] = v.name();
  if (v.point) j["point"] = *v.point;
  return j;
}

Json signature_to_json(const Signature& sig) { return Json::array({sig.d, sig.k}); }

Signature signature_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) fail(Errc::bad_input, "signature must be [d, k]");
  return Signature(j[0].get<int>(), j[1].get<int>());
}

Json leafset_to_json(const LeafSet& l) {
  Json arr = Json::array();
  for (const auto& leaf : l.leaves()) arr.push_back(leaf.str(l.sig()));
  return arr;
}

LeafSet leafset_from_json(const Json& j, const Signature& sig) {
  std::vector<Address> leaves;
  for (const auto& item : j) leaves.push_back(Address::parse(item.get<std::string>(), sig));
  return LeafSet::from_leaves(sig, std::move(leaves));
}

LeafSet leafset_parse(const std::string& text, const Signature& sig) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close <= open)
    fail(Errc::bad_input, "leaf set must look like {addr,addr,...}");
  std::vector<Address> leaves;
  std::string body = text.substr(open + 1, close - open - 1);
  std::size_t pos = 0;
  while (pos <= body.size()) {
    auto comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos);
    std::string trimmed;
    for (char c : tok)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (!trimmed.empty()) leaves.push_back(Address::parse(trimmed, sig));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return LeafSet::from_leaves(sig, std::move(leaves));
}

std::string leafset_str(const LeafSet& l) {
  std::string out = "{";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) out += ",";
    out += l.leaf(i).str(l.sig());
  }
  return out + "}";
}

Json clopen_to_json(const Clopen& c) {
  Json arr = Json::array();
  for (const auto& cyl : c.cylinders()) arr.push_back(cyl.str(c.sig()));
  return arr;
}

Clopen clopen_from_json(const Json& j, const Signature& sig) {
  std::vector<Address> cyls;
  for (const auto& item : j) cyls.push_back(Address::parse(item.get<std::string>(), sig));
  return Clopen::from_cylinders(sig, std::move(cyls));
}

Json machine_to_json(const TailMachine& m) {
  Json j;
  Json names = Json::array();
  for (int q = 0; q < m.num_states(); ++q)
    names.push_back(q < static_cast<int>(m.names.size()) ? m.names[q]
                                                         : "q" + std::to_string(q));
  j["states"] = names;
  j["delta"] = m.next;
  j["lambda"] = m.out;
  j["id"] = m.identity;
  return j;
}

TailMachine machine_from_json(const Json& j) {
  TailMachine m;
  m.next = j.at("delta").get<std::vector<std::vector<int>>>();
  m.out = j.at("lambda").get<std::vector<std::vector<int>>>();
  m.identity = j.at("id").get<int>();
  if (j.contains("states")) m.names = j["states"].get<std::vector<std::string>>();
  if (m.next.empty() || m.next.front().empty()) fail(Errc::bad_input, "machine has no rows");
  m.alphabet = static_cast<int>(m.next.front().size());
  m.validate();
  return m;
}

Json element_to_json(const AlmostAuto& g) {
  Json j;
  j["sig"] = signature_to_json(g.sig());
  j["dom"] = leafset_to_json(g.dom());
  j["ran"] = leafset_to_json(g.ran());
  Json map = Json::array();
  for (std::size_t i = 0; i < g.dom().size(); ++i)
    map.push_back(Json::array({g.dom().leaf(i).str(g.sig()),
                               g.image_of_leaf(i).str(g.sig()), g.tails()[i]}));
  j["map"] = map;
  j["machine"] = machine_to_json(g.machine());
  return j;
}

AlmostAuto element_from_json(const Json& j) {
  Signature sig = signature_from_json(j.at("sig"));
  TailMachine machine = machine_from_json(j.at("machine"));
  if (machine.alphabet != sig.d)
    fail(Errc::bad_input, "machine alphabet disagrees with the signature");
  LeafSet dom = leafset_from_json(j.at("dom"), sig);
  LeafSet ran = leafset_from_json(j.at("ran"), sig);
  std::vector<int> image(dom.size(), -1), tails(dom.size(), 0);
  const auto& map = j.at("map");
  if (map.size() != dom.size()) fail(Errc::bad_input, "map must pair every domain leaf");
  for (const auto& entry : map) {
    Address d_leaf = Address::parse(entry.at(0).get<std::string>(), sig);
    Address r_leaf = Address::parse(entry.at(1).get<std::string>(), sig);
    int di = dom.index_of(d_leaf), ri = ran.index_of(r_leaf);
    if (di < 0 || ri < 0) fail(Errc::bad_input, "map entry is not a leaf pair");
    image[static_cast<std::size_t>(di)] = ri;
    tails[static_cast<std::size_t>(di)] = entry.at(2).get<int>();
  }
  return AlmostAuto::make(std::move(dom), std::move(ran), std::move(image), std::move(tails),
                          std::move(machine));
}

Json measure_to_json(const measure::CylinderMeasure& m) {
  Json j;
  j["support"] = leafset_to_json(m.support);
  Json masses = Json::array();
  for (const auto& r : m.mass) masses.push_back(rational_str(r));
  j["masses"] = masses;
  return j;
}

measure::CylinderMeasure measure_from_json(const Json& j, const Signature& sig) {
  LeafSet support = leafset_from_json(j.at("support"), sig);
  std::vector<Rational> mass;
  for (const auto& item : j.at("masses")) mass.push_back(parse_rational(item.get<std::string>()));
  return measure::CylinderMeasure::make(std::move(support), std::move(mass));
}

Json certificate_to_json(const level::CocompactCertificate& c) {
  Json j;
  j["signature"] = signature_to_json(c.sig);
  Json levels = Json::array();
  for (const auto& e : c.levels) {
    Json le;
    le["n"] = e.n;
    le["k_n"] = e.k_n;
    le["verdict_component"] = verdict_to_json(e.verdict);
    levels.push_back(le);
  }
  j["levels"] = levels;
  j["verdict"] = c.kind_name();
  if (c.kind == level::CocompactCertificate::Kind::EndStabilizer) {
    Json chain = Json::array();
    for (const auto& a : c.chain) chain.push_back(a.str(c.sig));
    j["chain"] = chain;
  }
  if (c.kind == level::CocompactCertificate::Kind::Inconclusive) {
    j["failing_level"] = c.failing_level;
    j["reason"] = c.reason;
  }
  return j;
}

} // namespace neretin::io
