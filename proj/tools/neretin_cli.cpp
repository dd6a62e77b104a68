// Batch command-line front end: every subcommand reads JSON (stdin or flags)
// and writes one JSON payload to stdout. Diagnostics go to stderr.
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 resource limit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "neretin/backtrack.hpp"
#include "neretin/blocks.hpp"
#include "neretin/json_io.hpp"
#include "neretin/subgroup_enum.hpp"
#include "neretin/sym_factor.hpp"
#include "neretin/verify.hpp"

namespace {

using neretin::Config;
using neretin::Errc;
using neretin::Error;
using neretin::aa::AlmostAuto;
using neretin::io::Json;
using neretin::level::LevelContext;
using neretin::measure::CylinderMeasure;
using neretin::perm::Permutation;
using neretin::perm::PermGroup;
using neretin::tree::Address;
using neretin::tree::Clopen;
using neretin::tree::LeafSet;
using neretin::tree::Signature;

namespace io = neretin::io;

struct GlobalOpts {
  std::string sig_text = "2,2";
  Config cfg;

  Signature sig() const {
    auto comma = sig_text.find(',');
    if (comma == std::string::npos) neretin::fail(Errc::bad_input, "--sig expects d,k");
    return Signature(std::stoi(sig_text.substr(0, comma)),
                     std::stoi(sig_text.substr(comma + 1)));
  }
};

Json read_stdin_json() {
  std::stringstream buffer;
  buffer << std::cin.rdbuf();
  return Json::parse(buffer.str());
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

// "(0 1),(0 1 2 3)" -> one permutation per top-level comma
std::vector<std::string> split_cycle_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

unsigned infer_degree(const std::vector<std::string>& cycle_texts, unsigned explicit_degree) {
  if (explicit_degree > 0) return explicit_degree;
  unsigned deg = 1;
  for (const auto& s : cycle_texts) {
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
  }
  return deg;
}

PermGroup group_from_flag(const std::string& gens_text, unsigned degree) {
  auto parts = split_cycle_list(gens_text);
  unsigned n = infer_degree(parts, degree);
  std::vector<Permutation> gens;
  for (const auto& p : parts) gens.push_back(Permutation::from_cycles(n, p));
  return PermGroup(n, std::move(gens));
}

AlmostAuto element_field(const Json& j, const char* key) {
  if (j.contains(key)) return io::element_from_json(j.at(key));
  return io::element_from_json(j);  // bare element payload
}

int cmd_perm(const std::string& action, const GlobalOpts& g, const std::string& gens,
             const std::string& gens_b, unsigned degree) {
  if (action == "order") {
    PermGroup grp = group_from_flag(gens, degree);
    emit({{"order", grp.order().str()}});
  } else if (action == "blocks") {
    PermGroup grp = group_from_flag(gens, degree);
    Json systems = Json::array();
    for (const auto& bs : neretin::perm::minimal_blocks(grp))
      systems.push_back(io::blocks_to_json(bs));
    emit({{"systems", systems}});
  } else if (action == "primitive") {
    PermGroup grp = group_from_flag(gens, degree);
    emit({{"primitive", neretin::perm::is_primitive(grp)}});
  } else if (action == "jordan-scan") {
    PermGroup grp = group_from_flag(gens, degree);
    auto rep = neretin::perm::jordan_check(grp, g.cfg);
    Json j;
    j["primitive"] = rep.primitive;
    if (rep.prime_cycle_witness) {
      j["prime_cycle_witness"] = {{"p", rep.prime_cycle_witness->p},
                                  {"element", rep.prime_cycle_witness->element.cycle_string()}};
    } else {
      j["prime_cycle_witness"] = nullptr;
    }
    j["jordan_applies"] = rep.jordan_applies;
    j["contains_alt"] = rep.contains_alt;
    emit(j);
  } else if (action == "factor-classify") {
    PermGroup grp = group_from_flag(gens, degree);
    emit(io::verdict_to_json(neretin::perm::classify_factorization(grp, g.cfg)));
  } else if (action == "intersect" || action == "normalizer" || action == "product-covers") {
    PermGroup a = group_from_flag(gens, degree);
    PermGroup b = group_from_flag(gens_b, a.degree());
    if (action == "intersect")
      emit(io::group_to_json(neretin::perm::subgroup_intersection(a, b, g.cfg)));
    else if (action == "normalizer")
      emit(io::group_to_json(neretin::perm::normalizer(a, b, g.cfg)));
    else
      emit({{"covers", neretin::perm::product_covers(a, b, g.cfg)}});
  } else {
    return 2;
  }
  return 0;
}

int cmd_element(const std::string& action, const GlobalOpts& g) {
  Json in = read_stdin_json();
  if (action == "compose") {
    AlmostAuto lhs = io::element_from_json(in.at("lhs"));
    AlmostAuto rhs = io::element_from_json(in.at("rhs"));
    emit(io::element_to_json(neretin::aa::compose(lhs, rhs, g.cfg)));
  } else if (action == "inverse") {
    emit(io::element_to_json(neretin::aa::inverse(element_field(in, "element"))));
  } else if (action == "canonical") {
    emit(io::element_to_json(neretin::aa::canonical_form(element_field(in, "element"), g.cfg)));
  } else if (action == "equal") {
    AlmostAuto lhs = io::element_from_json(in.at("lhs"));
    AlmostAuto rhs = io::element_from_json(in.at("rhs"));
    emit({{"equal", neretin::aa::equal(lhs, rhs, g.cfg)}});
  } else if (action == "support") {
    AlmostAuto e = element_field(in, "element");
    emit({{"support", io::clopen_to_json(neretin::aa::support(e))}});
  } else if (action == "apply") {
    AlmostAuto e = element_field(in, "element");
    Address w = Address::parse(in.at("address").get<std::string>(), e.sig());
    auto [img, state] = neretin::aa::apply_to_prefix(e, w);
    emit({{"address", img.str(e.sig())}, {"state", state}});
  } else {
    return 2;
  }
  return 0;
}

int cmd_tree(const std::string& action, const GlobalOpts& g, int n, const std::string& a,
             const std::string& b, const std::string& addr) {
  Signature sig = g.sig();
  if (action == "ball") {
    LeafSet ball = LeafSet::ball(sig, n, g.cfg);
    emit({{"leaves", io::leafset_to_json(ball)}, {"text", io::leafset_str(ball)}});
  } else if (action == "refine") {
    LeafSet la = io::leafset_parse(a, sig);
    LeafSet lb = io::leafset_parse(b, sig);
    LeafSet r = common_refinement(la, lb);
    emit({{"leaves", io::leafset_to_json(r)}, {"text", io::leafset_str(r)}});
  } else if (action == "mass") {
    Address v = Address::parse(addr, sig);
    emit({{"mass", io::rational_str(neretin::tree::cylinder_mass(sig, v))}});
  } else {
    return 2;
  }
  return 0;
}

int cmd_level(const std::string& action, const GlobalOpts& g, int n, int n0,
              const std::string& family, const std::string& prefix,
              const std::string& input_path) {
  Signature sig = g.sig();
  if (action == "quotient") {
    Json in = read_stdin_json();
    AlmostAuto e = element_field(in, "element");
    int level_n = in.value("n", n);
    LevelContext ctx = LevelContext::make(e.sig(), level_n, g.cfg);
    Permutation p = neretin::level::level_quotient(e, ctx, g.cfg);
    emit({{"degree", p.degree()}, {"perm", p.cycle_string()}, {"images", p.images()}});
  } else if (action == "gens") {
    LevelContext ctx = LevelContext::make(sig, n, g.cfg);
    if (family == "sym" || family == "aut") {
      auto elems = family == "sym" ? neretin::level::gens_sym_level(ctx)
                                   : neretin::level::gens_aut_ball(ctx, g.cfg);
      Json arr = Json::array();
      for (const auto& e : elems) arr.push_back(io::element_to_json(e));
      emit({{"elements", arr}});
    } else {
      std::vector<Permutation> gens;
      if (family == "ball-image")
        gens = neretin::level::gens_ball_image(ctx, n0, g.cfg);
      else if (family == "root-factors")
        gens = neretin::level::gens_root_factors(ctx, g.cfg);
      else if (family == "end-stab")
        gens = neretin::level::gens_end_stabilizer(Address::parse(prefix, sig), ctx);
      else
        neretin::fail(Errc::bad_input, "family must be sym|aut|ball-image|root-factors|end-stab");
      Json arr = Json::array();
      for (const auto& p : gens) arr.push_back(p.cycle_string());
      emit({{"degree", ctx.leaf_count()}, {"generators", arr}});
    }
  } else if (action == "certify") {
    std::ifstream f(input_path);
    if (!f) neretin::fail(Errc::bad_input, "cannot open " + input_path);
    Json in = Json::parse(f);
    Signature csig = in.contains("signature") ? io::signature_from_json(in["signature"]) : sig;
    std::vector<neretin::level::LevelGens> levels;
    for (const auto& item : in.at("levels")) {
      neretin::level::LevelGens lg;
      lg.n = item.at("n").get<int>();
      LevelContext ctx = LevelContext::make(csig, lg.n, g.cfg);
      for (const auto& gj : item.value("generators", Json::array()))
        lg.generators.push_back(io::perm_from_json(gj, ctx.leaf_count()));
      levels.push_back(std::move(lg));
    }
    auto cert = neretin::level::certify_cocompact(csig, levels, g.cfg);
    emit(io::certificate_to_json(cert));
  } else {
    return 2;
  }
  return 0;
}

int cmd_measure(const std::string& action, const GlobalOpts& g, int n) {
  Signature sig = g.sig();
  if (action == "push") {
    Json in = read_stdin_json();
    AlmostAuto e = io::element_from_json(in.at("element"));
    CylinderMeasure mu = io::measure_from_json(in.at("measure"), e.sig());
    emit(io::measure_to_json(neretin::measure::pushforward(e, mu, g.cfg)));
  } else if (action == "trace") {
    Json in = read_stdin_json();
    AlmostAuto e = in.contains("element")
                       ? io::element_from_json(in.at("element"))
                       : neretin::measure::contractor_toward(
                             Address::parse(in.at("toward").get<std::string>(), sig), sig, g.cfg)
                             .element;
    CylinderMeasure mu =
        in.contains("measure")
            ? io::measure_from_json(in.at("measure"), e.sig())
            : CylinderMeasure::uniform(LevelContext::make(e.sig(), 1, g.cfg));
    std::vector<Address> chain;
    for (const auto& c : in.at("chain"))
      chain.push_back(Address::parse(c.get<std::string>(), e.sig()));
    int steps = in.at("steps").get<int>();
    auto trace = neretin::measure::proximality_run(e, mu, chain, steps, g.cfg);
    Json masses = Json::array();
    for (const auto& r : trace.mass_in_target) masses.push_back(io::rational_str(r));
    Json cj = Json::array();
    for (const auto& c : trace.chain) cj.push_back(c.str(e.sig()));
    emit({{"chain", cj}, {"trace", masses}});
  } else if (action == "invariant") {
    Json in = read_stdin_json();
    int level_n = in.value("n", n);
    LevelContext ctx = LevelContext::make(sig, level_n, g.cfg);
    std::vector<Permutation> gens;
    for (const auto& gj : in.at("generators"))
      gens.push_back(io::perm_from_json(gj, ctx.leaf_count()));
    Json arr = Json::array();
    for (const auto& m : neretin::measure::invariant_measures(gens, ctx))
      arr.push_back(io::measure_to_json(m));
    emit({{"measures", arr}});
  } else if (action == "displace") {
    Json in = read_stdin_json();
    std::vector<Address> points;
    for (const auto& p : in.at("points"))
      points.push_back(Address::parse(p.get<std::string>(), sig));
    std::vector<Clopen> targets;
    for (const auto& t : in.at("targets")) targets.push_back(io::clopen_from_json(t, sig));
    auto disp = neretin::measure::displace_points(points, targets, g.cfg);
    Json landed = Json::array();
    for (const auto& a : disp.landed) landed.push_back(a.str(sig));
    Json betas = Json::array();
    for (const auto& b : disp.neighbourhoods) betas.push_back(io::clopen_to_json(b));
    emit({{"element", io::element_to_json(disp.element)},
          {"landed", landed},
          {"neighbourhoods", betas}});
  } else if (action == "f-fixed") {
    Json in = read_stdin_json();
    Clopen alpha = io::clopen_from_json(in.at("clopen"), sig);
    Json chain = Json::array();
    for (const auto& a : neretin::measure::least_end_chain(alpha, g.cfg))
      chain.push_back(a.str(sig));
    emit({{"chain", chain}});
  } else {
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& category, const GlobalOpts& g) {
  auto results = neretin::verify::run_category(category, g.cfg);
  bool all_pass = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
              << " (" << r.detail << ")\n";
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
  }
  emit({{"results", arr}, {"all_pass", all_pass}});
  return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with almost automorphisms of quasi-regular rooted trees"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  if (const char* env = std::getenv("NERETIN_DEPTH_LIMIT")) g.cfg.depth_limit = std::atoi(env);
  app.add_option("--sig", g.sig_text, "tree signature d,k")->capture_default_str();
  app.add_option("--seed", g.cfg.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--depth-limit", g.cfg.depth_limit, "address depth cap")->capture_default_str();
  app.add_option("--budget", g.cfg.witness_budget, "random witness search budget")
      ->capture_default_str();

  std::string gens, gens_b, a_text, b_text, addr, family = "sym", prefix, input_path;
  std::string action;
  unsigned degree = 0;
  int n = 1, n0 = 1;

  auto* perm = app.add_subcommand("perm", "finite permutation group computations");
  perm->add_option("action", action,
                   "order|blocks|primitive|jordan-scan|factor-classify|intersect|normalizer|"
                   "product-covers")
      ->required();
  perm->add_option("--gens", gens, "generators as cycle strings, comma separated");
  perm->add_option("--gens-b", gens_b, "second group's generators");
  perm->add_option("--degree", degree, "permutation degree (inferred when omitted)");

  auto* element = app.add_subcommand("element", "almost automorphism calculus (JSON on stdin)");
  element->add_option("action", action, "compose|inverse|canonical|equal|support|apply")
      ->required();

  auto* tre = app.add_subcommand("tree", "addresses, leaf sets and masses");
  tre->add_option("action", action, "ball|refine|mass")->required();
  tre->add_option("-n,--level", n, "ball level");
  tre->add_option("--a", a_text, "first leaf set, e.g. {00,01,1}");
  tre->add_option("--b", b_text, "second leaf set");
  tre->add_option("--addr", addr, "vertex address");

  auto* lvl = app.add_subcommand("level", "finite-level tower computations");
  lvl->add_option("action", action, "quotient|gens|certify")->required();
  lvl->add_option("-n,--level", n, "tree level");
  lvl->add_option("--n0", n0, "lower level for ball-image");
  lvl->add_option("--family", family, "sym|aut|ball-image|root-factors|end-stab");
  lvl->add_option("--prefix", prefix, "fixed depth-n address for end-stab");
  lvl->add_option("--input", input_path, "certificate input JSON file");

  auto* mea = app.add_subcommand("measure", "boundary measure dynamics (JSON on stdin)");
  mea->add_option("action", action, "push|trace|invariant|displace|f-fixed")->required();
  mea->add_option("-n,--level", n, "level for invariant measures");

  auto* ver = app.add_subcommand("verify", "run the verification suites");
  ver->add_option("action", action, "all|perm|tree|element|level|measure")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    int rc = 2;
    if (perm->parsed()) rc = cmd_perm(action, g, gens, gens_b, degree);
    else if (element->parsed()) rc = cmd_element(action, g);
    else if (tre->parsed()) rc = cmd_tree(action, g, n, a_text, b_text, addr);
    else if (lvl->parsed()) rc = cmd_level(action, g, n, n0, family, prefix, input_path);
    else if (mea->parsed()) rc = cmd_measure(action, g, n);
    else if (ver->parsed()) rc = cmd_verify(action, g);
    if (rc == 2) std::cerr << "unknown action '" << action << "'\n";
    return rc;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.code() == Errc::depth_limit || e.code() == Errc::resource_exhausted) return 3;
    return 1;
  } catch (const Json::parse_error& e) {
    std::cerr << "bad JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
