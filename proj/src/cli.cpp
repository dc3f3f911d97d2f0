#include "ttree/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "ttree/claims.hpp"
#include "ttree/errors.hpp"
#include "ttree/oracle/oracle.hpp"

namespace ttree::cli {

namespace {

struct Options {
  std::size_t horizon = kDefaultHorizon;
  std::size_t window = kDefaultOracleWindow;
  bool verify = true;
  bool human = false;
  std::string claims_out;
};

class Session {
 public:
  Session(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void emit(const Json& record) {
    if (opt_.human) {
      out_ << record.dump(2) << '\n';
    } else {
      out_ << record.dump() << '\n';
    }
  }

  void claim(Json c) { claims_.push_back(std::move(c)); }

  /// Runs the checker on the collected claims; returns an exit code.
  int finish(std::ostream& err) {
    if (!opt_.claims_out.empty()) {
      std::ofstream f(opt_.claims_out);
      if (!f) throw ParseError("cannot write " + opt_.claims_out);
      for (const Json& c : claims_) f << c.dump() << '\n';
    }
    if (!opt_.verify) return kOk;
    int code = kOk;
    for (const auto& r : oracle::verify_batch(claims_)) {
      if (r.pass) continue;
      Json fail = {{"oracle", "mismatch"}, {"claim", r.index}, {"kind", r.kind}, {"detail", r.detail}};
      if (r.coordinate) fail["coordinate"] = *r.coordinate;
      err << fail.dump() << '\n';
      code = kOracleMismatch;
    }
    if (code == kOk) emit({{"oracle", "pass"}, {"claims", claims_.size()}});
    return code;
  }

  const Options& opt() const { return opt_; }

 private:
  const Options& opt_;
  std::ostream& out_;
  std::vector<Json> claims_;
};

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_json(buf.str());
}

TrimmedTree read_tree(const std::string& path) { return tree_from_json(read_json_file(path)); }

std::vector<TrimmedTree> read_trees(const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.is_array()) throw ParseError(path + ": expected a list of trees");
  std::vector<TrimmedTree> out;
  for (const Json& t : j) out.push_back(tree_from_json(t));
  return out;
}

std::vector<Point> read_points(const std::string& path) {
  const Json j = read_json_file(path);
  std::vector<Point> out;
  if (j.is_array()) {
    for (const Json& p : j) out.push_back(point_from_json(p));
  } else {
    out.push_back(point_from_json(j));
  }
  return out;
}

FiniteNode parse_node(const std::string& text) {
  FiniteNode out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Symbol>(v));
    } catch (const std::exception&) {
      throw ParseError("node entry \"" + item + "\" is not a symbol");
    }
  }
  return out;
}

/// The serialization when there is one, otherwise a window of δ.
Json tree_record(const TrimmedTree& t, std::size_t window) {
  try {
    return to_json(t);
  } catch (const NotSerializable&) {
    Json out = claims::tree_prefix(t, window);
    out["serializable"] = false;
    try {
      out["A"] = to_json(t.branching());
    } catch (const NotSerializable&) {
    }
    return out;
  }
}

Json delta_cell(DeltaValue d) { return d.full ? Json("full") : Json{{"single", d.symbol}}; }

bool guarded_level(const TrimmedTree& t, std::size_t n) { return level_count(t, n) <= oracle::kGuard; }

std::optional<std::size_t> horizon_for(const Options& opt, std::initializer_list<const TrimmedTree*> trees) {
  for (const TrimmedTree* t : trees) {
    if (!t->is_exact()) return opt.horizon;
  }
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  if (const char* env = std::getenv(kHorizonEnv)) {
    try {
      opt.horizon = std::stoul(env);
    } catch (const std::exception&) {
      err << "ignoring malformed " << kHorizonEnv << '\n';
    }
  }

  CLI::App app{"trimmed-tree toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--horizon", opt.horizon, "check depth for non-periodic inputs")->check(CLI::PositiveNumber);
  app.add_option("--window", opt.window, "window for oracle claims")->check(CLI::PositiveNumber);
  app.add_flag("--verify,!--no-verify", opt.verify, "check results with the brute-force oracle");
  app.add_flag("--human", opt.human, "indented output");
  app.add_option("--emit-claims", opt.claims_out, "write oracle claims as JSON lines");

  std::string tree_f, p_f, q_f, chain_f, points_f, family_f, node_s;
  std::size_t depth = 2, n = 0, count = 0;

  auto* levels_cmd = app.add_subcommand("levels", "nodes of length depth+1");
  levels_cmd->add_option("--tree", tree_f)->required();
  levels_cmd->add_option("--depth", depth)->required();

  auto* restrict_cmd = app.add_subcommand("restrict", "the subtree through a node");
  restrict_cmd->add_option("--tree", tree_f)->required();
  restrict_cmd->add_option("--node", node_s, "comma-separated symbols")->required();

  auto* delta_cmd = app.add_subcommand("delta", "the coordinate sets δ(T)");
  delta_cmd->add_option("--tree", tree_f)->required();

  auto* subset = app.add_subcommand("subset", "P ⊆ T");
  subset->add_option("--p", p_f)->required();
  subset->add_option("--t", q_f)->required();

  auto* subset_n_cmd = app.add_subcommand("subset-n", "P ⊆ₙ T");
  subset_n_cmd->add_option("--p", p_f)->required();
  subset_n_cmd->add_option("--t", q_f)->required();
  subset_n_cmd->add_option("--n", n)->required();

  auto* star_sub = app.add_subcommand("star-subset", "[P]* ⊆ [T]* with certificate");
  star_sub->add_option("--p", p_f)->required();
  star_sub->add_option("--t", q_f)->required();

  auto* compat = app.add_subcommand("compat", "compatibility of two stars");
  compat->add_option("--a", p_f)->required();
  compat->add_option("--b", q_f)->required();

  auto* splice_cmd = app.add_subcommand("splice", "Q ⊆ₙ T with [Q]* = [P]*");
  splice_cmd->add_option("--p", p_f)->required();
  splice_cmd->add_option("--t", q_f)->required();
  splice_cmd->add_option("--n", n)->required();

  auto* witness = app.add_subcommand("witness", "a star below P incompatible with T");
  witness->add_option("--p", p_f)->required();
  witness->add_option("--t", q_f)->required();

  auto* family = app.add_subcommand("family", "pairwise disjoint stars below T");
  family->add_option("--tree", tree_f)->required();
  family->add_option("--count", count)->required()->check(CLI::PositiveNumber);

  auto* fuse_cmd = app.add_subcommand("fuse", "fusion of a ⊆ₙ-chain");
  fuse_cmd->add_option("--chain", chain_f)->required();
  fuse_cmd->add_option("--depth", depth)->required();

  auto* hadamard = app.add_subcommand("hadamard", "lower bound of a decreasing chain of stars");
  hadamard->add_option("--chain", chain_f)->required();
  hadamard->add_option("--count", count);
  hadamard->add_option("--depth", depth)->required();

  auto* avoid = app.add_subcommand("avoid", "a subtree avoiding a list of points");
  avoid->add_option("--tree", tree_f)->required();
  avoid->add_option("--points", points_f)->required();
  avoid->add_option("--depth", depth)->required();

  auto* star_avoid = app.add_subcommand("star-avoid", "a subtree avoiding all finite changes of the points");
  star_avoid->add_option("--tree", tree_f)->required();
  star_avoid->add_option("--points", points_f)->required();
  star_avoid->add_option("--depth", depth)->required();

  auto* refine = app.add_subcommand("refine", "common refinement of incompatible families");
  refine->add_option("--families", family_f, "JSON list of families")->required();

  auto* selector = app.add_subcommand("selector", "a selector of a family and its avoidance response");
  selector->add_option("--family", family_f)->required();
  selector->add_option("--tree", tree_f, "tree to respond to");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force checker");
  oracle_cmd->require_subcommand(1);
  std::string claims_in;
  bool serial = false;
  auto* verify_cmd = oracle_cmd->add_subcommand("verify", "check a JSON-lines claim file");
  verify_cmd->add_option("claims", claims_in)->required();
  verify_cmd->add_flag("--serial", serial, "single-threaded");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kParse;
  }

  Session s(opt, out);
  try {
    if (*levels_cmd) {
      const TrimmedTree t = read_tree(tree_f);
      const auto nodes = levels(t, depth);
      s.emit({{"levels", depth}, {"count", nodes.size()}, {"nodes", nodes}});
      if (guarded_level(t, depth)) s.claim(claims::levels(t, depth, nodes));
    } else if (*restrict_cmd) {
      const TrimmedTree t = read_tree(tree_f);
      const FiniteNode node = parse_node(node_s);
      if (!is_node(t, node)) throw PreconditionError("node is not in the tree");
      const TrimmedTree r = restrict_tree(t, node);
      s.emit({{"tree", tree_record(r, opt.window)}});
      const std::size_t d = std::max<std::size_t>(node.size(), 1) + 1;
      if (guarded_level(t, d)) s.claim(claims::restrict(t, node, r, d, levels(r, d)));
    } else if (*delta_cmd) {
      const TrimmedTree t = read_tree(tree_f);
      Json rec;
      if (t.is_exact()) {
        const auto d = delta(t).exact();
        Json head = Json::array(), period = Json::array();
        for (const auto& v : d.head()) head.push_back(delta_cell(v));
        for (const auto& v : d.period()) period.push_back(delta_cell(v));
        rec["delta"] = {{"head", head}, {"period", period}};
      }
      Json win = Json::array();
      for (std::size_t k = 0; k < opt.window; ++k) win.push_back(delta_cell(t.delta_at(k)));
      rec["window"] = win;
      s.emit(rec);
    } else if (*subset) {
      const TrimmedTree p = read_tree(p_f), t = read_tree(q_f);
      const Verdict v = tree_subset(p, t, horizon_for(opt, {&p, &t}));
      s.emit({{"relation", "subset"}, {"answer", v.value}, {"exact", v.exact}});
      s.claim(claims::tree_subset(p, t, v.value, opt.window));
    } else if (*subset_n_cmd) {
      const TrimmedTree p = read_tree(p_f), t = read_tree(q_f);
      const Verdict v = subset_n(p, t, n, horizon_for(opt, {&p, &t}));
      s.emit({{"relation", "subset_n"}, {"n", n}, {"answer", v.value}, {"exact", v.exact}});
      s.claim(claims::subset_n(p, t, n, v.value, opt.window));
    } else if (*star_sub) {
      const TrimmedTree p = read_tree(p_f), t = read_tree(q_f);
      const StarSubsetResult r = star_subset(StarSet(p), StarSet(t), horizon_for(opt, {&p, &t}));
      Json rec = {{"relation", "star_subset"}, {"answer", r.answer}};
      if (r.answer) rec["cert"] = to_json(r.cert);
      s.emit(rec);
      s.claim(claims::star_subset(p, t, r, opt.window, r.cert.kind == CertKind::Exact));
    } else if (*compat) {
      const TrimmedTree p = read_tree(p_f), q = read_tree(q_f);
      const IntersectResult r = star_intersect(StarSet(p), StarSet(q), horizon_for(opt, {&p, &q}));
      Json pattern = Json::array();
      if (r.pattern.exact) {
        for (std::size_t k = 0; k < opt.window; ++k) pattern.push_back(to_json((*r.pattern.exact)[k]));
      } else {
        for (const auto& c : r.pattern.window) pattern.push_back(to_json(c));
      }
      Json rec = {{"relation", "compat"},
                  {"compatible", r.compatible},
                  {"finitely_many_empty", r.pattern.finitely_many_empty},
                  {"infinitely_many_full", r.pattern.infinitely_many_full},
                  {"kind", to_string(r.kind)},
                  {"pattern", pattern}};
      if (r.witness) rec["witness"] = tree_record(r.witness->tree(), opt.window);
      s.emit(rec);
      s.claim(claims::intersect(p, q, r, opt.window));
    } else if (*splice_cmd) {
      const TrimmedTree p = read_tree(p_f), t = read_tree(q_f);
      const StarSubsetResult inc = star_subset(StarSet(p), StarSet(t), horizon_for(opt, {&p, &t}));
      if (!inc.answer) throw PreconditionError("[P]* is not contained in [T]*");
      const TrimmedTree q = splice(p, t, n, inc.cert);
      const std::size_t cutoff = splice_cutoff(t, n, inc.cert);
      s.emit({{"tree", tree_record(q, opt.window)}, {"cutoff", cutoff}, {"cert", to_json(inc.cert)}});
      s.claim(claims::splice(p, t, q, n, cutoff, opt.window));
    } else if (*witness) {
      const TrimmedTree p = read_tree(p_f), t = read_tree(q_f);
      const StarSet q = separative_witness(StarSet(p), StarSet(t));
      s.emit({{"tree", tree_record(q.tree(), opt.window)}});
      s.claim(claims::separative(p, t, q.tree(), opt.window));
    } else if (*family) {
      const TrimmedTree t = read_tree(tree_f);
      const auto members = disjoint_family(t, count);
      Json list = Json::array();
      for (const StarSet& m : members) list.push_back(tree_record(m.tree(), opt.window));
      s.emit({{"family", list}});
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          // The members agree on a long prefix when their seeds do; widen
          // the window until the first forced disagreement shows.
          std::size_t w = opt.horizon;
          while (forced_disagreements(members[i].tree(), members[j].tree(), w).empty() && w < (1U << 16)) w *= 2;
          s.claim(claims::disjoint(members[i].tree(), members[j].tree(), w, 0));
        }
      }
    } else if (*fuse_cmd) {
      const auto chain = read_trees(chain_f);
      const FuseResult r = fuse(TreeSequence::from_list(chain, opt.horizon), depth);
      for (const auto& row : r.trace) {
        s.emit({{"n", row.n}, {"a_n_n", row.a_n_n}, {"checked_subset_n", row.checked_subset_n}});
      }
      s.emit({{"tree", tree_record(r.tree, opt.window)}, {"exact", r.exact}});
      std::vector<TrimmedTree> inputs;
      for (std::size_t k = 0; k <= depth; ++k) inputs.push_back(chain[std::min(k, chain.size() - 1)]);
      s.claim(claims::fuse(inputs, r, std::max(opt.window, depth + 1)));
    } else if (*hadamard) {
      auto chain = read_trees(chain_f);
      if (count > 0 && count < chain.size()) chain.resize(count);
      std::vector<StarSet> stars;
      for (const auto& t : chain) stars.emplace_back(t);
      const HadamardResult r = hadamard_lower_bound(stars, depth);
      Json certs = Json::array();
      for (std::size_t k = 0; k < r.certs.size(); ++k) {
        Json c = to_json(r.certs[k]);
        c["n"] = k;
        certs.push_back(c);
        s.claim(claims::cert(r.lower_bound.tree(), chain[k], r.certs[k].k0, opt.window));
      }
      s.emit({{"tree", tree_record(r.lower_bound.tree(), opt.window)}, {"certs", certs}});
    } else if (*avoid || *star_avoid) {
      const TrimmedTree t = read_tree(tree_f);
      const auto points = read_points(points_f);
      AvoidResult r;
      std::vector<Point> targets;
      if (*avoid) {
        const auto pts = std::make_shared<const std::vector<Point>>(points);
        r = sigma_avoid([pts](std::size_t k) { return point_set_responder(CountablePointSet({(*pts)[k]})); },
                        points.size(), t, depth);
        targets = points;
      } else {
        const ResponderPtr resp = point_set_responder(CountablePointSet(points));
        r = star_closure_avoid(resp, t, depth);
        for (std::size_t k = 0; k < 16; ++k) {
          for (const Point& y : points) targets.push_back(patch_point(t.alphabet(), y, length_lex_node(t.alphabet(), k)));
        }
      }
      s.emit({{"tree", tree_record(r.tree, std::max(opt.window, depth))}, {"exact", r.tree.is_exact()}});
      s.claim(claims::avoid(r.tree, targets, depth, &t));
    } else if (*refine) {
      const Json j = read_json_file(family_f);
      if (!j.is_array()) throw ParseError("expected a list of families");
      std::vector<Family> families;
      for (const Json& f : j) {
        families.push_back(family_from_json(f));
        const FamilyCheck c = check_family(families.back());
        if (!c.ok) {
          throw PreconditionError("input family " + std::to_string(families.size() - 1) +
                                  " has a compatible pair (" + std::to_string(c.offending->first) + ", " +
                                  std::to_string(c.offending->second) + ")");
        }
      }
      const Family r = common_refinement(families);
      Json refines_all = Json::array();
      for (const Family& f : families) refines_all.push_back(refines(r, f).value);
      s.emit({{"family", to_json(r)}, {"pairwise_incompatible", check_family(r).ok}, {"refines", refines_all}});
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t k = i + 1; k < r.size(); ++k) {
          s.claim(claims::intersect(r[i].tree(), r[k].tree(), star_intersect(r[i], r[k]), opt.window));
        }
        for (const Family& f : families) {
          for (const StarSet& m : f) {
            const StarSubsetResult below = star_subset(r[i], m);
            if (!below.answer) continue;
            s.claim(claims::star_subset(r[i].tree(), m.tree(), below, opt.window));
            break;
          }
        }
      }
    } else if (*selector) {
      const Family f = family_from_json(read_json_file(family_f));
      const SelectorDemo demo = selector_demo(f);
      Json pts = Json::array();
      for (const Point& p : demo.selector) pts.push_back(to_json(p));
      Json rec = {{"selector", pts}};
      if (!tree_f.empty()) {
        const TrimmedTree t = read_tree(tree_f);
        const TrimmedTree r = demo.responder->respond(t);
        rec["response"] = tree_record(r, opt.window);
        s.claim(claims::avoid(r, demo.selector, opt.horizon, &t));
      }
      s.emit(rec);
    } else if (*verify_cmd) {
      std::ifstream f(claims_in);
      if (!f) throw ParseError("cannot read " + claims_in);
      std::vector<Json> claims;
      std::string line;
      while (std::getline(f, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        claims.push_back(parse_json(line));
      }
      const auto reports = serial ? oracle::verify_batch_serial(claims) : oracle::verify_batch(claims);
      std::size_t failed = 0;
      for (const auto& r : reports) {
        Json rec = {{"claim", r.index}, {"kind", r.kind}, {"pass", r.pass}};
        if (!r.pass) {
          ++failed;
          rec["detail"] = r.detail;
          if (r.coordinate) rec["coordinate"] = *r.coordinate;
        }
        s.emit(rec);
      }
      s.emit({{"claims", reports.size()}, {"failed", failed}});
      return failed == 0 ? kOk : kOracleMismatch;
    }
    return s.finish(err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const PromiseViolation& e) {
    err << "promise violation: " << e.what() << '\n';
    return kPromise;
  } catch (const Error& e) {
    err << "precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace ttree::cli
