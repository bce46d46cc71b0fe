#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "idealconv/density.hpp"
#include "idealconv/errors.hpp"
#include "idealconv/theorems.hpp"

using namespace idealconv;

namespace {

enum Exit { Ok = 0, Usage = 2, Undecided = 3, Precondition = 4, CheckFailed = 5 };

json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in)
      throw SchemaError("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

// An instance file is either the bare object or a wrapper holding it under `key`.
json unwrap(const json& doc, const std::string& key) {
  if (doc.is_object() && doc.contains(key))
    return doc.at(key);
  return doc;
}

IdealDesc pick_ideal(const std::string& flag, const json& doc) {
  if (!flag.empty())
    return IdealDesc::parse(flag);
  if (doc.is_object() && doc.contains("ideal"))
    return IdealDesc::parse(doc.at("ideal").get<std::string>());
  throw SchemaError("no ideal given (use --ideal)");
}

std::string symbol(const IdealDesc& i) {
  switch (i.kind) {
  case IdealDesc::Kind::Fin:
    return "Fin";
  case IdealDesc::Kind::Density:
    return i.alpha == 0 ? "Z" : i.alpha == -1 ? "Z_log" : i.name();
  default:
    return i.name();
  }
}

std::string set_name(const NatSet& s) {
  if (s == NatSet(APSet::evens()))
    return "evens";
  if (s == NatSet(APSet::odds()))
    return "odds";
  if (s == NatSet::squares())
    return "squares";
  return s.describe();
}

json points_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v)
    out.push_back(to_json(q));
  return out;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f)
    throw SchemaError("cannot write " + out);
  f << j.dump(2) << "\n";
}

// ---- subcommands ------------------------------------------------------------

struct DensityOpts {
  std::string file, functional = "d*", checkpoints = "geometric";
  nat budget = 1000000;
  bool oracle = false, as_json = false;
};

int cmd_density(const DensityOpts& o) {
  AnySet s = anyset_from_json(unwrap(read_json(o.file), "set"));
  OracleOptions opts;
  opts.budget = o.budget;
  opts.checkpoints = o.checkpoints == "linear" ? OracleOptions::Checkpoints::Linear
                                               : OracleOptions::Checkpoints::Geometric;
  const std::string& f = o.functional;
  DensityReport r;
  if (f == "d*" || f == "d_*")
    r = o.oracle ? prefix_oracle(s, make_checkpoints(opts), opts.tail_fraction)
                 : (f == "d*" ? upper_density(s, opts) : lower_density(s, opts));
  else if (f == "polya")
    r = o.oracle ? polya_oracle(s, opts) : polya_upper(s, opts);
  else if (f == "log" || f.rfind("alpha:", 0) == 0) {
    Rational alpha = f == "log" ? Rational(-1) : parse_rational(f.substr(6));
    r = o.oracle ? weighted_oracle(s, alpha, opts) : weighted_upper_density(s, alpha, opts);
  } else
    throw SchemaError("unknown functional '" + f + "'");
  if (o.as_json)
    std::cout << json{{"functional", f}, {"lo", to_json(r.lo)}, {"hi", to_json(r.hi)}, {"exact", r.exact},
                      {"window", r.window}}
                     .dump()
              << "\n";
  else
    std::cout << r.str() << "\n";
  return Ok;
}

struct SeqOpts {
  std::string file, ideal, out;
  bool as_json = false;
};

int cmd_limit(const SeqOpts& o) {
  json doc = read_json(o.file);
  SymSeq x = symseq_from_json(unwrap(doc, "sequence"));
  IdealDesc ideal = pick_ideal(o.ideal, doc);
  auto r = ideal_lim(x, ideal);
  if (!r.limit)
    throw NotConvergent("x is not " + symbol(ideal) + "-convergent");
  if (o.as_json) {
    json cert = json::array();
    for (const auto& c : r.certificate)
      cert.push_back({{"eps", to_json(c.eps)}, {"level", to_json(c.level)}, {"inIdeal", c.in_ideal}});
    std::cout << json{{"limit", to_json(*r.limit)}, {"certificate", cert}}.dump() << "\n";
  } else {
    std::cout << to_string(*r.limit) << "\n";
  }
  return Ok;
}

int cmd_cluster(const SeqOpts& o) {
  json doc = read_json(o.file);
  SymSeq x = symseq_from_json(unwrap(doc, "sequence"));
  IdealDesc ideal = pick_ideal(o.ideal, doc);
  auto g = cluster_points(x, ideal);
  auto l = limit_points(x, ideal);
  std::string mass;
  if (g.divergent)
    mass = !g.divergent_in_ideal     ? "undecided"
           : *g.divergent_in_ideal ? "in " + symbol(ideal)
                                   : symbol(ideal) + "-positive";
  if (o.as_json) {
    json j{{"gamma", points_json(g.points)}, {"lambda", points_json(l.points)}, {"divergent", nullptr}};
    if (g.divergent)
      j["divergent"] = {{"set", to_json(*g.divergent)}, {"mass", mass}};
    std::cout << j.dump() << "\n";
    return Ok;
  }
  std::cout << g.str("Γ") << ", " << l.str("Λ");
  if (g.divergent)
    std::cout << ", divergent mass: " << set_name(*g.divergent) << " (" << mass << ")";
  std::cout << "\n";
  return Ok;
}

int decompose_double_file(const json& dj, const SeqOpts& o) {
  DoubleSeq x = doubleseq_from_json(dj);
  std::optional<Rational> l;
  for (const auto& p : x.pieces())
    if (member(IdealDesc::density_pr(), x.off(p.value))) {
      l = p.value;
      break;
    }
  if (!l)
    throw NotConvergent("x is not zpr-convergent");
  auto d = decompose_double(x, *l);
  emit({{"limit", to_json(*l)}, {"y", to_json(d.y)}, {"z", to_json(d.z)}}, o.out);
  return Ok;
}

int cmd_decompose(const SeqOpts& o) {
  json doc = read_json(o.file);
  if (doc.is_object() && doc.contains("doubleSequence"))
    return decompose_double_file(doc.at("doubleSequence"), o);
  SymSeq x = symseq_from_json(unwrap(doc, "sequence"));
  IdealDesc ideal = pick_ideal(o.ideal, doc);
  auto r = ideal_lim(x, ideal);
  if (!r.limit)
    throw NotConvergent("x is not " + symbol(ideal) + "-convergent");
  auto d = decompose(x, ideal, *r.limit);
  emit({{"limit", to_json(*r.limit)}, {"y", to_json(d.y)}, {"z", to_json(d.z)}}, o.out);
  return Ok;
}

struct CheckOpts {
  std::string id, spec;
  int trials = 0;
  std::uint64_t seed = 42;
  std::vector<std::string> ideals;
  bool as_json = false;
};

int cmd_check(CheckOpts o) {
  if (!o.spec.empty()) {
    json s = unwrap(read_json(o.spec), "checkSpec");
    o.id = s.value("id", o.id);
    o.trials = s.value("trials", o.trials);
    o.seed = s.value("seed", o.seed);
    o.ideals = s.value("ideals", o.ideals);
  }
  if (o.id.empty())
    throw SchemaError("no check id given");
  std::vector<std::string> ids = o.id == "all" ? catalog() : std::vector<std::string>{o.id};
  std::vector<IdealDesc> ideals;
  for (const auto& n : o.ideals)
    ideals.push_back(IdealDesc::parse(n));
  bool all_pass = true;
  json out = json::array();
  for (const auto& id : ids) {
    Verdict v = check({id, o.trials, o.seed, ideals});
    all_pass = all_pass && v.pass;
    if (o.as_json) {
      out.push_back(to_json(v));
      continue;
    }
    std::printf("%-10s %s  %d trials, seed %llu\n", id.c_str(), v.pass ? "pass" : "FAIL", v.trials,
                static_cast<unsigned long long>(v.seed));
    if (v.counterexample) {
      const json& ce = *v.counterexample;
      std::cout << "  trial " << ce["trial"] << ": " << ce["explanation"].get<std::string>() << "\n"
                << "  instance: " << ce["instance"].dump() << "\n";
    }
  }
  if (o.as_json)
    std::cout << (o.id == "all" ? out : out[0]).dump() << "\n";
  return all_pass ? Ok : CheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal convergence of symbolic sequences: densities, limits, cluster points, theorem checks"};
  app.require_subcommand(1);

  DensityOpts dens;
  auto* density = app.add_subcommand("density", "Upper/lower density of a set, exact or by prefix oracle");
  density->add_option("--set", dens.file, "Set JSON file ('-' for stdin)")->required();
  density->add_option("--functional", dens.functional, "d*, d_*, log, alpha:<q> or polya");
  density->add_option("--budget", dens.budget, "Oracle budget N")->check(CLI::Range(nat{10}, nat{1} << 40));
  density->add_option("--checkpoints", dens.checkpoints)->check(CLI::IsMember({"geometric", "linear"}));
  density->add_flag("--oracle", dens.oracle, "Report the oracle interval even when an exact value exists");
  density->add_flag("--json", dens.as_json);

  SeqOpts seq;
  auto seq_command = [&](const char* name, const char* what) {
    auto* c = app.add_subcommand(name, what);
    c->add_option("--seq", seq.file, "Sequence JSON file ('-' for stdin)")->required();
    c->add_option("--ideal", seq.ideal, "fin, z, logz, alpha:<q>, polya, sum:1/n");
    c->add_flag("--json", seq.as_json);
    return c;
  };
  auto* limit = seq_command("limit", "I-limit of a sequence");
  auto* cluster = seq_command("cluster", "I-cluster and I-limit points");
  auto* decomp = seq_command("decompose", "Split x = y + z with y Fin-convergent and z supported in I");
  decomp->add_option("--out", seq.out, "Write the decomposition here instead of stdout");

  CheckOpts chk;
  auto* check_cmd = app.add_subcommand("check", "Run a property check, or all of them");
  check_cmd->add_option("id", chk.id, "Check id or 'all'");
  check_cmd->add_option("--spec", chk.spec, "checkSpec JSON file");
  check_cmd->add_option("--trials", chk.trials)->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", chk.seed);
  check_cmd->add_option("--ideal", chk.ideals, "Override the ideal family");
  check_cmd->add_flag("--json", chk.as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  try {
    if (*density)
      return cmd_density(dens);
    if (*limit)
      return cmd_limit(seq);
    if (*cluster)
      return cmd_cluster(seq);
    if (*decomp)
      return cmd_decompose(seq);
    return cmd_check(chk);
  } catch (const SchemaError& e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (const UnknownCheckId& e) {
    std::cerr << e.what() << "\n";
    return Usage;
  } catch (const Undecidable& e) {
    std::cerr << e.what() << "\n";
    return Undecided;
  } catch (const NotConvergent& e) {
    std::cerr << e.what() << "\n";
    return Precondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Precondition;
  }
}
