#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "qinv/error.hpp"
#include "qinv/fusion.hpp"
#include "qinv/group.hpp"
#include "qinv/heegaard.hpp"
#include "qinv/hopf.hpp"
#include "qinv/kuperberg.hpp"
#include "qinv/report.hpp"
#include "qinv/triangulate.hpp"
#include "qinv/version.hpp"

namespace {

using namespace qinv;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

FieldPtr field_or_default(const std::string& flag) {
  return flag.empty() ? FieldDescriptor::rationals()
                      : FieldDescriptor::parse(flag);
}

bool has_prefix(const std::string& s, const std::string& p) {
  return s.rfind(p, 0) == 0;
}

// An algebra argument is either a builder spec (group:Z5, function:S3,
// double:Z4) or a file path. --field applies to builder specs only; files
// carry their own field.
HopfData load_algebra(const std::string& spec, const std::string& field_flag) {
  bool builder = has_prefix(spec, "group:") || has_prefix(spec, "function:") ||
                 has_prefix(spec, "double:");
  if (!builder) {
    if (!field_flag.empty())
      throw ParseError("--field applies to builder specs, not algebra files");
    return HopfData::parse(read_file(spec));
  }
  auto colon = spec.find(':');
  Group g = Group::from_spec(spec.substr(colon + 1));
  FieldPtr f = field_or_default(field_flag);
  if (has_prefix(spec, "group:")) return group_algebra(g, f);
  if (has_prefix(spec, "function:")) return function_algebra(g, f);
  return drinfeld_double(g, f);
}

FusionData load_category(const std::string& spec, const std::string& field_flag) {
  if (spec == "trivial") {
    FusionData f = vec_g_category(Group::cyclic(1), field_or_default(field_flag));
    f.name = "trivial";
    return f;
  }
  if (spec == "fibonacci") {
    if (!field_flag.empty())
      throw ParseError("the fibonacci category is defined over a fixed field");
    return fibonacci_category();
  }
  if (has_prefix(spec, "vecg:")) {
    Group g = Group::from_spec(spec.substr(5));
    return vec_g_category(g, field_or_default(field_flag));
  }
  if (!field_flag.empty())
    throw ParseError("--field applies to builder specs, not category files");
  return FusionData::parse(read_file(spec));
}

Group load_group(const std::string& spec) {
  if (spec.size() > 4 && spec.substr(spec.size() - 4) == ".grp")
    return Group::parse(read_file(spec));
  return Group::from_spec(spec);
}

HeegaardDiagram load_diagram(const std::string& path) {
  HeegaardDiagram d = HeegaardDiagram::parse(read_file(path));
  auto problems = validate_diagram(d);
  if (!problems.empty())
    throw ValidationError("diagram '" + d.name + "': " + problems[0]);
  return d;
}

Triangulation load_triangulation(const std::string& path) {
  Triangulation t = Triangulation::parse(read_file(path));
  auto problems = validate_triangulation(t);
  if (!problems.empty())
    throw ValidationError("triangulation '" + t.name + "': " + problems[0]);
  return t;
}

void emit(const InvariantReport& rep, bool json) {
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cerr << rep.to_text();
    std::cout << rep.value << "\n";
  }
}

long long sat_pow_ll(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > LLONG_MAX / base) return LLONG_MAX;
    r *= base;
  }
  return r;
}

int run_ku(const std::string& diagram_file, const std::string& algebra_spec,
           const std::string& strategy, long long cap,
           const std::string& field_flag, bool json) {
  HeegaardDiagram d = load_diagram(diagram_file);
  HopfData a = load_algebra(algebra_spec, field_flag);
  ContractionOptions opts;
  opts.strategy = strategy_from_name(strategy);
  opts.cap = cap;
  ContractionStats stats;
  Scalar v = kuperberg_invariant(d, a, opts, &stats);
  InvariantReport rep;
  rep.manifold = d.name;
  rep.kind = "kuperberg";
  rep.object_id = a.name;
  rep.field = a.field->text();
  rep.value = v.text();
  rep.digests = {{"diagram", hex64(fnv1a64(d.serialize()))},
                 {"algebra", hex64(fnv1a64(a.serialize()))}};
  rep.cost = {{"estimated_cost", stats.estimated_cost},
              {"assignments", stats.assignments},
              {"words_evaluated", stats.words_evaluated},
              {"parallel", stats.parallel ? 1 : 0}};
  rep.notes = {{"strategy", strategy_name(stats.strategy)}};
  emit(rep, json);
  return 0;
}

int run_tv(const std::string& tri_file, const std::string& category_spec,
           long long cap, const std::string& field_flag, bool json) {
  Triangulation t = load_triangulation(tri_file);
  FusionData f = load_category(category_spec, field_flag);
  {
    auto problems = validate_fusion(f);
    if (!problems.empty())
      throw ValidationError("category '" + f.name + "': " + problems[0]);
  }
  TvOptions opts;
  opts.cap = cap;
  TvStats stats;
  Scalar v = tv_state_sum(t, f, opts, &stats);
  InvariantReport rep;
  rep.manifold = t.name;
  rep.kind = "tv";
  rep.object_id = f.name;
  rep.field = f.field->text();
  rep.value = v.text();
  rep.digests = {{"triangulation", hex64(fnv1a64(t.serialize()))},
                 {"category", hex64(fnv1a64(f.serialize()))}};
  rep.cost = {{"colorings", stats.colorings},
              {"nodes", stats.nodes},
              {"parallel", stats.parallel ? 1 : 0}};
  emit(rep, json);
  return 0;
}

int run_pi1count(const std::string& diagram_file, const std::string& group_spec,
                 long long cap, bool json) {
  HeegaardDiagram d = load_diagram(diagram_file);
  Group g = load_group(group_spec);
  GroupPresentation pres = pi1_presentation(d);
  long long count = hom_count(pres, g, cap);
  InvariantReport rep;
  rep.manifold = d.name;
  rep.kind = "homcount";
  rep.object_id = g.name;
  rep.field = "Q";
  rep.value = std::to_string(count);
  rep.digests = {{"diagram", hex64(fnv1a64(d.serialize()))},
                 {"group", hex64(fnv1a64(g.serialize()))}};
  rep.cost = {{"maps", sat_pow_ll(g.n, pres.generators)}};
  emit(rep, json);
  return 0;
}

int run_crosscheck(const std::string& diagram_file, const std::string& tri_file,
                   const std::string& group_spec, long long cap, bool json) {
  HeegaardDiagram d = load_diagram(diagram_file);
  Triangulation t = load_triangulation(tri_file);
  Group g = load_group(group_spec);
  if (!g.is_abelian())
    throw ValidationError("group '" + g.name +
                          "' is not abelian; the cross-check compares against "
                          "the pointed category of an abelian group");
  H1Group h1_d = h1_from_presentation(pi1_presentation(d));
  H1Group h1_t = homology_h1(t);
  if (!(h1_d == h1_t))
    throw MismatchError("homology mismatch: diagram '" + d.name + "' has H1 = " +
                        h1_d.text() + " but triangulation '" + t.name +
                        "' has H1 = " + h1_t.text() +
                        "; refusing to compare invariants of different manifolds");
  FieldPtr q = FieldDescriptor::rationals();
  HopfData a = group_algebra(g, q);
  FusionData f = vec_g_category(g);
  ContractionOptions kopts;
  kopts.cap = cap;
  TvOptions topts;
  topts.cap = cap;
  Scalar ku = kuperberg_invariant(d, a, kopts);
  Scalar tv = tv_state_sum(t, f, topts);
  Scalar scaled = Scalar::integer(q, g.n) * tv;
  bool pass = ku == scaled;
  nlohmann::ordered_json j;
  j["kind"] = "crosscheck";
  j["diagram"] = d.name;
  j["triangulation"] = t.name;
  j["group"] = g.name;
  j["h1"] = h1_d.text();
  j["ku"] = ku.text();
  j["tv"] = tv.text();
  j["scaled_tv"] = scaled.text();
  j["pass"] = pass;
  j["version"] = kToolVersion;
  if (json) {
    std::cout << j.dump() << "\n";
  } else {
    std::cerr << "Ku_{k[" << g.name << "]}(" << d.name << ") = " << ku.text()
              << "\n"
              << "|G| * TV_{vecg:" << g.name << "}(" << t.name
              << ") = " << g.n << " * " << tv.text() << " = " << scaled.text()
              << "\n";
    std::cout << (pass ? "pass" : "fail") << "\n";
  }
  if (!pass && !json) std::cerr << "error: invariants disagree\n";
  return pass ? 0 : exit_mismatch;
}

int run_validate(const std::string& path, bool json) {
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  std::string format, name;
  std::vector<std::string> problems;
  if (ext == ".hgd") {
    format = "heegaard";
    HeegaardDiagram d = HeegaardDiagram::parse(read_file(path));
    name = d.name;
    problems = validate_diagram(d);
  } else if (ext == ".tri") {
    format = "triangulation";
    Triangulation t = Triangulation::parse(read_file(path));
    name = t.name;
    problems = validate_triangulation(t);
  } else if (ext == ".hopf") {
    format = "hopf";
    HopfData a = HopfData::parse(read_file(path));
    name = a.name;
    problems = validate_hopf(a);
  } else if (ext == ".fus") {
    format = "fusion";
    FusionData f = FusionData::parse(read_file(path));
    name = f.name;
    problems = validate_fusion(f);
    if (problems.empty()) problems = validate_pentagon(f);
  } else if (ext == ".grp") {
    format = "group";
    Group g = Group::parse(read_file(path));  // validates the table
    name = g.name;
  } else {
    throw ParseError("unrecognized corpus extension '" + ext +
                     "' (expected .hgd, .tri, .hopf, .fus, or .grp)");
  }
  if (json) {
    nlohmann::ordered_json j;
    j["kind"] = "validate";
    j["format"] = format;
    j["name"] = name;
    j["ok"] = problems.empty();
    j["problems"] = problems;
    j["version"] = kToolVersion;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& p : problems) std::cerr << p << "\n";
    std::cout << (problems.empty() ? "ok" : "invalid") << " " << format << " "
              << name << "\n";
  }
  return problems.empty() ? 0 : exit_input;
}

int run_gen(const std::string& out_dir) {
  namespace fs = std::filesystem;
  FieldPtr q = FieldDescriptor::rationals();
  auto write = [&](const std::string& rel, const std::string& text) {
    fs::path p = fs::path(out_dir) / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + p.string() + "'");
    out << text;
    std::cout << p.string() << "\n";
  };

  const char* group_specs[] = {"Z1", "Z2", "Z3", "Z4", "Z5",
                               "Z6", "Z7", "S3", "Q8", "Z2xZ2"};
  for (const char* spec : group_specs) {
    Group g = Group::from_spec(spec);
    std::string base = spec;
    for (auto& c : base) c = (char)tolower(c);
    write("groups/" + base + ".grp", g.serialize());
  }
  for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "S3", "Q8"}) {
    Group g = Group::from_spec(spec);
    std::string base = spec;
    for (auto& c : base) c = (char)tolower(c);
    write("hopf/group_" + base + ".hopf", group_algebra(g, q).serialize());
    write("hopf/function_" + base + ".hopf",
          function_algebra(g, q).serialize());
  }
  for (const char* spec : {"Z2", "Z3", "Z4", "Z5", "Z6", "S3"}) {
    Group g = Group::from_spec(spec);
    std::string base = spec;
    for (auto& c : base) c = (char)tolower(c);
    write("hopf/double_" + base + ".hopf", drinfeld_double(g, q).serialize());
  }
  write("hopf/group_z2_f2.hopf",
        group_algebra(Group::from_spec("Z2"), FieldDescriptor::prime_field(2))
            .serialize());

  write("diagrams/s3.hgd", s3_diagram().serialize());
  write("diagrams/s2xs1.hgd", s2xs1_diagram().serialize());
  const int lens[][2] = {{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2},
                         {7, 1}, {7, 2}, {8, 3}};
  for (auto [p, qq] : lens)
    write("diagrams/lens_" + std::to_string(p) + "_" + std::to_string(qq) +
              ".hgd",
          lens_diagram(p, qq).serialize());
  write("diagrams/sum_2_1_3_1.hgd",
        connected_sum(lens_diagram(2, 1), lens_diagram(3, 1)).serialize());

  write("triangulations/s3_one_tet.tri", s3_one_tet().serialize());
  write("triangulations/s3_two_tet.tri", s3_two_tet().serialize());
  write("triangulations/s3_pentachoron.tri", s3_pentachoron().serialize());
  write("triangulations/s2xs1.tri", s2xs1_tri().serialize());
  write("triangulations/lens_2_1.tri", lens_2_1_tri().serialize());
  write("triangulations/lens_3_1.tri", lens_3_1_tri().serialize());

  write("fusion/trivial.fus", trivial_category().serialize());
  for (const char* spec : {"Z2", "Z3", "Z4"}) {
    std::string base = spec;
    for (auto& c : base) c = (char)tolower(c);
    write("fusion/vec_" + base + ".fus",
          vec_g_category(Group::from_spec(spec)).serialize());
  }
  write("fusion/fibonacci.fus", fibonacci_category().serialize());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Kuperberg and Turaev-Viro invariants of closed oriented "
               "3-manifolds"};
  app.set_version_flag("--version", qinv::kToolVersion);
  app.require_subcommand(1);

  std::string diagram_file, tri_file, algebra_spec, category_spec, group_spec;
  std::string strategy = "seq", field_flag, validate_file, out_dir;
  long long cap = 100000000LL;
  bool json = false;

  CLI::App* ku = app.add_subcommand("ku", "Kuperberg invariant of a Heegaard "
                                          "diagram");
  ku->add_option("diagram", diagram_file, "Heegaard diagram file (.hgd)")
      ->required();
  ku->add_option("--algebra", algebra_spec,
                 "Hopf algebra file or builder spec (group:Z5, function:S3, "
                 "double:Z4)")
      ->required();
  ku->add_option("--strategy", strategy, "contraction strategy: seq or "
                                         "enumerate");
  ku->add_option("--cap", cap, "cost cap on basis-index assignments");
  ku->add_option("--field", field_flag, "field for builder specs (Q, Fp:p, "
                                        "NF:poly)");
  ku->add_flag("--json", json, "print the report as JSON");

  CLI::App* tv = app.add_subcommand("tv", "Turaev-Viro state sum of a "
                                          "triangulation");
  tv->add_option("triangulation", tri_file, "triangulation file (.tri)")
      ->required();
  tv->add_option("--category", category_spec,
                 "fusion category file or builder spec (vecg:Z2, trivial, "
                 "fibonacci)")
      ->required();
  tv->add_option("--cap", cap, "cost cap on admissible colorings");
  tv->add_option("--field", field_flag, "field for builder specs");
  tv->add_flag("--json", json, "print the report as JSON");

  CLI::App* pi1 = app.add_subcommand("pi1count", "count homomorphisms from "
                                                 "the fundamental group into "
                                                 "a finite group");
  pi1->add_option("diagram", diagram_file, "Heegaard diagram file (.hgd)")
      ->required();
  pi1->add_option("--group", group_spec, "group file (.grp) or spec (Z5, S3, "
                                         "Q8, Z2xZ2)")
      ->required();
  pi1->add_option("--cap", cap, "cap on |G|^generators");
  pi1->add_flag("--json", json, "print the report as JSON");

  CLI::App* cross = app.add_subcommand(
      "crosscheck", "verify Ku_{k[G]}(diagram) = |G| * TV_{vec G}"
                    "(triangulation) for an abelian G");
  cross->add_option("diagram", diagram_file, "Heegaard diagram file (.hgd)")
      ->required();
  cross->add_option("triangulation", tri_file, "triangulation file (.tri)")
      ->required();
  cross->add_option("--group", group_spec, "abelian group file or spec")
      ->required();
  cross->add_option("--cap", cap, "cost cap for both contractions");
  cross->add_flag("--json", json, "print the report as JSON");

  CLI::App* val = app.add_subcommand("validate", "parse and validate a corpus "
                                                 "file");
  val->add_option("file", validate_file,
                  "corpus file (.hgd, .tri, .hopf, .fus, .grp)")
      ->required();
  val->add_flag("--json", json, "print the report as JSON");

  CLI::App* gen = app.add_subcommand("gen", "write the shipped corpus files");
  gen->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : qinv::exit_input;
  }

  try {
    if (ku->parsed())
      return run_ku(diagram_file, algebra_spec, strategy, cap, field_flag,
                    json);
    if (tv->parsed())
      return run_tv(tri_file, category_spec, cap, field_flag, json);
    if (pi1->parsed()) return run_pi1count(diagram_file, group_spec, cap, json);
    if (cross->parsed())
      return run_crosscheck(diagram_file, tri_file, group_spec, cap, json);
    if (val->parsed()) return run_validate(validate_file, json);
    if (gen->parsed()) return run_gen(out_dir);
  } catch (const qinv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
