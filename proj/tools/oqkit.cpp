#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oqkit/oq_core.hpp"

using namespace oqkit;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string type;
  Int l = 0;
  std::string weight;
  std::string mu;
  std::string format = "table";
  Int depth = 12;
  std::string kind = "simple";
  std::string mode = "standard";
  std::string y, w;
  bool affine = false;
  bool injective = false;
  std::string cache_dir;
  std::string out;
  int max_length = -1;
};

class UsageError : public Error {
public:
  using Error::Error;
};

Weight parse_weight(const std::string& text, const RootDatum& d, const char* flag) {
  if (text.empty()) throw UsageError(std::string("missing ") + flag);
  std::vector<Int> coords;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoll(part, &used));
      if (part.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad coordinate '") + part + "' in " + flag);
    }
  }
  if (coords.size() != static_cast<std::size_t>(d.rank()))
    throw UsageError(std::string(flag) + " needs " + std::to_string(d.rank()) + " comma-separated coordinates");
  return Weight(std::move(coords));
}

RootDatum datum_of(const Options& o) {
  if (o.type.empty()) throw UsageError("missing --type");
  try {
    return RootDatum::from_label(o.type);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

fs::path cache_dir(const Options& o) {
  if (!o.cache_dir.empty()) return o.cache_dir;
  if (const char* env = std::getenv("OQKIT_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "oqkit";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "oqkit";
  return fs::current_path() / ".oqkit-cache";
}

fs::path cache_file(const Options& o, const RootDatum& d, bool affine) {
  return cache_dir(o) / (d.label() + (affine ? "-affine" : "") + ".jsonl");
}

// Loads a cache if present; store() writes it back when new entries appeared.
template <class Engine>
class CacheSession {
public:
  CacheSession(Engine& engine, fs::path path) : engine_(engine), path_(std::move(path)) {
    if (fs::exists(path_)) engine_.cache_load(path_.string());
    loaded_ = engine_.size();
  }
  void store() {
    if (engine_.size() == loaded_) return;
    fs::create_directories(path_.parent_path());
    engine_.cache_store(path_.string());
  }

private:
  Engine& engine_;
  fs::path path_;
  std::size_t loaded_ = 0;
};

void print_table(const OqContext& ctx, const std::string& subject, const Multiplicities& m, const Options& o) {
  if (o.format == "json") {
    std::cout << ctx.to_json(m).dump() << "\n";
    return;
  }
  std::cout << "# " << subject << "  type=" << ctx.datum().label() << " l=" << ctx.l() << "\n";
  for (const auto& x : ctx.ordered(m)) std::cout << x.to_string() << "\t" << m.at(x) << "\n";
}

void print_json_or_table(const json& j, const Options& o) {
  if (o.format == "json") {
    std::cout << j.dump() << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) std::cout << k << "\t" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

template <class Group>
int run_kl(const Options& o, bool inverse) {
  const RootDatum d = datum_of(o);
  Group g(d);
  KLEngine<Group> engine(g);
  CacheSession cache(engine, cache_file(o, d, o.affine));
  typename Group::Element y, w;
  try {
    y = g.from_word(word_from_string(o.y));
    w = g.from_word(word_from_string(o.w));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  const Polynomial p = inverse ? engine.inverse_kl_polynomial(y, w) : engine.kl_polynomial(y, w);
  cache.store();
  if (o.format == "json") {
    json j;
    j["y"] = word_to_string(g.reduced_word(y));
    j["w"] = word_to_string(g.reduced_word(w));
    j[inverse ? "q" : "p"] = p.coeffs();
    j["poly"] = p.to_string();
    std::cout << j.dump() << "\n";
  } else {
    std::cout << p.to_string() << "\n";
  }
  return 0;
}

template <class Group>
int run_cache(const Options& o, const std::string& action) {
  const RootDatum d = datum_of(o);
  Group g(d);
  KLEngine<Group> engine(g);
  const fs::path path = cache_file(o, d, o.affine);
  if (action == "stats") {
    json j;
    j["path"] = path.string();
    j["exists"] = fs::exists(path);
    if (fs::exists(path)) {
      engine.cache_load(path.string());
      j["entries"] = engine.size();
      j["bytes"] = fs::file_size(path);
    } else {
      j["entries"] = 0;
    }
    print_json_or_table(j, o);
    return 0;
  }
  // export: fill the table of all pairs y <= w with l(w) <= max length, then write it.
  CacheSession cache(engine, path);
  int bound = o.max_length;
  if constexpr (std::is_same_v<Group, AffineWeylGroup>)
    if (bound < 0) throw UsageError("cache export for an affine group needs --max-length");
  std::vector<typename Group::Element> layer{g.identity()}, all{g.identity()};
  std::unordered_set<typename Group::Element, typename Group::Hash> seen{g.identity()};
  for (int len = 0; bound < 0 || len < bound; ++len) {
    std::vector<typename Group::Element> next;
    for (const auto& x : layer)
      for (int s : g.generators()) {
        auto sx = g.left_multiply(s, x);
        if (g.length(sx) == len + 1 && seen.insert(sx).second) next.push_back(sx);
      }
    if (next.empty()) break;
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  for (const auto& x : all)
    for (const auto& z : *g.lower_ideal(x)) engine.kl_polynomial(z, x);
  cache.store();
  if (!o.out.empty()) engine.cache_store(o.out);
  json j;
  j["path"] = o.out.empty() ? path.string() : o.out;
  j["elements"] = all.size();
  j["entries"] = engine.size();
  print_json_or_table(j, o);
  return 0;
}

int run(const std::string& command, const std::string& cache_action, const Options& o) {
  if (o.format != "json" && o.format != "table") throw UsageError("--format must be json or table");
  if (command == "kl" || command == "inverse-kl") {
    return o.affine ? run_kl<AffineWeylGroup>(o, command == "inverse-kl")
                    : run_kl<FiniteWeylGroup>(o, command == "inverse-kl");
  }
  if (command == "cache") {
    if (cache_action != "stats" && cache_action != "export") throw UsageError("cache action must be stats or export");
    return o.affine ? run_cache<AffineWeylGroup>(o, cache_action) : run_cache<FiniteWeylGroup>(o, cache_action);
  }

  const RootDatum d = datum_of(o);
  if (o.l == 0) throw UsageError("missing --l");
  try {
    validate_l(d, o.l);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  OqContext ctx(d, o.l);
  CacheSession finite_cache(ctx.finite_kl(), cache_file(o, d, false));
  CacheSession affine_cache(ctx.affine_kl(), cache_file(o, d, true));
  const Weight lambda = parse_weight(o.weight, d, "--weight");
  const std::string wt = "(" + lambda.to_string() + ")";

  if (command == "decompose") {
    ModuleKind kind;
    try {
      kind = parse_module_kind(o.kind);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    const auto rec = ctx.decompose(kind, lambda);
    if (o.format == "json") {
      std::cout << ctx.to_json(rec).dump() << "\n";
    } else {
      std::cout << "kind\t" << to_string(rec.kind) << "\nclassical\t" << rec.classical_weight.to_string()
                << "\nfinite\t" << rec.finite_weight.to_string() << "\nl\t" << rec.l << "\n";
    }
  } else if (command == "verma-factors") {
    print_table(ctx, "[Delta_q" + wt + " : L_q(mu)]", ctx.verma_factors(lambda), o);
  } else if (command == "tilting-factors") {
    TiltingMode mode;
    if (o.mode == "standard")
      mode = TiltingMode::standard;
    else if (o.mode == "fast")
      mode = TiltingMode::regular_fast_path;
    else
      throw UsageError("--mode must be standard or fast");
    print_table(ctx, "(T_q" + wt + " : Delta_q(mu))", ctx.tilting_factors(lambda, mode), o);
  } else if (command == "projective-factors") {
    if (o.injective)
      print_table(ctx, "(I_q" + wt + " : nabla_q(mu))", ctx.injective_factors(lambda), o);
    else
      print_table(ctx, "(P_q" + wt + " : Delta_q(mu))", ctx.projective_factors(lambda), o);
  } else if (command == "simple-char") {
    if (o.depth < 0) throw UsageError("--depth must be nonnegative");
    const auto ch = ctx.simple_character(lambda, o.depth);
    if (o.format == "json") {
      std::cout << ctx.ring().to_json(ch).dump() << "\n";
    } else {
      std::cout << "# ch L_q" << wt << "  window: below " << wt << " to depth " << o.depth << "\n";
      for (const auto& x : ctx.ring().ordered_support(ch)) std::cout << x.to_string() << "\t" << ch.values.at(x) << "\n";
    }
  } else if (command == "predicates") {
    const auto wp = weight_predicates(d, lambda, o.l);
    const auto sp = ctx.structural_predicates(lambda);
    json j;
    j["dominant"] = wp.dominant;
    j["antidominant"] = wp.antidominant;
    j["regular"] = wp.regular;
    j["l_regular"] = wp.l_regular;
    j["special"] = wp.special;
    j["steinberg"] = wp.steinberg;
    j["verma_simple"] = sp.verma_simple;
    j["verma_projective"] = sp.verma_projective;
    j["proj_injective"] = sp.proj_injective;
    print_json_or_table(j, o);
  } else if (command == "special-block") {
    const auto sb = ctx.special_block(lambda);
    json j;
    j["is_special"] = sb.is_special;
    j["f_image"] = sb.f_image ? json(sb.f_image->coords()) : json(nullptr);
    j["g_image"] = ctx.special_g(lambda).coords();
    print_json_or_table(j, o);
  } else if (command == "generic-mult") {
    const Weight mu = parse_weight(o.mu, d, "--mu");
    const Int m = ctx.generic_verma_simple_multiplicity(lambda, mu);
    if (o.format == "json")
      std::cout << json{{"lambda", lambda.coords()}, {"mu", mu.coords()}, {"multiplicity", m}}.dump() << "\n";
    else
      std::cout << m << "\n";
  } else {
    throw UsageError("unknown command " + command);
  }
  finite_cache.store();
  affine_cache.store();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicities in quantum category O at roots of unity"};
  app.require_subcommand(1);
  Options o;
  std::string cache_action;

  auto add_common = [&](CLI::App* sub, bool needs_l) {
    sub->add_option("--type", o.type, "root system, e.g. A1, B2, G2")->required();
    if (needs_l) sub->add_option("--l", o.l, "odd order of the root of unity")->required();
    sub->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--cache", o.cache_dir, "KL cache directory (default $OQKIT_CACHE or ~/.cache/oqkit)");
  };
  auto add_weight = [&](CLI::App* sub) {
    add_common(sub, true);
    sub->add_option("--weight", o.weight, "comma-separated fundamental coordinates")->required();
    return sub;
  };

  add_weight(app.add_subcommand("decompose", "l-adic tensor decomposition"))
      ->add_option("--kind", o.kind, "simple, projective, injective or tilting");
  add_weight(app.add_subcommand("verma-factors", "[Delta_q(lambda) : L_q(mu)]"));
  auto* tilt = app.add_subcommand("tilting-factors", "(T_q(lambda) : Delta_q(mu))");
  add_weight(tilt);
  tilt->add_option("--mode", o.mode, "standard or fast");
  auto* proj = app.add_subcommand("projective-factors", "(P_q(lambda) : Delta_q(mu))");
  add_weight(proj);
  proj->add_flag("--injective", o.injective, "report (I_q(lambda) : nabla_q(mu)) instead");
  auto* simple = app.add_subcommand("simple-char", "ch L_q(lambda) on a window");
  add_weight(simple);
  simple->add_option("--depth", o.depth, "window depth in simple roots");
  add_weight(app.add_subcommand("predicates", "weight and structural predicates"));
  add_weight(app.add_subcommand("special-block", "special block membership and F, G images"));
  auto* generic = app.add_subcommand("generic-mult", "[Delta_v(lambda) : L_v(mu)] for generic q");
  add_weight(generic);
  generic->add_option("--mu", o.mu, "second weight")->required();
  for (const char* name : {"kl", "inverse-kl"}) {
    auto* kl = app.add_subcommand(name, std::string(name) == "kl" ? "P_{y,w}" : "Q_{y,w}");
    add_common(kl, false);
    kl->add_option("--y", o.y, "word in the simple reflections, e.g. \"2 1\"")->required();
    kl->add_option("--w", o.w, "word in the simple reflections")->required();
    kl->add_flag("--affine", o.affine, "use the affine Weyl group (generator 0 is affine)");
  }
  auto* cache = app.add_subcommand("cache", "KL cache management");
  add_common(cache, false);
  cache->add_option("action", cache_action, "stats or export")->required();
  cache->add_flag("--affine", o.affine, "affine table");
  cache->add_option("--out", o.out, "also write the exported table here");
  cache->add_option("--max-length", o.max_length, "length bound for export");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), cache_action, o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 1;
  } catch (const RangeError& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
