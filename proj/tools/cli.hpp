#pragma once

// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it in-process.
//
// Exit codes: 0 computed (hypothesis violations included), 2 input
// validation error, 3 cap refusal or search timeout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lintersect/lintersect.hpp"

namespace lintersect::cli {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kExitOk = 0, kExitInvalid = 2, kExitRefused = 3 };

enum class Format { Json, Csv, Text };

struct Caps {
  std::int64_t matrix_cap = kDefaultMatrixCap;
  unsigned search_n_cap = 10;
  std::size_t vertex_cap = 1024;
  double time_budget = 60.0;
  unsigned threads = 0;
};

struct RunConfig {
  std::string subcommand;
  std::optional<unsigned> n;
  std::optional<std::uint64_t> p;
  ResidueSet meets;  // L
  ResidueSet sizes;  // K
  std::string family_path;
  bool integers = false;
  bool with_nonshadows = false;
  bool emit_matrix = false;
  bool cross_check = false;
  std::string theorem = "multilevel";
  std::string kind = "polynomial";
  std::string sweep;
  unsigned n_max = 5;
  unsigned s_max = 3;
  std::optional<LevelSet> levels;
  Format format = Format::Json;
  std::uint64_t seed = 1;
  double keep = 1.0;
  Caps caps;
};

// ---------------------------------------------------------------------------
// Parsing helpers

inline std::vector<std::uint64_t> parse_integer_list(const std::string& text, const std::string& what) {
  std::string spaced = text;
  for (char& c : spaced)
    if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
  std::istringstream in(spaced);
  std::vector<std::uint64_t> out;
  std::string token;
  while (in >> token) {
    if (token.size() > 18 || token.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::ParseError, what + ": '" + token + "' is not a nonnegative integer");
    out.push_back(std::stoull(token));
  }
  return out;
}

inline ResidueSet parse_residues(const std::string& text, const std::string& what) {
  return ResidueSet(parse_integer_list(text, what));
}

inline Caps caps_from_environment() {
  Caps caps;
  auto read = [](const char* name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name); v && *v) return std::string(v);
    return std::nullopt;
  };
  auto number = [](const std::string& name, const std::string& value) {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size() || v < 0) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, name + " must be a nonnegative number, got '" + value + "'");
    }
  };
  if (auto v = read("LINTERSECT_MATRIX_CAP")) caps.matrix_cap = static_cast<std::int64_t>(number("LINTERSECT_MATRIX_CAP", *v));
  if (auto v = read("LINTERSECT_SEARCH_CAP")) caps.search_n_cap = static_cast<unsigned>(number("LINTERSECT_SEARCH_CAP", *v));
  if (auto v = read("LINTERSECT_VERTEX_CAP")) caps.vertex_cap = static_cast<std::size_t>(number("LINTERSECT_VERTEX_CAP", *v));
  if (auto v = read("LINTERSECT_TIME_BUDGET")) caps.time_budget = number("LINTERSECT_TIME_BUDGET", *v);
  if (auto v = read("LINTERSECT_THREADS")) caps.threads = static_cast<unsigned>(number("LINTERSECT_THREADS", *v));
  return caps;
}

inline SetFamily family_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets"))
    throw Error(ErrorCode::ParseError, "JSON family needs \"n\" and \"sets\"");
  if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() > kMaxGroundSet)
    throw Error(ErrorCode::ParseError, "\"n\" must be an integer in 0..64");
  const auto n = doc["n"].get<unsigned>();
  std::vector<Mask> masks;
  for (const auto& set : doc["sets"]) {
    if (!set.is_array()) throw Error(ErrorCode::ParseError, "each set must be an array of elements");
    std::vector<unsigned> elements;
    for (const auto& e : set) {
      if (!e.is_number_unsigned()) throw Error(ErrorCode::ParseError, "elements must be positive integers");
      elements.push_back(e.get<unsigned>());
    }
    const auto subset = Subset::from_elements(n, elements);
    if (subset.size() != elements.size()) throw Error(ErrorCode::ParseError, "repeated element in a set");
    masks.push_back(subset.mask());
  }
  return SetFamily(n, std::move(masks));
}

inline SetFamily load_family(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open family file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, e.what());
    }
    return family_from_json(doc);
  }
  return parse_family_text(text);
}

inline TheoremId parse_theorem(const std::string& name) {
  static const std::pair<const char*, TheoremId> aliases[] = {
      {"abs", TheoremId::AbsClassic},
      {"multilevel", TheoremId::MultilevelNonshadow},
      {"modular", TheoremId::ModularMultilevel},
      {"coeff", TheoremId::CoeffSensitive},
      {"coeff-nonshadow", TheoremId::CoeffSensitiveNonshadow},
      {"almost-initial", TheoremId::AlmostInitial},
      {"consecutive", TheoremId::Consecutive},
      {"nonmodular", TheoremId::NonmodularSupport},
  };
  for (const auto& [alias, id] : aliases)
    if (name == alias) return id;
  if (auto id = theorem_from_string(name)) return *id;
  throw Error(ErrorCode::InvalidArgument, "unknown theorem '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON encoders

inline json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

inline json family_json(const SetFamily& family) {
  json sets = json::array();
  for (Mask m : family.masks()) sets.push_back(Subset(family.n(), m).elements());
  return {{"n", family.n()}, {"sets", sets}};
}

inline json residues_json(const ResidueSet& values) {
  return std::vector<std::uint64_t>(values.elements().begin(), values.elements().end());
}

inline json levels_json(const std::vector<LevelStats>& levels) {
  json out = json::array();
  for (const auto& l : levels) out.push_back({{"j", l.level}, {"shadow", l.shadow_count}, {"nonshadow", l.nonshadow_count}});
  return out;
}

inline json envelope(const std::string& command) { return {{"schema", kSchemaVersion}, {"command", command}}; }

inline json report_json(const BoundReport& r) {
  json out = envelope("bound");
  out["theorem"] = std::string(to_string(r.theorem));
  out["n"] = r.n;
  out["s"] = r.s;
  out["r"] = r.r;
  out["p"] = r.p ? json(*r.p) : json(nullptr);
  out["hypotheses_ok"] = r.hypotheses_ok;
  out["violated"] = r.violated;
  out["family_size"] = r.family_size;
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["slack"] = r.slack;
  out["refined_lhs"] = r.refined_lhs;
  out["shadow_sum"] = r.shadow_sum;
  out["nonshadow_sum"] = r.nonshadow_sum;
  out["levels"] = levels_json(r.levels);
  out["bsupp"] = r.bsupp ? json(*r.bsupp) : json(nullptr);
  json coefficients = json::array();
  for (const auto& c : r.coefficients) coefficients.push_back(big_json(c));
  out["c"] = coefficients;
  out["m"] = r.almost_initial_m ? json(*r.almost_initial_m) : json(nullptr);
  return out;
}

inline json certificate_json(const Certificate& c) {
  json out = envelope("certificate");
  out["domain"] = c.domain;
  out["p"] = c.p ? json(*c.p) : json(nullptr);
  out["rows"] = c.rows;
  out["cols"] = c.cols;
  out["rank"] = c.rank;
  out["independent"] = c.independent;
  json blocks = json::array();
  for (const auto& [name, size] : c.blocks) blocks.push_back({{"name", name}, {"size", size}});
  out["blocks"] = blocks;
  out["operations"] = c.operations;
  if (!c.matrix.empty()) {
    json rows = json::array();
    for (const auto& row : c.matrix) {
      json values = json::array();
      for (const auto& v : row) values.push_back(big_json(v));
      rows.push_back(values);
    }
    out["matrix"] = rows;
  }
  return out;
}

inline json gram_json(const GramWitness& g, const SetFamily& family, bool with_matrix) {
  json out = envelope("certificate");
  out["kind"] = "gram";
  out["p"] = g.p;
  out["size"] = g.values.size();
  out["valid"] = g.valid;
  if (g.witness_pair) {
    const auto [i, j] = *g.witness_pair;
    out["witness_pair"] = {{"i", i},
                           {"j", j},
                           {"A", Subset(family.n(), family[i]).elements()},
                           {"B", Subset(family.n(), family[j]).elements()},
                           {"value", g.values[i][j]}};
  } else {
    out["witness_pair"] = nullptr;
  }
  if (with_matrix) out["matrix"] = g.values;
  return out;
}

inline json search_json(const SearchResult& r, const SearchProblem& problem) {
  json out = envelope("search");
  out["n"] = problem.n;
  out["mode"] = problem.mode.name();
  out["K"] = residues_json(problem.sizes);
  out["L"] = residues_json(problem.meets);
  out["max_size"] = r.max_size;
  out["witness"] = family_json(r.witness)["sets"];
  out["bound_used"] = r.bound_used;
  out["bound_theorem"] = r.bound_theorem ? json(std::string(to_string(*r.bound_theorem))) : json("VERTEX_COUNT");
  json bounds = json::array();
  for (const auto& b : applicable_bounds(problem.n, problem.sizes, problem.meets, problem.mode))
    bounds.push_back({{"theorem", std::string(to_string(b.theorem))}, {"rhs", b.rhs}});
  out["bounds"] = bounds;
  out["proof_of_optimality"] = r.proof_of_optimality;
  out["timed_out"] = r.timed_out;
  out["witness_canonical"] = r.witness_canonical;
  out["vertex_count"] = r.vertex_count;
  out["nodes_explored"] = r.nodes_explored;
  out["elapsed_seconds"] = r.elapsed_seconds;
  return out;
}

template <CoefficientDomain D>
json expansion_json(const ResidueSet& meets, const D& domain) {
  const auto power = annihilator_poly(meets, domain);
  const auto expansion = to_binomial_basis(power, static_cast<unsigned>(meets.size()));
  json out = envelope("bsupp");
  out["domain"] = domain.name();
  out["p"] = domain.modulus() ? json(*domain.modulus()) : json(nullptr);
  out["L"] = residues_json(meets);
  out["s"] = meets.size();
  json power_json = json::array();
  for (const auto& a : power.coefficients()) power_json.push_back(big_json(domain.to_bigint(a)));
  out["power"] = power_json;
  json c = json::array();
  for (const auto& v : expansion.coefficients()) c.push_back(big_json(domain.to_bigint(v)));
  out["c"] = c;
  out["support"] = expansion.support();
  out["almost_initial"] = nullptr;
  if (auto p = domain.modulus())
    if (auto pattern = is_almost_initial(meets, *p))
      out["almost_initial"] = {{"m", pattern->m}, {"R", residues_json(pattern->extra)}};
  return out;
}

// ---------------------------------------------------------------------------
// Output

inline std::string join(const json& array) {
  std::string out;
  for (const auto& v : array) {
    if (!out.empty()) out += ",";
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out;
}

inline void emit_bsupp(const json& doc, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else if (format == Format::Csv) {
    out << "j,c\n";
    for (std::size_t j = 0; j < doc["c"].size(); ++j) out << j << "," << join(json::array({doc["c"][j]})) << "\n";
  } else {
    out << "c=[" << join(doc["c"]) << "] support=[" << join(doc["support"]) << "]\n";
  }
}

inline void emit_levels_csv(const json& levels, std::ostream& out) {
  out << "j,shadow,nonshadow\n";
  for (const auto& l : levels) out << l["j"] << "," << l["shadow"] << "," << l["nonshadow"] << "\n";
}

// ---------------------------------------------------------------------------
// Subcommands

inline SearchOptions search_options(const Caps& caps) {
  SearchOptions options;
  options.n_cap = caps.search_n_cap;
  options.vertex_cap = caps.vertex_cap;
  options.time_budget_seconds = caps.time_budget;
  options.threads = caps.threads;
  return options;
}

inline int cmd_bsupp(const RunConfig& cfg, std::ostream& out) {
  if (cfg.integers == cfg.p.has_value())
    throw Error(ErrorCode::InvalidArgument, "bsupp needs exactly one of --p or --integers");
  const json doc = cfg.p ? expansion_json(cfg.meets, ModularDomain{PrimeModulus(*cfg.p)})
                         : expansion_json(cfg.meets, IntegerDomain{});
  emit_bsupp(doc, cfg.format, out);
  return kExitOk;
}

inline int cmd_shadow(const RunConfig& cfg, std::ostream& out) {
  const auto family = load_family(cfg.family_path);
  LevelSet levels;
  if (cfg.levels) {
    levels = *cfg.levels;
  } else {
    for (unsigned j = 0; j <= family.n(); ++j) levels.push_back(j);
  }
  std::vector<LevelStats> stats;
  json shadows = json::object();
  for (auto j : levels) {
    if (j > family.n()) throw Error(ErrorCode::LevelOutOfRange, "level " + std::to_string(j) + " > n");
    stats.push_back(level_stats(family, j));
    if (cfg.levels) shadows[std::to_string(j)] = family_json(shadow(family, j))["sets"];
  }
  json doc = envelope("shadow");
  doc["n"] = family.n();
  doc["size"] = family.size();
  doc["levels"] = levels_json(stats);
  doc["intersection_histogram"] = intersection_profile(family).histogram;
  if (cfg.levels) doc["shadows"] = shadows;
  if (cfg.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else {
    emit_levels_csv(doc["levels"], out);
  }
  return kExitOk;
}

inline int cmd_bound(const RunConfig& cfg, std::ostream& out) {
  const auto id = parse_theorem(cfg.theorem);
  const auto family = load_family(cfg.family_path);
  const auto report = check_theorem(id, family, cfg.sizes, cfg.meets, cfg.p);
  const json doc = report_json(report);
  if (cfg.format == Format::Json) {
    out << doc.dump(2) << "\n";
  } else if (cfg.format == Format::Csv) {
    emit_levels_csv(doc["levels"], out);
  } else {
    out << doc["theorem"].get<std::string>() << ": lhs=" << report.lhs << " rhs=" << report.rhs
        << " slack=" << report.slack << " hypotheses_ok=" << (report.hypotheses_ok ? "true" : "false") << "\n";
    for (const auto& v : report.violated) out << "  violated: " << v << "\n";
  }
  return kExitOk;
}

inline int cmd_certificate(const RunConfig& cfg, std::ostream& out) {
  const auto family = load_family(cfg.family_path);
  CertificateOptions options;
  options.matrix_cap = cfg.caps.matrix_cap;
  options.keep_matrix = cfg.emit_matrix;
  json doc;
  if (cfg.kind == "gram") {
    if (!cfg.p) throw Error(ErrorCode::InvalidArgument, "--kind gram needs --p");
    doc = gram_json(gram_witness(family, cfg.meets, *cfg.p), family, cfg.emit_matrix);
  } else if (cfg.kind == "incidence") {
    if (!cfg.p) throw Error(ErrorCode::InvalidArgument, "--kind incidence needs --p");
    const auto report = check_coeff_sensitive(family, cfg.sizes, cfg.meets, *cfg.p, cfg.with_nonshadows);
    doc = certificate_json(incidence_independence(family, cfg.meets, *cfg.p, cfg.with_nonshadows, options));
    doc["kind"] = "incidence";
    doc["bsupp"] = *report.bsupp;
    doc["hypotheses_ok"] = report.hypotheses_ok;
    doc["violated"] = report.violated;
  } else if (cfg.kind == "polynomial") {
    auto certify = [&](const auto& domain) {
      const auto w = build_witness(family, cfg.sizes, cfg.meets, domain, HypothesisPolicy::Record);
      json d = certificate_json(verify_independence(w, options));
      d["kind"] = "polynomial";
      d["family_size"] = family.size();
      d["witness_size"] = w.size();
      d["ambient_dimension"] = w.ambient_dimension();
      d["hypotheses_ok"] = w.hypotheses_ok;
      d["violated"] = w.violated;
      if (cfg.cross_check) {
        const auto eval = verify_independence_by_evaluation(w);
        d["evaluation_rank"] = eval.rank;
      }
      return d;
    };
    doc = cfg.p ? certify(ModularDomain{PrimeModulus(*cfg.p)}) : certify(IntegerDomain{});
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown certificate kind '" + cfg.kind + "'");
  }
  out << doc.dump(2) << "\n";
  return kExitOk;
}

inline int cmd_search(const RunConfig& cfg, std::ostream& out) {
  const auto options = search_options(cfg.caps);
  if (cfg.sweep == "sharpness") {
    const auto rows = sharpness_sweep(cfg.n_max, cfg.s_max, options);
    json table = json::array();
    for (const auto& r : rows)
      table.push_back({{"n", r.n}, {"s", r.s}, {"r", r.r}, {"attained", r.attained}, {"bound", r.bound},
                       {"equal", r.attains()}, {"construction_admissible", r.construction_admissible},
                       {"proof_of_optimality", r.proof_of_optimality}});
    if (cfg.format == Format::Csv) {
      out << "n,s,r,attained,bound,equal,construction_admissible,proof_of_optimality\n";
      for (const auto& r : rows)
        out << r.n << "," << r.s << "," << r.r << "," << r.attained << "," << r.bound << "," << int(r.attains()) << ","
            << int(r.construction_admissible) << "," << int(r.proof_of_optimality) << "\n";
    } else {
      json doc = envelope("search");
      doc["sweep"] = "sharpness";
      doc["rows"] = table;
      out << doc.dump(2) << "\n";
    }
    return kExitOk;
  }
  if (cfg.sweep == "unattainability") {
    if (!cfg.p) throw Error(ErrorCode::InvalidArgument, "the unattainability sweep needs --p");
    const auto rows = unattainability_sweep(*cfg.p, cfg.n_max, options);
    if (cfg.format == Format::Csv) {
      out << "p,n,s,r,max_size,level_bound,abs_bound,proof_of_optimality\n";
      for (const auto& r : rows)
        out << r.p << "," << r.n << "," << r.s << "," << r.sizes.size() << "," << r.max_size << "," << r.level_bound
            << "," << r.abs_bound << "," << int(r.proof_of_optimality) << "\n";
    } else {
      json table = json::array();
      for (const auto& r : rows)
        table.push_back({{"p", r.p}, {"n", r.n}, {"s", r.s}, {"K", residues_json(r.sizes)},
                         {"max_size", r.max_size}, {"level_bound", r.level_bound}, {"abs_bound", r.abs_bound},
                         {"proof_of_optimality", r.proof_of_optimality}});
      json doc = envelope("search");
      doc["sweep"] = "unattainability";
      doc["rows"] = table;
      out << doc.dump(2) << "\n";
    }
    return kExitOk;
  }
  if (!cfg.sweep.empty()) throw Error(ErrorCode::InvalidArgument, "unknown sweep '" + cfg.sweep + "'");
  if (!cfg.n) throw Error(ErrorCode::InvalidArgument, "search needs --n");

  const SearchProblem problem{*cfg.n, cfg.p ? Mode::modulo(*cfg.p) : Mode::exact(), cfg.sizes, cfg.meets};
  const auto result = max_family(problem, options);
  const json doc = search_json(result, problem);
  if (cfg.format == Format::Csv) {
    out << "n,mode,max_size,bound_used,proof_of_optimality,vertex_count\n";
    out << problem.n << "," << problem.mode.name() << "," << result.max_size << "," << result.bound_used << ","
        << int(result.proof_of_optimality) << "," << result.vertex_count << "\n";
  } else if (cfg.format == Format::Text) {
    out << "# max_size=" << result.max_size << " bound_used=" << result.bound_used
        << " proof_of_optimality=" << (result.proof_of_optimality ? "true" : "false")
        << " timed_out=" << (result.timed_out ? "true" : "false") << "\n";
    out << format_family_text(result.witness);
  } else {
    out << doc.dump(2) << "\n";
  }
  return result.timed_out ? kExitRefused : kExitOk;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.n) throw Error(ErrorCode::InvalidArgument, "generate needs --n");
  if (*cfg.n > kMaxGroundSet) throw Error(ErrorCode::InvalidArgument, "n must be at most 64");
  if (*cfg.n > 20) throw Error(ErrorCode::SearchCapExceeded, "generate enumerates 2^n subsets; n must be <= 20");
  const SearchProblem problem{*cfg.n, cfg.p ? Mode::modulo(*cfg.p) : Mode::exact(), cfg.sizes, cfg.meets};
  std::mt19937_64 rng(cfg.seed);
  const auto family = random_admissible_family(problem, rng, cfg.keep);
  if (cfg.format == Format::Json) {
    json doc = family_json(family);
    out << doc.dump() << "\n";
  } else {
    out << format_family_text(family);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"lintersect: restricted-intersection bounds, witnesses and extremal search"};
  app.require_subcommand(1);

  std::string L_text, K_text, levels_text, format_text = "json";
  std::optional<unsigned> n_opt;
  std::optional<std::uint64_t> p_opt;

  auto add_p = [&](CLI::App* sub) { sub->add_option("--p", p_opt, "prime modulus"); };
  auto add_sets = [&](CLI::App* sub) {
    sub->add_option("--L", L_text, "allowed intersection sizes, e.g. 0,1,2");
    sub->add_option("--K", K_text, "allowed member sizes, e.g. 2,4");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family_path, "family file (text or JSON; '-' for stdin)")->required();
  };

  auto* bsupp_cmd = app.add_subcommand("bsupp", "binomial-basis expansion and support of P_L");
  add_p(bsupp_cmd);
  bsupp_cmd->add_option("--L", L_text, "residue set L")->required();
  bsupp_cmd->add_flag("--integers", cfg.integers, "expand over the integers");
  add_format(bsupp_cmd);

  auto* shadow_cmd = app.add_subcommand("shadow", "shadow and non-shadow counts per level");
  add_family(shadow_cmd);
  shadow_cmd->add_option("--levels", levels_text, "levels to report (default 0..n); lists the shadows");
  add_format(shadow_cmd);

  auto* bound_cmd = app.add_subcommand("bound", "evaluate one bound on a family");
  add_family(bound_cmd);
  add_sets(bound_cmd);
  add_p(bound_cmd);
  bound_cmd->add_option("--theorem", cfg.theorem,
                        "abs, multilevel, modular, coeff, coeff-nonshadow, almost-initial, consecutive, nonmodular");
  add_format(bound_cmd);

  auto* cert_cmd = app.add_subcommand("certificate", "linear-independence certificate for a family");
  add_family(cert_cmd);
  add_sets(cert_cmd);
  add_p(cert_cmd);
  cert_cmd->add_option("--kind", cfg.kind, "polynomial, gram or incidence")
      ->check(CLI::IsMember({"polynomial", "gram", "incidence"}));
  cert_cmd->add_flag("--with-nonshadows", cfg.with_nonshadows, "adjoin non-shadow unit vectors (incidence)");
  cert_cmd->add_flag("--emit-matrix", cfg.emit_matrix, "include the full matrix");
  cert_cmd->add_flag("--cross-check", cfg.cross_check, "also rank the evaluation matrix (n <= 12)");

  auto* search_cmd = app.add_subcommand("search", "maximum admissible family, or a sweep");
  search_cmd->add_option("--n", n_opt, "ground set size");
  add_sets(search_cmd);
  add_p(search_cmd);
  search_cmd->add_option("--sweep", cfg.sweep, "sharpness or unattainability")
      ->check(CLI::IsMember({"sharpness", "unattainability"}));
  search_cmd->add_option("--n-max", cfg.n_max, "largest n in a sweep");
  search_cmd->add_option("--s-max", cfg.s_max, "largest s in the sharpness sweep");
  std::optional<double> budget;
  std::optional<unsigned> threads;
  search_cmd->add_option("--budget", budget, "time budget in seconds");
  search_cmd->add_option("--threads", threads, "worker threads (0: all cores)");
  add_format(search_cmd);

  auto* gen_cmd = app.add_subcommand("generate", "seeded random admissible family");
  gen_cmd->add_option("--n", n_opt, "ground set size")->required();
  add_sets(gen_cmd);
  add_p(gen_cmd);
  gen_cmd->add_option("--seed", cfg.seed, "random seed");
  gen_cmd->add_option("--keep", cfg.keep, "probability of trying each vertex")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--format", format_text, "text or json")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    cfg.caps = caps_from_environment();
    if (budget) cfg.caps.time_budget = *budget;
    if (threads) cfg.caps.threads = *threads;
    cfg.n = n_opt;
    cfg.p = p_opt;
    if (cfg.p) PrimeModulus check(*cfg.p);
    cfg.meets = parse_residues(L_text, "--L");
    cfg.sizes = parse_residues(K_text, "--K");
    if (!levels_text.empty()) {
      LevelSet levels;
      for (auto v : parse_integer_list(levels_text, "--levels")) levels.push_back(static_cast<unsigned>(v));
      cfg.levels = levels;
    }
    cfg.format = format_text == "csv" ? Format::Csv : format_text == "text" ? Format::Text : Format::Json;
    if (cfg.format == Format::Json && gen_cmd->parsed() && format_text != "json") cfg.format = Format::Text;
    if (gen_cmd->parsed() && gen_cmd->count("--format") == 0) cfg.format = Format::Text;

    if (bsupp_cmd->parsed()) return cmd_bsupp(cfg, out);
    if (shadow_cmd->parsed()) return cmd_shadow(cfg, out);
    if (bound_cmd->parsed()) return cmd_bound(cfg, out);
    if (cert_cmd->parsed()) return cmd_certificate(cfg, out);
    if (search_cmd->parsed()) return cmd_search(cfg, out);
    if (gen_cmd->parsed()) return cmd_generate(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_refusal() ? kExitRefused : kExitInvalid;
  } catch (const std::logic_error& e) {
    err << "fatal: " << e.what() << "\n";
    return 1;
  }
  return kExitInvalid;
}

}  // namespace lintersect::cli
