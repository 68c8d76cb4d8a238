#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgl/ball.hpp"
#include "mgl/cache.hpp"
#include "mgl/common.hpp"
#include "mgl/group_spec.hpp"
#include "mgl/lef.hpp"
#include "mgl/marked.hpp"
#include "mgl/metric.hpp"
#include "mgl/sequence.hpp"
#include "mgl/verbal.hpp"
#include "mgl/word_parse.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;
constexpr int kViolation = 3;

struct GlobalOpts {
  mgl::Caps caps;
  std::uint64_t seed = 0;
  int workers = 1;
  bool cache_on = false;
  bool no_cache = false;
  std::string cache_dir;
  std::string format = "json";
  std::string config_path;
  json params = json::object();

  std::unique_ptr<mgl::BallCache> cache;  // null when caching is off

  const mgl::BallCache* cache_ptr() const { return cache.get(); }
};

// A spec argument is inline JSON (leading '{' or '['), a path to a JSON
// file, or a catalog expression.
json load_spec_arg(const std::string& arg) {
  std::string trimmed = arg;
  while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) {
    trimmed.erase(trimmed.begin());
  }
  if (!trimmed.empty() && (trimmed.front() == '{' || trimmed.front() == '[')) {
    try {
      return json::parse(trimmed);
    } catch (const json::exception& e) {
      throw mgl::SpecError(std::string("inline spec: ") + e.what());
    }
  }
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw mgl::SpecError(arg + ": cannot open");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw mgl::SpecError(arg + ": " + e.what());
    }
  }
  return json(arg);  // catalog expression
}

mgl::MarkedGroup group_from_arg(const std::string& arg, const mgl::Caps& caps) {
  return mgl::make_marked(load_spec_arg(arg), caps);
}

mgl::GroupSequence sequence_from_arg(const std::string& arg, const mgl::Caps& caps) {
  json doc = load_spec_arg(arg);
  if (!doc.is_object()) {
    throw mgl::SpecError("a sequence spec is a JSON object {template|members, limit}");
  }
  return mgl::GroupSequence::from_json(doc, caps);
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// Option handles needed to decide whether a flag was given explicitly; an
// explicit flag always beats the config file.
struct GlobalFlags {
  CLI::Option* seed = nullptr;
  CLI::Option* workers = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* cache = nullptr;
  CLI::Option* no_cache = nullptr;
  CLI::Option* cache_dir = nullptr;
  CLI::Option* max_free_ball = nullptr;
  CLI::Option* max_group_ball = nullptr;
  CLI::Option* max_evaluations = nullptr;
  CLI::Option* nu_cap = nullptr;
  CLI::Option* r_max = nullptr;
};

// Applies settings from --config that were not overridden on the command
// line. Command-specific values live under "params" and fill unset flags.
void apply_config(GlobalOpts& g, const GlobalFlags& flags) {
  if (g.config_path.empty()) return;
  json conf = load_spec_arg(g.config_path);
  if (!conf.is_object()) throw mgl::SpecError(g.config_path + ": config must be a JSON object");

  try {
    auto take = [&conf](const char* key, CLI::Option* opt, auto& into) {
      if (opt->count() > 0) return;
      if (conf.contains(key)) into = conf.at(key).template get<std::decay_t<decltype(into)>>();
    };
    if (conf.contains("caps")) {
      const json& caps = conf.at("caps");
      auto cap = [&caps](const char* key, CLI::Option* opt, auto& into) {
        if (opt != nullptr && opt->count() > 0) return;
        if (caps.contains(key)) into = caps.at(key).template get<std::decay_t<decltype(into)>>();
      };
      cap("max_free_ball", flags.max_free_ball, g.caps.max_free_ball);
      cap("max_group_ball", flags.max_group_ball, g.caps.max_group_ball);
      cap("max_evaluations", flags.max_evaluations, g.caps.max_evaluations);
      cap("nu_cap", flags.nu_cap, g.caps.nu_cap);
      cap("r_max", flags.r_max, g.caps.r_max);
      cap("max_word_letters", nullptr, g.caps.max_word_letters);
    }
    take("seed", flags.seed, g.seed);
    take("workers", flags.workers, g.workers);
    take("format", flags.format, g.format);
    if (conf.contains("cache")) {
      const json& cache = conf.at("cache");
      if (cache.contains("enabled") && flags.cache->count() == 0 &&
          flags.no_cache->count() == 0) {
        g.cache_on = cache.at("enabled").get<bool>();
      }
      if (cache.contains("dir") && flags.cache_dir->count() == 0) {
        g.cache_dir = cache.at("dir").get<std::string>();
      }
    }
    if (conf.contains("params")) g.params = conf.at("params");
  } catch (const json::exception& e) {
    throw mgl::SpecError(g.config_path + ": " + e.what());
  }
}

void validate_globals(const GlobalOpts& g) {
  if (g.caps.max_free_ball < 1 || g.caps.max_group_ball < 1 || g.caps.max_evaluations < 1 ||
      g.caps.nu_cap < 1 || g.caps.r_max < 1 || g.caps.max_word_letters < 1) {
    throw mgl::SpecError("all caps must be positive");
  }
  if (g.workers < 1) throw mgl::SpecError("workers must be positive");
  if (g.format != "json" && g.format != "table" && g.format != "dot") {
    throw mgl::SpecError("format must be json, table or dot");
  }
}

// Fills a numeric option from config params when the flag was not given.
template <typename T>
void param_default(const GlobalOpts& g, CLI::Option* opt, const char* key, T& into) {
  if (opt != nullptr && opt->count() > 0) return;
  if (g.params.contains(key)) into = g.params.at(key).get<T>();
}

int run_ball(const GlobalOpts& g, const std::string& spec, int radius) {
  mgl::MarkedGroup group = group_from_arg(spec, g.caps);
  mgl::LabeledBall ball = mgl::build_ball_cached(group, radius, g.cache_ptr(), g.caps);
  if (g.format == "dot") {
    std::cout << mgl::ball_dot(ball);
  } else if (g.format == "table") {
    std::cout << "vertices = " << ball.vertices.size() << "\n"
              << "edges = " << ball.edges.size() << "\n"
              << "code = " << mgl::code_hex(mgl::canonical_code(ball)) << "\n";
  } else {
    emit(mgl::ball_json(ball));
  }
  return kOk;
}

int run_distance(const GlobalOpts& g, const std::string& a, const std::string& b, int cap) {
  mgl::MarkedGroup ga = group_from_arg(a, g.caps);
  mgl::MarkedGroup gb = group_from_arg(b, g.caps);
  mgl::NuResult nu = mgl::nu(ga, gb, cap, g.caps);
  mgl::DyadicBound d = mgl::distance(ga, gb, cap, g.caps);
  if (g.format == "table") {
    std::cout << "nu " << (nu.exact ? "= " : ">= ") << nu.value << "\n"
              << "d " << (d.exact ? "= " : "<= ") << "2^-" << d.exponent << "\n";
  } else {
    emit(json{{"schema", "mgl/1"},
              {"cap", cap},
              {"nu", nu.value},
              {"nu_exact", nu.exact},
              {"nu_str", nu.str()},
              {"distance", d.str()},
              {"distance_exact", d.exact}});
  }
  return nu.exact ? kOk : kInconclusive;
}

int run_converge(const GlobalOpts& g, const std::string& seq_arg, int cap, int r_max,
                 const std::vector<std::string>& words, std::vector<int> radii) {
  mgl::GroupSequence seq = sequence_from_arg(seq_arg, g.caps);
  int rank = seq.member(1).rank();
  if (radii.empty()) radii = {1, 2, 3};

  mgl::ConvergenceReport conv = mgl::verify_convergence(seq, cap, r_max, g.workers);
  bool settled = conv.consistent;

  json memberships = json::array();
  for (const std::string& text : words) {
    mgl::MembershipReport rep =
        mgl::eventual_membership(seq, mgl::parse_free_word(text, rank, g.caps), r_max, g.workers);
    settled = settled && rep.settled();
    memberships.push_back(rep.json());
  }
  json matchings = json::array();
  for (int radius : radii) {
    mgl::MatchingReport rep = mgl::matching_radius(seq, radius, r_max, g.workers, g.cache_ptr());
    settled = settled && rep.settled();
    matchings.push_back(rep.json());
  }

  json doc{{"schema", "mgl/1"},
           {"convergence", conv.json()},
           {"membership", memberships},
           {"matching", matchings}};
  if (g.format == "table") {
    std::cout << "consistent = " << (conv.consistent ? "true" : "false") << "\n";
    for (const auto& [r, v] : conv.table) std::cout << "r=" << r << " nu" << (v.exact ? "=" : ">=")
                                                    << v.value << "\n";
    std::cout << (settled ? "settled" : "unsettled") << "\n";
  } else {
    emit(doc);
  }
  return settled ? kOk : kInconclusive;
}

int run_wvalues(const GlobalOpts& g, const std::string& spec, const std::string& word,
                long long sample, int radius) {
  mgl::MarkedGroup group = group_from_arg(spec, g.caps);
  mgl::WordMap w = mgl::make_word_map(mgl::parse_free_word(word, 0, g.caps));
  mgl::ValueSet vs = sample > 0 ? mgl::w_values_sampled(group, w, sample, radius, g.seed, g.caps)
                                : mgl::w_values(group, w, g.caps);
  if (g.format == "table") {
    std::cout << "m " << (vs.exhaustive ? "= " : ">= ") << vs.size() << "\n";
    for (const mgl::ElementKey& k : vs.keys) std::cout << k << "\n";
  } else {
    emit(json{{"schema", "mgl/1"},
              {"word", w.str()},
              {"count", vs.size()},
              {"exhaustive", vs.exhaustive},
              {"values", vs.keys}});
  }
  return kOk;
}

int run_concise(const GlobalOpts& g, const std::string& spec, const std::string& word) {
  mgl::MarkedGroup group = group_from_arg(spec, g.caps);
  mgl::WordMap w = mgl::make_word_map(mgl::parse_free_word(word, 0, g.caps));
  mgl::ConcisenessRecord rec = mgl::conciseness_record(group, w, g.caps);
  if (g.format == "table") {
    std::cout << rec.group << ": m = " << rec.m << ", |G_w| = " << rec.verbal_order << "\n";
  } else {
    json doc = rec.json();
    doc["schema"] = "mgl/1";
    doc["word"] = w.str();
    emit(doc);
  }
  return kOk;
}

int run_delta(const GlobalOpts& g, const std::string& word, const std::string& tmpl, int from,
              int to, const std::vector<std::string>& members) {
  std::vector<mgl::MarkedGroup> family;
  std::string family_id;
  if (!tmpl.empty()) {
    if (from < 1 || to < from) throw mgl::SpecError("need 1 <= from <= to for a family template");
    json tdoc = load_spec_arg(tmpl);
    for (int r = from; r <= to; ++r) {
      family.push_back(mgl::make_marked(mgl::instantiate_template(tdoc, r), g.caps));
    }
    family_id = tmpl + " for $r = " + std::to_string(from) + ".." + std::to_string(to);
  }
  for (const std::string& m : members) family.push_back(group_from_arg(m, g.caps));
  if (!members.empty()) {
    family_id += family_id.empty() ? "explicit members" : " plus explicit members";
  }

  mgl::WordMap w = mgl::make_word_map(word);
  mgl::DeltaProfile profile = mgl::delta_profile(family, w, family_id, g.workers, g.caps);
  if (g.format == "table") {
    std::cout << profile.table();
  } else {
    emit(profile.json());
  }
  return kOk;
}

int run_theorem_a(const GlobalOpts& g, const std::string& seq_arg, const std::string& word,
                  int r_max, const std::vector<int>& schedule, int window) {
  mgl::GroupSequence seq = sequence_from_arg(seq_arg, g.caps);
  mgl::WordMap w = mgl::make_word_map(mgl::parse_free_word(word, 0, g.caps));
  mgl::TheoremAOptions opts;
  opts.r_max = r_max;
  opts.support_schedule = schedule;
  opts.stable_window = window;
  opts.workers = g.workers;
  mgl::TheoremAReport rep = mgl::theorem_a_check(seq, w, opts);
  if (g.format == "table") {
    std::cout << "verdict = " << rep.verdict << "\n";
    if (!rep.detail.empty()) std::cout << rep.detail << "\n";
    std::cout << "m = " << rep.m() << ", R = " << rep.R << ", delta = " << rep.delta << "\n";
    if (rep.r_bar) std::cout << "r_bar = " << *rep.r_bar << "\n";
  } else {
    emit(rep.json());
  }
  if (rep.verdict == "pass") return kOk;
  if (rep.verdict == "fail") return kViolation;
  return kInconclusive;
}

int run_lef(const GlobalOpts& g, const std::string& seq_arg, const std::vector<std::string>& f,
            int r_max, const std::string& verify_path, const std::string& group_arg) {
  if (!verify_path.empty()) {
    if (group_arg.empty()) throw mgl::SpecError("--verify needs --group <spec> for the subject");
    mgl::MarkedGroup subject = group_from_arg(group_arg, g.caps);
    mgl::LefWitness wit = mgl::LefWitness::from_json(load_spec_arg(verify_path), g.caps);
    mgl::LefVerdict verdict = mgl::check_lef_witness(subject, wit);
    if (g.format == "table") {
      std::cout << (verdict.pass ? "pass" : "fail") << "\n";
      if (!verdict.detail.empty()) std::cout << verdict.detail << "\n";
    } else {
      emit(verdict.json());
    }
    return verdict.pass ? kOk : kViolation;
  }

  if (seq_arg.empty() || f.empty()) {
    throw mgl::SpecError("witness construction needs a sequence spec and -F words");
  }
  mgl::GroupSequence seq = sequence_from_arg(seq_arg, g.caps);
  if (!seq.limit()) throw mgl::SpecError("sequence has no designated limit");
  int rank = seq.limit()->rank();
  std::vector<mgl::FreeWord> words;
  for (const std::string& text : f) words.push_back(mgl::parse_free_word(text, rank, g.caps));
  mgl::LefWitness wit = mgl::lef_witness_from_limit(seq, words, r_max, g.workers);
  if (g.format == "table") {
    std::cout << "Q = " << wit.Q.describe() << "\n"
              << "r = " << wit.provenance.r << ", R = " << wit.provenance.R << "\n"
              << "|phi| = " << wit.phi.size() << "\n";
  } else {
    emit(wit.json());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"marked-group laboratory: metric, word values, convergence, local embeddings"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  GlobalFlags flags;
  flags.seed = app.add_option("--seed", g.seed, "random seed for sampled operations");
  flags.workers = app.add_option("--workers", g.workers, "worker threads (never changes results)");
  flags.format = app.add_option("--format", g.format, "output format: json (default), table, dot");
  flags.cache = app.add_flag("--cache", g.cache_on, "enable the on-disk ball cache");
  flags.no_cache = app.add_flag("--no-cache", g.no_cache, "disable the ball cache");
  flags.cache_dir =
      app.add_option("--cache-dir", g.cache_dir, "ball cache directory (implies --cache)");
  app.add_option("--config", g.config_path, "JSON config file; flags override it");
  flags.max_free_ball =
      app.add_option("--max-free-ball", g.caps.max_free_ball, "free-group ball enumeration cap");
  flags.max_group_ball =
      app.add_option("--max-group-ball", g.caps.max_group_ball, "group ball vertex cap");
  flags.max_evaluations =
      app.add_option("--max-evaluations", g.caps.max_evaluations, "word evaluation budget");
  flags.nu_cap = app.add_option("--nu-cap", g.caps.nu_cap, "default agreement-radius cap");
  flags.r_max = app.add_option("--r-max", g.caps.r_max, "default sequence horizon");

  // ball
  auto* ball = app.add_subcommand("ball", "Cayley ball of a marked group");
  std::string ball_spec;
  int ball_radius = 2;
  ball->add_option("spec", ball_spec, "group spec (catalog, JSON or file)")->required();
  auto* ball_radius_opt = ball->add_option("--radius,-R", ball_radius, "ball radius");
  bool ball_dot_flag = false;
  ball->add_flag("--dot", ball_dot_flag, "shorthand for --format dot");

  // distance
  auto* dist = app.add_subcommand("distance", "ultrametric distance between marked groups");
  std::string dist_a;
  std::string dist_b;
  int dist_cap = 0;
  dist->add_option("specA", dist_a)->required();
  dist->add_option("specB", dist_b)->required();
  auto* dist_cap_opt = dist->add_option("--cap", dist_cap, "agreement-radius cap");

  // converge
  auto* conv = app.add_subcommand("converge", "convergence report for a sequence");
  std::string conv_seq;
  int conv_cap = 0;
  int conv_rmax = 0;
  std::vector<std::string> conv_words;
  std::vector<int> conv_radii;
  conv->add_option("sequence", conv_seq, "sequence spec {template|members, limit}")->required();
  auto* conv_cap_opt = conv->add_option("--cap", conv_cap, "agreement-radius cap");
  auto* conv_rmax_opt = conv->add_option("--rmax", conv_rmax, "member horizon");
  conv->add_option("--word,-w", conv_words, "probe eventual membership of this word");
  conv->add_option("--radius", conv_radii, "probe matching at this radius (default 1 2 3)");

  // wvalues
  auto* wv = app.add_subcommand("wvalues", "word values over a group");
  std::string wv_spec;
  std::string wv_word;
  long long wv_sample = 0;
  int wv_radius = 3;
  wv->add_option("spec", wv_spec)->required();
  wv->add_option("word", wv_word)->required();
  wv->add_option("--sample", wv_sample, "sample arguments instead of full enumeration");
  auto* wv_radius_opt = wv->add_option("--radius", wv_radius, "sampling ball radius");

  // concise
  auto* con = app.add_subcommand("concise", "value count and verbal subgroup order");
  std::string con_spec;
  std::string con_word;
  con->add_option("spec", con_spec)->required();
  con->add_option("word", con_word)->required();

  // delta
  auto* del = app.add_subcommand("delta", "conciseness profile over a family");
  std::string del_word;
  std::string del_template;
  int del_from = 1;
  int del_to = 10;
  std::vector<std::string> del_members;
  del->add_option("word", del_word)->required();
  del->add_option("--template", del_template, "family template with $r");
  auto* del_from_opt = del->add_option("--from", del_from, "first $r");
  auto* del_to_opt = del->add_option("--to", del_to, "last $r");
  del->add_option("--member,-m", del_members, "explicit family member spec");

  // theorem-a
  auto* tha = app.add_subcommand("theorem-a", "bounded-conciseness replay on a sequence");
  std::string tha_seq;
  std::string tha_word;
  int tha_rmax = 10;
  std::vector<int> tha_schedule;
  int tha_window = 2;
  tha->add_option("sequence", tha_seq)->required();
  tha->add_option("word", tha_word)->required();
  auto* tha_rmax_opt = tha->add_option("--rmax", tha_rmax, "member horizon");
  tha->add_option("--schedule", tha_schedule, "support search radii");
  tha->add_option("--window", tha_window, "stabilization window");

  // lef
  auto* lef = app.add_subcommand("lef", "construct or verify a local-embedding witness");
  std::string lef_seq;
  std::vector<std::string> lef_f;
  int lef_rmax = 20;
  std::string lef_verify;
  std::string lef_group;
  lef->add_option("sequence", lef_seq, "sequence spec (construction mode)");
  lef->add_option("--element,-F", lef_f, "subset element (word), repeatable");
  auto* lef_rmax_opt = lef->add_option("--rmax", lef_rmax, "member search horizon");
  lef->add_option("--verify", lef_verify, "witness JSON (file or inline) to check");
  lef->add_option("--group", lef_group, "subject group for --verify");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    apply_config(g, flags);
    if (!g.cache_dir.empty()) g.cache_on = true;
    if (g.no_cache) g.cache_on = false;
    validate_globals(g);
    if (g.cache_on) {
      g.cache = std::make_unique<mgl::BallCache>(
          g.cache_dir.empty() ? mgl::BallCache::default_dir() : g.cache_dir);
    }

    if (ball->parsed()) {
      param_default(g, ball_radius_opt, "radius", ball_radius);
      if (ball_dot_flag) g.format = "dot";
      return run_ball(g, ball_spec, ball_radius);
    }
    if (dist->parsed()) {
      if (dist_cap_opt->count() == 0) dist_cap = g.caps.nu_cap;
      param_default(g, dist_cap_opt, "cap", dist_cap);
      return run_distance(g, dist_a, dist_b, dist_cap);
    }
    if (conv->parsed()) {
      if (conv_cap_opt->count() == 0) conv_cap = g.caps.nu_cap;
      if (conv_rmax_opt->count() == 0) conv_rmax = g.caps.r_max;
      param_default(g, conv_cap_opt, "cap", conv_cap);
      param_default(g, conv_rmax_opt, "rmax", conv_rmax);
      return run_converge(g, conv_seq, conv_cap, conv_rmax, conv_words, conv_radii);
    }
    if (wv->parsed()) {
      param_default(g, wv_radius_opt, "radius", wv_radius);
      return run_wvalues(g, wv_spec, wv_word, wv_sample, wv_radius);
    }
    if (con->parsed()) return run_concise(g, con_spec, con_word);
    if (del->parsed()) {
      param_default(g, del_from_opt, "from", del_from);
      param_default(g, del_to_opt, "to", del_to);
      return run_delta(g, del_word, del_template, del_from, del_to, del_members);
    }
    if (tha->parsed()) {
      param_default(g, tha_rmax_opt, "rmax", tha_rmax);
      return run_theorem_a(g, tha_seq, tha_word, tha_rmax, tha_schedule, tha_window);
    }
    if (lef->parsed()) {
      param_default(g, lef_rmax_opt, "rmax", lef_rmax);
      return run_lef(g, lef_seq, lef_f, lef_rmax, lef_verify, lef_group);
    }
    throw mgl::SpecError("no subcommand selected");
  } catch (const mgl::CapExceeded& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const mgl::SearchExhausted& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const mgl::IncompleteWitness& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const mgl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
