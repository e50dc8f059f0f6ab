// posrep command-line tool. Every subcommand writes one JSON report (stdout
// or --out) and the wall time to stderr.
//
// Exit codes: 0 success, 1 a reproduction assertion failed, 2 bad input,
// 3 a size cap was exceeded.

#include <chrono>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "cache.hpp"
#include "posrep/error.hpp"
#include "posrep/io.hpp"
#include "posrep/repro.hpp"
#include "posrep/text.hpp"

using namespace posrep;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct Outcome {
  Json result;
  int exit_code = 0;
};

struct Globals {
  std::uint64_t seed = 7;
  int threads = 1;
  std::optional<int> limit;
  std::string out;
};

std::vector<Element> parse_elements(Group const& g, std::string const& list) {
  std::vector<Element> out;
  for (auto const& part : text::split_top_level(list, ',')) out.push_back(g.parse_element(part));
  return out;
}

CayleyTablePtr table_of(std::string const& d) { return std::make_shared<CayleyTable>(make_group(d)); }

std::vector<int> indices(CayleyTable const& t, std::string const& list) {
  std::vector<int> out;
  for (auto const& e : parse_elements(t.group(), list)) out.push_back(t.index_of(e));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poset representations of groups: searches, certificates and reproductions"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--limit", g.limit, "Size limit of the command (girth length, group order, relators, points)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Write the JSON report here instead of stdout");

  // Each subcommand fills `params` (the cache key) and `run`.
  std::string command;
  Json params;
  std::function<Outcome()> run;
  bool cacheable = true;

  // girth
  std::string group, gens, s, psi = "id", kind = "p1", lambda = "1/6", presentation, mode = "few", what, dot;
  int window = 3;
  auto* girth_cmd = app.add_subcommand("girth", "Girth of a Cayley graph");
  girth_cmd->add_option("--group", group, "Group descriptor, e.g. z:6 or sl2:13")->required();
  girth_cmd->add_option("--gens", gens, "Comma-separated generators")->required();
  girth_cmd->callback([&] {
    command = "girth";
    params = {{"group", group}, {"gens", gens}, {"limit", g.limit.value_or(24)}};
    run = [&] {
      auto grp = make_group(group);
      GirthOptions o;
      o.limit = g.limit.value_or(24);
      auto r = girth(CayleyGraph(grp, parse_elements(*grp, gens)), o);
      return Outcome{to_json(r), 0};
    };
  });

  // aut
  bool drr = false;
  auto* aut_cmd = app.add_subcommand("aut", "Automorphisms of P(G,S) or of the three-copy poset over a digraph");
  aut_cmd->add_option("--group", group)->required();
  aut_cmd->add_option("--s", s, "Connection set")->required();
  aut_cmd->add_flag("--drr", drr, "Use the three-copy poset over the Cayley digraph of S");
  aut_cmd->callback([&] {
    command = "aut";
    params = {{"group", group}, {"s", s}, {"drr", drr}};
    run = [&] {
      auto t = table_of(group);
      Json res;
      if (drr) {
        auto d = build_drr_digraph(*t, indices(*t, s));
        auto p = build_babai_poset(*t, d);
        res["digraph_aut_order"] = big_to_json(automorphism_group(d).order);
        res["verdict"] = to_json(classify_action(p, left_regular_action(*t, p)), p);
      } else {
        CayleySpec spec(t, indices(*t, s));
        auto p = build_cayley_poset(spec);
        res["verdict"] = to_json(classify_poset(p), p);
        res["cayley_representation"] = is_cayley_representation(spec);
      }
      return Outcome{res, 0};
    };
  });

  // search
  bool no_prune = false;
  auto* search_cmd = app.add_subcommand("search", "Exhaustive search for a Cayley representation");
  search_cmd->add_option("--group", group)->required();
  search_cmd->add_flag("--no-prune", no_prune, "Test every subset");
  search_cmd->callback([&] {
    command = "search";
    params = {{"group", group}, {"prune", !no_prune}, {"limit", g.limit.value_or(16)}};
    run = [&] {
      SearchOptions o;
      o.prune_translation = o.prune_automorphism = o.prune_complement = !no_prune;
      o.max_order = static_cast<std::size_t>(g.limit.value_or(16));
      return Outcome{to_json(search_cayley(table_of(group), o)), 0};
    };
  });

  // repro
  std::string id;
  ReproOptions ro;
  auto* repro_cmd = app.add_subcommand("repro", "Reproduce a named claim; exit 1 if any check fails");
  repro_cmd->add_option("id", id)->required()->check(CLI::IsMember(repro_ids()));
  repro_cmd->add_option("--n-max", ro.n_max, "ciclico: largest n")->capture_default_str();
  repro_cmd->add_option("--samples", ro.samples, "corofew: sample count")->capture_default_str();
  repro_cmd->add_option("--window", ro.window, "producto1: window radius")->capture_default_str();
  repro_cmd->add_option("--p-max", ro.p_max, "main-sl2: largest prime checked against the bound")->capture_default_str();
  repro_cmd->callback([&] {
    command = "repro";
    ro.seed = g.seed;
    params = {{"id", id},           {"n_max", ro.n_max},   {"samples", ro.samples},
              {"window", ro.window}, {"p_max", ro.p_max}, {"seed", ro.seed}};
    run = [&] {
      ro.threads = g.threads;
      auto r = run_repro(id, ro);
      return Outcome{to_json(r), r.pass() ? 0 : kExitAssertion};
    };
  });

  // certify
  std::uint64_t margulis = 0;
  auto* cert_cmd = app.add_subcommand("certify", "Local certificate for a two-generator Cayley representation");
  auto* cg = cert_cmd->add_option("--group", group);
  cert_cmd->add_option("--gens", gens, "x,y")->needs(cg);
  cert_cmd->add_option("--margulis", margulis, "SL2(p) with the Margulis generators")->excludes(cg);
  cert_cmd->callback([&] {
    command = "certify";
    params = {{"group", group}, {"gens", gens}, {"margulis", margulis}, {"limit", g.limit.value_or(22)}};
    run = [&] {
      CertifyOptions o;
      o.girth_limit = g.limit.value_or(22);
      if (margulis) return Outcome{to_json(certify_margulis(margulis, o)), 0};
      if (group.empty()) throw InvalidArgument("certify needs --group and --gens, or --margulis");
      auto grp = make_group(group);
      auto xy = parse_elements(*grp, gens);
      if (xy.size() != 2) throw InvalidArgument("certify needs exactly two generators");
      return Outcome{to_json(certify(grp, xy[0], xy[1], o)), 0};
    };
  });

  // c16
  auto* c16_cmd = app.add_subcommand("c16", "Small cancellation check of a presentation");
  c16_cmd->add_option("presentation", presentation, "e.g. \"<x,y | x y X Y>\"")->required();
  c16_cmd->add_option("--lambda", lambda, "λ as a/b or a decimal")->capture_default_str();
  c16_cmd->callback([&] {
    command = "c16";
    params = {{"presentation", presentation}, {"lambda", lambda}};
    run = [&] {
      auto p = Presentation::parse(presentation);
      Json res = to_json(check_c_lambda(p, parse_rational(lambda)));
      res["presentation"] = p.to_string();
      return Outcome{res, 0};
    };
  });

  // sample
  FewRelatorOptions fo;
  std::string density = "1/10";
  int length = 20;
  auto* sample_cmd = app.add_subcommand("sample", "Random presentations");
  sample_cmd->add_option("--mode", mode, "few or density")->check(CLI::IsMember({"few", "density"}))->capture_default_str();
  sample_cmd->add_option("--generators", fo.generators)->check(CLI::PositiveNumber)->capture_default_str();
  sample_cmd->add_option("--relators", fo.relators, "few: relators per presentation")->capture_default_str();
  sample_cmd->add_option("--max-length", fo.max_length, "few: largest relator length")->capture_default_str();
  sample_cmd->add_option("--count", fo.count, "few: presentations")->capture_default_str();
  sample_cmd->add_option("--density", density, "density: d")->capture_default_str();
  sample_cmd->add_option("--length", length, "density: relator length")->capture_default_str();
  sample_cmd->callback([&] {
    command = "sample";
    fo.seed = g.seed;
    params = {{"mode", mode}, {"seed", g.seed}, {"generators", fo.generators}};
    if (mode == "few")
      params.update({{"relators", fo.relators}, {"max_length", fo.max_length}, {"count", fo.count}});
    else
      params.update({{"density", density}, {"length", length}, {"limit", g.limit.value_or(100000)}});
    run = [&] {
      Json res;
      if (mode == "few") {
        fo.threads = g.threads;
        auto ps = sample_few_relators(fo);
        res["summary"] = to_json(summarize(ps));
        Json list = Json::array();
        for (auto const& p : ps) list.push_back(p.to_string());
        res["presentations"] = list;
      } else {
        auto d = sample_density(fo.generators, parse_rational(density), length, g.seed,
                                static_cast<std::uint64_t>(g.limit.value_or(100000)));
        res["relator_count"] = d.relator_count;
        res["density_flag"] = d.density_flag;
        res["cancellation"] = to_json(check_c_lambda(d.presentation));
        res["presentation"] = d.presentation.to_string();
      }
      return Outcome{res, 0};
    };
  });

  // extend and export share the window description.
  auto window_of = [&] {
    WindowOptions o;
    if (g.limit) o.max_points = static_cast<std::size_t>(*g.limit);
    auto t = table_of(group);
    auto f = parse_automorphism(t->group_ptr(), psi);
    if (kind == "p1") return build_product1_window(CayleySpec(t, indices(*t, s)), f, window, o);
    auto block = build_babai_poset(*t, build_drr_digraph(*t, indices(*t, s)));
    return build_product2_window(t, block, f, window, o);
  };
  auto add_window_options = [&](CLI::App* c) {
    c->add_option("--kind", kind, "p1 (copies of P(G,S)) or p2 (copies of the three-copy poset)")
        ->check(CLI::IsMember({"p1", "p2"}))
        ->capture_default_str();
    c->add_option("--group", group);
    c->add_option("--s", s, "Connection set (p1) or digraph connection set (p2)");
    c->add_option("--psi", psi, "id, neg or mul:k")->capture_default_str();
    c->add_option("--window", window, "Blocks −N..N")->check(CLI::NonNegativeNumber)->capture_default_str();
  };

  auto* extend_cmd = app.add_subcommand("extend", "Windowed check of the glued poset for G ⋊ Z");
  add_window_options(extend_cmd);
  extend_cmd->get_option("--group")->required();
  extend_cmd->get_option("--s")->required();
  extend_cmd->add_option("--dot", dot, "Also write the window's Hasse diagram");
  extend_cmd->callback([&] {
    command = "extend";
    cacheable = dot.empty();
    params = {{"kind", kind}, {"group", group}, {"s", s}, {"psi", psi}, {"window", window}, {"limit", g.limit.value_or(4096)}};
    run = [&] {
      auto w = window_of();
      auto gr = gradedness(w.poset);
      Json res;
      res["points"] = w.poset.size();
      res["layers"] = {w.min_layer(), w.max_layer()};
      res["gradedness"] = to_json(gr, w.poset);
      res["action"] = to_json(check_action_on_window(w));
      if (gr.graded) res["rank_map"] = to_json(rank_epimorphism_check(w));
      res["note"] = "checks on a finite window are necessary conditions only";
      if (!dot.empty()) write_text_file(dot, window_dot(w));
      return Outcome{res, 0};
    };
  });

  auto* export_cmd = app.add_subcommand("export", "Write a DOT file");
  export_cmd->add_option("--what", what, "hasse, drr, babai, tree or window")
      ->required()
      ->check(CLI::IsMember({"hasse", "drr", "babai", "tree", "window"}));
  add_window_options(export_cmd);
  export_cmd->add_option("--dot", dot, "Output path")->required();
  export_cmd->callback([&] {
    command = "export";
    cacheable = false;
    params = {{"what", what}, {"group", group}, {"s", s}, {"dot", dot}};
    run = [&] {
      std::string text;
      if (what == "tree") {
        text = tree_dot(f2_neighborhood_tree());
      } else if (what == "window") {
        text = window_dot(window_of());
      } else {
        if (group.empty() || s.empty()) throw InvalidArgument("export --what " + what + " needs --group and --s");
        auto t = table_of(group);
        auto idx = indices(*t, s);
        if (what == "hasse") text = hasse_dot(build_cayley_poset(CayleySpec(t, idx)));
        if (what == "drr") text = digraph_dot(build_drr_digraph(*t, idx));
        if (what == "babai") text = hasse_dot(build_babai_poset(*t, build_drr_digraph(*t, idx)));
      }
      write_text_file(dot, text);
      return Outcome{Json{{"written", dot}, {"bytes", text.size()}}, 0};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  auto start = std::chrono::steady_clock::now();
  int exit_code = 0;
  try {
    auto cache = cli::ReportCache::from_environment();
    std::string key = cache.key(command, params);
    std::optional<cli::CachedRun> hit = cacheable ? cache.load(key) : std::nullopt;
    cli::CachedRun result;
    if (hit) {
      result = *hit;
    } else {
      auto outcome = run();
      Json report = report_envelope(command, params);
      report["result"] = outcome.result;
      result = {outcome.exit_code, dump(report)};
      if (cacheable) cache.store(key, result);
    }
    if (g.out.empty())
      std::cout << result.report;
    else
      write_text_file(g.out, result.report);
    exit_code = result.exit_code;
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << command << ": " << (hit ? "cached, " : "") << "wall time " << secs << " s\n";
  } catch (CapExceeded const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (InvalidArgument const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (NotEnumerable const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return exit_code;
}
