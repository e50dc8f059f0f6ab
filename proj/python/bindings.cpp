// Python module posrep._core. Results cross the boundary as JSON text, the
// same reports the CLI writes; posrep/__init__.py decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "posrep/error.hpp"
#include "posrep/io.hpp"
#include "posrep/repro.hpp"
#include "posrep/text.hpp"

namespace py = pybind11;
using namespace posrep;

namespace {

std::vector<Element> elements_of(Group const& g, std::string const& list) {
  std::vector<Element> out;
  for (auto const& part : text::split_top_level(list, ',')) out.push_back(g.parse_element(part));
  return out;
}

CayleySpec spec_of(std::string const& group, std::string const& s) {
  auto t = std::make_shared<CayleyTable>(make_group(group));
  std::vector<int> idx;
  for (auto const& e : elements_of(t->group(), s)) idx.push_back(t->index_of(e));
  return CayleySpec(t, idx);
}

std::string girth_json(std::string const& group, std::string const& gens, int limit) {
  auto g = make_group(group);
  GirthOptions o;
  o.limit = limit;
  return to_json(girth(CayleyGraph(g, elements_of(*g, gens)), o)).dump();
}

std::string classify_json(std::string const& group, std::string const& s) {
  auto spec = spec_of(group, s);
  auto p = build_cayley_poset(spec);
  return to_json(classify_poset(p), p).dump();
}

std::string search_json(std::string const& group, bool prune, std::size_t max_order) {
  SearchOptions o;
  o.prune_translation = o.prune_automorphism = o.prune_complement = prune;
  o.max_order = max_order;
  return to_json(search_cayley(std::make_shared<CayleyTable>(make_group(group)), o)).dump();
}

std::string certify_json(std::string const& group, std::string const& gens, int girth_limit) {
  auto g = make_group(group);
  auto xy = elements_of(*g, gens);
  if (xy.size() != 2) throw InvalidArgument("certify needs exactly two generators");
  CertifyOptions o;
  o.girth_limit = girth_limit;
  return to_json(certify(g, xy[0], xy[1], o)).dump();
}

std::string c16_json(std::string const& presentation, std::string const& lambda) {
  return to_json(check_c_lambda(Presentation::parse(presentation), parse_rational(lambda))).dump();
}

std::vector<std::string> sample_strings(int generators, int relators, int max_length, int count, std::uint64_t seed,
                                        int threads) {
  FewRelatorOptions o{generators, relators, max_length, count, seed, threads};
  std::vector<Presentation> ps;
  {
    py::gil_scoped_release release;
    ps = sample_few_relators(o);
  }
  std::vector<std::string> out;
  for (auto const& p : ps) out.push_back(p.to_string());
  return out;
}

std::string extend_json(std::string const& kind, std::string const& group, std::string const& s,
                        std::string const& psi, int window) {
  auto spec = spec_of(group, s);
  auto f = parse_automorphism(spec.table->group_ptr(), psi);
  Window w;
  if (kind == "p1") {
    w = build_product1_window(spec, f, window);
  } else if (kind == "p2") {
    auto block = build_babai_poset(*spec.table, build_drr_digraph(*spec.table, spec.s));
    w = build_product2_window(spec.table, block, f, window);
  } else {
    throw InvalidArgument("kind must be p1 or p2");
  }
  auto gr = gradedness(w.poset);
  Json res;
  res["points"] = w.poset.size();
  res["gradedness"] = to_json(gr, w.poset);
  res["action"] = to_json(check_action_on_window(w));
  if (gr.graded) res["rank_map"] = to_json(rank_epimorphism_check(w));
  return res.dump();
}

std::string repro_json(std::string const& id, int n_max, std::uint64_t seed, int samples, int threads) {
  ReproOptions o;
  o.n_max = n_max;
  o.seed = seed;
  o.samples = samples;
  o.threads = threads;
  ReproReport r;
  {
    py::gil_scoped_release release;
    r = run_repro(id, o);
  }
  return to_json(r).dump();
}

std::string hasse_text(std::string const& group, std::string const& s) {
  return hasse_dot(build_cayley_poset(spec_of(group, s)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Poset representations of groups";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", PyExc_ValueError);
  static py::exception<ParseError> parse(m, "ParseError", PyExc_ValueError);
  static py::exception<CapExceeded> cap(m, "CapExceeded", error.ptr());
  static py::exception<NotEnumerable> not_enum(m, "NotEnumerable", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (ParseError const& e) {
      py::set_error(parse, e.what());
    } catch (InvalidArgument const& e) {
      py::set_error(invalid, e.what());
    } catch (CapExceeded const& e) {
      py::set_error(cap, e.what());
    } catch (NotEnumerable const& e) {
      py::set_error(not_enum, e.what());
    } catch (Error const& e) {
      py::set_error(error, e.what());
    }
  });

  m.attr("version") = engine_version();
  m.def("girth", &girth_json, py::arg("group"), py::arg("gens"), py::arg("limit") = 24);
  m.def("classify", &classify_json, py::arg("group"), py::arg("s"));
  m.def("is_cayley_representation",
        [](std::string const& group, std::string const& s) { return is_cayley_representation(spec_of(group, s)); },
        py::arg("group"), py::arg("s"));
  m.def("search", &search_json, py::arg("group"), py::arg("prune") = true, py::arg("max_order") = 16);
  m.def("certify", &certify_json, py::arg("group"), py::arg("gens"), py::arg("girth_limit") = 22);
  m.def("certify_margulis", [](std::uint64_t p) { return to_json(certify_margulis(p)).dump(); }, py::arg("p"));
  m.def("margulis_bound", &margulis_bound_min_girth, py::arg("p"));
  m.def("check_c16", &c16_json, py::arg("presentation"), py::arg("lam") = "1/6");
  m.def("sample_few_relators", &sample_strings, py::arg("generators") = 2, py::arg("relators") = 2,
        py::arg("max_length") = 60, py::arg("count") = 200, py::arg("seed") = 7, py::arg("threads") = 1);
  m.def("count_cyclically_reduced",
        [](int n, int l) { return count_cyclically_reduced(n, l).exact.str(); }, py::arg("n"), py::arg("l"));
  m.def("extend", &extend_json, py::arg("kind"), py::arg("group"), py::arg("s"), py::arg("psi") = "id",
        py::arg("window") = 3);
  m.def("repro_ids", &repro_ids);
  m.def("repro", &repro_json, py::arg("id"), py::arg("n_max") = 20, py::arg("seed") = 7, py::arg("samples") = 200,
        py::arg("threads") = 1);
  m.def("hasse_dot", &hasse_text, py::arg("group"), py::arg("s"));
  m.def("neighborhood_tree_dot", [] { return tree_dot(f2_neighborhood_tree()); });
}
