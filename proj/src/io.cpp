#include "posrep/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "posrep/error.hpp"

namespace posrep {

std::string engine_version() { return "posrep 1.0.0"; }

Json report_envelope(std::string const& command, Json params) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["version"] = engine_version();
  j["command"] = command;
  j["params"] = std::move(params);
  return j;
}

std::string dump(Json const& j) { return j.dump(2) + "\n"; }

Json big_to_json(BigInt const& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(v);
  return v.str();
}

Json rational_to_json(Rational const& r) { return to_string(r); }

Json fraction_to_json(std::uint64_t num, std::uint64_t den) { return Json::array({num, den}); }

Json to_json(ReducedWord const& w) { return w.to_power_string(); }

Json to_json(GirthResult const& g) {
  Json j;
  j["girth"] = g.girth ? Json(*g.girth) : Json(nullptr);
  j["limit"] = g.limit;
  j["witness"] = g.witness ? to_json(*g.witness) : Json(nullptr);
  j["radius"] = g.radius;
  j["nodes"] = g.nodes;
  return j;
}

Json to_json(RepresentationVerdict const& v, FinitePoset const& poset) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["free"] = v.free;
  j["full_aut"] = v.full_aut;
  j["aut_order"] = big_to_json(v.aut_order);
  j["image_order"] = v.image_order;
  j["orbit_count"] = v.orbit_count;
  j["height"] = v.height;
  Json orbits = Json::array();
  for (auto const& o : v.orbits) {
    Json labels = Json::array();
    for (int p : o) labels.push_back(poset.label(p));
    orbits.push_back(labels);
  }
  j["orbits"] = orbits;
  if (!v.witness_text.empty()) j["witness"] = v.witness_text;
  return j;
}

Json to_json(SearchReport const& r) {
  Json j;
  j["group"] = r.group;
  j["order"] = r.order;
  j["found"] = r.found;
  j["s"] = r.s_labels;
  j["subsets"] = r.counters.total;
  j["tried"] = r.counters.tried;
  j["pruned_translation"] = r.counters.pruned_translation;
  j["pruned_automorphism"] = r.counters.pruned_automorphism;
  j["pruned_complement"] = r.counters.pruned_complement;
  return j;
}

Json to_json(ThreeOrbitReport const& r) {
  Json j;
  j["group"] = r.group;
  j["candidates"] = r.candidates;
  j["rejected_cycle"] = r.rejected_cycle;
  j["rejected_same_orbit"] = r.rejected_same_orbit;
  j["distinct_orders"] = r.distinct_orders;
  j["valid"] = r.valid.size();
  return j;
}

Json to_json(MainCertificate const& c) {
  Json j;
  j["group"] = c.group;
  j["x"] = c.x;
  j["y"] = c.y;
  j["girth"] = to_json(c.girth);
  j["applicable"] = c.applicable;
  if (!c.reason.empty()) j["reason"] = c.reason;
  if (c.violating_word) j["violating_word"] = to_json(*c.violating_word);
  j["s"] = c.s;
  j["neighborhood_size"] = c.neighborhood_size;
  Json table = Json::array();
  for (auto const& e : c.table)
    table.push_back({{"word", to_json(e.word)}, {"reference", e.reference}, {"computed", e.computed}});
  j["affinity_table"] = table;
  j["table_matches"] = c.table_matches;
  j["unique_upper_bound"] = c.unique_upper_bound;
  j["four_point_upper_bound"] = c.four_point_upper_bound;
  j["generation"] = to_string(c.generation);
  j["warnings"] = c.warnings;
  j["sufficient_only"] = c.sufficient_only;
  return j;
}

Json to_json(PrimeScan const& s) {
  Json rows = Json::array();
  for (auto const& r : s.rows)
    rows.push_back({{"p", r.p}, {"girth", r.girth.girth ? Json(*r.girth.girth) : Json(nullptr)}, {"bound", r.bound}});
  Json j;
  j["rows"] = rows;
  j["first_above"] = s.first_above ? Json(*s.first_above) : Json(nullptr);
  return j;
}

Json to_json(CancellationReport const& r) {
  Json j;
  j["relator_lengths"] = r.relator_lengths;
  j["min_length"] = r.min_length;
  j["max_piece"] = r.max_piece;
  j["relator_max_piece"] = r.relator_max_piece;
  j["worst_ratio"] = rational_to_json(r.worst_ratio);
  j["lambda"] = rational_to_json(r.lambda);
  j["satisfies"] = r.satisfies;
  j["c_one_sixth"] = r.c_one_sixth;
  j["cayley_representable"] = r.cayley_representable;
  j["proper_power_representable"] = r.proper_power_representable;
  return j;
}

Json to_json(FewRelatorSummary const& s) {
  Json j;
  j["samples"] = s.samples;
  j["representable"] = fraction_to_json(static_cast<std::uint64_t>(s.representable), static_cast<std::uint64_t>(s.samples));
  j["c_one_sixth"] = fraction_to_json(static_cast<std::uint64_t>(s.c_one_sixth), static_cast<std::uint64_t>(s.samples));
  j["short_relator"] = fraction_to_json(static_cast<std::uint64_t>(s.short_relator), static_cast<std::uint64_t>(s.samples));
  return j;
}

Json to_json(Grading const& g, FinitePoset const& poset) {
  Json j;
  j["graded"] = g.graded;
  auto labels = [&](std::vector<int> const& v) {
    Json a = Json::array();
    for (int p : v) a.push_back(poset.label(p));
    return a;
  };
  if (g.chains) j["chains"] = Json::array({labels(g.chains->first), labels(g.chains->second)});
  if (!g.cycle.empty()) j["cycle"] = labels(g.cycle);
  return j;
}

Json to_json(ActionReport const& r) {
  Json j;
  j["elements_checked"] = r.elements_checked;
  j["maps_into_window"] = r.maps_into_window;
  j["injective"] = r.injective;
  j["order_preserving"] = r.order_preserving;
  j["free"] = r.free;
  j["interior_transitive"] = r.interior_transitive;
  j["orbit_types"] = r.orbit_types;
  j["necessary_only"] = r.necessary_only;
  if (!r.failure.empty()) j["failure"] = r.failure;
  j["window_rigid"] = r.window_rigid ? Json(*r.window_rigid) : Json(nullptr);
  return j;
}

Json to_json(RankHomomorphismReport const& r) {
  Json j;
  j["graded"] = r.graded;
  j["pairs_checked"] = r.pairs_checked;
  j["additive"] = r.additive;
  j["onto_interval"] = r.onto_interval;
  j["matches_level"] = r.matches_level;
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string quote(std::string const& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string ranked_hasse(FinitePoset const& p, std::vector<int> const& row, std::string const& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < p.size(); ++i) os << "  n" << i << " [label=" << quote(p.label(static_cast<int>(i))) << "];\n";
  std::map<int, std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < p.size(); ++i) rows[row[i]].push_back(i);
  for (auto const& [r, members] : rows) {
    os << "  { rank=same;";
    for (auto i : members) os << " n" << i << ";";
    os << " }\n";
  }
  for (auto [a, b] : p.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace

std::string hasse_dot(FinitePoset const& p, std::string const& name) { return ranked_hasse(p, p.levels(), name); }

std::string window_dot(Window const& w, std::string const& name) {
  std::vector<int> row(w.poset.size());
  for (std::size_t i = 0; i < row.size(); ++i) row[i] = w.layer(static_cast<int>(i));
  return ranked_hasse(w.poset, row, name);
}

std::string digraph_dot(LabeledDigraph const& d, std::string const& name) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t i = 0; i < d.size(); ++i) os << "  n" << i << " [label=" << quote(d.label(static_cast<int>(i))) << "];\n";
  for (auto [a, b] : d.edges()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string tree_dot(NeighborhoodTree const& t, std::string const& name) {
  std::ostringstream os;
  os << "graph " << quote(name) << " {\n  node [fontsize=10];\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    os << "  n" << i << " [label=" << quote(t.nodes[i].to_power_string());
    os << (t.in_neighborhood[i] ? ", shape=box, style=filled" : ", shape=point") << "];\n";
  }
  for (auto [a, b] : t.edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

void write_text_file(std::filesystem::path const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw Error("failed writing " + path.string());
}

}  // namespace posrep
