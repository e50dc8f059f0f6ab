#pragma once

// JSON reports and DOT rendering. Reports carry `schema: 1`; every number is
// an integer, and rationals or big integers are written as strings so that
// output is byte-identical across runs.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "posrep/aut.hpp"
#include "posrep/cayley_graph.hpp"
#include "posrep/certificate.hpp"
#include "posrep/extensions.hpp"
#include "posrep/poset.hpp"
#include "posrep/search.hpp"
#include "posrep/smallcanc.hpp"

namespace posrep {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
std::string engine_version();

/// {"schema": 1, "version": …, "command": …, "params": …}
Json report_envelope(std::string const& command, Json params);
/// Two-space indent plus a trailing newline.
std::string dump(Json const& j);

Json big_to_json(BigInt const& v);
Json rational_to_json(Rational const& r);
/// [numerator, denominator], unreduced, for observed frequencies.
Json fraction_to_json(std::uint64_t num, std::uint64_t den);

Json to_json(ReducedWord const& w);
Json to_json(GirthResult const& g);
Json to_json(RepresentationVerdict const& v, FinitePoset const& poset);
Json to_json(SearchReport const& r);
Json to_json(ThreeOrbitReport const& r);
Json to_json(MainCertificate const& c);
Json to_json(PrimeScan const& s);
Json to_json(CancellationReport const& r);
Json to_json(FewRelatorSummary const& s);
Json to_json(Grading const& g, FinitePoset const& poset);
Json to_json(ActionReport const& r);
Json to_json(RankHomomorphismReport const& r);

/// Hasse diagram, bottom to top, one `rank=same` row per level.
std::string hasse_dot(FinitePoset const& p, std::string const& name = "P");
std::string digraph_dot(LabeledDigraph const& d, std::string const& name = "D");
/// Ball in F₂ around e; nodes of N_S(e) drawn as filled boxes, others as points.
std::string tree_dot(NeighborhoodTree const& t, std::string const& name = "N");
/// Window Hasse diagram with rows by layer.
std::string window_dot(Window const& w, std::string const& name = "W");

/// Throws Error when the file cannot be written.
void write_text_file(std::filesystem::path const& path, std::string const& text);

}  // namespace posrep
