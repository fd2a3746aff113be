#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "fiberlift/ca_examples.hpp"
#include "fiberlift/code_analysis.hpp"
#include "fiberlift/fiber_analysis.hpp"
#include "fiberlift/joining.hpp"
#include "fiberlift/measures.hpp"
#include "fiberlift/recode.hpp"
#include "fiberlift/structure.hpp"

namespace fiberlift {

using Json = nlohmann::ordered_json;

/// Graph schema: {"x_symbols": [...], "transitions": [["a","b"], ...], "label": {"a": "0", ...}, "y_symbols": [...]?}
LabeledGraph graph_from_json(const Json& j);
/// Code schema: {"memory": m, "anticipation": n, "alphabet": [...], "block_map": {"ab": "c", ...},
/// "transitions": [...]?, "y_alphabet": [...]?}. Block keys concatenate letters,
/// separated by "." when some letter is longer than one character.
SlidingBlockCode code_from_json(const Json& j);
/// Either schema; a code is recoded to its 1-block presentation.
LabeledGraph code_graph_from_json(const Json& j);

/// {"type": "bernoulli", "alphabet": [...], "probabilities": ["3/10", ...]}
/// {"type": "markov", "states": [...], "matrix": [[...], ...], "stationary": [...]?}
/// {"type": "periodic", "alphabet": [...], "orbit": ["0", "1"]}
Measure measure_from_json(const Json& j);
std::vector<Rational> rationals_from_text(const std::string& comma_separated);

Json read_json_file(const std::string& path);

Json to_json(const LabeledGraph& g);
Json to_json(const LabeledGraph& g, const StructureReport& r);
Json to_json(const LabeledGraph& g, const DegreeReport& r);
Json to_json(const DegreeJoiningGraph& lambda);
Json to_json(const LiftReport& r);
Json to_json(const LabeledGraph& g, const PeriodicLiftAnalysis& a);
Json to_json(const CALiftAnalysis& a);
Json to_json(const CrossValidation& c);
Json to_json(const MeasureComparison& c, const std::vector<std::string>& alphabet);

std::string to_dot(const LabeledGraph& g, const std::string& name = "X");

/// Numbers as JSON: reals are rounded to 12 significant digits so that output is
/// stable across platforms.
double stable_real(double x);

}  // namespace fiberlift
