#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "tablecount/asymptotics.hpp"
#include "tablecount/exact.hpp"
#include "tablecount/margins.hpp"
#include "tablecount/pairing.hpp"
#include "tablecount/report.hpp"
#include "tablecount/switching.hpp"

namespace tablecount {

using Json = nlohmann::ordered_json;

// {"rows": [...], "cols": [...]}
MarginPair margins_from_json(const Json& j);
// {"entries": [[...], ...]}
TableMatrix matrix_from_json(const Json& j);

Json to_json(const BigInt& value);    // decimal string
Json to_json(const Rational& value);  // {"num": "...", "den": "..."}
Json to_json(const MarginPair& margins);
Json to_json(const TableMatrix& matrix);
Json to_json(const MomentSummary& summary);
Json to_json(const RegimeReport& report);
Json to_json(const CountResult& result);
Json to_json(const ExpectedMoments& moments);
Json to_json(const LogEstimate& estimate);
Json to_json(const Decomposition& d);
Json to_json(const DeltaExtraction& d);
Json to_json(const ComparisonRow& row);
Json to_json(const PairingStatistics& stats);
Json to_json(const DoubletMoments& moments);
Json to_json(const ClassProbabilities& probabilities);
Json to_json(const MonteCarloResult& result);
Json to_json(const WeightIdentity& identity);
Json to_json(const SwitchingSite& site);
Json to_json(const SwitchingEnumeration& enumeration);
Json to_json(const SwitchingBounds& bounds);
Json to_json(const InequalityCheck& check);
Json to_json(const SummationBounds& bounds);

std::string rows_to_csv(const std::vector<ComparisonRow>& rows);

}  // namespace tablecount
