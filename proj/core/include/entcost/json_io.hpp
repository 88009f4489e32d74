#pragma once

#include <nlohmann/json.hpp>

#include "entcost/bounds.hpp"
#include "entcost/majorization.hpp"
#include "entcost/protocols.hpp"
#include "entcost/smoothing.hpp"
#include "entcost/tensor_power.hpp"

namespace entcost {

/// Rounds to 12 significant digits; non-finite values become null.
nlohmann::json rounded(double x);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const SmoothWitness& w);
nlohmann::json to_json(const YieldStats& s);
nlohmann::json to_json(const DilutionReport& r);
nlohmann::json to_json(const EmbezzlerCheck& c);
nlohmann::json to_json(const EmbezzlerCost& c);
nlohmann::json to_json(const PrefixRow& row);
nlohmann::json to_json(const TypeVector& t);

}  // namespace entcost
