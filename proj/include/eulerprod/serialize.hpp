#pragma once

// JSON views of result types. Non-finite doubles are written as null.

#include <json.hpp>

#include "eulerprod/arith.hpp"
#include "eulerprod/constants.hpp"
#include "eulerprod/models.hpp"
#include "eulerprod/moments.hpp"
#include "eulerprod/tails.hpp"

namespace eulerprod {

void to_json(nlohmann::json& j, const ConstantReport& v);
void from_json(const nlohmann::json& j, ConstantReport& v);
void to_json(nlohmann::json& j, const MomentEstimate& v);
void from_json(const nlohmann::json& j, MomentEstimate& v);
void to_json(nlohmann::json& j, const TailEstimate& v);
void from_json(const nlohmann::json& j, TailEstimate& v);
void to_json(nlohmann::json& j, const TailBracket& v);
void to_json(nlohmann::json& j, const EmpiricalTail& v);
void to_json(nlohmann::json& j, const ConditionCheck& v);
void to_json(nlohmann::json& j, const ConditionReport& v);
void to_json(nlohmann::json& j, const DiagonalResult& v);
void to_json(nlohmann::json& j, const CharacterSquareSum& v);
void to_json(nlohmann::json& j, const ExtremeScan& v);
void to_json(nlohmann::json& j, const ZetaMomentSample& v);

}  // namespace eulerprod
