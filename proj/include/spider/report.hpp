#pragma once

#include <string>

#include "json.hpp"
#include "spider/diagram.hpp"
#include "spider/invariants.hpp"
#include "spider/spider.hpp"

namespace spider {

// JSON and plain-text renderings of the pipeline outputs. The two carry
// exactly the same information; JSON re-serializes byte-for-byte.

/// {"components":[[["O",1,1],["U",1,1],...],...]}, sign as +1/-1.
Diagram diagram_from_json(const nlohmann::json& j);

nlohmann::json bracket_json(const Diagram& d, const WebCombination& combo, bool normalized);
std::string bracket_text(const WebCombination& combo);

nlohmann::json certificate_json(const MinimalityCertificate& cert);
std::string certificate_text(const MinimalityCertificate& cert);

nlohmann::json kus_json(const Diagram& d, const Web& w);
std::string kus_text(const Web& w);

nlohmann::json parity_json(const Diagram& d);
std::string parity_text(const Diagram& d);

nlohmann::json kauffman_json(const Diagram& d, const LaurentPoly& f);
std::string kauffman_text(const LaurentPoly& f);

nlohmann::json distinguish_json(const DistinguishReport& rep);
std::string distinguish_text(const DistinguishReport& rep);

} // namespace spider
