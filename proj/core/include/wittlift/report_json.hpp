#pragma once

#include <nlohmann/json.hpp>

#include "wittlift/lifting.hpp"

namespace wittlift {

nlohmann::json ring_elem_json(const RingElem& e);
nlohmann::json descriptor_json(const RingDescriptor& d);
nlohmann::json ring_table_json(const ArtinTestRing& ring);

nlohmann::json certificate_json(const NoLiftCertificate& c);
nlohmann::json witness_json(const Witness& w, const std::vector<std::string>& vars);
nlohmann::json cell_json(const GridCell& cell);
nlohmann::json probe_report_json(const ProbeReport& rep);

nlohmann::json t1_outcome_json(const T1LiftingOutcome& outcome, const AlgebraMap& X,
                               const AlgebraMap& Xprime);
nlohmann::json deligne_report_json(const DeligneReport& rep);

} // namespace wittlift
