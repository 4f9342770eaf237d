#pragma once

#include <json.hpp>

#include "summa/convexdual.hpp"
#include "summa/seqcore.hpp"
#include "summa/simonslab.hpp"
#include "summa/summability.hpp"

namespace summa::io {

using nlohmann::json;

// JSON wire formats. Round trips are bit-exact for doubles (shortest
// round-trip serialization on both ends).
//
//   sequence   {"kind":"eventually_periodic","preperiod":[...],"period":[...]}
//              {"kind":"sparse_indicator","support":"squares"|"powers_of_two",
//               "on":x,"off":y}
//              {"kind":"combo","coeffs":[...],"parts":[...]}
//   matrix     {"kind":"cesaro"|"identity"} | {"kind":"riesz","weights":[...]}
//              (decode also accepts the doctored falsifier demos)
//   body       {"kind":"vpolytope","vertices":[[...],...]}
//              {"kind":"ball","radius":r,"dim":d}
//   set        {"kind":"finite_points","points":[[...],...]}
//              {"kind":"sphere_sample","count":n,"seed":n,
//               "excluded_cap":{"direction":[...],"angular_radius":x}?}

json to_json(const seqcore::SequenceSpec& spec);
seqcore::SequenceSpec sequence_from_json(const json& j);

json to_json(const summability::SummabilityMatrix& m);
summability::SummabilityMatrix matrix_from_json(const json& j);

json to_json(const convexdual::DualBody& body);
convexdual::DualBody body_from_json(const json& j);

json to_json(const convexdual::GeneratingSet& set);
convexdual::GeneratingSet set_from_json(const json& j,
                                        const convexdual::DualBody& ambient);

simonslab::PMapSpec pmap_from_json(const json& j);

seqcore::VectorSequence vector_sequence_from_json(const json& j);

}  // namespace summa::io
