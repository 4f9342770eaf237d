#include "summa/serialize.hpp"

namespace summa::io {

using seqcore::EventuallyPeriodic;
using seqcore::IntegerSetSpec;
using seqcore::LinearCombo;
using seqcore::SequenceSpec;
using seqcore::SparseIndicator;

namespace {

json require_field(const json& j, const char* field, const char* what) {
  if (!j.contains(field))
    throw ConfigError(std::string(what) + ": missing field '" + field + "'");
  return j.at(field);
}

std::vector<double> doubles_from(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string(what) + ": expected array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number())
      throw ConfigError(std::string(what) + ": expected numeric entries");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json to_json(const SequenceSpec& spec) {
  if (const auto* ep = std::get_if<EventuallyPeriodic>(&spec.node)) {
    return json{{"kind", "eventually_periodic"},
                {"preperiod", ep->preperiod},
                {"period", ep->period}};
  }
  if (const auto* si = std::get_if<SparseIndicator>(&spec.node)) {
    const std::string& name = si->support.name();
    if (name != "squares" && name != "powers_of_two")
      throw ConfigError("sparse indicator over custom set '" + name +
                        "' is code-defined only and cannot be serialized");
    return json{{"kind", "sparse_indicator"},
                {"support", name},
                {"on", si->on_value},
                {"off", si->off_value}};
  }
  const auto& combo = std::get<LinearCombo>(spec.node);
  json parts = json::array();
  for (const auto& p : combo.parts) parts.push_back(to_json(p));
  return json{{"kind", "combo"},
              {"coeffs", combo.coefficients},
              {"parts", std::move(parts)}};
}

SequenceSpec sequence_from_json(const json& j) {
  const std::string kind = require_field(j, "kind", "sequence").get<std::string>();
  if (kind == "eventually_periodic") {
    return SequenceSpec::periodic(
        doubles_from(require_field(j, "preperiod", "sequence"), "preperiod"),
        doubles_from(require_field(j, "period", "sequence"), "period"));
  }
  if (kind == "sparse_indicator") {
    const std::string support =
        require_field(j, "support", "sequence").get<std::string>();
    IntegerSetSpec set = [&] {
      if (support == "squares") return IntegerSetSpec::squares();
      if (support == "powers_of_two") return IntegerSetSpec::powers_of_two();
      throw ConfigError("unknown indicator support '" + support + "'");
    }();
    return SequenceSpec::indicator(std::move(set),
                                   require_field(j, "on", "sequence").get<double>(),
                                   require_field(j, "off", "sequence").get<double>());
  }
  if (kind == "combo") {
    auto coeffs = doubles_from(require_field(j, "coeffs", "sequence"), "coeffs");
    std::vector<SequenceSpec> parts;
    for (const auto& p : require_field(j, "parts", "sequence"))
      parts.push_back(sequence_from_json(p));
    return SequenceSpec::combo(std::move(coeffs), std::move(parts));
  }
  throw ConfigError("unknown sequence kind '" + kind + "'");
}

json to_json(const summability::SummabilityMatrix& m) {
  if (m.name() == "cesaro" || m.name() == "identity")
    return json{{"kind", m.name()}};
  if (m.name() == "riesz")
    return json{{"kind", "riesz"}, {"weights", m.riesz_weights()}};
  throw ConfigError("matrix '" + m.name() +
                    "' is code-defined only and cannot be serialized");
}

summability::SummabilityMatrix matrix_from_json(const json& j) {
  const std::string kind = require_field(j, "kind", "matrix").get<std::string>();
  if (kind == "cesaro" || kind == "identity")
    return summability::builtin_matrix(kind);
  if (kind == "riesz") {
    const auto weights =
        doubles_from(require_field(j, "weights", "matrix"), "weights");
    return summability::builtin_matrix("riesz", weights);
  }
  // Falsifier demos, accepted in regularity configs only by convention.
  if (kind == "doctored_row_sum_2")
    return summability::doctored_matrix("row_sum_2");
  if (kind == "doctored_sticky_column")
    return summability::doctored_matrix("sticky_column");
  throw ConfigError("unknown matrix kind '" + kind + "'");
}

json to_json(const convexdual::DualBody& body) {
  if (body.is_polytope()) {
    json vertices = json::array();
    for (const auto& v : body.as_polytope().vertices) vertices.push_back(v);
    return json{{"kind", "vpolytope"}, {"vertices", std::move(vertices)}};
  }
  const auto& ball = body.as_ball();
  return json{{"kind", "ball"}, {"radius", ball.radius}, {"dim", ball.dim}};
}

convexdual::DualBody body_from_json(const json& j) {
  const std::string kind = require_field(j, "kind", "body").get<std::string>();
  if (kind == "vpolytope") {
    std::vector<convexdual::Vec> vertices;
    for (const auto& v : require_field(j, "vertices", "body"))
      vertices.push_back(doubles_from(v, "vertex"));
    return convexdual::DualBody::polytope(std::move(vertices));
  }
  if (kind == "ball") {
    return convexdual::DualBody::ball(
        require_field(j, "radius", "body").get<double>(),
        require_field(j, "dim", "body").get<int>());
  }
  throw ConfigError("unknown body kind '" + kind + "'");
}

json to_json(const convexdual::GeneratingSet& set) {
  if (set.is_sample()) {
    const auto& p = *set.sample_params();
    json out{{"kind", "sphere_sample"}, {"count", p.count}, {"seed", p.seed}};
    if (p.excluded_cap) {
      out["excluded_cap"] = json{{"direction", p.excluded_cap->direction},
                                 {"angular_radius", p.excluded_cap->angular_radius}};
    }
    return out;
  }
  json points = json::array();
  for (const auto& p : set.points()) points.push_back(p);
  return json{{"kind", "finite_points"}, {"points", std::move(points)}};
}

convexdual::GeneratingSet set_from_json(const json& j,
                                        const convexdual::DualBody& ambient) {
  const std::string kind = require_field(j, "kind", "generating_set").get<std::string>();
  if (kind == "finite_points") {
    std::vector<convexdual::Vec> points;
    for (const auto& p : require_field(j, "points", "generating_set"))
      points.push_back(doubles_from(p, "point"));
    return convexdual::GeneratingSet::finite_points(std::move(points), ambient);
  }
  if (kind == "sphere_sample") {
    convexdual::SphereSampleParams params;
    params.count = require_field(j, "count", "generating_set").get<int>();
    params.seed = require_field(j, "seed", "generating_set").get<u64>();
    if (j.contains("excluded_cap")) {
      const auto& cap = j.at("excluded_cap");
      params.excluded_cap = convexdual::SphereCap{
          doubles_from(require_field(cap, "direction", "excluded_cap"),
                       "direction"),
          require_field(cap, "angular_radius", "excluded_cap").get<double>()};
    }
    return convexdual::GeneratingSet::sphere_sample(std::move(params), ambient);
  }
  throw ConfigError("unknown generating set kind '" + kind + "'");
}

simonslab::PMapSpec pmap_from_json(const json& j) {
  const std::string kind = require_field(j, "kind", "pmap").get<std::string>();
  if (kind == "identity") return simonslab::PMapSpec::identity();
  if (kind == "pre_cauchy_mean") return simonslab::PMapSpec::pre_cauchy_mean();
  if (kind == "strong_matrix") {
    return simonslab::PMapSpec::strong_matrix(
        matrix_from_json(require_field(j, "matrix", "pmap")),
        require_field(j, "p", "pmap").get<double>());
  }
  if (kind == "strong_matrix_root") {
    return simonslab::PMapSpec::strong_matrix_root(
        matrix_from_json(require_field(j, "matrix", "pmap")),
        require_field(j, "p", "pmap").get<double>());
  }
  if (kind == "maddox") {
    return simonslab::PMapSpec::maddox(
        matrix_from_json(require_field(j, "matrix", "pmap")),
        sequence_from_json(require_field(j, "exponents", "pmap")));
  }
  if (kind == "fa_shift_sup") {
    return simonslab::PMapSpec::fa_shift_sup(
        matrix_from_json(require_field(j, "matrix", "pmap")));
  }
  throw ConfigError("unknown pmap kind '" + kind + "'");
}

seqcore::VectorSequence vector_sequence_from_json(const json& j) {
  const json& coords = j.contains("coordinates") ? j.at("coordinates") : j;
  if (!coords.is_array() || coords.empty())
    throw ConfigError("vector sequence: expected nonempty coordinate array");
  std::vector<SequenceSpec> parts;
  for (const auto& c : coords) parts.push_back(sequence_from_json(c));
  return seqcore::VectorSequence(std::move(parts));
}

}  // namespace summa::io
