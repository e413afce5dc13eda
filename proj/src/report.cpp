#include "toriscope/report.hpp"

namespace toriscope {

Json to_json(const Integer& value) {
  if (value.fits_slong_p()) return value.get_si();
  return value.get_str();
}

Json to_json(const Rational& value) { return value.get_str(); }

Json to_json(const LatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const std::vector<LatVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Json to_json(const std::vector<Integer>& values) {
  Json out = Json::array();
  for (const auto& x : values) out.push_back(to_json(x));
  return out;
}

Json to_json(const LatticePolytope& p) {
  Json out;
  out["dim"] = p.dim();
  out["vertices"] = to_json(p.vertices());
  out["lattice_points"] = p.lattice_points().size();
  out["text"] = p.to_text();
  return out;
}

Json to_json(const Fan& fan) {
  Json out;
  out["dim"] = fan.dim();
  out["rays"] = fan.rays().size();
  out["cones"] = fan.cones().size();
  out["unimodular"] = fan.unimodular();
  out["text"] = fan.to_text();
  return out;
}

Json to_json(const SupportResult& result) {
  Json out;
  out["verdict"] = to_string(result.verdict);
  out["minimality_guaranteed"] = result.minimality_guaranteed;
  if (!result.minimality_guaranteed) out["note"] = "no minimality guarantee";
  out["candidates"] = result.candidates;
  out["rejected"] = result.rejected;
  out["recession"] = result.recession.size();
  Json polys = Json::array();
  for (std::size_t i = 0; i < result.polytopes.size(); ++i) {
    Json p = to_json(result.polytopes[i]);
    p["b"] = to_json(result.vectors[i].b);
    polys.push_back(std::move(p));
  }
  out["polytopes"] = std::move(polys);
  return out;
}

Json face_json(const LatticePolytope& p, const Face& face) {
  Json out;
  out["dim"] = face.dim;
  std::vector<LatVec> vs;
  for (auto v : face.vertices) vs.push_back(p.vertices()[v]);
  out["vertices"] = to_json(vs);
  return out;
}

Json to_json(const LatticePolytope& start, const ChiselReduction& reduction) {
  Json out;
  out["start"] = to_json(start);
  Json steps = Json::array();
  const LatticePolytope* current = &start;
  for (const auto& s : reduction.transcript) {
    Json j;
    j["face"] = face_json(*current, s.cut.face);
    j["sigma"] = to_json(s.cut.sigma);
    j["b"] = to_json(s.cut.b);
    j["c"] = to_json(s.cut.c);
    j["points_before"] = s.points_before;
    j["points_after"] = s.points_after;
    j["kept"] = s.cut.pieces->first.to_text();
    j["cut_off"] = s.cut.pieces->second.to_text();
    steps.push_back(std::move(j));
    current = &s.cut.pieces->first;
  }
  out["steps"] = std::move(steps);
  out["result"] = to_json(reduction.result);
  return out;
}

Json to_json(const ShrinkResult& result) {
  Json out;
  Json steps = Json::array();
  for (std::size_t i = 0; i < result.transcript.size(); ++i) {
    Json j;
    if (i > 0) j["removed"] = to_json(result.removed[i - 1]);
    j["polytope"] = to_json(result.transcript[i]);
    steps.push_back(std::move(j));
  }
  out["transcript"] = std::move(steps);
  Json finds = Json::array();
  for (const auto& f : result.non_normal) {
    Json j;
    j["polytope"] = to_json(f.polytope);
    j["witness"] = to_json(f.witness);
    j["simple"] = f.simple;
    j["smooth"] = f.smooth;
    finds.push_back(std::move(j));
  }
  out["non_normal"] = std::move(finds);
  return out;
}

Json to_json(const PredicateResult& result) {
  Json out;
  out["value"] = result.value;
  if (result.vertex) out["vertex"] = to_json(*result.vertex);
  if (result.witness) out["witness"] = to_json(*result.witness);
  if (!result.detail.empty()) out["detail"] = result.detail;
  return out;
}

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

}  // namespace toriscope
