#include "sumset/report.hpp"

namespace sumset {

namespace {

Json poly_list(const std::vector<IntPolynomial>& polys) {
  Json out = Json::array();
  for (const auto& p : polys) out.push_back(p.str());
  return out;
}

}  // namespace

Json to_json(const Configuration& cfg) {
  Json j;
  j["B"] = cfg.B;
  j["C"] = cfg.C;
  j["polys"] = poly_list(cfg.polys);
  j["color"] = static_cast<int>(cfg.color);
  j["N"] = cfg.N;
  j["strategy"] = cfg.strategy;
  j["survivors"] = cfg.survivors;
  return j;
}

Json to_json(const AuditReport& rep) {
  Json j;
  j["n"] = rep.n;
  j["color"] = static_cast<int>(rep.color);
  j["count"] = rep.count;
  j["max_element"] = rep.max_element ? Json(*rep.max_element) : Json(nullptr);
  j["M"] = rep.M;
  j["stabilized"] = rep.stabilized;
  return j;
}

Json to_json(const ApResult& ap) {
  Json j;
  j["start"] = ap.start;
  j["difference"] = ap.difference;
  j["length"] = ap.length;
  return j;
}

Json to_json(const GowersThreshold& g, std::uint64_t N) {
  Json j;
  j["k"] = g.k;
  j["N"] = N;
  j["log_threshold"] = g.str(40);
  j["log_n"] = g.log_n.str(40, std::ios_base::fixed);
  j["deficit_log2_floor"] = g.deficit_exponent();
  return j;
}

Json to_json(const ReturnSet& rs) {
  Json j;
  j["a"] = rs.a;
  j["b"] = rs.b;
  j["h"] = rs.h;
  j["M"] = rs.M;
  j["count"] = rs.elements.size();
  j["elements"] = rs.elements;
  return j;
}

Json to_json(const Witness& w, const WitnessParams& p) {
  Json j;
  j["variant"] = std::string(to_string(p.variant));
  j["params"] = p.descriptor().canonical();
  j["B"] = w.B;
  j["C"] = w.C;
  if (p.variant == WitnessVariant::CaseI) {
    // Without (d_i, k_i) pairs the E relation cannot be validated.
    j["e_relation_checked"] = !p.dk.empty();
  }
  return j;
}

Json error_json(std::string_view kind, std::string_view message) {
  Json j;
  j["error"]["kind"] = std::string(kind);
  j["error"]["message"] = std::string(message);
  return j;
}

Json runs_json(std::span<const Color> colors) {
  Json out = Json::array();
  std::size_t i = 0;
  while (i < colors.size()) {
    std::size_t k = i;
    while (k < colors.size() && colors[k] == colors[i]) ++k;
    out.push_back(Json::array({static_cast<int>(colors[i]), k - i}));
    i = k;
  }
  return out;
}

}  // namespace sumset
