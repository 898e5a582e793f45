#include "ere/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace ere {

using nlohmann::json;

std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(fmt15(x).c_str(), nullptr);
}

namespace {

json pair_of(cplx z) { return json::array({round15(z.real()), round15(z.imag())}); }

cplx cplx_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError(std::string(what) + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json parse_doc(const std::string& text, const char* kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("expected a JSON object");
  if (j.contains("schema") && (!j["schema"].is_number_integer() || j["schema"].get<int>() != kSchemaVersion))
    throw FormatError("unsupported schema version");
  if (j.contains("kind") && j["kind"] != kind) throw FormatError(std::string("expected kind ") + kind);
  return j;
}

double number_of(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) throw FormatError(std::string("missing number: ") + key);
  return j[key].get<double>();
}

}  // namespace

std::string to_json(const BodySystem& s, int indent) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "body_system";
  j["masses"] = json::array();
  j["positions"] = json::array();
  for (int i = 0; i < 4; ++i) {
    j["masses"].push_back(round15(s.m[i]));
    j["positions"].push_back(pair_of(s.z[i]));
  }
  return j.dump(indent);
}

BodySystem body_system_from_json(const std::string& text) {
  const json j = parse_doc(text, "body_system");
  if (!j.contains("masses") || !j["masses"].is_array() || j["masses"].size() != 4)
    throw FormatError("masses: expected 4 numbers");
  if (!j.contains("positions") || !j["positions"].is_array() || j["positions"].size() != 4)
    throw FormatError("positions: expected 4 [re, im] pairs");
  BodySystem s;
  for (int i = 0; i < 4; ++i) {
    if (!j["masses"][i].is_number()) throw FormatError("masses: expected 4 numbers");
    s.m[i] = j["masses"][i].get<double>();
    s.z[i] = cplx_of(j["positions"][i], "positions");
  }
  return s;
}

std::string to_json(const EssentialParameters& p, int indent) {
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = "essential_parameters";
  j["beta1"] = round15(p.beta1);
  j["beta2"] = round15(p.beta2);
  j["beta11"] = pair_of(p.beta11);
  j["beta12"] = pair_of(p.beta12);
  j["beta22"] = pair_of(p.beta22);
  return j.dump(indent);
}

EssentialParameters essential_parameters_from_json(const std::string& text) {
  const json j = parse_doc(text, "essential_parameters");
  EssentialParameters p;
  p.beta1 = j.contains("beta1") ? number_of(j, "beta1") : 0.0;
  p.beta2 = number_of(j, "beta2");
  for (auto [key, dst] : {std::pair{"beta11", &p.beta11}, std::pair{"beta12", &p.beta12}, std::pair{"beta22", &p.beta22}}) {
    if (!j.contains(key)) throw FormatError(std::string("missing ") + key);
    *dst = cplx_of(j[key], key);
  }
  return p;
}

}  // namespace ere
