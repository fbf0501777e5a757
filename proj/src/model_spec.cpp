#include "stackgame/model_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stackgame/errors.hpp"

namespace stackgame {

namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw Error(ErrorKind::BadInput, "unknown model key: " + item.key());
    }
  }
}

double number_or(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw Error(ErrorKind::BadInput, std::string(key) + " must be a number");
  return obj[key].get<double>();
}

double required_number(const json& obj, const char* key) {
  if (!obj.contains(key)) throw Error(ErrorKind::BadInput, std::string("missing key: ") + key);
  if (!obj[key].is_number()) throw Error(ErrorKind::BadInput, std::string(key) + " must be a number");
  return obj[key].get<double>();
}

std::vector<double> required_array(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw Error(ErrorKind::BadInput, std::string(key) + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) {
      throw Error(ErrorKind::BadInput, std::string(key) + " must be an array of numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

ModelSpec parse_model_json(const std::string& text) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("model JSON does not parse: ") + e.what());
  }
  if (!obj.is_object()) throw Error(ErrorKind::BadInput, "model spec must be a JSON object");
  if (!obj.contains("family") || !obj["family"].is_string()) {
    throw Error(ErrorKind::BadInput, "model spec needs a \"family\" string");
  }
  const std::string family = obj["family"].get<std::string>();

  if (family == "linear") {
    require_keys(obj, {"family", "a", "xbar", "c"});
    return DemandModel::linear(number_or(obj, "a", 1.0), number_or(obj, "xbar", 1.0),
                               number_or(obj, "c", 0.0));
  }
  if (family == "sine") {
    require_keys(obj, {"family", "a", "xbar", "eps", "k", "c"});
    const double k = number_or(obj, "k", 5.0);
    if (k != static_cast<int>(k)) throw Error(ErrorKind::BadInput, "k must be an integer");
    return DemandModel::sine_perturbed(number_or(obj, "a", 1.0), number_or(obj, "xbar", 1.0),
                                       number_or(obj, "eps", 0.0), static_cast<int>(k),
                                       number_or(obj, "c", 0.0));
  }
  if (family == "quadratic") {
    require_keys(obj, {"family", "alpha0", "alpha1", "alpha2", "beta1", "beta2"});
    QuadraticPayoff p;
    p.alpha0 = number_or(obj, "alpha0", 0.0);
    p.alpha1 = required_number(obj, "alpha1");
    p.alpha2 = required_number(obj, "alpha2");
    p.beta1 = number_or(obj, "beta1", 0.0);
    p.beta2 = required_number(obj, "beta2");
    return p;
  }
  if (family == "heterogeneous") {
    require_keys(obj, {"family", "a", "xbar_c"});
    HeterogeneousLinearModel h;
    h.a = required_array(obj, "a");
    h.xbar_c = required_array(obj, "xbar_c");
    if (h.a.size() != h.xbar_c.size()) {
      throw Error(ErrorKind::BadInput, "a and xbar_c need one entry per firm");
    }
    return h;
  }
  throw Error(ErrorKind::BadInput, "unknown model family: " + family);
}

ModelSpec load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open model file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_json(buffer.str());
}

const char* family_name(const ModelSpec& spec) {
  if (const auto* m = std::get_if<DemandModel>(&spec)) {
    return m->family() == DemandFamily::Linear ? "linear" : "sine";
  }
  if (std::holds_alternative<HeterogeneousLinearModel>(spec)) return "heterogeneous";
  return "quadratic";
}

}  // namespace stackgame
