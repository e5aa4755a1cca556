#include "sinhproj/model_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sinhproj {

std::unique_ptr<CharExp> model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model_from_json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("type"))
    throw std::invalid_argument("model_from_json: need an object with \"type\"");

  const std::string type = j.at("type").get<std::string>();
  const double r = j.value("r", 0.0);
  const double q = j.value("q", 0.0);

  auto need = [&](const char* key) -> double {
    if (!j.contains(key))
      throw std::invalid_argument(std::string("model_from_json: missing \"") +
                                  key + "\" for model \"" + type + "\"");
    return j.at(key).get<double>();
  };

  if (type == "kobol") {
    const double nu = need("nu");
    const double lp = need("lambda_plus");
    const double lm = need("lambda_minus");
    if (j.contains("c") && j.contains("m2"))
      throw std::invalid_argument(
          "model_from_json: give either \"c\" or \"m2\", not both");
    if (j.contains("c"))
      return std::make_unique<Kobol>(nu, j.at("c").get<double>(), lp, lm, r, q);
    return std::make_unique<Kobol>(
        Kobol::from_second_moment(nu, need("m2"), lp, lm, r, q));
  }
  if (type == "nts")
    return std::make_unique<NormalTemperedStable>(
        need("nu"), need("delta"), need("alpha"), need("beta"), r, q);
  if (type == "bs")
    return std::make_unique<BlackScholes>(need("sigma"), r, q);

  throw std::invalid_argument("model_from_json: unknown model type \"" + type +
                              "\"");
}

std::unique_ptr<CharExp> model_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("model_from_file: cannot open \"" + path +
                                "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace sinhproj
