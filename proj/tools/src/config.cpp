#include "mhess_cli/config.hpp"

#include <algorithm>
#include <cmath>

#include "mhess/hermitian.hpp"

namespace mhess::cli {

void validate(const RunConfig& cfg) {
  if (cfg.n < 1 || cfg.n > kMaxDim) throw ConfigError("n", "must be in 1.." + std::to_string(kMaxDim));
  if (cfg.grid < 8 || cfg.grid % 2 != 0) throw ConfigError("grid", "must be even and >= 8");
  if (cfg.m < 1 || cfg.m > cfg.n) throw ConfigError("m", "must be in 1..n");
  if (cfg.k.empty()) throw ConfigError("k", "needs at least one value");
  for (double k : cfg.k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("k", "values must be finite and > 0");
  }
  if (cfg.eps.empty()) throw ConfigError("eps", "needs at least one value");
  for (std::size_t i = 0; i < cfg.eps.size(); ++i) {
    if (!(cfg.eps[i] > 0.0)) throw ConfigError("eps", "values must be > 0");
    if (i > 0 && !(cfg.eps[i] < cfg.eps[i - 1])) {
      throw ConfigError("eps", "sequence must be strictly decreasing");
    }
  }
  if (!(cfg.radius > 0.0)) throw ConfigError("radius", "must be > 0");
  if (cfg.tol_mass && !(*cfg.tol_mass > 0.0)) throw ConfigError("tol-mass", "must be > 0");
  if (cfg.out.empty()) throw ConfigError("out", "must not be empty");
  if (cfg.samples < 1) throw ConfigError("samples", "must be >= 1");
  if (cfg.budget < 1) throw ConfigError("budget", "must be >= 1");
  const std::vector<std::string> regions{"full", "slab", "empty"};
  if (std::find(regions.begin(), regions.end(), cfg.region) == regions.end()) {
    throw ConfigError("region", "must be one of full, slab, empty");
  }
  if (cfg.variant != "below" && cfg.variant != "bump") {
    throw ConfigError("variant", "must be below or bump");
  }
  if (!cfg.fields.empty() && static_cast<int>(cfg.fields.size()) != cfg.m) {
    throw ConfigError("fields", "needs exactly m field files");
  }
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j = {{"n", cfg.n},
                      {"grid", cfg.grid},
                      {"m", cfg.m},
                      {"k", cfg.k},
                      {"eps", cfg.eps},
                      {"radius", cfg.radius},
                      {"seed", cfg.seed},
                      {"tol_mass", nullptr},
                      {"samples", cfg.samples},
                      {"budget", cfg.budget},
                      {"region", cfg.region},
                      {"variant", cfg.variant},
                      {"refine", cfg.refine},
                      {"fields", cfg.fields}};
  if (cfg.tol_mass) j["tol_mass"] = *cfg.tol_mass;
  return j;
}

}  // namespace mhess::cli
