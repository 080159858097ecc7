#ifndef CONECALC_VERIFY_HPP
#define CONECALC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace conecalc::verify {

struct Check {
  std::string id;
  std::string description;
  nlohmann::json expected;
  nlohmann::json observed;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double elapsed_seconds = 0.0;

  bool pass() const;
  // Timing is kept out of the default serialization so identical seeds give
  // byte-identical reports.
  nlohmann::json to_json(bool include_timing = false) const;
};

// Registered suite names, sorted.
std::vector<std::string> suite_names();

// Runs a named suite with the given configuration. Recognized keys are
// suite-specific (seed, samples, pairs, k, jmax, j, h, r, eps, chains).
// The seed defaults to the CONECALC_SEED environment variable when set.
// Unknown names throw std::invalid_argument.
SuiteReport run_suite(const std::string& name, const nlohmann::json& config);

}  // namespace conecalc::verify

#endif
