#pragma once

// Jobs: algebra ingestion, pipeline runs over a range of truncations,
// verification, persistence and the JSON report.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra.hpp"
#include "complexes.hpp"
#include "homology.hpp"

namespace hyperoct {

// Malformed input; the message starts with the offending field.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Pipeline { kFull, kNerve, kReduced, kEpi, kSlominska, kExtended };

std::string to_string(Pipeline p);
Pipeline parse_pipeline(const std::string& name);
// "q", "z", "f2", "f3", "f<p>"
Ring parse_ring(const std::string& text);

// {"dim", "basis", "structure": [[i, j, k, num, den], ...], "involution",
//  "unit", "augmentation"?}. Scalars are integers or [num, den] pairs.
InvolutiveAlgebra parse_algebra(const nlohmann::json& spec, Ring ring);

struct JobSpec {
  std::string algebra = "ground";  // builtin name, or a label for algebra_json
  std::optional<nlohmann::json> algebra_json;
  std::string ring = "q";
  std::vector<Pipeline> pipelines{Pipeline::kFull};
  int min_object = 0;
  int max_object = 0;
  int max_degree = 1;
  std::optional<std::string> coefficients;
  bool verify = false;
  std::string cache_dir;  // empty: no cache
  std::uint64_t max_generators = kDefaultMaxGenerators;
};

// Reads --max-object syntax: "N" or "N1..N2".
void parse_object_range(const std::string& text, int& lo, int& hi);

struct Report {
  nlohmann::json body;    // everything except timing; byte-stable
  nlohmann::json timing;  // wall-clock seconds
  bool verifications_passed = true;
  bool complete = true;

  // The full report: body plus a "timing" member when requested.
  [[nodiscard]] std::string dump(bool with_timing = true) const;
};

// Throws SchemaError on an invalid or inconsistent spec.
Report run_job(const JobSpec& spec);

// Loads the algebra of a job (builtin or JSON) over the job's ring.
InvolutiveAlgebra job_algebra(const JobSpec& spec);

nlohmann::json category_suite_report(int depth, bool& all_passed);

}  // namespace hyperoct
