#include "hyperoct/hyperoct.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "job.hpp"

using hyperoct::JobSpec;
using hyperoct::SchemaError;
using nlohmann::json;

struct hyperoct_job {
  JobSpec spec;
};

struct hyperoct_report {
  hyperoct::Report report;
};

namespace {

thread_local std::string last_error;

hyperoct_status fail(hyperoct_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
hyperoct_status guarded(F&& body) {
  try {
    return body();
  } catch (const SchemaError& e) {
    return fail(HYPEROCT_SCHEMA, e.what());
  } catch (const json::exception& e) {
    return fail(HYPEROCT_SCHEMA, std::string("json: ") + e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(HYPEROCT_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(HYPEROCT_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HYPEROCT_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HYPEROCT_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define REQUIRE_ARG(cond, what) \
  if (!(cond)) return fail(HYPEROCT_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* hyperoct_version(void) { return "1.0.0"; }

const char* hyperoct_last_error(void) { return last_error.c_str(); }

hyperoct_job* hyperoct_job_new(void) {
  try {
    return new hyperoct_job{};
  } catch (...) {
    return nullptr;
  }
}

void hyperoct_job_free(hyperoct_job* job) { delete job; }

hyperoct_status hyperoct_job_set_algebra_builtin(hyperoct_job* job, const char* name) {
  REQUIRE_ARG(job && name, "null argument");
  job->spec.algebra = name;
  job->spec.algebra_json.reset();
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_set_algebra_json(hyperoct_job* job, const char* json_text) {
  REQUIRE_ARG(job && json_text, "null argument");
  return guarded([&] {
    job->spec.algebra_json = json::parse(json_text);
    job->spec.algebra = "json";
    return HYPEROCT_OK;
  });
}

hyperoct_status hyperoct_job_set_algebra_file(hyperoct_job* job, const char* path) {
  REQUIRE_ARG(job && path, "null argument");
  std::ifstream in(path);
  if (!in) return fail(HYPEROCT_IO, std::string("cannot read ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return guarded([&] {
    job->spec.algebra_json = json::parse(ss.str());
    job->spec.algebra = std::filesystem::path(path).filename().string();
    return HYPEROCT_OK;
  });
}

hyperoct_status hyperoct_job_set_ring(hyperoct_job* job, const char* ring) {
  REQUIRE_ARG(job && ring, "null argument");
  return guarded([&] {
    (void)hyperoct::parse_ring(ring);
    job->spec.ring = ring;
    return HYPEROCT_OK;
  });
}

hyperoct_status hyperoct_job_set_pipelines(hyperoct_job* job, const char* pipelines) {
  REQUIRE_ARG(job && pipelines, "null argument");
  return guarded([&] {
    std::vector<hyperoct::Pipeline> out;
    std::stringstream ss(pipelines);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto p = hyperoct::parse_pipeline(item);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    if (out.empty()) throw SchemaError("pipeline: none given");
    job->spec.pipelines = out;
    return HYPEROCT_OK;
  });
}

hyperoct_status hyperoct_job_set_object_range(hyperoct_job* job, int min_object, int max_object) {
  REQUIRE_ARG(job, "null argument");
  REQUIRE_ARG(min_object >= 0 && min_object <= max_object && max_object <= hyperoct::kMaxObject,
              "object range must satisfy 0 <= N1 <= N2 <= " + std::to_string(hyperoct::kMaxObject));
  job->spec.min_object = min_object;
  job->spec.max_object = max_object;
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_set_max_degree(hyperoct_job* job, int max_degree) {
  REQUIRE_ARG(job, "null argument");
  REQUIRE_ARG(max_degree >= 0 && max_degree <= 8, "max degree must be between 0 and 8");
  job->spec.max_degree = max_degree;
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_set_coefficients(hyperoct_job* job, const char* module) {
  REQUIRE_ARG(job, "null argument");
  if (!module) {
    job->spec.coefficients.reset();
    return HYPEROCT_OK;
  }
  return guarded([&] {
    try {
      (void)hyperoct::Coefficients::parse(module);
    } catch (const std::invalid_argument& e) {
      throw SchemaError(std::string("coefficients: ") + e.what());
    }
    job->spec.coefficients = module;
    return HYPEROCT_OK;
  });
}

hyperoct_status hyperoct_job_set_verify(hyperoct_job* job, int verify) {
  REQUIRE_ARG(job, "null argument");
  job->spec.verify = verify != 0;
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_set_cache_dir(hyperoct_job* job, const char* path) {
  REQUIRE_ARG(job, "null argument");
  job->spec.cache_dir = path ? path : "";
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_set_max_generators(hyperoct_job* job, uint64_t cap) {
  REQUIRE_ARG(job && cap > 0, "cap must be positive");
  job->spec.max_generators = cap;
  return HYPEROCT_OK;
}

hyperoct_status hyperoct_job_run(const hyperoct_job* job, hyperoct_report** out) {
  REQUIRE_ARG(job && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto report = std::make_unique<hyperoct_report>();
    report->report = hyperoct::run_job(job->spec);
    const bool complete = report->report.complete;
    *out = report.release();
    if (!complete) return fail(HYPEROCT_CAP_EXCEEDED, "generator cap exceeded; the report is partial");
    return HYPEROCT_OK;
  });
}

void hyperoct_report_free(hyperoct_report* report) { delete report; }

char* hyperoct_report_json(const hyperoct_report* report, int with_timing) {
  if (!report) return nullptr;
  try {
    return copy_string(report->report.dump(with_timing != 0));
  } catch (...) {
    return nullptr;
  }
}

int hyperoct_report_verifications_passed(const hyperoct_report* report) {
  return report && report->report.verifications_passed ? 1 : 0;
}

int hyperoct_report_complete(const hyperoct_report* report) { return report && report->report.complete ? 1 : 0; }

hyperoct_status hyperoct_verify_category(int depth, char** out_json, int* all_passed) {
  REQUIRE_ARG(out_json && all_passed, "null argument");
  *out_json = nullptr;
  *all_passed = 0;
  return guarded([&] {
    bool ok = false;
    const auto j = hyperoct::category_suite_report(depth, ok);
    *out_json = copy_string(j.dump(2) + "\n");
    *all_passed = ok ? 1 : 0;
    return HYPEROCT_OK;
  });
}

void hyperoct_string_free(char* s) { std::free(s); }

}  // extern "C"
