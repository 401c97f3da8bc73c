#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "hyperoct/hyperoct.h"

using nlohmann::json;

namespace {

struct Job {
  hyperoct_job* p = hyperoct_job_new();
  ~Job() { hyperoct_job_free(p); }
};

std::string report_text(const hyperoct_report* r, int timing) {
  char* s = hyperoct_report_json(r, timing);
  std::string out = s ? s : "";
  hyperoct_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and null handling") {
  CHECK(std::string(hyperoct_version()).size() > 0);
  CHECK(hyperoct_job_set_ring(nullptr, "q") == HYPEROCT_INVALID_ARGUMENT);
  CHECK(std::string(hyperoct_last_error()).size() > 0);
  CHECK(hyperoct_job_run(nullptr, nullptr) == HYPEROCT_INVALID_ARGUMENT);
  CHECK(hyperoct_report_json(nullptr, 1) == nullptr);
  hyperoct_job_free(nullptr);
  hyperoct_report_free(nullptr);
  hyperoct_string_free(nullptr);
}

TEST_CASE("setters validate") {
  Job job;
  CHECK(hyperoct_job_set_ring(job.p, "f6") == HYPEROCT_SCHEMA);
  CHECK(hyperoct_job_set_ring(job.p, "f3") == HYPEROCT_OK);
  CHECK(hyperoct_job_set_pipelines(job.p, "full,bogus") == HYPEROCT_SCHEMA);
  CHECK(hyperoct_job_set_pipelines(job.p, "") == HYPEROCT_SCHEMA);
  CHECK(hyperoct_job_set_object_range(job.p, 2, 1) == HYPEROCT_INVALID_ARGUMENT);
  CHECK(hyperoct_job_set_max_degree(job.p, -1) == HYPEROCT_INVALID_ARGUMENT);
  CHECK(hyperoct_job_set_coefficients(job.p, "z/0") == HYPEROCT_SCHEMA);
  CHECK(hyperoct_job_set_max_generators(job.p, 0) == HYPEROCT_INVALID_ARGUMENT);
  CHECK(hyperoct_job_set_algebra_json(job.p, "{not json") == HYPEROCT_SCHEMA);
  CHECK(hyperoct_job_set_algebra_file(job.p, "/nonexistent/a.json") == HYPEROCT_IO);
}

TEST_CASE("run a job through the C API") {
  Job job;
  REQUIRE(hyperoct_job_set_algebra_builtin(job.p, "C3") == HYPEROCT_OK);
  REQUIRE(hyperoct_job_set_pipelines(job.p, "full,epi") == HYPEROCT_OK);
  REQUIRE(hyperoct_job_set_object_range(job.p, 0, 1) == HYPEROCT_OK);
  REQUIRE(hyperoct_job_set_max_degree(job.p, 1) == HYPEROCT_OK);
  REQUIRE(hyperoct_job_set_verify(job.p, 1) == HYPEROCT_OK);
  hyperoct_report* r = nullptr;
  REQUIRE(hyperoct_job_run(job.p, &r) == HYPEROCT_OK);
  CHECK(hyperoct_report_complete(r) == 1);
  CHECK(hyperoct_report_verifications_passed(r) == 1);
  const auto j = json::parse(report_text(r, 1));
  CHECK(j["betti"]["full"]["0"][0] == 2);  // A / (a - bar a): g ~ g^2
  CHECK(j.contains("timing"));
  CHECK_FALSE(json::parse(report_text(r, 0)).contains("timing"));
  hyperoct_report_free(r);
}

TEST_CASE("algebra from a file and schema errors") {
  const auto path = std::filesystem::temp_directory_path() / "hyperoct-capi-ground.json";
  {
    std::ofstream out(path);
    out << R"({"dim": 1, "structure": [[0,0,0,1,1]], "involution": [[1]], "unit": [1]})";
  }
  Job job;
  REQUIRE(hyperoct_job_set_algebra_file(job.p, path.c_str()) == HYPEROCT_OK);
  hyperoct_report* r = nullptr;
  REQUIRE(hyperoct_job_run(job.p, &r) == HYPEROCT_OK);
  CHECK(json::parse(report_text(r, 0))["betti"]["full"]["0"][0] == 1);
  hyperoct_report_free(r);

  REQUIRE(hyperoct_job_set_algebra_json(job.p, R"({"dim": 1, "structure": [], "involution": [[1]], "unit": [1]})") ==
          HYPEROCT_OK);
  CHECK(hyperoct_job_run(job.p, &r) == HYPEROCT_SCHEMA);
  CHECK(r == nullptr);
  CHECK(std::string(hyperoct_last_error()).rfind("algebra", 0) == 0);
  std::filesystem::remove(path);
}

TEST_CASE("partial report on cap") {
  Job job;
  hyperoct_job_set_algebra_builtin(job.p, "C2");
  hyperoct_job_set_object_range(job.p, 0, 2);
  hyperoct_job_set_max_degree(job.p, 2);
  hyperoct_job_set_max_generators(job.p, 500);
  hyperoct_report* r = nullptr;
  CHECK(hyperoct_job_run(job.p, &r) == HYPEROCT_CAP_EXCEEDED);
  REQUIRE(r != nullptr);
  CHECK(hyperoct_report_complete(r) == 0);
  CHECK(json::parse(report_text(r, 0))["status"] == "cap_exceeded");
  hyperoct_report_free(r);
}

TEST_CASE("category verification") {
  char* text = nullptr;
  int ok = 0;
  REQUIRE(hyperoct_verify_category(1, &text, &ok) == HYPEROCT_OK);
  CHECK(ok == 1);
  CHECK(json::parse(text)["status"] == "pass");
  hyperoct_string_free(text);
  CHECK(hyperoct_verify_category(-1, &text, &ok) == HYPEROCT_SCHEMA);
}
