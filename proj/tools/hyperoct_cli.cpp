// Command-line front end; talks to the library through the C API only.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperoct/hyperoct.h"

namespace {

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2, kPartial = 3, kIo = 4, kInternal = 5 };

int exit_for(hyperoct_status s) {
  switch (s) {
    case HYPEROCT_OK:
      return kOk;
    case HYPEROCT_INVALID_ARGUMENT:
    case HYPEROCT_SCHEMA:
      return kUsage;
    case HYPEROCT_IO:
      return kIo;
    case HYPEROCT_CAP_EXCEEDED:
      return kPartial;
    default:
      return kInternal;
  }
}

struct StringDeleter {
  void operator()(char* s) const { hyperoct_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

bool write_output(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return true;
  }
  const std::string tmp = path + ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    if (!out) return false;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

int report_error(hyperoct_status s) {
  std::cerr << "error: " << hyperoct_last_error() << '\n';
  return exit_for(s);
}

struct ComputeArgs {
  std::string algebra = "ground";
  std::string ring = "q";
  std::vector<std::string> pipelines{"full"};
  std::string max_object = "0";
  int max_degree = 1;
  std::string coefficients;
  bool verify = false;
  std::string cache_dir;
  std::uint64_t max_generators = 4'000'000;
  std::string out;
  bool timing = true;
};

int run_compute(const ComputeArgs& a) {
  std::unique_ptr<hyperoct_job, decltype(&hyperoct_job_free)> job(hyperoct_job_new(), hyperoct_job_free);
  if (!job) return kInternal;

  int lo = 0, hi = 0;
  try {
    const auto dots = a.max_object.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(a.max_object, &used);
      if (used != a.max_object.size()) throw std::invalid_argument("trailing");
    } else {
      const std::string l = a.max_object.substr(0, dots), h = a.max_object.substr(dots + 2);
      lo = std::stoi(l, &used);
      if (used != l.size()) throw std::invalid_argument("trailing");
      hi = std::stoi(h, &used);
      if (used != h.size()) throw std::invalid_argument("trailing");
    }
  } catch (const std::exception&) {
    std::cerr << "error: --max-object expects N or N1..N2\n";
    return kUsage;
  }

  std::string pipelines;
  for (const auto& p : a.pipelines) pipelines += (pipelines.empty() ? "" : ",") + p;

  const bool is_file = std::filesystem::exists(a.algebra) || a.algebra.find('/') != std::string::npos ||
                       a.algebra.ends_with(".json");
  hyperoct_status s = is_file ? hyperoct_job_set_algebra_file(job.get(), a.algebra.c_str())
                              : hyperoct_job_set_algebra_builtin(job.get(), a.algebra.c_str());
  if (s == HYPEROCT_OK) s = hyperoct_job_set_ring(job.get(), a.ring.c_str());
  if (s == HYPEROCT_OK) s = hyperoct_job_set_pipelines(job.get(), pipelines.c_str());
  if (s == HYPEROCT_OK) s = hyperoct_job_set_object_range(job.get(), lo, hi);
  if (s == HYPEROCT_OK) s = hyperoct_job_set_max_degree(job.get(), a.max_degree);
  if (s == HYPEROCT_OK && !a.coefficients.empty())
    s = hyperoct_job_set_coefficients(job.get(), a.coefficients.c_str());
  if (s == HYPEROCT_OK) s = hyperoct_job_set_verify(job.get(), a.verify ? 1 : 0);
  if (s == HYPEROCT_OK) s = hyperoct_job_set_cache_dir(job.get(), a.cache_dir.c_str());
  if (s == HYPEROCT_OK) s = hyperoct_job_set_max_generators(job.get(), a.max_generators);
  if (s != HYPEROCT_OK) return report_error(s);

  hyperoct_report* raw = nullptr;
  s = hyperoct_job_run(job.get(), &raw);
  std::unique_ptr<hyperoct_report, decltype(&hyperoct_report_free)> report(raw, hyperoct_report_free);
  if (!report) return report_error(s);
  if (s == HYPEROCT_CAP_EXCEEDED) std::cerr << "warning: " << hyperoct_last_error() << '\n';

  CString text(hyperoct_report_json(report.get(), a.timing ? 1 : 0));
  if (!text) return kInternal;
  if (!write_output(a.out, text.get())) {
    std::cerr << "error: cannot write " << a.out << '\n';
    return kIo;
  }
  if (s == HYPEROCT_CAP_EXCEEDED) return kPartial;
  if (!hyperoct_report_verifications_passed(report.get())) {
    std::cerr << "verification failed; see the report\n";
    return kVerificationFailed;
  }
  return kOk;
}

int run_verify_category(int depth, const std::string& out) {
  char* raw = nullptr;
  int passed = 0;
  const hyperoct_status s = hyperoct_verify_category(depth, &raw, &passed);
  CString text(raw);
  if (s != HYPEROCT_OK) return report_error(s);
  if (!write_output(out, text.get())) {
    std::cerr << "error: cannot write " << out << '\n';
    return kIo;
  }
  return passed ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homology of involutive algebras over the hyperoctahedral crossed simplicial group"};
  app.set_version_flag("--version", std::string(hyperoct_version()));
  app.require_subcommand(1);

  ComputeArgs args;
  auto* compute = app.add_subcommand("compute", "Build the truncated complexes and compute homology");
  compute->add_option("--algebra", args.algebra, "Builtin (ground, C<n>, klein4, V4, S3) or a JSON file")
      ->required();
  compute->add_option("--ring", args.ring, "q, z, f2, f3 or f<p>")->capture_default_str();
  compute
      ->add_option("--pipeline", args.pipelines,
                   "full, nerve, reduced, epi, slominska, extended; repeat or comma-separate")
      ->delimiter(',')
      ->capture_default_str();
  compute->add_option("--max-object", args.max_object, "N or N1..N2")->required();
  compute->add_option("--max-degree", args.max_degree, "Highest homological degree reported")->required();
  compute->add_option("--coefficients", args.coefficients, "Coefficient group, e.g. z/2 or z+z/3 (ring z)");
  compute->add_flag("--verify", args.verify, "Run the chain-level verifications");
  compute->add_option("--cache-dir", args.cache_dir, "Directory for the on-disk cache");
  compute->add_option("--max-generators", args.max_generators, "Generator cap per degree")->capture_default_str();
  compute->add_option("--out", args.out, "Report path ('-' for stdout)")->required();
  compute->add_flag("!--no-timing", args.timing, "Omit the timing section");

  int depth = 2;
  std::string suite_out = "-";
  auto* suite = app.add_subcommand("verify-category", "Check the category axioms on small objects");
  suite->add_option("--depth", depth, "Largest object checked")->required();
  suite->add_option("--out", suite_out, "Report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*compute) return run_compute(args);
  return run_verify_category(depth, suite_out);
}
