// Linked against the library built with the identification offset shifted by
// one corner. The oracle has to notice.
#include <doctest.h>

#include "feuilletage/labeling.hpp"
#include "feuilletage/oracle.hpp"

using namespace feuilletage;

TEST_CASE("shifted identification breaks the CVS identity") {
  auto s = derive_stream(MasterSeed{1}, 0, "mutation");
  int failures = 0;
  std::string example;
  for (int seed = 0; seed < 200; ++seed) {
    FoldingTrace trace;
    const auto r = build_feuilletage(2, 1 + seed % 16, s, &trace);
    const auto labels = vertex_labels(trace.levels[0].contour, trace.levels[0].labels);
    const auto cvs = oracle::cvs_identity_check(r, labels);
    if (!cvs.passed) {
      ++failures;
      if (example.empty()) example = cvs.detail;
    }
  }
  CHECK(failures > 0);
  CHECK_FALSE(example.empty());
  MESSAGE("counterexample: " << example);
}

TEST_CASE("the oracle suite reports the failure") {
  oracle::SuiteOptions options;
  options.max_n = 6;
  options.seeds = 5;
  options.max_depth = 2;
  CHECK_FALSE(oracle::run_suite(options).passed());
}
