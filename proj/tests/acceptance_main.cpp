// Copyright 2026 The dicke-fringe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "dicke_fringe.h"

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Pass --fast to skip the Monte Carlo criterion.
int main(int argc, char** argv) {
  df_acceptance_options opts;
  df_acceptance_options_default(&opts);
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) opts.fast = 1;
  }
  df_report* report = nullptr;
  if (df_run_acceptance(&opts, &report) != DF_OK) {
    std::fprintf(stderr, "acceptance run failed: %s\n", df_last_error());
    return 2;
  }
  int failures = 0;
  for (size_t i = 0; i < df_report_count(report); ++i) {
    int id = 0, passed = 0, skipped = 0;
    const char* title = nullptr;
    const char* measured = nullptr;
    double seconds = 0.0;
    df_report_entry(report, i, &id, &title, &measured, &passed, &skipped, &seconds);
    const char* tag = skipped ? "SKIP" : (passed ? "PASS" : "FAIL");
    std::printf("[%s] criterion %2d: %s | %s (%.2fs)\n", tag, id, title, measured, seconds);
    if (!passed) ++failures;
  }
  df_report_free(report);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
