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

/* Compiled as C to keep the public header C-clean. */
#include <math.h>
#include <stdio.h>

#include "dicke_fringe.h"

int main(void) {
  df_system* sys = NULL;
  double g = 0.0;
  if (df_system_create(0.8, 0.0, &sys) != DF_OK) return 1;
  if (df_g2_zero_delay(sys, 0.0, 0.0, &g) != DF_OK) return 1;
  df_system_free(sys);
  if (fabs(g - 0.483194527067222) > 1e-12) return 1;
  if (df_system_create(-1.0, 0.0, &sys) != DF_ERR_INVALID_ARGUMENT) return 1;
  printf("c smoke ok: %s g2=%.6f\n", df_version(), g);
  return 0;
}
