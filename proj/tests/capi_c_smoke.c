/* Copyright (C) 2026 The posecodec Authors
 * SPDX-License-Identifier: Apache-2.0 */

/* The header must stay valid C. */

#include <stdio.h>

#include "posecodec/posecodec.h"

int main(void) {
  pc_skeleton* s = NULL;
  if (pc_skeleton_default(&s) != PC_OK) return 1;
  int ok = pc_skeleton_num_joints(s) == 17 && pc_skeleton_num_limbs(s) == 16;
  pc_skeleton_free(s);
  printf("posecodec %s from C: %s\n", pc_version(), ok ? "ok" : "bad");
  return ok ? 0 : 1;
}
