/* Copyright (C) 2026 The posecodec Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the posecodec library: limb-orientation map encoding and
 * decoding for 3D human pose, evaluation metrics, and the synthetic
 * harness. All objects are opaque handles released with their _free
 * function. Every fallible call returns a pc_status; on failure,
 * pc_last_error() describes the problem for the calling thread.
 */
#ifndef POSECODEC_POSECODEC_H_
#define POSECODEC_POSECODEC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(POSECODEC_BUILDING)
#    define PC_API __declspec(dllexport)
#  else
#    define PC_API __declspec(dllimport)
#  endif
#else
#  define PC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pc_status {
  PC_OK = 0,
  PC_ERR_INVALID_ARGUMENT = 1,
  PC_ERR_INVALID_SKELETON = 2,
  PC_ERR_ZERO_LENGTH_LIMB = 3,
  PC_ERR_NON_UNIT_ORIENTATION = 4,
  PC_ERR_BEHIND_CAMERA = 5,
  PC_ERR_DEGENERATE_ORIENTATION = 6,
  PC_ERR_SHAPE_MISMATCH = 7,
  PC_ERR_JOINT_COUNT_MISMATCH = 8,
  PC_ERR_DEGENERATE_CONFIGURATION = 9,
  PC_ERR_EMPTY_INPUT = 10,
  PC_ERR_BAD_MAGIC = 11,
  PC_ERR_CRC_MISMATCH = 12,
  PC_ERR_TRUNCATED_FILE = 13,
  PC_ERR_FRAME_ORDER = 14,
  PC_ERR_IO = 15,
  PC_ERR_FORMAT = 16,
  PC_ERR_INVARIANT_FAILED = 17,
  PC_ERR_INTERNAL = 99
} pc_status;

typedef enum pc_mode { PC_MODE_ORIENTATION = 0, PC_MODE_LIMB_VECTOR = 1 } pc_mode;
typedef enum pc_dtype { PC_DTYPE_F32 = 1, PC_DTYPE_F64 = 2 } pc_dtype;
typedef enum pc_map_kind { PC_MAPS_HEATMAP = 0, PC_MAPS_ORIENTATION = 1 } pc_map_kind;

typedef struct pc_skeleton pc_skeleton;
typedef struct pc_pose_set pc_pose_set;
typedef struct pc_keypoint_set pc_keypoint_set;
typedef struct pc_map_set pc_map_set;
typedef struct pc_report pc_report;

PC_API const char* pc_version(void);
PC_API const char* pc_status_name(pc_status status);
/* Message for the most recent failure on this thread ("" if none). */
PC_API const char* pc_last_error(void);

/* ---- skeleton ---------------------------------------------------------- */

PC_API pc_status pc_skeleton_default(pc_skeleton** out);
/* JSON keys: joints, parents, limbs, widths_px, ref_lengths_mm, root. */
PC_API pc_status pc_skeleton_load(const char* path, pc_skeleton** out);
PC_API void pc_skeleton_free(pc_skeleton* skeleton);
PC_API int pc_skeleton_num_joints(const pc_skeleton* skeleton);
PC_API int pc_skeleton_num_limbs(const pc_skeleton* skeleton);
PC_API int pc_skeleton_root(const pc_skeleton* skeleton);
/* Writes num_limbs reference lengths (mm). */
PC_API pc_status pc_skeleton_ref_lengths(const pc_skeleton* skeleton, double* out, size_t capacity);

/* ---- pose files (newline-delimited JSON) ------------------------------- */

PC_API pc_status pc_poses_create(int num_joints, pc_pose_set** out);
/* `joints_mm` holds num_joints * 3 values; frame indices must increase. */
PC_API pc_status pc_poses_append(pc_pose_set* set, int64_t frame, const double* joints_mm);
/* Pass skeleton = NULL to skip the joint-count check. */
PC_API pc_status pc_poses_read(const char* path, const pc_skeleton* skeleton, pc_pose_set** out);
PC_API pc_status pc_poses_write(const pc_pose_set* set, const char* path);
PC_API size_t pc_poses_count(const pc_pose_set* set);
PC_API int pc_poses_num_joints(const pc_pose_set* set);
PC_API pc_status pc_poses_get(const pc_pose_set* set, size_t index, int64_t* frame,
                              double* joints_mm, size_t capacity);
PC_API void pc_poses_free(pc_pose_set* set);

PC_API pc_status pc_keypoints_read(const char* path, const pc_skeleton* skeleton,
                                   pc_keypoint_set** out);
PC_API size_t pc_keypoints_count(const pc_keypoint_set* set);
PC_API void pc_keypoints_free(pc_keypoint_set* set);

/* ---- map containers ("POSMAP01") ---------------------------------------- */

PC_API pc_status pc_maps_read(const char* path, pc_map_kind kind, pc_mode mode, pc_map_set** out);
PC_API pc_status pc_maps_write(const pc_map_set* maps, const char* path, pc_dtype dtype);
PC_API size_t pc_maps_frames(const pc_map_set* maps);
PC_API pc_map_kind pc_maps_kind(const pc_map_set* maps);
/* Writes up to `capacity` dims of the packed array; returns the rank. */
PC_API int pc_maps_dims(const pc_map_set* maps, uint32_t* dims, size_t capacity);
PC_API void pc_maps_free(pc_map_set* maps);

/* ---- encode / decode ---------------------------------------------------- */

typedef struct pc_encode_options {
  pc_mode mode;
  double sigma_px;
  int map_h;
  int map_w;
} pc_encode_options;

/* orientation mode, sigma 2.0 px, 64 x 64 maps. */
PC_API void pc_encode_options_default(pc_encode_options* options);

/* Keypoints are in map pixels and pair frame-by-frame with poses. */
PC_API pc_status pc_encode(const pc_skeleton* skeleton, const pc_pose_set* poses,
                           const pc_keypoint_set* keypoints, const pc_encode_options* options,
                           pc_map_set** heatmaps, pc_map_set** orientation_maps);

/* Decodes every frame. With length_source = NULL the skeleton reference
 * lengths are used; otherwise each frame uses the limb lengths of the
 * matching pose in length_source. Roots are placed at the origin. */
PC_API pc_status pc_decode(const pc_skeleton* skeleton, const pc_map_set* heatmaps,
                           const pc_map_set* orientation_maps, const pc_pose_set* length_source,
                           pc_pose_set** out);

/* ---- metrics ------------------------------------------------------------ */

PC_API pc_status pc_mpjpe(const double* pred_mm, const double* gt_mm, int num_joints, int root,
                          double* out);
PC_API pc_status pc_pa_mpjpe(const double* pred_mm, const double* gt_mm, int num_joints,
                             double* out);
PC_API pc_status pc_pck(const double* errors_mm, size_t count, double threshold_mm, double* out);
PC_API pc_status pc_auc(const double* errors_mm, size_t count, double* out);

/* ---- reports and experiments ------------------------------------------- */

PC_API pc_status pc_evaluate(const pc_skeleton* skeleton, const pc_pose_set* pred,
                             const pc_pose_set* gt, pc_report** out);
/* Writes gt_poses.jsonl, keypoints.jsonl, heatmaps.posmap, orient.posmap,
 * bboxes.jsonl and scenario.json into out_dir (created if missing). */
PC_API pc_status pc_synth_run(const pc_skeleton* skeleton, const char* scenario_path,
                              const char* out_dir, pc_dtype dtype);
PC_API pc_status pc_bench_jitter(const pc_skeleton* skeleton, const char* scenario_path,
                                 int trials, pc_report** out);
/* Returns PC_ERR_INVARIANT_FAILED (with *out still set) if a check fails. */
PC_API pc_status pc_selftest(pc_report** out);

PC_API const char* pc_report_json(const pc_report* report);
PC_API const char* pc_report_text(const pc_report* report);
/* Looks up a top-level numeric field of the JSON report. */
PC_API pc_status pc_report_value(const pc_report* report, const char* key, double* out);
PC_API void pc_report_free(pc_report* report);

#ifdef __cplusplus
}
#endif

#endif /* POSECODEC_POSECODEC_H_ */
