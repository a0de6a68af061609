#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flowtext/flow.hpp"
#include "flowtext/image.hpp"
#include "flowtext/pipeline.hpp"

namespace flowtext::io {

/// Middlebury .flo: magic float 202021.25, int32 width, int32 height,
/// then h*w interleaved (u,v) little-endian float32, row-major.
/// Rejects bad magic (FormatError) and non-finite components
/// (ContentError naming the pixel).
FlowField read_flo(const std::filesystem::path& path);
void write_flo(const FlowField& field, const std::filesystem::path& path);

/// 16-bit single-channel PNG of instance ids.
SegmentationMap read_segm(const std::filesystem::path& path);
void write_segm(const SegmentationMap& segm,
                const std::filesystem::path& path);

/// Single-channel PFM, scale -1.0 (little-endian), bottom-up rows.
/// Depth values must be finite and > 0 (ContentError otherwise).
DepthMap read_depth(const std::filesystem::path& path);
void write_depth(const DepthMap& depth, const std::filesystem::path& path);

/// 8-bit RGB PNG; channels normalized to [0,1] in memory.
Image read_frame(const std::filesystem::path& path);
void write_frame(const Image& image, const std::filesystem::path& path);

struct VideoAnnotations {
  std::string video_id;
  int seed_frame = 0;  // 1-based, matching frame file numbering
  std::vector<TrackAnnotation> tracks;
};

/// One JSON document per video. Fixed key order
/// (video_id, seed_frame, tracks / track_id, transcription, frames /
/// index, quad, visibility, lost); quad coordinates carry exactly two
/// fractional digits. Frame indices are 1-based to match file names.
void write_annotations(const VideoAnnotations& ann,
                       const std::filesystem::path& path);
VideoAnnotations read_annotations(const std::filesystem::path& path);

/// On-disk contract for one video:
///   root/frames/NNNNNN.png     n frames, numbered from 000001
///   root/flow_fwd/NNNNNN.flo   n-1 fields, file i maps frame i to i+1
///   root/flow_bwd/NNNNNN.flo   n-1 fields, file i maps frame i+1 to i
///   root/segm/NNNNNN.png       n maps
///   root/depth/NNNNNN.pfm      n maps
struct DatasetLayout {
  std::filesystem::path root;
  int n = 0;
  int width = 0;
  int height = 0;

  /// Scans and checks the contract; throws ContractError naming the
  /// first offending file.
  static DatasetLayout open(const std::filesystem::path& root);

  // 0-based indices; file names are 1-based.
  std::filesystem::path frame_path(int i) const;
  std::filesystem::path flow_fwd_path(int i) const;
  std::filesystem::path flow_bwd_path(int i) const;
  std::filesystem::path segm_path(int i) const;
  std::filesystem::path depth_path(int i) const;

  std::vector<Image> read_frames() const;
  std::vector<FlowField> read_flows_fwd() const;
  std::vector<FlowField> read_flows_bwd() const;
  std::vector<SegmentationMap> read_segms() const;
  DepthMap read_depth_for(int i) const;
};

std::string frame_file_name(int index_zero_based, const char* extension);

struct ValidationFinding {
  std::string file;
  std::string expected;
  std::string actual;
  std::string message;
};

/// Full layout check; returns every finding instead of stopping at the
/// first. Empty result means the layout satisfies the contract.
std::vector<ValidationFinding> validate_layout(
    const std::filesystem::path& root);

}  // namespace flowtext::io
