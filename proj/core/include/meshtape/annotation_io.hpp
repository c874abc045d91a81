#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "meshtape/slicing.hpp"

namespace meshtape {

// One per-mesh ground-truth tuple. Values are meters.
struct AnnotationRecord {
  std::string mesh_id;
  double chest = 0.0;
  double waist = 0.0;
  double pelvis = 0.0;
  double chest_y = 0.0;
  double waist_y = 0.0;
  double pelvis_y = 0.0;
  double step = 0.0;
  std::string tool_version;

  bool operator==(const AnnotationRecord&) const = default;
};

enum class AnnotationFormat { kCsv, kJson };

AnnotationFormat parse_annotation_format(const std::string& name);

// Deterministic writers: records in the given order, floats with exactly
// 6 decimal places. CSV header is fixed as
// mesh_id,chest_m,waist_m,pelvis_m,chest_y,waist_y,pelvis_y,step_m
// (the tool version travels only in the JSON form). JSON and CSV encode
// identical values.
void write_annotation(const std::vector<AnnotationRecord>& records,
                      AnnotationFormat format, std::ostream& out);

// Inverse of the JSON writer; round-trips records exactly (values are
// quantized to 6 decimals by the writer).
std::vector<AnnotationRecord> parse_annotation_json(std::istream& in);
std::vector<AnnotationRecord> parse_annotation_json(const std::string& text);

// Two columns "y,boundary_length", one row per slice, descending y, 6
// decimal places. Throws std::invalid_argument on an empty signature.
void write_signature_csv(const Signature& signature, std::ostream& out);

}  // namespace meshtape
