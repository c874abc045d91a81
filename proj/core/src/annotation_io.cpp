#include "meshtape/annotation_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "meshtape/errors.hpp"

namespace meshtape {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "mesh_id,chest_m,waist_m,pelvis_m,chest_y,waist_y,pelvis_y,step_m";

// All numeric output goes through one fixed 6-decimal formatter so CSV and
// JSON stay byte-deterministic and encode identical values.
std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void write_csv(const std::vector<AnnotationRecord>& records,
               std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const AnnotationRecord& r : records) {
    out << r.mesh_id << ',' << fmt6(r.chest) << ',' << fmt6(r.waist) << ','
        << fmt6(r.pelvis) << ',' << fmt6(r.chest_y) << ','
        << fmt6(r.waist_y) << ',' << fmt6(r.pelvis_y) << ','
        << fmt6(r.step) << '\n';
  }
}

void write_json(const std::vector<AnnotationRecord>& records,
                std::ostream& out) {
  // Hand-rolled so every number is printed with exactly 6 decimals;
  // general-purpose serializers emit shortest-round-trip forms instead.
  out << "{\n  \"records\": [";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const AnnotationRecord& r = records[i];
    out << (i ? ",\n    " : "\n    ");
    out << "{\"mesh_id\": \"" << json_escape(r.mesh_id) << "\", "
        << "\"chest_m\": " << fmt6(r.chest) << ", "
        << "\"waist_m\": " << fmt6(r.waist) << ", "
        << "\"pelvis_m\": " << fmt6(r.pelvis) << ", "
        << "\"chest_y\": " << fmt6(r.chest_y) << ", "
        << "\"waist_y\": " << fmt6(r.waist_y) << ", "
        << "\"pelvis_y\": " << fmt6(r.pelvis_y) << ", "
        << "\"step_m\": " << fmt6(r.step) << ", "
        << "\"tool_version\": \"" << json_escape(r.tool_version) << "\"}";
  }
  out << (records.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace

AnnotationFormat parse_annotation_format(const std::string& name) {
  if (name == "csv") return AnnotationFormat::kCsv;
  if (name == "json") return AnnotationFormat::kJson;
  throw std::invalid_argument("unknown annotation format '" + name +
                              "' (expected csv or json)");
}

void write_annotation(const std::vector<AnnotationRecord>& records,
                      AnnotationFormat format, std::ostream& out) {
  if (format == AnnotationFormat::kCsv)
    write_csv(records, out);
  else
    write_json(records, out);
}

std::vector<AnnotationRecord> parse_annotation_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("annotation: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("records") ||
      !doc["records"].is_array())
    throw ParseError("annotation: expected a top-level \"records\" array");

  std::vector<AnnotationRecord> records;
  for (const json& item : doc["records"]) {
    AnnotationRecord r;
    try {
      r.mesh_id = item.at("mesh_id").get<std::string>();
      r.chest = item.at("chest_m").get<double>();
      r.waist = item.at("waist_m").get<double>();
      r.pelvis = item.at("pelvis_m").get<double>();
      r.chest_y = item.at("chest_y").get<double>();
      r.waist_y = item.at("waist_y").get<double>();
      r.pelvis_y = item.at("pelvis_y").get<double>();
      r.step = item.at("step_m").get<double>();
      r.tool_version = item.at("tool_version").get<std::string>();
    } catch (const json::exception& e) {
      throw ParseError(std::string("annotation record: ") + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> parse_annotation_json(
    const std::string& text) {
  std::istringstream in(text);
  return parse_annotation_json(in);
}

void write_signature_csv(const Signature& signature, std::ostream& out) {
  if (signature.offsets.empty())
    throw std::invalid_argument("cannot export an empty signature");
  out << "y,boundary_length\n";
  for (std::size_t i = 0; i < signature.offsets.size(); ++i)
    out << fmt6(signature.offsets[i]) << ',' << fmt6(signature.lengths[i])
        << '\n';
}

}  // namespace meshtape
