#include "meshtape/annotation_io.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "meshtape/errors.hpp"
#include "meshtape/fixtures.hpp"
#include "meshtape/slicing.hpp"

using namespace meshtape;

namespace {

constexpr const char* kHeader =
    "mesh_id,chest_m,waist_m,pelvis_m,chest_y,waist_y,pelvis_y,step_m";

AnnotationRecord sample_record() {
  AnnotationRecord r;
  r.mesh_id = "body_0042";
  r.chest = 1.035986;
  r.waist = 0.690657;
  r.pelvis = 1.130166;
  r.chest_y = 0.55;
  r.waist_y = 0.35;
  r.pelvis_y = 0.15;
  r.step = 0.001;
  r.tool_version = "0.1.0";
  return r;
}

std::string render(const std::vector<AnnotationRecord>& records,
                   AnnotationFormat format) {
  std::ostringstream out;
  write_annotation(records, format, out);
  return out.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  return fields;
}

}  // namespace

TEST(AnnotationCsv, EmptyListIsHeaderOnly) {
  EXPECT_EQ(render({}, AnnotationFormat::kCsv), std::string(kHeader) + "\n");
}

TEST(AnnotationCsv, OneRecordOneRow) {
  const std::string text = render({sample_record()}, AnnotationFormat::kCsv);
  EXPECT_EQ(text,
            std::string(kHeader) + "\n" +
                "body_0042,1.035986,0.690657,1.130166,"
                "0.550000,0.350000,0.150000,0.001000\n");
}

TEST(AnnotationCsv, ThreeCircumferenceAndThreeHeightColumns) {
  const std::string text = render({sample_record()}, AnnotationFormat::kCsv);
  const std::vector<std::string> lines = split(text, '\n');
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(split(lines[0], ',').size(), 8u);
  EXPECT_EQ(split(lines[1], ',').size(), 8u);
}

TEST(AnnotationJson, RoundTripIsExact) {
  // Values that are exact 6-decimal fractions survive the fixed-width
  // formatter unchanged, so parse(write(x)) == x field for field.
  std::vector<AnnotationRecord> records = {sample_record()};
  records.push_back(sample_record());
  records[1].mesh_id = "body_0043";
  records[1].chest = 0.875;
  records[1].step = 0.01;

  const std::vector<AnnotationRecord> reparsed =
      parse_annotation_json(render(records, AnnotationFormat::kJson));
  ASSERT_EQ(reparsed.size(), records.size());
  EXPECT_EQ(reparsed[0], records[0]);
  EXPECT_EQ(reparsed[1], records[1]);
}

TEST(AnnotationJson, WriteParseWriteIsIdempotent) {
  // Arbitrary doubles lose sub-micrometer digits on the first write; the
  // second write must reproduce the first byte for byte.
  AnnotationRecord r = sample_record();
  r.chest = 1.0359855670054661;
  r.waist = 0.69065704467031075;
  const std::string first = render({r}, AnnotationFormat::kJson);
  const std::string second =
      render(parse_annotation_json(first), AnnotationFormat::kJson);
  EXPECT_EQ(second, first);
}

TEST(AnnotationJson, EmptyListHasEmptyRecordsArray) {
  const std::string text = render({}, AnnotationFormat::kJson);
  EXPECT_EQ(text, "{\n  \"records\": []\n}\n");
}

TEST(AnnotationJson, EscapesQuotesInMeshId) {
  AnnotationRecord r = sample_record();
  r.mesh_id = "weird\"name";
  const std::string text = render({r}, AnnotationFormat::kJson);
  const std::vector<AnnotationRecord> reparsed = parse_annotation_json(text);
  ASSERT_EQ(reparsed.size(), 1u);
  EXPECT_EQ(reparsed[0].mesh_id, "weird\"name");
}

TEST(AnnotationFormats, CsvAndJsonEncodeIdenticalValues) {
  AnnotationRecord r = sample_record();
  r.chest = 1.0359855670054661;
  r.waist_y = 0.34999999999999998;

  const std::vector<AnnotationRecord> from_json =
      parse_annotation_json(render({r}, AnnotationFormat::kJson));

  const std::string csv = render({r}, AnnotationFormat::kCsv);
  const std::vector<std::string> lines = split(csv, '\n');
  ASSERT_EQ(lines.size(), 2u);
  const std::vector<std::string> fields = split(lines[1], ',');
  ASSERT_EQ(fields.size(), 8u);

  EXPECT_EQ(std::stod(fields[1]), from_json[0].chest);
  EXPECT_EQ(std::stod(fields[2]), from_json[0].waist);
  EXPECT_EQ(std::stod(fields[3]), from_json[0].pelvis);
  EXPECT_EQ(std::stod(fields[4]), from_json[0].chest_y);
  EXPECT_EQ(std::stod(fields[5]), from_json[0].waist_y);
  EXPECT_EQ(std::stod(fields[6]), from_json[0].pelvis_y);
  EXPECT_EQ(std::stod(fields[7]), from_json[0].step);
}

TEST(AnnotationJson, MissingFieldIsAParseError) {
  EXPECT_THROW(parse_annotation_json(
                   R"({"records": [{"mesh_id": "a", "chest_m": 1.0}]})"),
               ParseError);
  EXPECT_THROW(parse_annotation_json("{\"recs\": []}"), ParseError);
  EXPECT_THROW(parse_annotation_json("not json"), ParseError);
}

TEST(SignatureCsv, ThreeSlicesMakeThreeRowsPlusHeader) {
  Signature sig;
  sig.step = 0.25;
  sig.offsets = {0.5, 0.25, 0.0};
  sig.lengths = {4.0, 4.0, 4.0};
  std::ostringstream out;
  write_signature_csv(sig, out);
  EXPECT_EQ(out.str(),
            "y,boundary_length\n"
            "0.500000,4.000000\n"
            "0.250000,4.000000\n"
            "0.000000,4.000000\n");
}

TEST(SignatureCsv, ConstantCylinderHasConstantSecondColumn) {
  FixtureSpec spec;
  spec.kind = FixtureKind::kCylinder;
  spec.radial = 32;
  const Fixture fx = generate(spec);
  const Signature sig =
      mesh_signature(fx.mesh, Eigen::Vector3d(0, 1, 0), 0.25);
  ASSERT_EQ(sig.size(), 5u);

  std::ostringstream out;
  write_signature_csv(sig, out);
  const std::vector<std::string> lines = split(out.str(), '\n');
  ASSERT_EQ(lines.size(), 6u);
  // The top slice grazes the cap ring from below and reports zero; the
  // bottom slice reports the bottom cap ring. Interior rows are the wall.
  const std::string wall = split(lines[2], ',')[1];
  EXPECT_EQ(split(lines[3], ',')[1], wall);
  EXPECT_EQ(split(lines[4], ',')[1], wall);
  EXPECT_EQ(split(lines[5], ',')[1], wall);
  EXPECT_EQ(split(lines[1], ',')[1], "0.000000");
}

TEST(SignatureCsv, EmptySignatureIsAnError) {
  std::ostringstream out;
  EXPECT_THROW(write_signature_csv(Signature{}, out),
               std::invalid_argument);
}

TEST(AnnotationFormatNames, ParseAndReject) {
  EXPECT_EQ(parse_annotation_format("csv"), AnnotationFormat::kCsv);
  EXPECT_EQ(parse_annotation_format("json"), AnnotationFormat::kJson);
  EXPECT_THROW(parse_annotation_format("xml"), std::invalid_argument);
}
