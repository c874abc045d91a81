// Command line front end: single-mesh measurement, corpus batch
// annotation, signature export, and procedural fixture generation.
//
// Exit codes: 0 success, 1 input/parse error, 2 geometric failure.

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "meshtape/annotation_io.hpp"
#include "meshtape/errors.hpp"
#include "meshtape/fixtures.hpp"
#include "meshtape/measure.hpp"
#include "meshtape/obj_io.hpp"
#include "meshtape/skeleton_io.hpp"
#include "meshtape/version.hpp"

namespace fs = std::filesystem;
using namespace meshtape;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitGeometry = 2;

// Options shared by the measuring subcommands.
struct CommonOptions {
  double step = kDefaultStep;
  std::size_t knn = kDefaultKnn;
  std::string normal_text = "0,1,0";
  std::string axis_map_text = "x,y,z";
  std::string joint_map_path;
  std::string format_text = "csv";
};

void add_common_flags(CLI::App* cmd, CommonOptions* opt, bool with_format) {
  cmd->add_option("--step", opt->step, "slicing step m in meters");
  cmd->add_option("--knn", opt->knn,
                  "neighbor count for the axilla refinement");
  cmd->add_option("--normal", opt->normal_text,
                  "slicing plane normal as x,y,z");
  cmd->add_option("--axis-map", opt->axis_map_text,
                  "signed axis permutation into the LSA frame, e.g. x,z,-y");
  cmd->add_option("--joint-map", opt->joint_map_path,
                  "JSON file renaming skeleton joints to canonical names");
  if (with_format)
    cmd->add_option("--format", opt->format_text,
                    "annotation output format: csv or json");
}

Eigen::Vector3d parse_normal(const std::string& text) {
  Eigen::Vector3d n;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf%c", &n.x(), &n.y(), &n.z(),
                  &extra) != 3)
    throw std::invalid_argument("--normal expects three numbers x,y,z");
  const double len = n.norm();
  if (!(len > 0.0) || !n.allFinite())
    throw std::invalid_argument("--normal must be a nonzero vector");
  return n / len;
}

// Validated pieces of CommonOptions, parsed once up front.
struct ResolvedOptions {
  Eigen::Vector3d normal;
  AxisMap axis_map;
  JointNameMap joint_map;
  AnnotationFormat format = AnnotationFormat::kCsv;
};

ResolvedOptions resolve(const CommonOptions& opt) {
  if (!(opt.step > 0.0))
    throw std::invalid_argument("step must be positive");
  if (opt.knn < 1) throw std::invalid_argument("knn must be at least 1");
  ResolvedOptions r;
  r.normal = parse_normal(opt.normal_text);
  r.axis_map = AxisMap::parse(opt.axis_map_text);
  if (!opt.joint_map_path.empty())
    r.joint_map = read_joint_name_map_file(opt.joint_map_path);
  r.format = parse_annotation_format(opt.format_text);
  return r;
}

std::string mesh_id_from_path(const fs::path& p) {
  return p.stem().string();
}

void write_to_path_or_stdout(const std::string& path,
                             const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << payload;
}

AnnotationRecord to_record(const std::string& mesh_id,
                           const MeasurementSet& ms) {
  AnnotationRecord rec;
  rec.mesh_id = mesh_id;
  rec.chest = ms.chest;
  rec.waist = ms.waist;
  rec.pelvis = ms.pelvis;
  rec.chest_y = ms.chest_y;
  rec.waist_y = ms.waist_y;
  rec.pelvis_y = ms.pelvis_y;
  rec.step = ms.step;
  rec.tool_version = kVersionString;
  return rec;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
      continue;
    }
    out += c;
  }
  return out;
}

// ---- measure ----

int cmd_measure(const std::string& mesh_path,
                const std::string& skeleton_path, const CommonOptions& opt,
                const std::string& output_path,
                const std::string& signature_path, bool debug) {
  const ResolvedOptions r = resolve(opt);
  const Mesh mesh = read_obj_file(mesh_path);
  const Skeleton skeleton = read_skeleton_file(skeleton_path, r.joint_map);

  const PipelineResult pr =
      run_pipeline(mesh, skeleton, opt.step, opt.knn, r.normal, r.axis_map);

  if (debug) {
    const AxillaResult& ax = pr.axilla;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "axilla: p_a=(%.9g, %.9g, %.9g) p_c=(%.9g, %.9g, %.9g) "
                  "p_b=(%.9g, %.9g, %.9g) neighbors=%zu\n",
                  ax.axilla.x(), ax.axilla.y(), ax.axilla.z(),
                  ax.first_hit.x(), ax.first_hit.y(), ax.first_hit.z(),
                  ax.target.x(), ax.target.y(), ax.target.z(),
                  ax.neighbors_used);
    std::cerr << buf;
    std::snprintf(buf, sizeof buf,
                  "regions: chest [%.9g, %.9g) waist [%.9g, %.9g) pelvis "
                  "[%.9g, %.9g)\n",
                  pr.regions.chest.lo, pr.regions.chest.hi,
                  pr.regions.waist.lo, pr.regions.waist.hi,
                  pr.regions.pelvis.lo, pr.regions.pelvis.hi);
    std::cerr << buf;
    if (pr.axilla.neighbors_used < opt.knn)
      std::cerr << "note: mesh has fewer vertices than --knn; used "
                << pr.axilla.neighbors_used << "\n";
  }

  std::ostringstream payload;
  write_annotation({to_record(mesh_id_from_path(mesh_path),
                              pr.measurement)},
                   r.format, payload);
  write_to_path_or_stdout(output_path, payload.str());

  if (!signature_path.empty()) {
    std::ofstream out(signature_path, std::ios::binary);
    if (!out)
      throw ParseError("cannot open file for writing: " + signature_path);
    write_signature_csv(pr.signature, out);
  }
  return kExitOk;
}

// ---- signature ----

int cmd_signature(const std::string& mesh_path, const CommonOptions& opt,
                  const std::string& output_path) {
  const ResolvedOptions r = resolve(opt);
  Mesh mesh = read_obj_file(mesh_path);
  if (!r.axis_map.is_identity()) mesh = lsa_align(mesh, r.axis_map);
  const Signature sig = mesh_signature(mesh, r.normal, opt.step);
  std::ostringstream payload;
  write_signature_csv(sig, payload);
  write_to_path_or_stdout(output_path, payload.str());
  return kExitOk;
}

// ---- batch ----

struct BatchJob {
  std::string mesh_id;
  fs::path obj_path;
  fs::path skeleton_path;
};

struct BatchOutcome {
  bool ok = false;
  AnnotationRecord record;
  std::string message;
  int error_class = 0;  // kExitParse or kExitGeometry
};

BatchOutcome run_batch_job(const BatchJob& job, const CommonOptions& opt,
                           const ResolvedOptions& r) {
  BatchOutcome out;
  try {
    if (!fs::exists(job.skeleton_path))
      throw ParseError("missing skeleton file: " +
                       job.skeleton_path.string());
    const Mesh mesh = read_obj_file(job.obj_path.string());
    const Skeleton skeleton =
        read_skeleton_file(job.skeleton_path.string(), r.joint_map);
    const PipelineResult pr = run_pipeline(mesh, skeleton, opt.step,
                                           opt.knn, r.normal, r.axis_map);
    out.record = to_record(job.mesh_id, pr.measurement);
    out.ok = true;
  } catch (const ParseError& e) {
    out.message = e.what();
    out.error_class = kExitParse;
  } catch (const GeometryError& e) {
    out.message = e.what();
    out.error_class = kExitGeometry;
  } catch (const std::exception& e) {
    out.message = e.what();
    out.error_class = kExitParse;
  }
  return out;
}

int cmd_batch(const std::string& corpus_dir, const CommonOptions& opt,
              const std::string& output_path, unsigned jobs) {
  const ResolvedOptions r = resolve(opt);
  if (output_path.empty())
    throw std::invalid_argument("batch requires --output");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");

  if (!fs::is_directory(corpus_dir))
    throw ParseError("corpus directory not found: " + corpus_dir);

  std::vector<BatchJob> batch;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".obj")
      continue;
    BatchJob job;
    job.obj_path = entry.path();
    job.mesh_id = mesh_id_from_path(entry.path());
    job.skeleton_path =
        entry.path().parent_path() / (job.mesh_id + ".skeleton.json");
    batch.push_back(std::move(job));
  }
  if (batch.empty())
    throw ParseError("no .obj meshes found in " + corpus_dir);

  // Lexicographic mesh_id order fixes both the output order and the
  // job numbering, independent of directory enumeration order.
  std::sort(batch.begin(), batch.end(),
            [](const BatchJob& a, const BatchJob& b) {
              return a.mesh_id < b.mesh_id;
            });

  std::vector<BatchOutcome> outcomes(batch.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= batch.size()) break;
      outcomes[i] = run_batch_job(batch[i], opt, r);
    }
  };
  const unsigned nthreads =
      std::min<std::size_t>(jobs, batch.size());
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<AnnotationRecord> records;
  std::vector<std::pair<std::string, const BatchOutcome*>> failures;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (outcomes[i].ok)
      records.push_back(outcomes[i].record);
    else
      failures.emplace_back(batch[i].mesh_id, &outcomes[i]);
  }

  {
    std::ofstream out(output_path, std::ios::binary);
    if (!out)
      throw ParseError("cannot open file for writing: " + output_path);
    write_annotation(records, r.format, out);
  }

  // Sidecar error report next to the annotation file; removed when clean
  // so stale reports never survive a rerun.
  const std::string errors_path = output_path + ".errors.json";
  fs::remove(errors_path);
  int exit_code = kExitOk;
  if (!failures.empty()) {
    std::ofstream out(errors_path, std::ios::binary);
    if (!out)
      throw ParseError("cannot open file for writing: " + errors_path);
    out << "{\n  \"errors\": [";
    for (std::size_t i = 0; i < failures.size(); ++i) {
      const auto& [id, outcome] = failures[i];
      out << (i ? ",\n    " : "\n    ") << "{\"mesh_id\": \""
          << json_escape(id) << "\", \"class\": \""
          << (outcome->error_class == kExitGeometry ? "geometry" : "parse")
          << "\", \"message\": \"" << json_escape(outcome->message)
          << "\"}";
    }
    out << "\n  ]\n}\n";

    exit_code = kExitParse;
    for (const auto& [id, outcome] : failures)
      if (outcome->error_class == kExitGeometry) exit_code = kExitGeometry;
  }

  std::cerr << "annotated " << records.size() << " of " << batch.size()
            << " meshes";
  if (!failures.empty())
    std::cerr << " (" << failures.size() << " failed, see " << errors_path
              << ")";
  std::cerr << "\n";
  return exit_code;
}

// ---- fixture ----

int cmd_fixture(const std::string& kind_name, const FixtureSpec& spec_in,
                const std::string& output_prefix) {
  FixtureSpec spec = spec_in;
  spec.kind = parse_fixture_kind(kind_name);
  const std::string prefix =
      output_prefix.empty() ? kind_name : output_prefix;

  const Fixture fx = generate(spec);
  write_obj_file(fx.mesh, prefix + ".obj");
  write_skeleton_file(fx.skeleton, prefix + ".skeleton.json");
  write_oracle_json_file(fx.oracle, prefix + ".oracle.json");
  std::cerr << "wrote " << prefix << ".obj, " << prefix
            << ".skeleton.json, " << prefix << ".oracle.json\n";
  return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chest/waist/pelvis circumference from 3D body meshes"};
  app.set_version_flag("--version", kVersionString);
  app.require_subcommand(1);

  // measure
  CommonOptions measure_opt;
  std::string measure_mesh, measure_skeleton, measure_output,
      measure_signature;
  bool measure_debug = false;
  CLI::App* measure =
      app.add_subcommand("measure", "measure one mesh + skeleton pair");
  measure->add_option("mesh", measure_mesh, "OBJ mesh path")->required();
  measure->add_option("skeleton", measure_skeleton, "skeleton JSON path")
      ->required();
  add_common_flags(measure, &measure_opt, true);
  measure->add_option("--output", measure_output,
                      "write the annotation here instead of stdout");
  measure->add_option("--signature", measure_signature,
                      "also write the full signature CSV here");
  measure->add_flag("--debug", measure_debug,
                    "print axilla point and region bounds to stderr");

  // batch
  CommonOptions batch_opt;
  std::string batch_dir, batch_output;
  unsigned batch_jobs = 1;
  CLI::App* batch = app.add_subcommand(
      "batch", "annotate a corpus of <id>.obj / <id>.skeleton.json pairs");
  batch->add_option("corpus", batch_dir, "corpus directory")->required();
  add_common_flags(batch, &batch_opt, true);
  batch->add_option("--output", batch_output, "annotation file to write")
      ->required();
  batch->add_option("--jobs", batch_jobs, "worker thread count");

  // signature
  CommonOptions signature_opt;
  std::string signature_mesh, signature_output;
  CLI::App* signature = app.add_subcommand(
      "signature", "export the slice-height signature of one mesh");
  signature->add_option("mesh", signature_mesh, "OBJ mesh path")
      ->required();
  add_common_flags(signature, &signature_opt, false);
  signature->add_option("--output", signature_output,
                        "write the CSV here instead of stdout");

  // fixture
  std::string fixture_kind, fixture_prefix;
  FixtureSpec fixture_spec;
  CLI::App* fixture = app.add_subcommand(
      "fixture", "generate a procedural test body with oracle values");
  fixture
      ->add_option("kind", fixture_kind,
                   "cylinder | sphere | hourglass | humanoid_proxy")
      ->required();
  fixture->add_option("--n,--radial", fixture_spec.radial,
                      "vertices per ring");
  fixture->add_option("--vres,--vertical", fixture_spec.vertical,
                      "wall segments along y (0 = kind default)");
  fixture->add_option("--height", fixture_spec.height, "height in meters");
  fixture->add_option("--radius", fixture_spec.radius, "radius in meters");
  fixture->add_option("--neck-radius", fixture_spec.neck_radius,
                      "hourglass neck radius");
  fixture->add_option("--neck-y", fixture_spec.neck_y,
                      "hourglass neck height");
  fixture->add_option("--scale", fixture_spec.scale,
                      "uniform scale applied to mesh, skeleton and oracle");
  fixture->add_option("--output-prefix", fixture_prefix,
                      "path prefix for the three output files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 uses its own exit-code table; fold every flag/usage problem
    // into the input-error code and keep 0 for --help / --version.
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  if (measure->parsed())
    return guarded([&] {
      return cmd_measure(measure_mesh, measure_skeleton, measure_opt,
                         measure_output, measure_signature, measure_debug);
    });
  if (batch->parsed())
    return guarded([&] {
      return cmd_batch(batch_dir, batch_opt, batch_output, batch_jobs);
    });
  if (signature->parsed())
    return guarded([&] {
      return cmd_signature(signature_mesh, signature_opt, signature_output);
    });
  if (fixture->parsed())
    return guarded([&] {
      return cmd_fixture(fixture_kind, fixture_spec, fixture_prefix);
    });
  return kExitParse;
}
