// Copyright 2026 The stripmesh Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stripmesh_cli/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "stripmesh/detokenizer.hpp"
#include "stripmesh/error.hpp"
#include "stripmesh/mesh_io.hpp"
#include "stripmesh/metrics.hpp"
#include "stripmesh/pipeline.hpp"
#include "stripmesh/shapes.hpp"

namespace stripmesh::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string output;
  std::string report;
  int stride = 0;  // 0: per-command default
  bool uv_mode = false;
  std::size_t sample_count = 100000;
  double tau = 0.003;
  std::uint64_t seed = 0;
  std::string up_axis = "y";
  unsigned jobs = 1;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputFile {
  fs::path path;
  std::string name;  // relative to the given root, '/'-separated
  bool direct = false;
};

struct FileResult {
  Json row;
  std::string csv;
  bool ok = true;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<InputFile> collect_inputs(const std::vector<std::string>& inputs,
                                      const std::string& ext) {
  std::vector<InputFile> files;
  for (const std::string& in : inputs) {
    const fs::path root(in);
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) {
      files.push_back({root, root.filename().generic_string(), true});
    } else if (fs::is_directory(root, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        if (lower(entry.path().extension().string()) != ext) continue;
        files.push_back(
            {entry.path(), fs::relative(entry.path(), root).generic_string(), false});
      }
    } else {
      throw UsageError("input does not exist: " + in);
    }
  }
  std::sort(files.begin(), files.end(), [](const InputFile& a, const InputFile& b) {
    return std::tie(a.name, a.path) < std::tie(b.name, b.path);
  });
  if (files.empty()) throw UsageError("no " + ext + " files in the given inputs");
  return files;
}

/// A single direct input with an output path carrying `ext` writes to that
/// path; otherwise the output is a directory mirroring input names.
fs::path output_path(const RunConfig& cfg, const std::vector<InputFile>& files,
                     const InputFile& f, const std::string& ext) {
  const fs::path out(cfg.output);
  if (files.size() == 1 && f.direct && lower(out.extension().string()) == ext &&
      !fs::is_directory(out))
    return out;
  fs::path p = out / fs::path(f.name);
  p.replace_extension(ext);
  return p;
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

UpAxis parse_axis(const std::string& s) {
  if (s == "x") return UpAxis::kX;
  if (s == "z") return UpAxis::kZ;
  return UpAxis::kY;
}

Json error_row(const std::string& file, const std::exception& e) {
  Json row;
  row["file"] = file;
  if (const auto* se = dynamic_cast<const Error*>(&e)) row["code"] = to_string(se->code());
  row["error"] = e.what();
  return row;
}

/// Runs `fn` over every file on `jobs` workers; results keep input order.
template <typename Fn>
std::vector<FileResult> run_files(const std::vector<InputFile>& files,
                                  unsigned jobs, Fn fn) {
  std::vector<FileResult> results(files.size());
  auto work = [&](std::size_t i) {
    try {
      results[i] = fn(files[i]);
    } catch (const std::exception& e) {
      results[i].row = error_row(files[i].name, e);
      results[i].ok = false;
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), files.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) work(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < files.size(); i = next++) work(i);
    });
  for (auto& t : pool) t.join();
  return results;
}

std::size_t nonmanifold_edges(const QuantizedMesh& q) {
  std::map<std::pair<Index, Index>, int> uses;
  for (const Face& f : q.faces)
    for (std::size_t c = 0; c < f.degree; ++c) {
      Index a = f[c], b = f[(c + 1) % f.degree];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  return static_cast<std::size_t>(std::count_if(
      uses.begin(), uses.end(), [](const auto& kv) { return kv.second > 2; }));
}

EncodeOptions encode_options(const RunConfig& cfg) {
  return {cfg.stride == 0 ? 1 : cfg.stride, cfg.uv_mode,
          VertexKeyOrder{parse_axis(cfg.up_axis)}};
}

Json level_shares(const CompressionStats& st) {
  return Json{{"c1", st.level_shares[0]}, {"c2", st.level_shares[1]},
              {"c3", st.level_shares[2]}};
}

Mesh normalized(const Mesh& mesh, const Transform& t) {
  Mesh out = mesh;
  for (Vec3& p : out.positions) p = t.invert(p);
  return out;
}

// ---- commands ----------------------------------------------------------

std::vector<FileResult> cmd_encode(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".obj");
  const EncodeOptions opt = encode_options(cfg);
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const Encoded e = encode_mesh(load_obj(f.path), opt);
    const fs::path dst = output_path(cfg, files, f, ".sato");
    ensure_parent(dst);
    write_tokens(e.tokens, dst);
    const CompressionStats st = compression_stats(e.tokens);
    FileResult r;
    r.row["file"] = f.name;
    r.row["faces"] = e.quantized.faces.size();
    r.row["vertices"] = e.quantized.vertex_keys.size();
    r.row["islands"] = e.strips.islands_in_order.size();
    r.row["strips"] = e.strips.strips.size();
    r.row["tokens"] = st.token_length;
    r.row["comp_rate"] = st.comp_rate;
    r.row["level_shares"] = level_shares(st);
    r.row["warnings"] = e.warnings;
    return r;
  });
}

std::vector<FileResult> cmd_decode(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".sato");
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const TokenSequence seq = read_tokens(f.path);
    const int stride = cfg.stride == 0 ? seq.header.source_stride : cfg.stride;
    const DecodedMesh d = decode(seq, stride);
    const DecodeReport& rep = d.report;
    FileResult r;
    r.row["file"] = f.name;
    r.row["stride"] = stride;
    r.row["faces"] = d.mesh.faces.size();
    r.row["islands"] = d.partition.island_count;
    r.row["total_tokens"] = rep.total_tokens;
    r.row["discarded_tokens"] = rep.discarded_tokens;
    r.row["dropped_strips"] = rep.dropped_strips;
    r.row["dropped_strip_tokens"] = rep.dropped_strip_tokens;
    r.row["degenerate_faces"] = rep.degenerate_faces;
    r.row["duplicate_faces"] = rep.duplicate_faces;
    r.row["welded_vertices"] = rep.welded_vertices;
    r.row["emptied_islands"] = rep.emptied_islands;
    if (d.mesh.faces.empty()) {
      r.row["error"] = "decoded mesh is empty";
      r.ok = false;
      return r;
    }
    const Mesh mesh = to_mesh(d.mesh, true);
    const fs::path dst = output_path(cfg, files, f, ".obj");
    ensure_parent(dst);
    write_obj(mesh, &d.partition, dst);
    return r;
  });
}

std::vector<FileResult> cmd_roundtrip(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".obj");
  const EncodeOptions opt = encode_options(cfg);
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const Encoded e = encode_mesh(load_obj(f.path), opt);
    const RoundTrip rt = verify_round_trip(e, opt.stride);
    FileResult r;
    r.ok = rt.passed;
    r.row["file"] = f.name;
    r.row["passed"] = rt.passed;
    r.row["faces"] = e.quantized.faces.size();
    r.row["strips"] = e.strips.strips.size();
    r.row["tokens"] = e.tokens.tokens.size();
    if (!rt.passed) r.row["first_divergence"] = rt.first_divergence;
    Json notes = Json::array();
    if (const std::size_t nm = nonmanifold_edges(e.quantized))
      notes.push_back(std::to_string(nm) + " non-manifold edges");
    if (!rt.source_oriented)
      notes.push_back("source is not consistently oriented; winding compared "
                      "informationally (" +
                      std::to_string(rt.winding_mismatches) + " mismatches)");
    for (const auto& w : e.warnings) notes.push_back(w);
    r.row["notes"] = notes;
    return r;
  });
}

std::vector<FileResult> cmd_stats(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".obj");
  const EncodeOptions opt = encode_options(cfg);
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const Mesh source = load_obj(f.path);
    const Encoded e = encode_mesh(source, opt);
    const CompressionStats st = compression_stats(e.tokens);
    DecodedMesh d = decode(e.tokens, opt.stride);
    // Compare in the normalized unit cube so tau is scale-free.
    d.mesh.transform = Transform::identity();
    const Mesh decoded = to_mesh(d.mesh);
    const Transform t = e.quantized.transform;
    const SampleSet a = sample_surface(normalized(source, t), cfg.sample_count, cfg.seed);
    const SampleSet b = sample_surface(decoded, cfg.sample_count, cfg.seed);
    MetricReport m;
    m.geometry = geometry_metrics(a, b, cfg.tau);
    m.comp_rate = st.comp_rate;
    m.transitions = st.transitions;
    m.strip_count = e.strips.strips.size();
    m.token_length = st.token_length;
    FileResult r;
    r.row["file"] = f.name;
    r.row["faces"] = e.quantized.faces.size();
    r.row["strip_count"] = m.strip_count;
    r.row["transitions"] = m.transitions;
    r.row["token_length"] = m.token_length;
    r.row["comp_rate"] = m.comp_rate;
    r.row["comp_rate_per_corner"] = st.comp_rate_per_corner;
    r.row["level_shares"] = level_shares(st);
    r.row["nc"] = m.geometry.nc;
    r.row["cd"] = m.geometry.cd;
    r.row["hd"] = m.geometry.hd;
    r.row["f1"] = m.geometry.f1;
    r.row["samples"] = cfg.sample_count;
    r.row["tau"] = cfg.tau;
    r.row["seed"] = cfg.seed;
    return r;
  });
}

std::vector<FileResult> cmd_filter(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".obj");
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const Mesh mesh = load_obj(f.path);
    const IslandPartition islands =
        mesh.has_uvs() ? uv_islands(mesh) : single_island(mesh.faces.size());
    const FilterVerdict v = corpus_filter(mesh, &islands);
    FileResult r;
    r.row["file"] = f.name;
    r.row["accepted"] = v.accepted;
    r.row["reason"] = v.reason;
    r.row["faces"] = mesh.faces.size();
    r.row["islands"] = islands.island_count;
    r.row["merged_vertices"] = v.merged_vertices;
    if (v.accepted) {
      const fs::path dst = fs::path(cfg.output) / fs::path(f.name);
      ensure_parent(dst);
      fs::copy_file(f.path, dst, fs::copy_options::overwrite_existing);
    }
    return r;
  });
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

std::vector<FileResult> cmd_compare(const RunConfig& cfg) {
  const auto files = collect_inputs(cfg.inputs, ".obj");
  const VertexKeyOrder order{parse_axis(cfg.up_axis)};
  return run_files(files, cfg.jobs, [&](const InputFile& f) {
    const Mesh mesh = load_obj(f.path);
    if (mesh.degree() != 3)
      throw Error(ErrorCode::kDegreeMismatch, "compare needs a triangle mesh");
    const QuantizedMesh q = quantize_mesh(mesh);
    const TokenSequence sato = serialize(extract_strips(q, 1, order), false);
    const TokenSequence base = baseline_serialize(q, order);
    const CompressionStats s = compression_stats(sato);
    const CompressionStats b = compression_stats(base);
    FileResult r;
    r.row["file"] = f.name;
    r.row["faces"] = q.faces.size();
    r.row["sato_tokens"] = s.token_length;
    r.row["sato_comp_rate"] = s.comp_rate;
    r.row["sato_transitions"] = s.transitions;
    r.row["baseline_tokens"] = b.token_length;
    r.row["baseline_comp_rate"] = b.comp_rate;
    // Every baseline face restarts from a full triple.
    r.row["baseline_transitions"] = q.faces.size();
    std::ostringstream line;
    line << f.name << ',' << q.faces.size() << ',' << s.token_length << ','
         << fmt(s.comp_rate) << ',' << s.transitions << ',' << b.token_length << ','
         << fmt(b.comp_rate) << ',' << q.faces.size();
    r.csv = line.str();
    return r;
  });
}

int cmd_generate(const RunConfig& cfg, std::ostream& err) {
  const fs::path root(cfg.output);
  auto emit = [&](const std::vector<shapes::Shape>& corpus, const char* sub) {
    for (const auto& s : corpus) {
      const fs::path dst = root / sub / (s.name + ".obj");
      ensure_parent(dst);
      const Mesh m = cfg.uv_mode
                         ? shapes::with_chart_uvs(s.mesh, s.charts.empty()
                                                              ? shapes::axis_charts(s.mesh)
                                                              : s.charts)
                         : s.mesh;
      write_obj(m, nullptr, dst);
    }
    err << "wrote " << corpus.size() << " meshes to " << (root / sub).string() << '\n';
  };
  emit(shapes::triangle_corpus(), "tri");
  emit(shapes::quad_corpus(), "quad");
  return kExitOk;
}

// ---- output ------------------------------------------------------------

int emit_rows(const std::vector<FileResult>& results, std::ostream& sink) {
  bool ok = true;
  for (const auto& r : results) {
    sink << r.row.dump() << '\n';
    ok = ok && r.ok;
  }
  return ok ? kExitOk : kExitFailure;
}

int emit_filter(const std::vector<FileResult>& results, std::ostream& sink) {
  const int code = emit_rows(results, sink);
  std::map<std::string, std::size_t> rejected;
  std::size_t accepted = 0;
  for (const auto& r : results) {
    if (!r.ok) continue;
    if (r.row["accepted"].get<bool>()) ++accepted;
    else ++rejected[r.row["reason"].get<std::string>()];
  }
  Json summary;
  summary["accepted"] = accepted;
  summary["rejected"] = Json::object();
  for (const auto& [reason, n] : rejected) summary["rejected"][reason] = n;
  sink << Json{{"summary", summary}}.dump() << '\n';
  return code;
}

int emit_compare(const std::vector<FileResult>& results, std::ostream& sink,
                 std::ostream& err) {
  sink << "file,faces,sato_tokens,sato_comp_rate,sato_transitions,"
          "baseline_tokens,baseline_comp_rate,baseline_transitions\n";
  double sato = 0.0, base = 0.0, trans = 0.0, faces = 0.0;
  std::size_t n = 0;
  bool ok = true;
  for (const auto& r : results) {
    if (!r.ok) {
      err << r.row["file"].get<std::string>() << ": "
          << r.row["error"].get<std::string>() << '\n';
      ok = false;
      continue;
    }
    sink << r.csv << '\n';
    sato += r.row["sato_comp_rate"].get<double>();
    base += r.row["baseline_comp_rate"].get<double>();
    trans += r.row["sato_transitions"].get<double>();
    faces += r.row["faces"].get<double>();
    ++n;
  }
  if (n) {
    const double k = static_cast<double>(n);
    sink << "mean," << fmt(faces / k) << ",," << fmt(sato / k) << ','
         << fmt(trans / k) << ",," << fmt(base / k) << ',' << fmt(faces / k) << '\n';
  }
  err << "published average compression rates (context only): "
         "BPT 0.228, DeepMesh 0.330, strip tokenizer 0.283\n";
  return ok ? kExitOk : kExitFailure;
}

// Commands that only report take no -o.
void add_io(CLI::App* sub, RunConfig& cfg, bool writes_files) {
  sub->add_option("inputs", cfg.inputs, "Input files or directories")
      ->required()
      ->expected(1, -1);
  if (writes_files)
    sub->add_option("-o,--output", cfg.output, "Output file or directory")->required();
  sub->add_option("--report", cfg.report, "Write the report here instead of stdout");
  sub->add_option("-j,--jobs", cfg.jobs, "Parallel workers over files")
      ->check(CLI::Range(1u, 1024u));
}

void add_encoding(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--stride", cfg.stride, "1 for triangles, 2 for quads")
      ->check(CLI::IsMember({1, 2}));
  sub->add_flag("--uv", cfg.uv_mode, "Mark uv islands in the token stream");
  sub->add_option("--up-axis", cfg.up_axis, "Most significant axis of the vertex order")
      ->check(CLI::IsMember({"x", "y", "z"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Strip-based mesh tokenizer", "stripmesh"};
  app.require_subcommand(1, 1);

  auto* encode = app.add_subcommand("encode", "Encode OBJ meshes to token files");
  add_io(encode, cfg, true);
  add_encoding(encode, cfg);

  auto* decode_cmd = app.add_subcommand("decode", "Decode token files to OBJ");
  add_io(decode_cmd, cfg, true);
  decode_cmd->add_option("--stride", cfg.stride, "Override the stored stride")
      ->check(CLI::IsMember({1, 2}));

  auto* roundtrip = app.add_subcommand("roundtrip", "Verify encode/decode per file");
  add_io(roundtrip, cfg, false);
  add_encoding(roundtrip, cfg);

  auto* stats = app.add_subcommand("stats", "Compression and geometry metrics");
  add_io(stats, cfg, false);
  add_encoding(stats, cfg);
  stats->add_option("--samples", cfg.sample_count, "Surface samples per mesh")
      ->check(CLI::PositiveNumber);
  stats->add_option("--tau", cfg.tau, "F-score distance threshold")
      ->check(CLI::PositiveNumber);
  stats->add_option("--seed", cfg.seed, "Sampling seed");

  auto* filter = app.add_subcommand("filter", "Apply the corpus filter");
  add_io(filter, cfg, true);

  auto* compare = app.add_subcommand("compare", "Strip tokens vs. face-list baseline (CSV)");
  add_io(compare, cfg, false);
  compare->add_option("--up-axis", cfg.up_axis, "Most significant axis of the vertex order")
      ->check(CLI::IsMember({"x", "y", "z"}));

  auto* generate = app.add_subcommand("generate", "Write the synthetic test corpus");
  generate->add_option("-o,--output", cfg.output, "Output directory")->required();
  generate->add_flag("--uv", cfg.uv_mode, "Attach per-chart uv coordinates");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.command == "generate") return cmd_generate(cfg, err);

    std::vector<FileResult> results;
    if (cfg.command == "encode") results = cmd_encode(cfg);
    else if (cfg.command == "decode") results = cmd_decode(cfg);
    else if (cfg.command == "roundtrip") results = cmd_roundtrip(cfg);
    else if (cfg.command == "stats") results = cmd_stats(cfg);
    else if (cfg.command == "filter") results = cmd_filter(cfg);
    else results = cmd_compare(cfg);

    std::ofstream file;
    if (!cfg.report.empty()) {
      ensure_parent(fs::path(cfg.report));
      file.open(cfg.report, std::ios::binary);
      if (!file) throw UsageError("cannot write report: " + cfg.report);
    }
    std::ostream& sink = cfg.report.empty() ? out : file;
    if (cfg.command == "filter") return emit_filter(results, sink);
    if (cfg.command == "compare") return emit_compare(results, sink, err);
    const int code = emit_rows(results, sink);
    for (const auto& r : results)
      if (!r.ok && r.row.contains("error"))
        err << r.row["file"].get<std::string>() << ": "
            << r.row["error"].get<std::string>() << '\n';
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace stripmesh::cli
