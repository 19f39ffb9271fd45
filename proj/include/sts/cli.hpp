// Copyright 2026 The sts authors
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

#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sts/catalog.hpp"
#include "sts/phase.hpp"

namespace sts::cli {

/// Ordered report: `key=value` lines under `## section` headers, or the
/// same data as one JSON object. Deterministic for identical inputs.
class Report {
 public:
  void add(const std::string& section, const std::string& key, nlohmann::ordered_json v) {
    if (sections_.empty() || sections_.back().first != section)
      sections_.emplace_back(section, nlohmann::ordered_json::object());
    sections_.back().second[key] = std::move(v);
  }

  std::string text() const {
    std::ostringstream os;
    for (const auto& [name, obj] : sections_) {
      os << "## " << name << "\n";
      for (const auto& [k, v] : obj.items()) {
        if (v.is_string())
          os << k << "=" << v.get<std::string>() << "\n";
        else
          os << k << "=" << v.dump() << "\n";
      }
    }
    return os.str();
  }

  std::string json() const {
    nlohmann::ordered_json root = nlohmann::ordered_json::object();
    for (const auto& [name, obj] : sections_) root[name] = obj;
    return root.dump(2) + "\n";
  }

 private:
  std::vector<std::pair<std::string, nlohmann::ordered_json>> sections_;
};

inline size_t thread_cap() {
  if (const char* env = std::getenv("STS_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Index-parallel loop; results must be written to per-index slots.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
  size_t workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

inline std::array<int64_t, 2> parse_size(const std::string& text, int dim) {
  auto x = text.find('x');
  if (dim == 1) {
    if (x != std::string::npos) throw Error("size: one-dimensional model takes a single extent");
    return {std::stoll(text), 1};
  }
  if (x == std::string::npos) throw Error("size: expected n1xn2 for a two-dimensional model");
  return {std::stoll(text.substr(0, x)), std::stoll(text.substr(x + 1))};
}

inline std::string size_str(std::array<int64_t, 2> ext, int dim) {
  return dim == 1 ? std::to_string(ext[0])
                  : std::to_string(ext[0]) + "x" + std::to_string(ext[1]);
}

inline Model load_model(const std::string& source) {
  std::ifstream f(source);
  if (f.good()) {
    Model m = parse_model(f);
    return m;
  }
  return catalog_get(source).model;
}

inline void add_model_header(Report& rep, const Model& m, std::array<int64_t, 2> ext) {
  rep.add("model", "name", m.name);
  rep.add("model", "dim", m.dim);
  rep.add("model", "cell", m.cell_size);
  rep.add("model", "size", size_str(ext, m.dim));
  rep.add("model", "N", m.lattice(ext).n_qubits());
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline void cmd_analyze(Report& rep, const Model& m, std::array<int64_t, 2> ext) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  rep.add("group", "G", g.rank());
  rep.add("group", "k", g.logical_count());
  CanonicalSet cs = canonical_logicals(g);
  for (size_t p = 0; p < cs.size(); ++p) {
    rep.add("logicals", "l_" + std::to_string(p + 1), render(cs.pairs[p].first));
    rep.add("logicals", "r_" + std::to_string(p + 1), render(cs.pairs[p].second));
  }
  auto eq = check_translation_equivalence(g, cs);
  for (size_t d = 0; d < eq.size(); ++d)
    rep.add("translation_equivalence", "dir" + std::to_string(d + 1),
            eq[d] ? "true" : "false");
}

inline void cmd_sweep(Report& rep, const Model& m,
                      std::vector<std::array<int64_t, 2>> sizes) {
  if (sizes.empty()) sizes = default_probe_sizes(m);
  std::vector<size_t> ks(sizes.size());
  parallel_for(sizes.size(), [&](size_t i) { ks[i] = build_group(m, sizes[i]).logical_count(); });
  bool constant = true;
  for (size_t i = 0; i < sizes.size(); ++i) {
    rep.add("size " + size_str(sizes[i], m.dim), "k", ks[i]);
    if (ks[i] != ks[0]) constant = false;
  }
  rep.add("verdict", "scale_symmetry", constant ? "true" : "false");
}

inline void cmd_classify(Report& rep, const Model& m, std::array<int64_t, 2> ext) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  Fingerprint f = classify_shapes(g, canonical_logicals(g));
  rep.add("fingerprint", "D", f.dim);
  rep.add("fingerprint", "k", f.k);
  rep.add("fingerprint", "k0", f.k0);
  rep.add("fingerprint", "k1", f.k1);
  rep.add("fingerprint", "summary", f.to_string());
  if (m.dim == 2) {
    DeformationCounts d = deformation_counts(g);
    rep.add("deformation", "g_all_but_one_cell", d.all_but_one_cell);
    rep.add("deformation", "g_row_and_column", d.row_and_column);
    rep.add("deformation", "g_block", d.block);
    rep.add("deformation", "g_one_cell", d.one_cell);
    rep.add("deformation", "g_row", d.row);
    rep.add("deformation", "g_row_complement", d.row_complement);
    rep.add("deformation", "g_column", d.column);
    rep.add("deformation", "g_column_complement", d.column_complement);
    rep.add("deformation", "equalities_hold", d.equalities_hold ? "true" : "false");
  }
}

inline void cmd_entropy(Report& rep, const Model& m, std::array<int64_t, 2> ext,
                        const std::string& region, bool complete) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  Region r = parse_region(region, m.dim);
  size_t e;
  if (complete || g.logical_count() > 0) {
    PureCompletion pc = PureCompletion::standard(g);
    e = entropy(pc, r);
    rep.add("entropy", "completed", "true");
  } else {
    e = entropy(g, r);
    rep.add("entropy", "completed", "false");
  }
  rep.add("entropy", "region", region);
  rep.add("entropy", "E", e);
}

inline void cmd_mi(Report& rep, const Model& m, std::array<int64_t, 2> ext,
                   const std::string& ra, const std::string& rb) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  PureCompletion pc = PureCompletion::standard(g);
  size_t mi = mutual_information(pc, parse_region(ra, m.dim), parse_region(rb, m.dim));
  rep.add("mutual_information", "regionA", ra);
  rep.add("mutual_information", "regionB", rb);
  rep.add("mutual_information", "E", mi);
}

inline void cmd_stopo(Report& rep, const Model& m, std::array<int64_t, 2> ext,
                      const std::string& inner, int64_t width, const std::string& origin) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  Annulus ann;
  auto comma = inner.find(',');
  if (comma == std::string::npos) throw Error("stopo: --inner expects a,b");
  ann.a = std::stoll(inner.substr(0, comma));
  ann.b = std::stoll(inner.substr(comma + 1));
  ann.w = width;
  auto oc = origin.find(',');
  if (oc == std::string::npos) throw Error("stopo: --origin expects x,y");
  ann.origin = {std::stoll(origin.substr(0, oc)), std::stoll(origin.substr(oc + 1))};
  PureCompletion pc = PureCompletion::standard(g);
  rep.add("stopo", "inner", inner);
  rep.add("stopo", "width", width);
  rep.add("stopo", "S_topo", topological_entropy(pc, ann));
}

inline void cmd_distance(Report& rep, const Model& m, std::array<int64_t, 2> ext,
                         size_t max_weight) {
  StabilizerGroup g = build_group(m, ext);
  add_model_header(rep, m, ext);
  DistanceResult d = code_distance(g, max_weight);
  rep.add("distance", "max_weight", max_weight);
  rep.add("distance", "result", d.to_string());
  if (d.exact) rep.add("distance", "d", d.value);
}

inline void cmd_coarsegrain(Report& rep, const Model& m, size_t k_target, int64_t cap) {
  CoarseGrainResult r = coarse_grain(m, k_target, cap);
  rep.add("model", "name", m.name);
  rep.add("coarsegrain", "k_target", k_target);
  rep.add("coarsegrain", "a1", r.factors[0]);
  if (m.dim == 2) rep.add("coarsegrain", "a2", r.factors[1]);
  rep.add("coarsegrain", "cell", r.model.cell_size);
  rep.add("coarsegrain", "templates", r.model.templates.size());
}

inline void cmd_normalform(Report& rep, const Model& m, std::array<int64_t, 2> ext) {
  if (m.dim != 1) throw Error("normalform: needs a one-dimensional model");
  Model local = m;
  int64_t factor = 1;
  int64_t cells = ext[0];
  if (!m.is_local()) {
    size_t k_target = build_group(m, ext).logical_count();
    CoarseGrainResult cg = coarse_grain(m, k_target);
    local = cg.model;
    factor = cg.factors[0];
    if (ext[0] % factor != 0)
      throw Error("normalform: size must be a multiple of the grouping factor " +
                  std::to_string(factor));
    cells = ext[0] / factor;
  }
  if (cells < 2) throw Error("normalform: size too small");
  NormalFormReport nf = disentangle_1d(local, cells);
  add_model_header(rep, m, ext);
  rep.add("normalform", "grouping", factor);
  rep.add("normalform", "cell", local.cell_size);
  rep.add("normalform", "ferromagnetic_pairs", nf.ferromagnetic_pairs);
  rep.add("normalform", "short_range_pairs", nf.short_range_pairs);
  rep.add("normalform", "single_cell", nf.single_cell);
  rep.add("normalform", "verified", nf.verified ? "true" : "false");
  size_t line_no = 0;
  std::istringstream lines(nf.script);
  for (std::string line; std::getline(lines, line);)
    rep.add("script", "line" + std::to_string(line_no++), line);
  if (line_no == 0) rep.add("script", "lines", 0);
}

inline void cmd_catalog(Report& rep) {
  for (const auto& e : catalog()) rep.add("catalog", e.model.name, e.summary);
}

/// Full regression of one catalog entry against its documented results.
/// Appends one line per claim; returns the number of failures.
inline size_t check_entry(Report& rep, const CatalogEntry& entry) {
  size_t failures = 0;
  auto claim = [&](std::array<int64_t, 2> ext, const std::string& what, bool ok,
                   const std::string& got, const std::string& want) {
    std::string key = entry.model.name + " " + size_str(ext, entry.model.dim) + " " + what;
    rep.add("check", key, ok ? "ok (" + got + ")" : "FAIL (got " + got + ", expected " + want + ")");
    if (!ok) ++failures;
  };
  for (const auto& exp : entry.expectations) {
    StabilizerGroup g = build_group(entry.model, exp.extent);
    claim(exp.extent, "k", g.logical_count() == exp.k, std::to_string(g.logical_count()),
          std::to_string(exp.k));
    if (exp.fingerprint) {
      Fingerprint f = classify_shapes(g, canonical_logicals(g));
      bool ok = f.k0 == exp.fingerprint->first && f.k1 == exp.fingerprint->second;
      claim(exp.extent, "fingerprint", ok, f.to_string(),
            "k0=" + std::to_string(exp.fingerprint->first) +
                " k1=" + std::to_string(exp.fingerprint->second));
    }
    if (exp.s_topo) {
      Annulus ann;
      ann.origin = {1, 1};
      ann.a = ann.b = 1;
      ann.w = 1;
      int64_t got = topological_entropy(PureCompletion::standard(g), ann);
      claim(exp.extent, "S_topo", got == *exp.s_topo, std::to_string(got),
            std::to_string(*exp.s_topo));
    }
    if (exp.distance) {
      DistanceResult d = code_distance(g, exp.distance_probe_weight.value());
      bool ok = d.exact && d.value == *exp.distance;
      claim(exp.extent, "distance", ok, d.to_string(), "d=" + std::to_string(*exp.distance));
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"analysis of translation- and scale-symmetric stabilizer models"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the report as a single JSON object");

  std::string model_src, size_s, sizes_s, region_s, region_a, region_b;
  std::string inner_s = "1,1", origin_s = "0,0";
  int64_t width = 1, probe_cap = 12;
  size_t max_weight = 4, k_target = 1;
  bool complete = false, check_all = false;

  auto* analyze = app.add_subcommand("analyze", "group size, logicals, equivalence");
  analyze->add_option("model", model_src)->required();
  analyze->add_option("--size", size_s)->required();

  auto* sweep = app.add_subcommand("sweep", "k across sizes, scale-symmetry verdict");
  sweep->add_option("model", model_src)->required();
  sweep->add_option("--sizes", sizes_s);

  auto* classify = app.add_subcommand("classify", "phase fingerprint and deformation counts");
  classify->add_option("model", model_src)->required();
  classify->add_option("--size", size_s)->required();

  auto* entropy_cmd = app.add_subcommand("entropy", "entanglement entropy of a region");
  entropy_cmd->add_option("model", model_src)->required();
  entropy_cmd->add_option("--size", size_s)->required();
  entropy_cmd->add_option("--region", region_s)->required();
  entropy_cmd->add_flag("--complete", complete);

  auto* mi = app.add_subcommand("mi", "mutual information of two regions");
  mi->add_option("model", model_src)->required();
  mi->add_option("--size", size_s)->required();
  mi->add_option("--regionA", region_a)->required();
  mi->add_option("--regionB", region_b)->required();

  auto* stopo = app.add_subcommand("stopo", "topological entanglement entropy");
  stopo->add_option("model", model_src)->required();
  stopo->add_option("--size", size_s)->required();
  stopo->add_option("--inner", inner_s);
  stopo->add_option("--width", width);
  stopo->add_option("--origin", origin_s);

  auto* distance = app.add_subcommand("distance", "code distance search");
  distance->add_option("model", model_src)->required();
  distance->add_option("--size", size_s)->required();
  distance->add_option("--max-weight", max_weight);

  auto* coarsegrain = app.add_subcommand("coarsegrain", "grouping factors restoring STS form");
  coarsegrain->add_option("model", model_src)->required();
  coarsegrain->add_option("--k-target", k_target)->required();
  coarsegrain->add_option("--probe-cap", probe_cap);

  auto* normalform = app.add_subcommand("normalform", "one-dimensional normal form and script");
  normalform->add_option("model", model_src)->required();
  normalform->add_option("--size", size_s)->required();

  auto* catalog_cmd = app.add_subcommand("catalog", "list built-in models");
  (void)catalog_cmd;

  auto* check = app.add_subcommand("check", "regression against documented results");
  check->add_option("model", model_src);
  check->add_flag("--all", check_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  Report rep;
  int code = 0;
  try {
    if (*analyze) {
      Model m = load_model(model_src);
      cmd_analyze(rep, m, parse_size(size_s, m.dim));
    } else if (*sweep) {
      Model m = load_model(model_src);
      std::vector<std::array<int64_t, 2>> sizes;
      std::stringstream ss(sizes_s);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) sizes.push_back(parse_size(tok, m.dim));
      cmd_sweep(rep, m, sizes);
    } else if (*classify) {
      Model m = load_model(model_src);
      cmd_classify(rep, m, parse_size(size_s, m.dim));
    } else if (*entropy_cmd) {
      Model m = load_model(model_src);
      cmd_entropy(rep, m, parse_size(size_s, m.dim), region_s, complete);
    } else if (*mi) {
      Model m = load_model(model_src);
      cmd_mi(rep, m, parse_size(size_s, m.dim), region_a, region_b);
    } else if (*stopo) {
      Model m = load_model(model_src);
      cmd_stopo(rep, m, parse_size(size_s, m.dim), inner_s, width, origin_s);
    } else if (*distance) {
      Model m = load_model(model_src);
      cmd_distance(rep, m, parse_size(size_s, m.dim), max_weight);
    } else if (*coarsegrain) {
      cmd_coarsegrain(rep, load_model(model_src), k_target, probe_cap);
    } else if (*normalform) {
      Model m = load_model(model_src);
      cmd_normalform(rep, m, parse_size(size_s, m.dim));
    } else if (*catalog_cmd) {
      cmd_catalog(rep);
    } else if (*check) {
      size_t failures = 0;
      if (check_all || model_src.empty()) {
        for (const auto& e : catalog()) failures += check_entry(rep, e);
      } else {
        failures += check_entry(rep, catalog_get(model_src));
      }
      rep.add("verdict", "failures", failures);
      if (failures > 0) code = 1;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  out << (json ? rep.json() : rep.text());
  return code;
}

}  // namespace sts::cli
