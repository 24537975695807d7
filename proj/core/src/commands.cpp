#include "specdec/commands.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "specdec/catalog.hpp"
#include "specdec/decimation.hpp"
#include "specdec/eigensolve.hpp"
#include "specdec/gaps.hpp"
#include "specdec/julia.hpp"
#include "specdec/spectrum.hpp"
#include "specdec/structure_io.hpp"

namespace specdec {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

ordered_json poly_json(const Polynomial& p) {
  ordered_json arr = ordered_json::array();
  if (p.is_zero()) {
    arr.push_back("0");
    return arr;
  }
  for (const Rational& c : p.coeffs()) arr.push_back(rational_to_string(c));
  return arr;
}

ordered_json enclosure_json(PolyRoot r, int precision) {
  Rational width(1);
  for (int i = 0; i < precision + 2; ++i) width /= 10;
  r.refine_below(width);
  ordered_json j;
  j["value"] = r.to_double();
  j["enclosure"] = {rational_to_string(r.enclosure().lo), rational_to_string(r.enclosure().hi)};
  if (r.is_rational()) j["exact"] = rational_to_string(r.rational_value());
  return j;
}

struct Pipeline {
  CatalogEntry entry;
  DecimationData dec;
  DimensionReport dims;
};

Pipeline load_pipeline(const AnalysisConfig& cfg) {
  Pipeline p{resolve_fractal(cfg.fractal), {}, {}};
  p.dec = analyze_decimation(p.entry.structure);
  p.dims = dimension_report(p.dec);
  return p;
}

std::string method_name(GapMethod m) {
  switch (m) {
    case GapMethod::JULIA_EQUIVALENCE: return "JULIA_EQUIVALENCE";
    case GapMethod::RATIO_ESTIMATE: return "RATIO_ESTIMATE";
    case GapMethod::CRIT_INTERVALS: return "CRIT_INTERVALS";
  }
  return "?";
}

ordered_json crit_json(const DecimationData& dec, const CritHypotheses& hyp, int k_max,
                       const std::vector<SpectrumRecord>& records, int precision) {
  ordered_json j;
  j["b"] = hyp.b.to_double();
  j["containment_ok"] = hyp.containment_ok;
  j["j_split"] = hyp.j_split;
  if (hyp.j_split >= 0) {
    j["M"] = hyp.big_m.to_double();
    j["m"] = hyp.small_m.to_double();
  }
  j["separated"] = hyp.separated;
  j["phi0_convex"] = hyp.phi0_convex;
  j["phi0_contracting"] = hyp.phi0_contracting;
  j["hypotheses_ok"] = hyp.all_ok();
  if (hyp.all_ok()) {
    j["z_star"] = hyp.z_star.to_double();
    j["n_shift"] = hyp.n_shift;
    GapReport rep = crit_gap_intervals(dec, hyp, k_max, records);
    j["stray_bound"] = rep.stray_bound;
    ordered_json intervals = ordered_json::array();
    for (const GapInterval& gi : rep.intervals) {
      ordered_json ji;
      ji["k"] = gi.k;
      ji["a"] = ordered_json::parse(fmt_double(gi.a, precision));
      ji["b"] = ordered_json::parse(fmt_double(gi.b, precision));
      ji["stray_count"] = gi.stray_count;
      intervals.push_back(ji);
    }
    j["intervals"] = intervals;
    j["has_gaps"] = rep.has_gaps;
  } else {
    j["has_gaps"] = nullptr;
  }
  return j;
}

CommandResult finish_json(const ordered_json& j, int exit_code = 0) {
  CommandResult res;
  res.output = j.dump(2) + "\n";
  res.exit_code = exit_code;
  return res;
}

}  // namespace

CommandResult cmd_analyze(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  const FractalStructure& s = p.entry.structure;
  ordered_json j;
  j["fractal"] = s.name;

  {
    ordered_json js;
    js["num_cells"] = s.num_cells;
    js["boundary_size"] = s.boundary_size;
    js["v1_size"] = s.v1_size;
    js["pcf"] = p.dec.pcf;
    js["doubly_transitive"] = p.dec.symmetry.doubly_transitive;
    js["boundary_actions"] = p.dec.symmetry.boundary_actions.size();
    js["automorphisms"] = p.dec.symmetry.automorphism_count;
    j["structure"] = js;
  }

  {
    ordered_json jd;
    jd["r_num"] = poly_json(p.dec.map.num());
    jd["r_den"] = poly_json(p.dec.map.den());
    jd["phi_num"] = poly_json(p.dec.phi.num());
    jd["phi_den"] = poly_json(p.dec.phi.den());
    jd["c_delta"] = rational_to_string(p.dec.c_delta);
    jd["map_degree"] = p.dec.map_degree;
    ordered_json ex = ordered_json::array();
    for (const auto& e : p.dec.exceptional) {
      ordered_json je = enclosure_json(e.root, cfg.precision);
      je["multiplicity"] = e.multiplicity;
      ex.push_back(je);
    }
    jd["exceptional"] = ex;
    PhiR oracle = interpolation_oracle(s);
    jd["interpolation_oracle_agrees"] = oracle.map == p.dec.map && oracle.phi == p.dec.phi;
    j["decimation"] = jd;
  }

  {
    ordered_json jm;
    jm["n_cells"] = p.dims.n_cells;
    jm["c_delta"] = rational_to_string(p.dims.c_delta);
    jm["c"] = rational_to_string(p.dims.c);
    jm["r"] = rational_to_string(p.dims.r);
    jm["d_r"] = p.dims.d_r;
    jm["d_s"] = p.dims.d_s;
    jm["regular"] = p.dims.regular;
    j["dimensions"] = jm;
  }

  {
    JuliaHull hull = julia_hull(p.dec);
    JuliaClassification cls = classify(p.dec, hull);
    ordered_json jj;
    jj["a"] = enclosure_json(hull.a, cfg.precision);
    jj["a_is_root_of_R"] = hull.a_is_root_of_map;
    jj["indifferent_flagged"] = hull.indifferent_flagged;
    jj["kind"] = cls.kind == JuliaKind::INTERVAL ? "INTERVAL" : "TOTALLY_DISCONNECTED";
    if (cls.witness_gap) {
      jj["witness_gap"] = {enclosure_json(cls.witness_gap->first, cfg.precision),
                           enclosure_json(cls.witness_gap->second, cfg.precision)};
    }
    jj["real_degree_warning"] = cls.real_degree_warning;
    j["julia"] = jj;

    ordered_json jg;
    if (p.dims.regular) {
      GapReport via_julia = gaps_via_julia(cls, p.dims);
      jg["julia_method"] = via_julia.has_gaps;
      CritHypotheses hyp = check_crit_hypotheses(p.dec, cfg.b_override);
      std::vector<SpectrumRecord> records;
      if (hyp.all_ok()) {
        SpectrumQuery query;
        query.lambda_max = cfg.lambda_max;
        query.max_level = cfg.max_level;
        records = spectrum_up_to(s, p.dec, query);
      }
      jg["crit"] = crit_json(p.dec, hyp, cfg.k_max, records, cfg.precision);
      ordered_json jc = ordered_json::array();
      for (const CorollaryVerdict& v : corollary_checks(p.dec)) {
        ordered_json jv;
        jv["id"] = v.id;
        jv["name"] = v.name;
        jv["hypotheses_hold"] = v.hypotheses_hold;
        jv["implies_theorem"] = v.implies_theorem;
        jc.push_back(jv);
      }
      jg["corollaries"] = jc;
      jg["verdict"] = via_julia.has_gaps;
    } else {
      jg["julia_method"] = nullptr;
      jg["note"] = "structure is not regular; fractal-spectrum claims withheld";
    }
    j["gaps"] = jg;
  }

  {
    const ExpectedBlock& exp = p.entry.expected;
    if (exp.r_num || exp.c_delta || !exp.exceptional.empty()) {
      ordered_json jr;
      bool ok = true;
      if (exp.r_num) {
        bool match = *exp.r_num * (Rational(1) / exp.r_num->lead()) ==
                             p.dec.map.num() * (Rational(1) / p.dec.map.num().lead()) &&
                     (!exp.r_den || p.dec.map == RationalFunction(*exp.r_num, *exp.r_den));
        jr["r_matches"] = match;
        ok = ok && match;
      }
      if (exp.c_delta) {
        bool match = *exp.c_delta == p.dec.c_delta;
        jr["c_delta_matches"] = match;
        ok = ok && match;
      }
      if (!exp.exceptional.empty()) {
        bool match = exp.exceptional.size() == p.dec.exceptional.size();
        if (match) {
          for (size_t i = 0; i < exp.exceptional.size(); ++i) {
            match = match &&
                    std::abs(exp.exceptional[i] - p.dec.exceptional[i].root.to_double()) < 1e-8;
          }
        }
        jr["exceptional_matches"] = match;
        ok = ok && match;
      }
      jr["all"] = ok;
      j["regression"] = jr;
    }
  }

  return finish_json(j, p.dims.regular ? 0 : 2);
}

CommandResult cmd_spectrum(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  SpectrumQuery query;
  query.lambda_max = cfg.lambda_max;
  query.n0_override = cfg.n0_override;
  query.dirichlet = cfg.dirichlet;
  query.max_level = cfg.max_level;
  std::vector<SpectrumRecord> records = spectrum_up_to(p.entry.structure, p.dec, query);

  if (cfg.counting) {
    std::ostringstream os;
    os << "x,count,weyl_ratio\n";
    for (const CountingPoint& pt : counting_function(records, p.dims.d_s)) {
      os << fmt_double(pt.x, cfg.precision) << "," << pt.count << ","
         << fmt_double(pt.weyl_ratio, cfg.precision) << "\n";
    }
    return CommandResult{os.str(), 0};
  }

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "lambda,multiplicity,n0,word\n";
    for (const SpectrumRecord& r : records) {
      os << fmt_double(r.lambda, cfg.precision) << "," << r.multiplicity << "," << r.n0 << ",";
      for (size_t i = 0; i < r.word.size(); ++i) os << (i ? "." : "") << r.word[i];
      os << "\n";
    }
    return CommandResult{os.str(), 0};
  }

  ordered_json j;
  j["fractal"] = p.entry.structure.name;
  j["lambda_max"] = cfg.lambda_max;
  j["dirichlet"] = cfg.dirichlet;
  ordered_json arr = ordered_json::array();
  for (const SpectrumRecord& r : records) {
    ordered_json jr;
    jr["lambda"] = ordered_json::parse(fmt_double(r.lambda, cfg.precision));
    jr["multiplicity"] = r.multiplicity;
    jr["n0"] = r.n0;
    jr["seed"] = r.seed;
    arr.push_back(jr);
  }
  j["eigenvalues"] = arr;
  return finish_json(j);
}

CommandResult cmd_julia(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  JuliaHull hull = julia_hull(p.dec);
  JuliaClassification cls = classify(p.dec, hull);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "depth,lo,hi\n";
    Rational width(1);
    for (int i = 0; i < cfg.precision + 2; ++i) width /= 10;
    IntervalCover cover = initial_cover(hull);
    for (int d = 0; d <= cfg.depth; ++d) {
      if (d > 0) cover = cover_step(hull, cover);
      for (const CoverInterval& iv : cover.intervals) {
        AlgebraicReal lo = iv.lo, hi = iv.hi;
        lo.refine_below(width);
        hi.refine_below(width);
        os << d << "," << fmt_double(lo.to_double(), cfg.precision) << ","
           << fmt_double(hi.to_double(), cfg.precision) << "\n";
      }
    }
    return CommandResult{os.str(), 0};
  }

  ordered_json j;
  j["fractal"] = p.entry.structure.name;
  j["a"] = enclosure_json(hull.a, cfg.precision);
  j["a_is_root_of_R"] = hull.a_is_root_of_map;
  j["indifferent_flagged"] = hull.indifferent_flagged;
  j["kind"] = cls.kind == JuliaKind::INTERVAL ? "INTERVAL" : "TOTALLY_DISCONNECTED";
  if (cls.witness_gap) {
    j["witness_gap"] = {enclosure_json(cls.witness_gap->first, cfg.precision),
                        enclosure_json(cls.witness_gap->second, cfg.precision)};
  }
  j["real_degree_warning"] = cls.real_degree_warning;
  ordered_json depths = ordered_json::array();
  IntervalCover cover = initial_cover(hull);
  for (int d = 0; d <= cfg.depth; ++d) {
    if (d > 0) cover = cover_step(hull, cover);
    ordered_json jd;
    jd["depth"] = d;
    jd["intervals"] = cover.intervals.size();
    jd["max_length"] = max_interval_length(cover, Rational(1, 1 << 24));
    depths.push_back(jd);
  }
  j["covers"] = depths;
  return finish_json(j);
}

CommandResult cmd_gaps(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  ordered_json j;
  j["fractal"] = p.entry.structure.name;
  j["method"] = cfg.method;
  bool want_julia = cfg.method == "julia" || cfg.method == "all";
  bool want_crit = cfg.method == "crit" || cfg.method == "all";
  bool want_ratio = cfg.method == "ratio" || cfg.method == "all";
  if (!want_julia && !want_crit && !want_ratio) {
    throw ConfigError("unknown gaps method '" + cfg.method + "'");
  }
  if (!p.dims.regular) {
    j["regular"] = false;
    j["note"] = "structure is not regular; gap theorems inapplicable";
    return finish_json(j, 2);
  }
  std::optional<bool> verdict;
  if (want_julia) {
    JuliaHull hull = julia_hull(p.dec);
    GapReport rep = gaps_via_julia(classify(p.dec, hull), p.dims);
    j["julia"] = {{"method", method_name(rep.method)}, {"has_gaps", rep.has_gaps}};
    verdict = rep.has_gaps;
  }
  std::vector<SpectrumRecord> records;
  if (want_crit || want_ratio) {
    SpectrumQuery query;
    query.lambda_max = cfg.lambda_max;
    query.max_level = cfg.max_level;
    records = spectrum_up_to(p.entry.structure, p.dec, query);
  }
  if (want_crit) {
    CritHypotheses hyp = check_crit_hypotheses(p.dec, cfg.b_override);
    j["crit"] = crit_json(p.dec, hyp, cfg.k_max, records, cfg.precision);
    ordered_json jc = ordered_json::array();
    for (const CorollaryVerdict& v : corollary_checks(p.dec)) {
      jc.push_back({{"id", v.id},
                    {"name", v.name},
                    {"hypotheses_hold", v.hypotheses_hold},
                    {"implies_theorem", v.implies_theorem}});
    }
    j["corollaries"] = jc;
  }
  if (want_ratio) {
    try {
      double est = ratio_estimate(records);
      j["ratio"] = {{"method", "RATIO_ESTIMATE"},
                    {"limsup_estimate", ordered_json::parse(fmt_double(est, cfg.precision))},
                    {"finite_sample", true}};
    } catch (const Error& e) {
      j["ratio"] = {{"error", e.what()}};
    }
  }
  if (verdict) j["verdict"] = *verdict;
  return finish_json(j);
}

CommandResult cmd_oracle(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  std::vector<LevelGraph> chain = build_chain(p.entry.structure, cfg.level);
  LevelSpectrumResult spec = level_spectrum(chain, p.dec, cfg.level, cfg.dirichlet);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "level,value,multiplicity,exact,word\n";
    for (const SpectrumEntry& e : spec.entries) {
      os << spec.level << "," << fmt_double(e.value, cfg.precision) << "," << e.multiplicity
         << "," << (e.exact ? rational_to_string(*e.exact) : "") << "," << e.provenance << "\n";
    }
    return CommandResult{os.str(), 0};
  }

  ordered_json j;
  j["fractal"] = p.entry.structure.name;
  j["level"] = spec.level;
  j["dirichlet"] = spec.dirichlet;
  j["vertices"] = chain[cfg.level].num_vertices;
  ordered_json arr = ordered_json::array();
  int total = 0;
  for (const SpectrumEntry& e : spec.entries) {
    ordered_json je;
    je["value"] = ordered_json::parse(fmt_double(e.value, cfg.precision));
    je["multiplicity"] = e.multiplicity;
    if (e.exact) je["exact"] = rational_to_string(*e.exact);
    je["word"] = e.provenance;
    arr.push_back(je);
    total += e.multiplicity;
  }
  j["eigenvalues"] = arr;
  j["total_multiplicity"] = total;
  return finish_json(j);
}

CommandResult cmd_matrix(const AnalysisConfig& cfg) {
  Pipeline p = load_pipeline(cfg);
  std::vector<LevelGraph> chain = build_chain(p.entry.structure, cfg.level);
  if (chain[cfg.level].num_vertices > 2000) {
    throw Error("matrix dump capped at 2000 vertices; level " + std::to_string(cfg.level) +
                " has " + std::to_string(chain[cfg.level].num_vertices));
  }
  LaplacianMatrix m = laplacian_matrix(chain, cfg.level);
  std::ostringstream os;
  for (size_t r = 0; r < m.entries.rows(); ++r) {
    for (size_t c = 0; c < m.entries.cols(); ++c) {
      if (c) os << ",";
      os << rational_to_string(m.entries.at(r, c));
    }
    os << "\n";
  }
  return CommandResult{os.str(), 0};
}

int run_command(const std::string& name, const AnalysisConfig& cfg) {
  try {
    CommandResult res;
    if (name == "analyze") res = cmd_analyze(cfg);
    else if (name == "spectrum") res = cmd_spectrum(cfg);
    else if (name == "julia") res = cmd_julia(cfg);
    else if (name == "gaps") res = cmd_gaps(cfg);
    else if (name == "oracle") res = cmd_oracle(cfg);
    else if (name == "matrix") res = cmd_matrix(cfg);
    else throw ConfigError("unknown command '" + name + "'");

    if (cfg.out.empty()) {
      std::cout << res.output;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw ConfigError("cannot write output file: " + cfg.out);
      f << res.output;
    }
    return res.exit_code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace specdec
