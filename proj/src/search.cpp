#include "toriscope/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "toriscope/criteria.hpp"
#include "toriscope/random.hpp"
#include "toriscope/toric_ideal.hpp"
#include "toriscope/transforms.hpp"

namespace toriscope {

namespace {

Json witness_json(const Witness& w) {
  Json j;
  j["tag"] = w.tag;
  j["points"] = to_json(w.points);
  return j;
}

const Witness* first_failure(const std::vector<Witness>& ws) {
  for (const auto& w : ws)
    if (!w.satisfied) return &w;
  return nullptr;
}

Json components_json(const DivisorComplex& dc) {
  Json comps = Json::array();
  for (const auto& c : dc.components) comps.push_back(to_json(c));
  return comps;
}

}  // namespace

const std::vector<std::string>& verdict_names() {
  static const std::vector<std::string> names{"smooth",         "very_ample",         "normal",
                                              "scheme_degree2", "abundant",           "superconnected",
                                              "strongly_connected", "ehrhart_positive", "robust",
                                              "needs_degree3"};
  return names;
}

const Verdict& AnalysisReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw ContractViolation("no verdict named " + name);
}

Json AnalysisReport::to_json() const {
  Json out;
  out["polytope"] = toriscope::to_json(polytope);
  out["provenance"] = provenance;
  Json vs;
  for (const auto& v : verdicts) {
    Json j;
    j["value"] = v.value ? Json(*v.value) : Json(nullptr);
    if (!v.witness.is_null()) j["witness"] = v.witness;
    if (!v.note.empty()) j["note"] = v.note;
    vs[v.name] = std::move(j);
  }
  out["verdicts"] = std::move(vs);
  Json ds = Json::array();
  for (const auto& d : discoveries) {
    Json j;
    j["class"] = "DISCOVERY";
    j["kind"] = d.kind;
    j["known_fixture"] = d.known_fixture;
    ds.push_back(std::move(j));
  }
  out["discoveries"] = std::move(ds);
  if (!timings.is_null()) out["timings"] = timings;
  return out;
}

LatticePolytope known_non_normal_fixture() {
  return LatticePolytope::from_points({LatVec{0, 0, 0}, LatVec{0, 0, 1}, LatVec{0, 1, 2}, LatVec{0, 1, 3},
                                       LatVec{1, 1, 1}, LatVec{1, 1, 2}, LatVec{1, 0, 3}, LatVec{1, 0, 4}});
}

bool is_known_fixture(const LatticePolytope& p) {
  static const LatticePolytope fixture = known_non_normal_fixture();
  return p == fixture;
}

AnalysisReport analyze(const LatticePolytope& p, const AnalyzeOptions& options, Json provenance) {
  AnalysisReport r;
  r.polytope = p;
  r.provenance = std::move(provenance);
  if (options.timings) r.timings = Json::object();

  auto timed = [&](const std::string& name, const std::function<Verdict()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v = f();
    v.name = name;
    if (options.timings)
      r.timings[name] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.verdicts.push_back(std::move(v));
    return r.verdicts.back().value;
  };
  auto predicate = [](const PredicateResult& res) {
    Verdict v;
    v.value = res.value;
    if (!res.value) {
      Json w;
      if (res.vertex) w["vertex"] = to_json(*res.vertex);
      if (res.witness) w["vector"] = to_json(*res.witness);
      if (!res.detail.empty()) w["detail"] = res.detail;
      v.witness = std::move(w);
    }
    return v;
  };

  const bool smooth = *timed("smooth", [&] { return predicate(is_smooth(p)); });
  const bool very_ample = *timed("very_ample", [&] { return predicate(is_very_ample(p)); });
  const bool normal = *timed("normal", [&] { return predicate(is_normal(p, options.hilbert)); });
  const bool scheme2 = *timed("scheme_degree2", [&] {
    auto rep = scheme_degree2(p);
    Verdict v;
    v.value = rep.verdict;
    if (auto w = first_failure(rep.witnesses)) v.witness = witness_json(*w);
    for (const auto& c : rep.caveats) v.note += (v.note.empty() ? "" : "; ") + c;
    return v;
  });
  timed("abundant", [&] {
    auto rep = abundant_degree2(p);
    Verdict v;
    v.value = rep.verdict;
    if (auto w = first_failure(rep.witnesses)) {
      v.witness = witness_json(*w);
      v.witness["violations"] = rep.witnesses.size();
    }
    return v;
  });
  std::optional<ConnectivityReport> conn;
  for (const char* name : {"superconnected", "strongly_connected"}) {
    timed(name, [&] {
      Verdict v;
      if (smooth && !conn) conn = connectivity(p);
      if (!conn) {
        v.note = "defined for smooth polytopes";
        return v;
      }
      const bool super = std::string(name) == "superconnected";
      v.value = super ? conn->superconnected : conn->strongly_connected;
      for (const auto& w : conn->witnesses)
        if (w.tag == name) {
          v.witness = Json::object();
          if (super) {
            v.witness["vertex"] = to_json(w.points[0]);
            v.witness["unreachable"] = to_json(w.points[1]);
          } else {
            v.witness["unreachable"] = to_json(w.points[0]);
          }
        }
      return v;
    });
  }
  timed("ehrhart_positive", [&] {
    auto e = ehrhart_positive(p);
    Verdict v;
    v.value = e.positive;
    Json coeffs = Json::array();
    for (const auto& c : e.coefficients) coeffs.push_back(to_json(c));
    v.witness["coefficients"] = std::move(coeffs);
    return v;
  });
  timed("robust", [&] {
    Verdict v;
    if (!smooth) {
      v.note = "defined for smooth polytopes";
      return v;
    }
    auto rob = is_robust(p);
    v.value = rob.robust;
    if (rob.face) v.witness["chiselable_face"] = face_json(p, *rob.face);
    return v;
  });
  auto needs3 = timed("needs_degree3", [&] {
    Verdict v;
    if (!normal) {
      v.note = "defined for normal polytopes";
      return v;
    }
    if (p.lattice_points().size() > options.limit_points) {
      auto found = random_degree3_probe(p, derive_seed(options.seed, "analyze-probe"), options.probe_trials);
      v.witness["method"] = "probe";
      v.witness["trials"] = options.probe_trials;
      if (found.empty()) {
        v.note = "lattice point limit exceeded; probe found no disconnected divisor complex";
        return v;
      }
      v.value = true;
      v.witness["multidegree"] = to_json(found.front());
      v.witness["components"] = components_json(squarefree_divisor_complex(p, found.front()));
      return v;
    }
    auto res = needs_degree3_generators(p);
    v.value = res.needs_degree3;
    v.witness["method"] = "groebner";
    v.witness["h_vector"] = to_json(res.h_vector);
    v.witness["hstar"] = to_json(res.ehrhart_hstar);
    if (res.multidegree) {
      v.witness["multidegree"] = to_json(*res.multidegree);
      auto dc = squarefree_divisor_complex(p, *res.multidegree);
      v.witness["components"] = components_json(dc);
    }
    return v;
  });

  const bool known = is_known_fixture(p);
  auto flag = [&](const std::string& kind) { r.discoveries.push_back({kind, known}); };
  if (smooth && !normal) flag("smooth_non_normal");
  if (smooth && normal && needs3 && *needs3) flag("smooth_normal_needs_degree3");
  if (smooth && !scheme2) flag("smooth_scheme_degree2_false");
  if (very_ample && !normal) flag("very_ample_non_normal");
  return r;
}

std::vector<std::string> SearchConfig::pipeline() const {
  std::vector<std::string> stages{"gen-fan", "support", "chisel_reduce", "analyze"};
  if (shrink) stages.push_back("shrink");
  return stages;
}

Json SearchConfig::to_json() const {
  Json j;
  j["seed"] = seed;
  j["dim"] = dim;
  j["max_extra_rays"] = max_extra_rays;
  j["max_cones"] = max_cones;
  j["num_points"] = num_points;
  j["coord_bound"] = coord_bound;
  j["iterations"] = iterations;
  j["start_iteration"] = start_iteration;
  j["mode"] = mode;
  j["pipeline"] = pipeline();
  j["limits"] = {{"limit_points", limit_points}, {"max_candidates", max_candidates}, {"max_seconds", max_seconds}};
  j["inject_fixture"] = inject_fixture;
  return j;
}

SupportMode resolve_mode(const std::string& mode, const Fan& fan) {
  if (mode == "hilbert") return SupportMode::hilbert_basis;
  if (mode == "extreme") return SupportMode::extreme_rays;
  if (mode == "auto")
    return fan.rays().size() > fan.dim() + 10 ? SupportMode::extreme_rays : SupportMode::hilbert_basis;
  throw ContractViolation("unknown support mode '" + mode + "' (hilbert, extreme, auto)");
}

int run_search(const SearchConfig& config, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  auto emit = [&](const Json& j) { out << dump_line(j) << std::flush; };
  Json head;
  head["type"] = "config";
  head["config"] = config.to_json();
  emit(head);

  HilbertOptions hilbert;
  hilbert.max_candidates = config.max_candidates;
  AnalyzeOptions aopts;
  aopts.limit_points = config.limit_points;
  aopts.timings = config.timings;
  aopts.hilbert = hilbert;

  std::size_t analyzed = 0, discoveries = 0, capped = 0;
  auto summary = [&](const std::string& status, std::optional<std::size_t> resume) {
    Json s;
    s["type"] = "summary";
    s["status"] = status;
    s["analyzed"] = analyzed;
    s["discoveries"] = discoveries;
    s["capped_iterations"] = capped;
    if (resume) s["resume"] = {{"seed", config.seed}, {"iteration", *resume}};
    emit(s);
  };
  auto report_discovery = [&](const AnalysisReport& rep, std::size_t iteration, const Json& extra) {
    Json d;
    d["type"] = "discovery";
    d["iteration"] = iteration;
    d["report"] = rep.to_json();
    if (!extra.is_null()) d["bundle"] = extra;
    emit(d);
    ++discoveries;
  };

  std::set<std::vector<LatVec>> seen;
  const std::size_t end = config.start_iteration + config.iterations;
  for (std::size_t it = config.start_iteration; it < end; ++it) {
    if (config.max_seconds > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > config.max_seconds) {
      summary("time_limit", it);
      return exit_caps;
    }
    Json prov;
    prov["seed"] = config.seed;
    prov["iteration"] = it;
    prov["pipeline"] = config.pipeline();

    if (config.inject_fixture && it == config.start_iteration) {
      Json fprov = prov;
      fprov["source"] = "injected fixture";
      aopts.seed = derive_seed(config.seed, "analyze", it);
      auto rep = analyze(known_non_normal_fixture(), aopts, fprov);
      ++analyzed;
      Json line;
      line["type"] = "analysis";
      line["iteration"] = it;
      line["report"] = rep.to_json();
      emit(line);
      if (!rep.discoveries.empty()) {
        report_discovery(rep, it, nullptr);
        summary("discovery", it);
        return exit_discovery;
      }
    }

    Json rec;
    rec["type"] = "iteration";
    rec["iteration"] = it;
    Fan fan;
    SupportResult support;
    try {
      RandomFanOptions fo;
      fo.seed = derive_seed(config.seed, "gen-fan", it);
      fo.dim = config.dim;
      fo.num_points = config.num_points;
      fo.coord_bound = config.coord_bound;
      Fan raw = random_complete_fan(fo);
      fan = desingularize(raw, derive_seed(config.seed, "desingularize", it), {config.max_extra_rays, config.max_cones},
                          hilbert);
      rec["fan"] = to_json(fan);
      SupportMode mode = resolve_mode(config.mode, fan);
      rec["mode"] = to_string(mode);
      support = support_polytopes(fan, mode, hilbert);
    } catch (const LimitsExceeded& e) {
      ++capped;
      rec["status"] = "caps_exceeded";
      rec["detail"] = e.what();
      emit(rec);
      continue;
    }
    rec["status"] = to_string(support.verdict);
    rec["minimality_guaranteed"] = support.minimality_guaranteed;
    rec["support_polytopes"] = support.polytopes.size();
    emit(rec);

    for (std::size_t k = 0; k < support.polytopes.size(); ++k) {
      const auto& poly = support.polytopes[k];
      auto reduced = chisel_reduce(poly, derive_seed(config.seed, "chisel_reduce", it * 1000 + k));
      const auto& target = reduced.result;
      Json aprov = prov;
      aprov["support_index"] = k;
      aprov["chisel_steps"] = reduced.transcript.size();
      if (!seen.insert(target.vertices()).second) continue;
      aopts.seed = derive_seed(config.seed, "analyze", it * 1000 + k);
      auto rep = analyze(target, aopts, aprov);
      ++analyzed;
      Json line;
      line["type"] = "analysis";
      line["iteration"] = it;
      line["report"] = rep.to_json();
      emit(line);
      if (!rep.discoveries.empty()) {
        Json bundle;
        bundle["fan"] = fan.to_text();
        bundle["support_polytope"] = poly.to_text();
        bundle["chisel"] = to_json(poly, reduced);
        report_discovery(rep, it, bundle);
        summary("discovery", it + 1);
        return exit_discovery;
      }
      if (config.shrink && rep.verdict("normal").value.value_or(false)) {
        auto sh = shrink(target, derive_seed(config.seed, "shrink", it * 1000 + k));
        Json sline;
        sline["type"] = "shrink";
        sline["iteration"] = it;
        sline["steps"] = sh.transcript.size() - 1;
        sline["non_normal"] = sh.non_normal.size();
        emit(sline);
        for (const auto& f : sh.non_normal) {
          if (!f.simple && !f.smooth) continue;
          Json sprov = aprov;
          sprov["source"] = "shrink";
          auto frep = analyze(f.polytope, aopts, sprov);
          ++analyzed;
          Json bundle;
          bundle["shrink"] = to_json(sh);
          report_discovery(frep, it, bundle);
          summary("discovery", it + 1);
          return exit_discovery;
        }
      }
    }
  }
  summary("completed", std::nullopt);
  return exit_ok;
}

}  // namespace toriscope
