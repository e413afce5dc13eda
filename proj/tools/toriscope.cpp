#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "toriscope/errors.hpp"
#include "toriscope/fan.hpp"
#include "toriscope/io.hpp"
#include "toriscope/random.hpp"
#include "toriscope/report.hpp"
#include "toriscope/search.hpp"
#include "toriscope/transforms.hpp"

using namespace toriscope;

namespace {

struct Output {
  std::string path;
  void write(const std::string& text) const {
    if (path.empty())
      std::cout << text << std::flush;
    else
      write_text_file(path, text);
  }
};

LatVec parse_point(const std::string& s, std::size_t dim) {
  std::istringstream in(s);
  LatVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string tok;
    if (!(in >> tok)) throw Error("point '" + s + "' needs " + std::to_string(dim) + " coordinates");
    if (v[i].set_str(tok, 10) != 0) throw Error("bad coordinate '" + tok + "'");
  }
  std::string extra;
  if (in >> extra) throw Error("point '" + s + "' has too many coordinates");
  return v;
}

int discovery_code(const AnalysisReport& r) { return r.discoveries.empty() ? exit_ok : exit_discovery; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search tools for smooth lattice polytopes, their normal fans and toric ideals"};
  app.require_subcommand(1);

  SearchConfig cfg;
  std::string out_path;
  std::string input;
  std::vector<std::string> forced, face;
  bool timings = false;

  auto* gen = app.add_subcommand("gen-fan", "random complete unimodular fan");
  gen->add_option("--seed", cfg.seed);
  gen->add_option("--dim", cfg.dim)->check(CLI::Range(2, 6));
  gen->add_option("--num-points", cfg.num_points);
  gen->add_option("--coord-bound", cfg.coord_bound)->check(CLI::PositiveNumber);
  gen->add_option("--max-extra-rays", cfg.max_extra_rays);
  gen->add_option("--max-cones", cfg.max_cones);
  gen->add_option("--ray", forced, "ray always included, e.g. \"1 0 0\" (repeatable)");
  gen->add_option("--out", out_path, "fan file (default stdout)");

  auto* sup = app.add_subcommand("support", "support polytopes of a fan file");
  sup->add_option("fan", input)->required();
  sup->add_option("--mode", cfg.mode, "hilbert, extreme or auto")->check(CLI::IsMember({"hilbert", "extreme", "auto"}));
  sup->add_option("--out", out_path, "directory for polytope_<k>.txt files");

  auto* ana = app.add_subcommand("analyze", "verdict report for a polytope file");
  ana->add_option("polytope", input)->required();
  ana->add_option("--limit-points", cfg.limit_points, "largest point count for the exact degree-3 test");
  ana->add_option("--seed", cfg.seed);
  ana->add_option("--out", out_path);
  ana->add_flag("--timings", timings);

  auto* chi = app.add_subcommand("chisel", "chisel at a face, or chisel-reduce to a robust polytope");
  chi->add_option("polytope", input)->required();
  chi->add_option("--face", face, "vertex of the face, e.g. \"0 2\" (repeatable)");
  chi->add_option("--seed", cfg.seed);
  chi->add_option("--out", out_path);

  auto* shr = app.add_subcommand("shrink", "remove vertices while very ample");
  shr->add_option("polytope", input)->required();
  shr->add_option("--seed", cfg.seed);
  shr->add_option("--out", out_path);

  auto* sea = app.add_subcommand("search", "gen-fan, support, chisel_reduce, analyze loop");
  sea->add_option("--seed", cfg.seed);
  sea->add_option("--dim", cfg.dim)->check(CLI::Range(2, 6));
  sea->add_option("--iterations", cfg.iterations);
  sea->add_option("--start-iteration", cfg.start_iteration, "resume point");
  sea->add_option("--num-points", cfg.num_points);
  sea->add_option("--coord-bound", cfg.coord_bound)->check(CLI::PositiveNumber);
  sea->add_option("--max-extra-rays", cfg.max_extra_rays);
  sea->add_option("--max-cones", cfg.max_cones);
  sea->add_option("--mode", cfg.mode)->check(CLI::IsMember({"hilbert", "extreme", "auto"}));
  sea->add_option("--limit-points", cfg.limit_points);
  sea->add_option("--max-candidates", cfg.max_candidates);
  sea->add_option("--max-seconds", cfg.max_seconds);
  sea->add_flag("--shrink", cfg.shrink);
  sea->add_flag("--inject-fixture", cfg.inject_fixture);
  sea->add_flag("--timings", timings);
  sea->add_option("--out", out_path, "report stream (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? exit_ok : exit_parse;
  }
  cfg.timings = timings;
  Output out{out_path};

  try {
    if (*gen) {
      RandomFanOptions fo;
      fo.seed = derive_seed(cfg.seed, "gen-fan");
      fo.dim = cfg.dim;
      fo.num_points = cfg.num_points;
      fo.coord_bound = cfg.coord_bound;
      for (const auto& r : forced) fo.forced_points.push_back(parse_point(r, cfg.dim));
      Fan raw = random_complete_fan(fo);
      Fan fan;
      try {
        fan = desingularize(raw, derive_seed(cfg.seed, "desingularize"), {cfg.max_extra_rays, cfg.max_cones});
      } catch (const LimitsExceeded& e) {
        std::cerr << "desingularization stopped: " << e.what() << "\npartial input fan:\n" << raw.to_text();
        return exit_caps;
      }
      if (!fan.complete() || !fan.unimodular()) throw std::logic_error("generated fan is not complete and unimodular");
      out.write(fan.to_text());
      return exit_ok;
    }
    if (*sup) {
      Fan fan = parse_fan(read_text_file(input));
      SupportResult res;
      try {
        res = support_polytopes(fan, resolve_mode(cfg.mode, fan));
      } catch (const LimitsExceeded& e) {
        std::cerr << "support computation aborted: " << e.what() << "\n";
        return exit_caps;
      }
      Json j = to_json(res);
      if (!out_path.empty())
        for (std::size_t k = 0; k < res.polytopes.size(); ++k) {
          std::string file = out_path + "/polytope_" + std::to_string(k) + ".txt";
          write_text_file(file, res.polytopes[k].to_text());
          j["polytopes"][k]["file"] = file;
        }
      std::cout << dump_line(j);
      return exit_ok;
    }
    if (*ana) {
      auto p = parse_polytope(read_text_file(input));
      AnalyzeOptions ao;
      ao.limit_points = cfg.limit_points;
      ao.seed = cfg.seed;
      ao.timings = timings;
      Json prov;
      prov["source"] = input;
      prov["seed"] = cfg.seed;
      auto rep = analyze(p, ao, prov);
      out.write(rep.to_json().dump(2) + "\n");
      return discovery_code(rep);
    }
    if (*chi) {
      auto p = parse_polytope(read_text_file(input));
      Json j;
      if (face.empty()) {
        j["chisel_reduce"] = to_json(p, chisel_reduce(p, cfg.seed));
      } else {
        std::vector<LatVec> vs;
        for (const auto& f : face) vs.push_back(parse_point(f, p.dim()));
        auto r = chisel(p, face_from_vertices(p, vs));
        j["face"] = face_json(p, r.face);
        j["sigma"] = to_json(r.sigma);
        j["b"] = to_json(r.b);
        j["c"] = to_json(r.c);
        j["split"] = r.pieces.has_value();
        if (r.pieces) {
          j["P1"] = to_json(r.pieces->first);
          j["P2"] = to_json(r.pieces->second);
        }
      }
      out.write(j.dump(2) + "\n");
      return exit_ok;
    }
    if (*shr) {
      auto p = parse_polytope(read_text_file(input));
      auto res = shrink(p, cfg.seed);
      out.write(to_json(res).dump(2) + "\n");
      for (const auto& f : res.non_normal)
        if (f.simple || f.smooth) return exit_discovery;
      return exit_ok;
    }
    if (*sea) {
      if (out_path.empty()) return run_search(cfg, std::cout);
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw Error("cannot write " + out_path);
      return run_search(cfg, file);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const LimitsExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return exit_caps;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_ok;
}
