#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "umw/corpus.hpp"
#include "umw/error.hpp"
#include "umw/functors.hpp"
#include "umw/io.hpp"
#include "umw/pipelines.hpp"
#include "umw/wreath.hpp"

namespace {

using umw::Json;

struct Output {
  std::string path;    // empty: stdout
  std::string format;  // "json" | "text"
};

void render_text(std::ostream& os, const Json& j, int indent = 0) {
  std::string pad(static_cast<size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_text(os, it.value(), indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const Json& v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        render_text(os, v, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

void emit(const Output& out, const Json& j) {
  if (!out.path.empty()) {
    umw::write_json(out.path, j);
    return;
  }
  if (out.format == "text")
    render_text(std::cout, j);
  else
    std::cout << umw::dump_canonical(j);
}

long long env_max_order(long long flag_value) {
  if (const char* env = std::getenv("UMW_MAX_ORDER")) {
    try {
      return std::stoll(env);
    } catch (...) {
      throw umw::Error(umw::ErrorClass::ParseError, "UMW_MAX_ORDER is not a number");
    }
  }
  return flag_value;
}

umw::TheoremReport run_pipeline(const std::string& which, const Json& input,
                                const umw::PipelineConfig& cfg) {
  umw::FileKind kind = umw::detect_kind(input);
  if (which == "homogeneous" || which == "discrete") {
    if (kind != umw::FileKind::Space)
      throw umw::Error(umw::ErrorClass::SchemaError, "this pipeline takes a space file");
    umw::UltraSpace u = umw::space_from_json(input);
    return which == "homogeneous" ? umw::verify_homogeneous(u, cfg)
                                  : umw::verify_discrete_homogeneous(u, cfg);
  }
  if (which == "general" || which == "exact") {
    if (kind == umw::FileKind::Space) {
      umw::UltraSpace u = umw::space_from_json(input);
      return which == "general" ? umw::verify_general(u, cfg) : umw::verify_exact(u, cfg);
    }
    if (kind == umw::FileKind::Tree) {
      umw::LTree t = umw::tree_from_json(input);
      return which == "general" ? umw::verify_general_tree(t, cfg)
                                : umw::verify_exact_tree(t, cfg);
    }
    throw umw::Error(umw::ErrorClass::SchemaError, "this pipeline takes a space or tree file");
  }
  if (which == "roundtrip") {
    if (kind == umw::FileKind::System)
      return umw::roundtrip_wreath(umw::bundle_from_system(umw::system_from_json(input)), cfg);
    if (kind == umw::FileKind::Skeleton)
      return umw::roundtrip_wreath(
          umw::bundle_from_supports(umw::skeleton_from_json(input), umw::SupportTag::LF), cfg);
    throw umw::Error(umw::ErrorClass::SchemaError,
                     "this pipeline takes a skeleton or system file");
  }
  if (which == "wideness") {
    if (kind != umw::FileKind::Space)
      throw umw::Error(umw::ErrorClass::SchemaError, "this pipeline takes a space file");
    return umw::wideness_diagnostics(umw::space_from_json(input), cfg);
  }
  throw umw::Error(umw::ErrorClass::InvalidInput, "unknown pipeline '" + which + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite ultrametric spaces, leveled trees, and wreath products"};
  app.require_subcommand(1);
  app.fallthrough();

  Output out;
  app.add_option("--format", out.format, "output format")->default_val("json");

  long long max_order = 1000000;
  app.add_option("--max-order", max_order, "group size guard");

  // validate
  std::string val_path;
  auto* c_validate = app.add_subcommand("validate", "validate a space/tree/skeleton/system file");
  c_validate->add_option("file", val_path)->required();

  // iso / aut / condense
  std::string in_path, out_path;
  auto* c_iso = app.add_subcommand("iso", "isometry group of a space");
  c_iso->add_option("--input", in_path)->required();
  c_iso->add_option("--out", out_path);

  auto* c_aut = app.add_subcommand("aut", "automorphism group of a tree");
  c_aut->add_option("--input", in_path)->required();
  c_aut->add_option("--out", out_path);

  auto* c_cond = app.add_subcommand("condense", "condensed skeleton of a tree");
  c_cond->add_option("--input", in_path)->required();
  c_cond->add_option("--out", out_path);

  // functor
  auto* c_functor = app.add_subcommand("functor", "the three constructions");
  std::string f_which, f_space, f_tree, f_embedding, f_levels, f_radii;
  int f_depth = 1;
  c_functor->add_option("which", f_which, "f, g, or u")->required();
  c_functor->add_option("--space", f_space);
  c_functor->add_option("--tree", f_tree);
  c_functor->add_option("--levels", f_levels);
  c_functor->add_option("--embedding", f_embedding);
  c_functor->add_option("--depth", f_depth);
  c_functor->add_option("--radii", f_radii);
  c_functor->add_option("--out", out_path);

  // wreath
  auto* c_wreath = app.add_subcommand("wreath", "wreath product of a bundle");
  std::string w_skeleton, w_system, w_supports = "lf";
  c_wreath->add_option("--skeleton", w_skeleton);
  c_wreath->add_option("--system", w_system);
  c_wreath->add_option("--supports", w_supports, "fin|lf|wsp|max");
  c_wreath->add_option("--out", out_path);

  // rho
  auto* c_rho = app.add_subcommand("rho", "rewrite a projection system and verify");
  c_rho->add_option("--system", w_system)->required();
  c_rho->add_option("--out", out_path);

  // treeify
  auto* c_treeify = app.add_subcommand("treeify", "tree of copies of a system");
  int t_depth = -1;
  c_treeify->add_option("--system", w_system)->required();
  c_treeify->add_option("--depth", t_depth);
  c_treeify->add_option("--out", out_path);

  // pipeline
  auto* c_pipe = app.add_subcommand("pipeline", "end-to-end verifiers");
  std::string p_which, p_input, p_report;
  int p_depth = -1, p_wide = 3;
  bool p_timings = false;
  c_pipe->add_option("which", p_which, "homogeneous|discrete|exact|general|roundtrip|wideness")
      ->required();
  c_pipe->add_option("--input", p_input)->required();
  c_pipe->add_option("--report", p_report);
  c_pipe->add_option("--depth", p_depth);
  c_pipe->add_option("--wide-bound", p_wide);
  c_pipe->add_flag("--timings", p_timings);

  // corpus
  auto* c_corpus = app.add_subcommand("corpus", "random spaces through the general pipeline");
  unsigned long long seed = 1;
  int count = 10, max_points = 5;
  c_corpus->add_option("--seed", seed);
  c_corpus->add_option("--count", count);
  c_corpus->add_option("--max-points", max_points);
  c_corpus->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    max_order = env_max_order(max_order);
    out.path = out_path;

    if (*c_validate) {
      Json j = umw::load_json(val_path);
      umw::ValidationReport rep = umw::validate_any(j);
      Json r;
      r["ok"] = rep.ok();
      r["violations"] = rep.violations;
      emit(out, r);
      return rep.ok() ? 0 : 1;
    }

    if (*c_iso) {
      umw::UltraSpace u = umw::space_from_json(umw::load_json(in_path));
      umw::PermGroup g = umw::iso_group(u, max_order);
      Json r;
      r["order"] = g.order();
      r["group"] = umw::group_to_json(g);
      emit(out, r);
      return 0;
    }

    if (*c_aut) {
      umw::LTree t = umw::tree_from_json(umw::load_json(in_path));
      umw::PermGroup g = umw::aut_group(t, max_order);
      Json r;
      r["order"] = g.order();
      r["group"] = umw::group_to_json(g);
      emit(out, r);
      return 0;
    }

    if (*c_cond) {
      umw::LTree t = umw::tree_from_json(umw::load_json(in_path));
      umw::CondensedBundle cb = umw::condensed_skeleton(t, max_order);
      emit(out, umw::skeleton_to_json(cb.sk));
      return 0;
    }

    if (*c_functor) {
      if (f_which == "f") {
        umw::UltraSpace u = umw::space_from_json(umw::load_json(f_space));
        umw::LinearOrder levels = f_levels.empty() ? umw::canonical_levels(u, max_order)
                                                   : umw::order_from_string(f_levels);
        umw::BallTree bt = umw::ball_tree(u, levels);
        emit(out, umw::tree_to_json(bt.tree));
        return 0;
      }
      if (f_which == "g") {
        umw::LTree t = umw::tree_from_json(umw::load_json(f_tree));
        umw::LevelEmbedding emb =
            f_embedding.empty() ? umw::default_embedding(t.order)
                                : umw::embedding_from_json(umw::load_json(f_embedding), t.order);
        emit(out, umw::space_to_json(umw::tree_space(t, emb)));
        return 0;
      }
      if (f_which == "u") {
        umw::UltraSpace u = umw::space_from_json(umw::load_json(f_space));
        std::vector<umw::Rat> radii;
        if (f_radii.empty()) {
          std::vector<umw::Rat> dset = umw::distance_set(u);
          umw::Rat bound = dset.empty() ? umw::Rat(1) : dset.front();
          radii = umw::default_radii(f_depth, bound);
        } else {
          radii = umw::rats_from_string(f_radii);
          // a short list is continued geometrically; the comb needs one
          // radius per proper prefix
          while (static_cast<int>(radii.size()) < (1 << f_depth) - 1)
            radii.push_back(radii.back() / umw::Rat(2));
        }
        umw::RigidComb comb = umw::rigid_comb(f_depth, radii);
        emit(out, umw::space_to_json(umw::comb_product(u, comb)));
        return 0;
      }
      throw umw::Error(umw::ErrorClass::InvalidInput, "functor must be f, g, or u");
    }

    if (*c_wreath) {
      umw::SkeletonBundle bundle;
      if (!w_system.empty()) {
        bundle = umw::bundle_from_system(umw::system_from_json(umw::load_json(w_system)));
      } else if (!w_skeleton.empty()) {
        umw::SupportTag tag = umw::SupportTag::LF;
        if (w_supports == "fin") tag = umw::SupportTag::Fin;
        else if (w_supports == "lf") tag = umw::SupportTag::LF;
        else if (w_supports == "wsp") tag = umw::SupportTag::Wsp;
        else if (w_supports == "max") tag = umw::SupportTag::Max;
        else throw umw::Error(umw::ErrorClass::InvalidInput, "supports must be fin|lf|wsp|max");
        bundle = umw::bundle_from_supports(umw::skeleton_from_json(umw::load_json(w_skeleton)), tag);
      } else {
        throw umw::Error(umw::ErrorClass::InvalidInput, "need --skeleton or --system");
      }
      umw::PermGroup g = umw::wreath_group(bundle, max_order);
      Json r;
      r["order"] = g.order();
      r["group"] = umw::group_to_json(g);
      emit(out, r);
      return 0;
    }

    if (*c_rho) {
      umw::ProjectionSystem ps = umw::system_from_json(umw::load_json(w_system));
      umw::IsoWitness w = umw::verify_rewrite(ps, max_order);
      Json r;
      r["witness"] = umw::witness_to_json(w);
      umw::RewriteResult rw = umw::rewrite_system(ps);
      r["rewritten"] = umw::system_to_json(umw::trivial_system(rw.family));
      emit(out, r);
      return w.verified ? 0 : 1;
    }

    if (*c_treeify) {
      umw::ProjectionSystem ps = umw::system_from_json(umw::load_json(w_system));
      int depth = t_depth > 0 ? t_depth : ps.sk.size() + 2;
      umw::TreeFromWreath tfw = umw::tree_from_wreath(ps, depth, {}, max_order);
      Json r;
      r["witness"] = umw::witness_to_json(tfw.witness);
      r["tree"] = umw::tree_to_json(tfw.tree);
      emit(out, r);
      return tfw.witness.verified ? 0 : 1;
    }

    if (*c_pipe) {
      Json input = umw::load_json(p_input);
      umw::PipelineConfig cfg;
      cfg.max_order = max_order;
      cfg.depth = p_depth;
      cfg.wide_bound = p_wide;
      cfg.with_timings = p_timings;
      auto t0 = std::chrono::steady_clock::now();
      umw::TheoremReport rep = run_pipeline(p_which, input, cfg);
      auto t1 = std::chrono::steady_clock::now();
      if (p_timings)
        rep.timings_ms.emplace_back(
            "total", std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
      Json rj = umw::report_to_json(rep, umw::digest(umw::dump_canonical(input)));
      if (!p_report.empty())
        umw::write_json(p_report, rj);
      else
        emit(out, rj);
      return rep.pass() ? 0 : 1;
    }

    if (*c_corpus) {
      umw::PipelineConfig cfg;
      cfg.max_order = max_order;
      umw::CorpusRun run = umw::run_corpus(seed, count, max_points, cfg);
      Json r;
      r["seed"] = seed;
      r["count"] = count;
      r["max_points"] = max_points;
      Json spaces = Json::array();
      for (const umw::UltraSpace& u : run.spaces) spaces.push_back(umw::space_to_json(u));
      r["spaces"] = spaces;
      Json reports = Json::array();
      int passed = 0;
      for (size_t i = 0; i < run.reports.size(); ++i) {
        Json inp = umw::space_to_json(run.spaces[i]);
        reports.push_back(umw::report_to_json(run.reports[i],
                                              umw::digest(umw::dump_canonical(inp))));
        if (run.reports[i].pass()) ++passed;
      }
      r["reports"] = reports;
      r["passed"] = passed;
      emit(out, r);
      return passed == static_cast<int>(run.reports.size()) ? 0 : 1;
    }
  } catch (const umw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 99;
  }
  return 0;
}
