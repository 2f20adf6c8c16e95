#include "carpet/cli.hpp"

#include "CLI11.hpp"

#include "carpet/bundle_map.hpp"
#include "carpet/components.hpp"
#include "carpet/equivalence.hpp"
#include "carpet/error.hpp"
#include "carpet/io.hpp"
#include "carpet/render.hpp"
#include "carpet/sigma.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>

namespace carpet::cli {

namespace {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::DepthBudgetExceeded:
      return BudgetExceeded;
    case ErrorCode::OutsideClass:
    case ErrorCode::NotInHypothesis:
    case ErrorCode::NotUniform:
      return OutsideClass;
    case ErrorCode::InfeasibleSplit:
    case ErrorCode::InfeasiblePartition:
    case ErrorCode::L0Exceeded:
    case ErrorCode::DegenerateSample:
    case ErrorCode::NoSuchP:
      return VerificationFailed;
    default:
      return InvalidInput;
  }
}

std::string class_text(const ClassLabel& l) {
  return std::string(to_string(l.subclass)) + " (totally disconnected: " + std::string(to_string(l.totally_disconnected)) +
         ", vacant rows: " + (l.vacant ? "yes" : "no") + ", doubling: " + (l.doubling ? "yes" : "no") +
         ", uniform fibers: " + (l.regular ? "yes" : "no") + ")";
}

void write_analysis_text(const nlohmann::json& a, std::ostream& out) {
  out << "carpet      n=" << a["n"] << " m=" << a["m"] << " N=" << a["N"] << " s=" << a["s"] << "\n";
  out << "class       " << a["class"]["summary"].get<std::string>() << "\n";
  out << "sigma       " << a["sigma"]["value"].get<double>();
  if (!a["sigma"]["rational"].is_null()) {
    out << " = " << a["sigma"]["rational"]["p"] << "/" << a["sigma"]["rational"]["q"]
        << ", N* = " << a["sigma"]["n_star"].get<std::string>();
  }
  out << "\n";
  out << "dimensions  hausdorff=" << a["dimensions"]["hausdorff"].get<double>()
      << " box=" << a["dimensions"]["box"].get<double>() << "\n";
  out << "k\tell\tdelta\tn_k\ttheta\n";
  for (const auto& l : a["levels"]) {
    out << l["k"] << "\t" << l["ell"] << "\t" << l["delta"] << "\t" << l["n_k"].get<std::string>() << "\t"
        << l["theta"].get<std::string>() << "\n";
  }
  if (a.contains("L0")) {
    if (a["L0"].is_null()) {
      out << "L0          n/a (" << a["L0_note"].get<std::string>() << ")\n";
    } else {
      out << "L0          " << a["L0"]["overall"] << " (levels 1.." << a["L0"]["depth"] << ")\n";
    }
  }
}

void emit(std::ostream& out, const std::optional<std::filesystem::path>& dir, const std::string& name,
          const std::string& content) {
  if (!dir) return;
  std::filesystem::create_directories(*dir);
  write_atomically(*dir / name, content);
  out << "wrote " << (*dir / name).string() << "\n";
}

}  // namespace

nlohmann::json analyze(const DigitSet& c, std::int64_t K, const Budget& budget) {
  const auto f = fiber_profile(c);
  const auto label = classify(c);
  const auto sig = sigma_profile(c);
  const auto dims = dimensions(c);

  nlohmann::json a;
  a["carpet"] = carpet_to_json(c);
  a["n"] = c.n();
  a["m"] = c.m();
  a["N"] = c.size();
  a["s"] = f.s;
  a["distribution"] = f.a;
  a["class"] = {{"subclass", to_string(label.subclass)},
                {"totally_disconnected", to_string(label.totally_disconnected)},
                {"vacant_rows", label.vacant},
                {"doubling", label.doubling},
                {"uniform_fibers", label.regular},
                {"summary", class_text(label)}};
  a["sigma"] = {{"value", sig.sigma}, {"inv_floor", sig.inv_floor}, {"alpha", sig.alpha}, {"rational", nullptr}, {"n_star", nullptr}};
  if (sig.rational) {
    a["sigma"]["rational"] = {{"p", sig.rational->p}, {"q", sig.rational->q}};
    a["sigma"]["n_star"] = n_star(c)->str();
  }
  a["dimensions"] = {{"hausdorff", dims.hausdorff}, {"box", dims.box}};

  nlohmann::json levels = nlohmann::json::array();
  LevelSequence seq(c);
  for (std::int64_t k = 1; k <= K; ++k) {
    const auto lp = seq.next();
    levels.push_back({{"k", lp.k},
                      {"ell", lp.ell},
                      {"delta", lp.delta},
                      {"n_k", lp.n_k.str()},
                      {"theta", to_fraction_string(lp.theta)}});
  }
  a["levels"] = levels;

  if (label.vacant && label.totally_disconnected == Tristate::Yes) {
    const auto depth = deepest_level_within(c, K, budget);
    const auto est = estimate_L0(c, depth, budget);
    a["L0"] = {{"overall", est.overall}, {"per_level", est.per_level}, {"depth", est.depth}};
  } else {
    a["L0"] = nullptr;
    a["L0_note"] = "needs vacant rows and a totally disconnected carpet";
  }
  return a;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bedford-McMullen carpet analysis", "carpet"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t max_cells = Budget{}.max_cells;
  app.add_option("--max-cells", max_cells, "cell budget per enumerated level")->check(CLI::PositiveNumber);

  std::string file;
  std::string file2;
  std::int64_t depth = 8;
  std::string format = "json";
  std::optional<std::string> out_path;

  auto* analyze_cmd = app.add_subcommand("analyze", "classify a carpet and tabulate its level parameters");
  analyze_cmd->add_option("carpet", file, "carpet JSON file")->required();
  analyze_cmd->add_option("-k,--depth", depth, "levels to tabulate")->check(CLI::NonNegativeNumber);
  analyze_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_option("--out", out_path, "also write analysis.json into this directory");

  auto* equiv_cmd = app.add_subcommand("equiv", "decide quasisymmetric equivalence of two carpets");
  equiv_cmd->add_option("first", file, "carpet JSON file")->required();
  equiv_cmd->add_option("second", file2, "carpet JSON file")->required();

  std::int64_t levels = 2;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> p_override;
  std::int64_t l0_depth = 8;
  auto* map_cmd = app.add_subcommand("map", "build and verify the bundle map to the homogeneous tree");
  map_cmd->add_option("carpet", file, "carpet JSON file")->required();
  map_cmd->add_option("--levels", levels, "p-subtree levels")->check(CLI::PositiveNumber);
  map_cmd->add_option("--samples", samples, "distortion sample pairs per level")->check(CLI::PositiveNumber);
  map_cmd->add_option("--seed", seed);
  map_cmd->add_option("--p", p_override, "override the choice of p")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 20));
  map_cmd->add_option("-k,--depth", l0_depth, "deepest level used to estimate L0")->check(CLI::PositiveNumber);
  map_cmd->add_option("--out", out_path, "directory for bundle_map.jsonl, distortion.json, component_tree.jsonl");

  std::optional<std::int64_t> render_k;
  std::optional<std::int64_t> render_k_flag;
  std::string style = "squares";
  std::optional<std::string> style_flag;
  auto* render_cmd = app.add_subcommand("render", "draw a level of the carpet as SVG");
  render_cmd->add_option("carpet", file, "carpet JSON file")->required();
  render_cmd->add_option("rank", render_k, "rank k");
  render_cmd->add_option("kind", style, "style: squares, components or rectangles");
  render_cmd->add_option("-k,--depth", render_k_flag, "rank");
  render_cmd->add_option("--style", style_flag, "squares, components or rectangles");
  render_cmd->add_option("--out", out_path, "SVG file (stdout when absent)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? Ok : InvalidInput;
  }

  const Budget budget{max_cells};
  try {
    if (analyze_cmd->parsed()) {
      const auto a = analyze(load_carpet(file), depth, budget);
      if (format == "json") {
        out << a.dump(2) << "\n";
      } else {
        write_analysis_text(a, out);
      }
      if (out_path) emit(err, std::filesystem::path(*out_path), "analysis.json", a.dump(2) + "\n");
      return Ok;
    }

    if (equiv_cmd->parsed()) {
      const auto v = decide_equivalence(load_carpet(file), load_carpet(file2));
      nlohmann::json j{{"verdict", to_string(v.verdict)}, {"reason", to_string(v.reason)}, {"detail", v.detail}};
      if (v.n_star_first) j["n_star"] = {v.n_star_first->str(), v.n_star_second->str()};
      if (!v.profile_first.empty()) j["profiles"] = {v.profile_first, v.profile_second};
      out << j.dump(2) << "\n";
      switch (v.verdict) {
        case Verdict::Equivalent:
          return Ok;
        case Verdict::NotEquivalent:
          return NotEquivalent;
        case Verdict::OutsideClass:
          return OutsideClass;
      }
    }

    if (map_cmd->parsed()) {
      const auto c = load_carpet(file);
      const auto label = classify(c);
      if (!label.in_tvr()) {
        out << nlohmann::json{{"verdict", "outside-class"}, {"subclass", to_string(label.subclass)}}.dump(2) << "\n";
        return OutsideClass;
      }
      const auto est = estimate_L0(c, deepest_level_within(c, l0_depth, budget), budget);
      BundleMapOptions options;
      options.L0 = est.overall;
      options.p = p_override;
      options.budget = budget;
      const auto bm = build_bundle_map(c, levels, options);
      const auto report = verify_bundle_map(bm);

      nlohmann::json summary{{"p", bm.p},
                             {"p_source", p_override ? "override" : "chosen"},
                             {"L0", bm.L0},
                             {"L0_depth", est.depth},
                             {"levels", levels},
                             {"branch_counts", bm.branch_counts},
                             {"verification", verification_json(report)}};
      int rc = report.all_passed() ? Ok : VerificationFailed;
      std::optional<DistortionReport> dist;
      try {
        dist = estimate_distortion(bm, samples, seed);
        summary["distortion"] = distortion_json(*dist);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSample) throw;
        summary["distortion"] = {{"error", e.what()}};
        rc = VerificationFailed;
      }
      out << summary.dump(2) << "\n";

      if (out_path) {
        const std::filesystem::path dir(*out_path);
        emit(err, dir, "bundle_map.jsonl", bundle_map_jsonl(bm));
        if (dist) emit(err, dir, "distortion.json", distortion_json(*dist).dump(2) + "\n");
        emit(err, dir, "verification.json", verification_json(report).dump(2) + "\n");
        const LeveledTree tree(bm.tree->parent_arrays());
        emit(err, dir, "component_tree.jsonl", tree_jsonl(tree, [&](std::int64_t k, std::size_t v) {
               const auto& lvl = bm.tree->level(k);
               return nlohmann::json{{"members", lvl.member_count(v)}, {"measure", to_fraction_string(lvl.measure(v))}};
             }));
      }
      return rc;
    }

    if (render_cmd->parsed()) {
      const auto k = render_k_flag ? *render_k_flag : render_k.value_or(1);
      const auto name = style_flag.value_or(style);
      const auto parsed = parse_render_style(name);
      if (!parsed) {
        err << "unknown style '" << name << "'\n";
        return InvalidInput;
      }
      if (k < 0) {
        err << "rank must be non-negative\n";
        return InvalidInput;
      }
      const auto svg = render_svg(load_carpet(file), k, *parsed, budget);
      if (out_path) {
        write_atomically(*out_path, svg);
      } else {
        out << svg;
      }
      return Ok;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return InvalidInput;
  }
  return InvalidInput;
}

}  // namespace carpet::cli
