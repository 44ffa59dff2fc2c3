#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <CLI11.hpp>

#include "pgap/bounds.hpp"
#include "pgap/cli.hpp"
#include "pgap/error.hpp"
#include "pgap/glue.hpp"
#include "pgap/io.hpp"
#include "pgap/metric.hpp"
#include "pgap/negtype.hpp"
#include "pgap/ultrametric.hpp"
#include "report.hpp"

namespace pgap::cli {
namespace {

// Slack for the internal consistency checks that map to exit code 3.
constexpr double kOracleSlack = 1e-6;
constexpr double kSandwichSlack = 1e-9;

struct Common {
  double p = 1.0;
  std::size_t cap = 24;
  std::uint64_t seed = 1;
  bool json = false;
  std::string xi_exponent = "product";
  bool full_split = false;
  int oracle_restarts = 20;
};

class ToleranceFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> labels_of(const FiniteMetricSpace& x, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(x.label(i));
  return out;
}

json labels_json(const std::vector<std::string>& labels) {
  json a = json::array();
  for (const auto& l : labels) a.push_back(l);
  return a;
}

json signs_json(const std::vector<int>& z) {
  json a = json::array();
  for (int v : z) a.push_back(v);
  return a;
}

json input_json(const FiniteMetricSpace& x) {
  json in;
  in["n"] = x.size();
  in["labels"] = labels_json(x.labels());
  if (x.size() >= 2) {
    const SpaceStats s = space_stats(x);
    in["diameter"] = num(s.diameter);
    in["min_positive"] = num(s.min_positive);
    in["ratio"] = num(s.ratio);
  }
  return in;
}

json certificate_json(const NegTypeCertificate& cert) {
  json c;
  c["classification"] = to_string(cert.classification);
  c["lambda_second"] = num(cert.lambda_second);
  c["lambda_top"] = num(cert.lambda_top);
  c["b_dot_one"] = num(cert.b_dot_one);
  c["m_p"] = num(cert.m_p);
  if (cert.u_p) c["u_p"] = vec(*cert.u_p);
  if (cert.witness) c["witness"] = vec(*cert.witness);
  c["boundary_warning"] = cert.boundary_warning;
  return c;
}

json tree_json(const UltrametricTree& tree, const FiniteMetricSpace& x, std::size_t id) {
  const UltrametricNode& node = tree.nodes[id];
  json j;
  j["points"] = labels_json(labels_of(x, node.points));
  j["split"] = num(node.split_distance);
  if (!node.leaf()) {
    j["left"] = tree_json(tree, x, *node.left);
    j["right"] = tree_json(tree, x, *node.right);
  }
  return j;
}

json recursive_json(const RecursiveGapBounds& rb) {
  json r;
  r["lower_reciprocal"] = num(rb.lower_reciprocal);
  r["upper_reciprocal"] = num(rb.upper_reciprocal);
  r["upper_reciprocal_coarse"] = num(rb.upper_reciprocal_coarse);
  r["gamma_lower"] = num(rb.gamma_lower());
  r["gamma_upper"] = num(rb.gamma_upper());
  r["gamma_lower_coarse"] = num(1.0 / rb.upper_reciprocal_coarse);
  json terms = json::array();
  for (const auto& t : rb.terms) {
    json tj;
    tj["diameter_p"] = num(t.diameter_p);
    tj["alpha"] = num(t.alpha);
    tj["alpha_coarse"] = num(t.alpha_coarse);
    terms.push_back(tj);
  }
  r["splits"] = terms;
  return r;
}

json coteries_json(const FiniteMetricSpace& x, const CoterieSet& set) {
  json c;
  c["alpha"] = num(set.alpha);
  json list = json::array();
  for (const auto& b : set.coteries) list.push_back(labels_json(labels_of(x, b)));
  c["coteries"] = list;
  return c;
}

XiExponent parse_reading(const std::string& s) {
  if (s == "product") return XiExponent::Product;
  if (s == "power") return XiExponent::Power;
  throw Error(Errc::InvalidArgument, "--xi-exponent must be product or power");
}

std::string emit(const json& report, bool as_json) {
  return as_json ? report.dump(2) + "\n" : render_text(report);
}

CommandOutput analyze(const std::string& file, const Common& opt) {
  CommandOutput result;
  const auto t0 = std::chrono::steady_clock::now();
  const FiniteMetricSpace x = io::parse_space(io::read_file(file));
  const PDistanceMatrix dp = p_distance_matrix(x, opt.p);
  const NegTypeCertificate cert = certify(dp);
  const std::size_t n = x.size();

  json report;
  report["input"] = input_json(x);
  report["p"] = num(opt.p);
  report["certificate"] = certificate_json(cert);
  report["spectrum"] = vec(cert.spectrum.eigenvalues);
  if (!cert.negative_type()) {
    result.exit_code = kNotNegativeType;
    result.err = "not of p-negative type; witness x with sum(x) = 0 and (D_p x|x) > 0: " +
                 (cert.witness ? fmt_vector(*cert.witness) : std::string("unavailable")) + "\n";
    result.out = emit(report, opt.json);
    return result;
  }

  GapOptions gap_opt;
  gap_opt.cap = opt.cap;
  json gap;
  double gamma_for_xi = std::nan("");
  std::optional<GapResult> exact;
  if (n <= opt.cap) {
    exact = gap_exact(dp, gap_opt);
    gap["method"] = "exact";
    gap["evaluation"] = to_string(exact->method);
    gap["gamma"] = num(exact->gamma);
    gap["beta"] = num(exact->beta);
    if (!exact->z_star.empty()) gap["z_star"] = signs_json(exact->z_star);
    gamma_for_xi = exact->gamma;
  } else {
    gap["method"] = "bounds";
    gap["note"] = "n exceeds the enumeration cap; reporting bounds only";
  }

  json bounds;
  if (n >= 2) {
    bounds["mean"] = num(upper_bound_mean(x, opt.p));
    const DiameterBound db = upper_bound_diameter(x, opt.p);
    bounds["diameter"] = num(db.value);
    bounds["diameter_tight"] = db.tight;
  }
  if (cert.strict() && n >= 2) {
    const GapBounds sb = spectral_bounds(dp);
    bounds["spectral_lower"] = num(sb.lower);
    bounds["spectral_upper"] = num(sb.upper);
    bounds["row_sum_factor"] = num(sb.row_sum_factor);
    bounds["constant_row_sum"] = sb.constant_row_sum;
    if (!exact) {
      gap["lower"] = num(sb.lower);
      gap["upper"] = num(std::min(sb.upper, upper_bound_mean(x, opt.p)));
      gap["provenance"] = "spectral sandwich; upper also capped by the mean bound";
      gamma_for_xi = sb.lower;
    } else if (exact->method == GapMethod::SignEnumeration) {
      const double slack = kSandwichSlack * std::max(1.0, sb.upper);
      if (exact->gamma < sb.lower - slack || exact->gamma > sb.upper + slack)
        throw ToleranceFailure("exact gap falls outside the spectral bounds");
    }
  }
  report["gap"] = gap;
  if (!bounds.empty()) report["bounds"] = bounds;

  if (n >= 2 && is_ultrametric(x)) {
    const LeafPolicy policy = opt.full_split ? LeafPolicy::Singletons : LeafPolicy::DiscreteBlocks;
    json ultra;
    ultra["recursive_bounds"] = recursive_json(recursive_gap_bounds(x, opt.p, policy));
    ultra["coteries"] = coteries_json(x, coteries(x));
    ultra["asymptotic_limit"] = num(asymptotic_gap_limit(x));
    report["ultrametric"] = ultra;
  }

  if (n >= 3 && std::isfinite(gamma_for_xi) && gamma_for_xi >= 0.0) {
    const XiResult xi = xi_enlargement(x, opt.p, gamma_for_xi, parse_reading(opt.xi_exponent));
    json xj;
    xj["xi"] = num(xi.xi);
    xj["gamma_xi_n"] = num(xi.gamma_xi_n);
    xj["reading"] = opt.xi_exponent;
    xj["from"] = exact ? "exact gap" : "spectral lower bound";
    report["xi"] = xj;
  }

  if (exact && exact->method == GapMethod::SignEnumeration && opt.oracle_restarts > 0) {
    const OracleResult oracle = gap_numeric_oracle(dp, opt.oracle_restarts, opt.seed);
    json oj;
    oj["restarts"] = opt.oracle_restarts;
    oj["seed"] = opt.seed;
    oj["gamma"] = num(oracle.gamma);
    report["oracle"] = oj;
    if (oracle.gamma < exact->gamma - kOracleSlack * std::max(1.0, exact->gamma))
      throw ToleranceFailure("numeric oracle found a value below the exact gap");
  }

  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  result.err = "analyze: " + fmt(ms) + " ms\n";
  result.out = emit(report, opt.json);
  return result;
}

CommandOutput glue(const std::string& left_file, const std::string& right_file, double c, const Common& opt) {
  CommandOutput result;
  GlueSpec spec{io::parse_space(io::read_file(left_file)), io::parse_space(io::read_file(right_file)), c};
  const FiniteMetricSpace glued = glue_spaces(spec);
  const GlueCondition cond = glue_type_condition(spec, opt.p);

  json report;
  report["left"] = input_json(spec.left);
  report["right"] = input_json(spec.right);
  report["c"] = num(c);
  report["p"] = num(opt.p);
  report["classification"] = to_string(cond.classification);
  report["margin"] = num(cond.margin);
  report["m_left"] = num(cond.m_left);
  report["m_right"] = num(cond.m_right);

  if (cond.classification == GlueClass::Strict) {
    GapOptions gap_opt;
    gap_opt.cap = opt.cap;
    const double g1 = gap_exact(p_distance_matrix(spec.left, opt.p), gap_opt).gamma;
    const double g2 = gap_exact(p_distance_matrix(spec.right, opt.p), gap_opt).gamma;
    const GlueGapBounds gb = glue_gap_bounds(spec, opt.p, g1, g2);
    json b;
    b["gamma_left"] = num(g1);
    b["gamma_right"] = num(g2);
    b["lower"] = num(gb.lower);
    b["upper"] = num(gb.upper);
    b["alpha"] = num(gb.alpha);
    b["out_of_hypothesis"] = gb.out_of_hypothesis;
    report["bounds"] = b;
    if (glued.size() <= opt.cap) {
      const GapResult g = gap_exact(p_distance_matrix(glued, opt.p), gap_opt);
      report["exact_gamma"] = num(g.gamma);
      const double slack = kSandwichSlack * std::max(1.0, gb.lower);
      if (g.method == GapMethod::SignEnumeration && (g.gamma < gb.lower - slack || g.gamma > gb.upper + slack))
        throw ToleranceFailure("exact glued gap falls outside the glue bounds");
    }
  } else if (cond.classification == GlueClass::NonStrictBoundary) {
    report["note"] = "2c^p equals M_p(left) + M_p(right): negative type but not strict, gap 0";
  } else {
    result.exit_code = kNotNegativeType;
    result.err = "glued space is not of p-negative type (2c^p < M_p(left) + M_p(right))\n";
  }
  result.out = emit(report, opt.json);
  return result;
}

CommandOutput ultra(const std::string& what, const std::string& file, const Common& opt) {
  CommandOutput result;
  const FiniteMetricSpace x = io::parse_space(io::read_file(file));
  if (!is_ultrametric(x)) throw Error(Errc::NotUltrametric, "input is not ultrametric");
  const LeafPolicy policy = opt.full_split ? LeafPolicy::Singletons : LeafPolicy::DiscreteBlocks;

  json report;
  std::ostringstream text;
  if (what == "decompose") {
    const UltrametricTree tree = decompose(x, policy);
    report["tree"] = tree.serialize(x);
    report["nodes"] = tree_json(tree, x, 0);
    text << tree.serialize(x) << '\n';
  } else if (what == "bounds") {
    if (x.size() < 2) throw Error(Errc::TooFewPoints, "recursive bounds need at least two points");
    const UltrametricTree tree = decompose(x, policy);
    const RecursiveGapBounds rb = recursive_gap_bounds(x, opt.p, policy);
    report = recursive_json(rb);
    report["p"] = num(opt.p);

    std::vector<std::string> leaves;
    for (const auto& node : tree.nodes)
      if (node.leaf() && node.points.size() >= 2)
        leaves.push_back("1/Gamma({" + join(labels_of(x, node.points), ",") + "})");
    std::vector<std::string> coarse;
    for (const auto& t : rb.terms)
      coarse.push_back(std::to_string(tree.nodes[t.node].points.size()) + "/" +
                       fmt(tree.nodes[t.node].split_distance) + "^p");
    const std::string base = leaves.empty() ? std::string("0") : join(leaves, " + ");
    text << base << " <= 1/Gamma(X,p) <= " << base << " + " << join(coarse, " + ") << '\n';
    text << "p = " << fmt(opt.p) << ": " << fmt(rb.lower_reciprocal) << " <= 1/Gamma <= "
         << fmt(rb.upper_reciprocal_coarse) << "  (sharper split terms: " << fmt(rb.upper_reciprocal) << ")\n";
    text << "Gamma in [" << fmt(1.0 / rb.upper_reciprocal_coarse) << ", " << fmt(rb.gamma_upper())
         << "]  (sharper: [" << fmt(rb.gamma_lower()) << ", " << fmt(rb.gamma_upper()) << "])\n";
    if (x.size() <= opt.cap) {
      GapOptions gap_opt;
      gap_opt.cap = opt.cap;
      const GapResult g = ultrametric_gap(x, opt.p, gap_opt);
      report["exact_gamma"] = num(g.gamma);
      text << "exact Gamma = " << fmt(g.gamma) << '\n';
      const double slack = kSandwichSlack * std::max(1.0, g.gamma);
      if (g.gamma < rb.gamma_lower() - slack || g.gamma > rb.gamma_upper() + slack)
        throw ToleranceFailure("exact gap falls outside the recursive bounds");
    }
  } else if (what == "coteries" || what == "asymptotic") {
    const CoterieSet set = coteries(x);
    report = coteries_json(x, set);
    text << "alpha = " << fmt(set.alpha) << '\n';
    for (const auto& b : set.coteries) text << "coterie {" << join(labels_of(x, b), ", ") << "}\n";
    if (what == "asymptotic") {
      const double limit = asymptotic_gap_limit(x);
      report["limit"] = num(limit);
      text << "lim Gamma(X,p)/alpha^p = " << fmt(limit) << '\n';
    }
  }
  result.out = opt.json ? report.dump(2) + "\n" : text.str();
  return result;
}

void add_common(CLI::App* cmd, Common& opt) {
  cmd->add_option("--p", opt.p, "exponent p > 0")->capture_default_str();
  cmd->add_option("--cap", opt.cap, "largest n for exact sign enumeration")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "seed for the numeric oracle")->capture_default_str();
  cmd->add_flag("--json", opt.json, "emit JSON");
  cmd->add_option("--xi-exponent", opt.xi_exponent, "reading of the xi denominator: product|power")
      ->check(CLI::IsMember({"product", "power"}))
      ->capture_default_str();
  cmd->add_flag("--full-split", opt.full_split, "decompose ultrametrics down to single points");
  cmd->add_option("--oracle", opt.oracle_restarts, "numeric oracle restarts (0 disables)")->capture_default_str();
}

}  // namespace

CommandOutput run(const std::vector<std::string>& args) {
  CLI::App app{"Finite metric spaces of p-negative type: certificates, exact gaps and bounds", "pgap"};
  app.require_subcommand(1);
  Common opt;

  std::string file, file2, ultra_file;
  double c = 0.0;
  auto* analyze_cmd = app.add_subcommand("analyze", "certify, compute the gap and its bounds");
  analyze_cmd->add_option("file", file, "matrix or edge-list file")->required();
  add_common(analyze_cmd, opt);

  auto* glue_cmd = app.add_subcommand("glue", "glue two spaces at bridge distance c");
  glue_cmd->add_option("left", file, "left space")->required();
  glue_cmd->add_option("right", file2, "right space")->required();
  glue_cmd->add_option("--c", c, "bridge distance")->required();
  add_common(glue_cmd, opt);

  auto* ultra_cmd = app.add_subcommand("ultra", "ultrametric decomposition and asymptotics");
  ultra_cmd->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> ultra_subs;
  const std::pair<const char*, const char*> ultra_names[] = {
      {"decompose", "print the decomposition tree"},
      {"bounds", "recursive bounds on 1/Gamma"},
      {"coteries", "minimum distance and its closed balls"},
      {"asymptotic", "limit of Gamma/alpha^p for large p"},
  };
  for (const auto& [name, about] : ultra_names) {
    auto* sub = ultra_cmd->add_subcommand(name, about);
    sub->add_option("file", ultra_file, "matrix or edge-list file")->required();
    add_common(sub, opt);
    ultra_subs.emplace_back(name, sub);
  }

  CommandOutput result;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.exit_code = kInvalidInput;
    result.err = std::string(e.what()) + "\n";
    return result;
  }

  try {
    if (analyze_cmd->parsed()) return analyze(file, opt);
    if (glue_cmd->parsed()) return glue(file, file2, c, opt);
    for (const auto& [name, sub] : ultra_subs)
      if (sub->parsed()) return ultra(name, ultra_file, opt);
  } catch (const ToleranceFailure& e) {
    result.exit_code = kToleranceFailure;
    result.err = std::string("internal tolerance failure: ") + e.what() + "\n";
    return result;
  } catch (const Error& e) {
    const bool type_failure = e.code() == Errc::NotNegativeType || e.code() == Errc::ComponentNotStrict;
    result.exit_code = type_failure ? kNotNegativeType : kInvalidInput;
    result.err = std::string(e.what()) + "\n";
    return result;
  }
  result.exit_code = kInvalidInput;
  result.err = "no command\n";
  return result;
}

}  // namespace pgap::cli
