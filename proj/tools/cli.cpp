#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dualbern/approx.hpp"
#include "dualbern/basis.hpp"
#include "dualbern/dual_core.hpp"
#include "dualbern/oracle.hpp"

namespace dualbern::cli {

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveDocument {
  Eigen::MatrixXd points;
  std::optional<Eigen::VectorXd> weights;
};

json read_json(const std::string& path, std::istream& in) {
  try {
    if (path == "-") return json::parse(in);
    std::ifstream file(path);
    if (!file) throw InputError("cannot open input file '" + path + "'");
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

double number(const json& v, const char* what) {
  if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
  return v.get<double>();
}

CurveDocument parse_curve(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw InputError("curve document needs a 'points' array");
  }
  const json& pts = doc["points"];
  if (pts.empty()) throw InputError("curve document has no control points");
  const int rows = static_cast<int>(pts.size());
  const int dim = doc.contains("dimension") ? doc["dimension"].get<int>()
                  : pts[0].is_array()      ? static_cast<int>(pts[0].size())
                                           : 1;
  if (dim < 1) throw InputError("'dimension' must be at least 1");
  if (doc.contains("degree") && doc["degree"].get<int>() != rows - 1) {
    throw InputError("'degree' does not match the number of control points");
  }
  CurveDocument curve{Eigen::MatrixXd(rows, dim), std::nullopt};
  for (int i = 0; i < rows; ++i) {
    const json& p = pts[i];
    if (p.is_number() && dim == 1) {
      curve.points(i, 0) = p.get<double>();
      continue;
    }
    if (!p.is_array() || static_cast<int>(p.size()) != dim) {
      throw InputError("control point " + std::to_string(i) + " does not have " +
                       std::to_string(dim) + " coordinates");
    }
    for (int c = 0; c < dim; ++c) curve.points(i, c) = number(p[c], "coordinate");
  }
  if (doc.contains("weights") && !doc["weights"].is_null()) {
    const json& w = doc["weights"];
    if (!w.is_array() || static_cast<int>(w.size()) != rows) {
      throw InputError("'weights' must have one entry per control point");
    }
    Eigen::VectorXd weights(rows);
    for (int i = 0; i < rows; ++i) {
      weights[i] = number(w[i], "weight");
      if (!(weights[i] > 0.0)) throw InputError("weights must be positive");
    }
    curve.weights = weights;
  }
  return curve;
}

json points_json(const Eigen::MatrixXd& points) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    json p = json::array();
    for (Eigen::Index c = 0; c < points.cols(); ++c) p.push_back(points(i, c));
    arr.push_back(std::move(p));
  }
  return arr;
}

json curve_json(const BezierCurve& curve) {
  return json{{"degree", curve.degree()},
              {"dimension", curve.dimension()},
              {"points", points_json(curve.points())}};
}

json vector_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

struct Options {
  int n = 0, k = 0, l = 0, m = 0;
  double alpha = 0.0, beta = 0.0;
  std::string format = "json";
  std::string input = "-";
  std::string to;
  bool verify = false;
  double tol = 1e-10;
  int max_iter = 64;
  int nodes = 0;
  int target_degree = -1;
};

int cmd_dual_table(const Options& o, std::ostream& out) {
  const ConstraintSpec spec(o.n, o.k, o.l);
  const JacobiParams params(o.alpha, o.beta);
  const CTable table = ctable_build(spec, params);

  if (o.format == "csv") {
    out << "i\\j";
    for (int j = spec.first(); j <= spec.last(); ++j) out << ',' << j;
    out << '\n';
    for (int i = spec.first(); i <= spec.last(); ++i) {
      out << i;
      for (int j = spec.first(); j <= spec.last(); ++j) out << ',' << format17(table(i, j));
      out << '\n';
    }
    return kOk;
  }

  json indices = json::array();
  for (int i = spec.first(); i <= spec.last(); ++i) indices.push_back(i);
  json rows = json::array();
  for (int i = spec.first(); i <= spec.last(); ++i) rows.push_back(vector_json(table.row(i)));
  json doc{{"n", o.n},         {"k", o.k},         {"l", o.l},
           {"alpha", o.alpha}, {"beta", o.beta},   {"indices", indices},
           {"table", rows}};
  if (o.verify) {
    if (spec.dimension() - 1 > oracle::kMaxExactDimension) {
      throw std::domain_error("--verify supports n - k - l <= " +
                              std::to_string(oracle::kMaxExactDimension));
    }
    const Eigen::MatrixXd exact = oracle::to_double_table(
        oracle::dual_table_exact(spec, oracle::exact_from_double(o.alpha),
                                 oracle::exact_from_double(o.beta)),
        params);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < exact.rows(); ++r) {
      for (Eigen::Index c = 0; c < exact.cols(); ++c) {
        const double ref = exact(r, c);
        const double dev = std::fabs(table.values()(r, c) - ref) / std::max(std::fabs(ref), 1e-300);
        worst = std::max(worst, dev);
      }
    }
    doc["verification"] = {{"oracle", "exact-gram-inverse"}, {"max_relative_deviation", worst}};
  }
  emit(out, doc);
  return kOk;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
  const CurveDocument doc = parse_curve(read_json(o.input, in));
  if (doc.weights) throw InputError("reduce expects a polynomial curve (no 'weights')");
  const BezierCurve input(doc.points);
  const JacobiParams params(o.alpha, o.beta);
  const BezierCurve reduced = degree_reduce(input, o.m, o.k, o.l, params);
  const Eigen::VectorXd err2 = squared_l2_distance(input, reduced, params);
  json result = curve_json(reduced);
  result["l2_error_squared"] = vector_json(err2);
  result["l2_error"] = vector_json(err2.cwiseMax(0.0).cwiseSqrt());
  emit(out, result);
  return kOk;
}

int cmd_roots(const Options& o, std::istream& in, std::ostream& out) {
  const CurveDocument doc = parse_curve(read_json(o.input, in));
  if (doc.points.cols() != 1) throw InputError("roots expects a scalar polynomial (dimension 1)");
  if (doc.weights) throw InputError("roots expects a polynomial (no 'weights')");
  if (!(o.tol > 0.0)) throw std::domain_error("--tol must be positive");
  const auto enclosures = clip_roots(BezierCurve(doc.points), o.tol, o.max_iter);
  json roots = json::array(), boxes = json::array();
  for (const RootEnclosure& e : enclosures) {
    roots.push_back(e.mid());
    boxes.push_back({{"lo", e.lo}, {"hi", e.hi}, {"converged", e.converged}});
  }
  emit(out, json{{"roots", roots}, {"enclosures", boxes}});
  return kOk;
}

int cmd_rational_approx(const Options& o, std::istream& in, std::ostream& out) {
  const CurveDocument doc = parse_curve(read_json(o.input, in));
  const Eigen::VectorXd weights =
      doc.weights ? *doc.weights : Eigen::VectorXd::Ones(doc.points.rows());
  const RationalBezier rat(doc.points, weights);
  const BezierCurve approx =
      rational_approx(rat, o.m, o.k, o.l, JacobiParams(o.alpha, o.beta), o.nodes);
  emit(out, curve_json(approx));
  return kOk;
}

int cmd_convert(const Options& o, bool alpha_given, bool beta_given, std::istream& in,
                std::ostream& out) {
  const json doc = read_json(o.input, in);
  if (o.to == "jacobi") {
    const CurveDocument curve = parse_curve(doc);
    if (curve.points.cols() != 1) throw InputError("convert expects a scalar curve");
    const JacobiExpansion exp =
        bernstein_to_jacobi(BezierCurve(curve.points), JacobiParams(o.alpha, o.beta));
    emit(out, json{{"alpha", o.alpha},
                   {"beta", o.beta},
                   {"degree", exp.degree()},
                   {"coeffs", exp.coeffs}});
    return kOk;
  }
  if (!doc.is_object() || !doc.contains("coeffs") || !doc["coeffs"].is_array() ||
      doc["coeffs"].empty()) {
    throw InputError("Jacobi document needs a non-empty 'coeffs' array");
  }
  std::vector<double> coeffs;
  for (const json& c : doc["coeffs"]) coeffs.push_back(number(c, "coefficient"));
  const double alpha = !alpha_given && doc.contains("alpha") ? number(doc["alpha"], "alpha") : o.alpha;
  const double beta = !beta_given && doc.contains("beta") ? number(doc["beta"], "beta") : o.beta;
  const JacobiExpansion exp{JacobiParams(alpha, beta), coeffs};
  const int n = o.target_degree >= 0 ? o.target_degree : exp.degree();
  emit(out, curve_json(jacobi_to_bernstein(exp, n)));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Constrained dual Bernstein bases and their CAGD applications", "dualbern"};
  app.require_subcommand(1);

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "Exponent of (1-x) in the weight")->capture_default_str();
    sub->add_option("--beta", o.beta, "Exponent of x in the weight")->capture_default_str();
  };
  auto add_constraints = [&](CLI::App* sub) {
    sub->add_option("--k", o.k, "Derivative orders matched at 0")->capture_default_str();
    sub->add_option("--l", o.l, "Derivative orders matched at 1")->capture_default_str();
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "Input JSON document ('-' for stdin)")->capture_default_str();
  };

  CLI::App* table = app.add_subcommand("dual-table", "Bezier coefficients of the constrained dual basis");
  table->add_option("--n", o.n, "Degree")->required();
  add_constraints(table);
  add_params(table);
  table->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  table->add_flag("--verify", o.verify, "Compare against the exact Gram-inverse oracle");

  CLI::App* reduce = app.add_subcommand("reduce", "Constrained multi-degree reduction");
  add_input(reduce);
  reduce->add_option("--m", o.m, "Target degree")->required();
  add_constraints(reduce);
  add_params(reduce);

  CLI::App* roots = app.add_subcommand("roots", "Roots in [0,1] by quadratic clipping");
  add_input(roots);
  roots->add_option("--tol", o.tol, "Enclosure width")->capture_default_str();
  roots->add_option("--max-iter", o.max_iter, "Clip/bisect steps per branch")->capture_default_str();

  CLI::App* rational = app.add_subcommand("rational-approx", "Polynomial approximation of a rational curve");
  add_input(rational);
  rational->add_option("--m", o.m, "Target degree")->required();
  add_constraints(rational);
  add_params(rational);
  rational->add_option("--nodes", o.nodes, "Quadrature nodes (0: 4(n+m))")->capture_default_str();

  CLI::App* convert = app.add_subcommand("convert", "Bernstein <-> shifted Jacobi conversion");
  add_input(convert);
  convert->add_option("--to", o.to, "Target basis")->required()->check(CLI::IsMember({"jacobi", "bernstein"}));
  convert->add_option("--n", o.target_degree, "Bernstein degree for --to bernstein");
  add_params(convert);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dualbern: " << e.what() << '\n';
    return kParameterError;
  }

  try {
    if (table->parsed()) return cmd_dual_table(o, out);
    if (reduce->parsed()) return cmd_reduce(o, in, out);
    if (roots->parsed()) return cmd_roots(o, in, out);
    if (rational->parsed()) return cmd_rational_approx(o, in, out);
    if (convert->parsed()) {
      return cmd_convert(o, convert->count("--alpha") > 0, convert->count("--beta") > 0, in, out);
    }
  } catch (const InputError& e) {
    err << "dualbern: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    err << "dualbern: invalid document: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    // domain_error, out_of_range, invalid_argument, length_error
    err << "dualbern: " << e.what() << '\n';
    return kParameterError;
  } catch (const std::exception& e) {
    err << "dualbern: internal error: " << e.what() << '\n';
    return 1;
  }
  return kParameterError;
}

}  // namespace dualbern::cli
