#include "lrange/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "lrange/errors.hpp"
#include "lrange/io.hpp"
#include "lrange/verify.hpp"
#include "lrange/witness.hpp"

namespace lrange::cli {

namespace {

using io::Json;

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

Json config_json(const RunConfig& c) {
  Json alphas = Json::array();
  for (double a : c.alphas) alphas.push_back(a);
  return {{"command", c.command}, {"inputs", c.inputs}, {"seed", c.seed},     {"samples", c.samples},
          {"tol", c.tol},         {"alphas", alphas},   {"out", c.out},       {"format", c.format},
          {"n", c.n},             {"m", c.m},           {"l", c.l},           {"restarts", c.restarts},
          {"eps", c.eps}};
}

void write_text(const Context& ctx, const std::string& text) {
  if (ctx.cfg.out.empty()) {
    ctx.out << text;
    ctx.out.flush();
    return;
  }
  std::ofstream file(ctx.cfg.out, std::ios::binary);
  if (!file) throw InputError("cannot open output file '" + ctx.cfg.out + "'");
  file << text;
}

void write_json(const Context& ctx, Json body) {
  Json doc;
  doc["config"] = config_json(ctx.cfg);
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  write_text(ctx, doc.dump(2) + "\n");
}

Json load_input(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw InputError("--in is required");
  return io::parse_file(cfg.inputs.front());
}

void require_low_dim(const LinearMapSpec& map) {
  if (map.out_dim() > 3) {
    throw DimensionError("map has l = " + std::to_string(map.out_dim()) +
                         "; witnesses need l <= 3 (for l >= 4 inclusion can fail, see `lrange counterexample`)");
  }
}

DescentOptions descent_options(const RunConfig& cfg) {
  DescentOptions opts;
  opts.seed = cfg.seed;
  opts.restarts = cfg.restarts;
  opts.membership_tol = cfg.tol;
  return opts;
}

int report_exit(const CertReport& r) { return r.pass() ? kExitPass : kExitViolation; }

int cmd_sample(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  const HermitianTuple a = io::tuple_from_json(io::require(in, "tuple", ""), "tuple");
  const PointCloud cloud = sample_orbit_cloud(map, a, ctx.cfg.samples, ctx.cfg.seed);
  if (ctx.cfg.format == "csv") {
    write_text(ctx, io::cloud_csv(cloud));
  } else {
    Json points = Json::array();
    for (const auto& p : cloud.points) points.push_back(io::to_json(p));
    write_json(ctx, {{"cloud", {{"l", cloud.l}, {"seed", cloud.seed}, {"count", cloud.count}, {"points", points}}}});
  }
  return kExitPass;
}

int cmd_witness(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  require_low_dim(map);
  const DiagonalTuple d = io::diagonal_from_json(io::require(in, "diagonal", ""), "diagonal");
  const PinchChain chain = io::chain_from_json(io::require(in, "chain", ""), "chain");
  const UnitaryMatrix u =
      in.contains("unitary") ? io::unitary_from_json(in["unitary"], "unitary") : UnitaryMatrix::identity(d.dim());
  if (u.dim() != d.dim()) throw InputError("invalid input at 'unitary': dimension differs from the diagonal tuple");

  const RealPoint target = eval_map(map, conjugate_tuple(apply_chain(chain, d).to_hermitian(), u));
  try {
    const Witness w = chain_witness(d, map, chain, u, ctx.cfg.tol);
    const bool pass = w.residual <= ctx.cfg.tol;
    write_json(ctx, {{"verdict", pass ? "pass" : "fail"}, {"target", io::to_json(target)}, {"witness", io::to_json(w)}});
    return pass ? kExitPass : kExitViolation;
  } catch (const WitnessError& e) {
    write_json(ctx, {{"verdict", "fail"}, {"target", io::to_json(target)}, {"error", e.what()}});
    ctx.err << "witness: " << e.what() << "\n";
    return kExitViolation;
  }
}

int cmd_star_check(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  require_low_dim(map);
  const DiagonalTuple d = io::diagonal_from_json(io::require(in, "diagonal", ""), "diagonal");
  if (map.tuple_size() != d.size() || map.dim() != d.dim()) throw DimensionError("map and diagonal shapes disagree");
  if (map.out_dim() == 3 && d.dim() < 3) throw DimensionError("star check with l = 3 needs n >= 3");
  for (double a : ctx.cfg.alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("invalid input at '--alphas': values must lie in [0, 1]");
  }
  const CertReport r = check_star_shaped(map, d, ctx.cfg.samples, ctx.cfg.alphas, ctx.cfg.tol, ctx.cfg.seed);
  write_json(ctx, {{"report", io::to_json(r)}});
  return report_exit(r);
}

int cmd_convexity(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  const HermitianTuple a = io::tuple_from_json(io::require(in, "tuple", ""), "tuple");
  const CertReport r = check_convex(map, a, ctx.cfg.samples, ctx.cfg.tol, ctx.cfg.seed, descent_options(ctx.cfg));
  write_json(ctx, {{"report", io::to_json(r)}});
  return report_exit(r);
}

int cmd_inclusion(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  const HermitianTuple a = io::tuple_from_json(io::require(in, "tuple", ""), "tuple");
  const CertReport r =
      check_ct_inclusion(map, a, ctx.cfg.eps, ctx.cfg.samples, ctx.cfg.tol, ctx.cfg.seed, descent_options(ctx.cfg));
  write_json(ctx, {{"report", io::to_json(r)}});
  return report_exit(r);
}

int cmd_counterexample(Context& ctx) {
  const CounterexampleReport r =
      run_counterexample(ctx.cfg.n, ctx.cfg.m, ctx.cfg.l, ctx.cfg.restarts, ctx.cfg.seed);
  write_json(ctx, {{"report",
                    {{"kind", "counterexample"},
                     {"verdict", r.pass ? "pass" : "fail"},
                     {"hat_distance", r.hat_distance},
                     {"distance", r.distance},
                     {"analytic_distance", r.analytic_distance},
                     {"restarts", r.restarts}}}});
  return r.pass ? kExitPass : kExitViolation;
}

int cmd_ellipsoid(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  require_low_dim(map);
  const DiagonalTuple d = io::diagonal_from_json(io::require(in, "diagonal", ""), "diagonal");
  if (map.tuple_size() != d.size() || map.dim() != d.dim()) throw DimensionError("map and diagonal shapes disagree");
  if (d.dim() < 2) throw DimensionError("ellipsoid slice needs n >= 2");
  const UnitaryMatrix u =
      in.contains("unitary") ? io::unitary_from_json(in["unitary"], "unitary") : UnitaryMatrix::identity(d.dim());
  if (u.dim() != d.dim()) throw InputError("invalid input at 'unitary': dimension differs from the diagonal tuple");
  const EllipsoidParams params = slice_params(d, u, map.lifted(3));
  Json body = {{"ellipsoid", io::to_json(params)}};
  if (in.contains("target")) {
    const RealPoint y = io::vector_from_json(in["target"], "target");
    if (y.size() != map.out_dim()) throw InputError("invalid input at 'target': expected l entries");
    Eigen::Vector3d y3 = Eigen::Vector3d::Zero();
    y3.head(y.size()) = y;
    const MembershipVerdict v = slice_membership(params, y3, ctx.cfg.tol);
    const char* kind = v.kind == MembershipKind::Inside ? "inside" : v.kind == MembershipKind::OnSurface ? "on_surface"
                                                                                                        : "outside";
    body["membership"] = {{"kind", kind}, {"theta", v.theta}, {"phi", v.phi}, {"distance", v.distance},
                          {"rank", v.rank}};
  }
  write_json(ctx, std::move(body));
  return kExitPass;
}

int cmd_membership(Context& ctx) {
  const Json in = load_input(ctx.cfg);
  const LinearMapSpec map = io::map_from_json(io::require(in, "map", ""), "map");
  const HermitianTuple a = io::tuple_from_json(io::require(in, "tuple", ""), "tuple");
  const RealPoint y = io::vector_from_json(io::require(in, "target", ""), "target");
  if (y.size() != map.out_dim()) throw InputError("invalid input at 'target': expected l entries");
  const MembershipResult r = orbit_distance(map, a, y, descent_options(ctx.cfg));
  const bool pass = r.distance <= ctx.cfg.tol;
  write_json(ctx, {{"verdict", pass ? "pass" : "fail"}, {"result", io::to_json(r)}});
  return pass ? kExitPass : kExitViolation;
}

}  // namespace

std::vector<double> parse_alphas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw InputError("invalid input at '--alphas': cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("invalid input at '--alphas': empty list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sampling and certification tools for L-numerical ranges", "lrange"};
  app.require_subcommand(1);

  struct Sub {
    RunConfig cfg;
    std::string alphas;
    std::function<int(Context&)> fn;
    CLI::App* app = nullptr;
  };
  std::map<std::string, Sub> subs;

  auto add = [&](const std::string& name, const std::string& help, std::function<int(Context&)> fn) -> Sub& {
    Sub& s = subs[name];
    s.cfg.command = name;
    s.fn = std::move(fn);
    s.app = app.add_subcommand(name, help);
    s.app->add_option("--out", s.cfg.out, "Output path (default stdout)");
    s.app->add_option("--seed", s.cfg.seed, "Seed");
    return s;
  };
  auto with_input = [](Sub& s) {
    s.app->add_option("--in", s.cfg.inputs, "Input JSON")->required()->expected(1);
  };
  auto with_samples = [](Sub& s, std::size_t def, const char* help) {
    s.cfg.samples = def;
    s.app->add_option("--n", s.cfg.samples, help)->check(CLI::PositiveNumber);
  };
  auto with_tol = [](Sub& s, double def) {
    s.cfg.tol = def;
    s.app->add_option("--tol", s.cfg.tol, "Tolerance")->check(CLI::PositiveNumber);
  };
  auto with_restarts = [](Sub& s, int def) {
    s.cfg.restarts = def;
    s.app->add_option("--restarts", s.cfg.restarts, "Descent restarts")->check(CLI::PositiveNumber);
  };

  {
    Sub& s = add("sample", "Sample points of W_L(A)", cmd_sample);
    with_input(s);
    with_samples(s, 1000, "Number of points");
    s.cfg.format = "csv";
    s.app->add_option("--format", s.cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  }
  {
    Sub& s = add("witness", "Witness unitary for a pinched diagonal tuple", cmd_witness);
    with_input(s);
    with_tol(s, 1e-6);
  }
  {
    Sub& s = add("star-check", "Certify star points of W_L(D)", cmd_star_check);
    with_input(s);
    with_samples(s, 20, "Number of Haar unitaries");
    with_tol(s, 1e-3);
    s.app->add_option("--alphas", s.alphas, "Comma-separated alpha grid");
  }
  {
    Sub& s = add("convexity", "Test midpoints of sampled pairs for membership", cmd_convexity);
    with_input(s);
    with_samples(s, 50, "Number of pairs");
    with_tol(s, 1e-6);
    with_restarts(s, 8);
  }
  {
    Sub& s = add("inclusion", "Test W_L(A(eps)) against W_L(A) for l = 2", cmd_inclusion);
    with_input(s);
    with_samples(s, 30, "Number of sampled points");
    with_tol(s, 1e-6);
    with_restarts(s, 8);
    s.app->add_option("--eps", s.cfg.eps, "Off-diagonal scale in [0, 1]")->check(CLI::Range(0.0, 1.0));
  }
  {
    Sub& s = add("counterexample", "Distance query on the l = 4 instance where inclusion fails", cmd_counterexample);
    s.app->add_option("--n", s.cfg.n, "Matrix size (>= 2)");
    s.app->add_option("--m", s.cfg.m, "Tuple size (>= 1)");
    s.app->add_option("--l", s.cfg.l, "Output dimension (>= 4)");
    with_restarts(s, 32);
  }
  {
    Sub& s = add("ellipsoid", "Slice ellipsoid parameters of W_L(D) at U", cmd_ellipsoid);
    with_input(s);
    with_tol(s, 1e-6);
  }
  {
    Sub& s = add("membership", "Distance from a point to W_L(A)", cmd_membership);
    with_input(s);
    with_tol(s, 1e-6);
    with_restarts(s, 8);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitInvalid;
  }

  for (auto& [name, s] : subs) {
    if (!s.app->parsed()) continue;
    Context ctx{s.cfg, out, err};
    try {
      if (!s.alphas.empty()) ctx.cfg.alphas = parse_alphas(s.alphas);
      if (name != "star-check") ctx.cfg.alphas.clear();
      return s.fn(ctx);
    } catch (const std::invalid_argument& e) {
      err << "lrange " << name << ": " << e.what() << "\n";
      return kExitInvalid;
    } catch (const std::exception& e) {
      err << "lrange " << name << ": " << e.what() << "\n";
      return kExitViolation;
    }
  }
  return kExitInvalid;
}

}  // namespace lrange::cli
