#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "weylq/json_io.hpp"
#include "weylq/rng.hpp"
#include "weylq/version.hpp"

namespace {

using namespace weylq;

struct GlobalOpts {
  std::string out;
  std::string format = "csv";
  uint64_t seed = 1;
  int threads = 1;
};

void write_output(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw argument_error("cannot open output file " + g.out);
  f << text;
}

std::string csv_header(const std::vector<std::pair<std::string, std::string>>& config) {
  std::ostringstream os;
  os << "# version=" << kVersion << "\n";
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
  return os.str();
}

Json json_config(const std::vector<std::pair<std::string, std::string>>& config) {
  Json j;
  for (const auto& [k, v] : config) j[k] = v;
  return j;
}

RVec parse_angle_list(const std::string& s, int rank) {
  RVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (static_cast<int>(out.size()) != rank)
    throw argument_error("expected " + std::to_string(rank) + " angle coordinates");
  return out;
}

IVec parse_int_list(const std::string& s, int rank) {
  IVec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  if (static_cast<int>(out.size()) != rank)
    throw argument_error("expected " + std::to_string(rank) + " coordinates");
  return out;
}

GroupForm parse_form(const std::string& s) {
  if (s == "simply_connected") return GroupForm::simply_connected;
  if (s == "adjoint") return GroupForm::adjoint;
  throw argument_error("form must be simply_connected or adjoint");
}

Json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw argument_error("cannot open input file " + path);
  Json j = Json::parse(f, nullptr, false);
  if (j.is_discarded()) throw schema_error("/", "input is not valid JSON");
  return j;
}

// ---------------------------------------------------------------------------

int cmd_charconv(const GlobalOpts& g, const std::string& series, int rank,
                 const std::string& form_s, const std::string& angle,
                 const std::string& theta, int shells, int shell_start, double threshold) {
  RootSystem rs = build_root_system(series_from_char(series.at(0)), rank, parse_form(form_s));
  std::string angle_spec = angle;
  if (!theta.empty()) {
    if (rank != 1) throw argument_error("--theta is the rank-1 shorthand; use --angle");
    angle_spec = theta;
  }
  if (angle_spec.empty()) throw argument_error("an angle (--angle or --theta) is required");
  TorusPoint t = torus_angle_exact(rs, parse_angle_list(angle_spec, rank));
  if (is_central(rs, t))
    throw argument_error("the torus point is central: the normalized character has "
                         "constant modulus 1 there");

  auto rows = convergence_scan(rs, t, unit_shells(shell_start, shells), g.threads);
  int first_below = -1;
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].num_weights > 0 && rows[i].max_abs < threshold) {
      first_below = static_cast<int>(i);
      break;
    }

  std::vector<std::pair<std::string, std::string>> config = {
      {"subcommand", "charconv"},   {"series", series},
      {"rank", std::to_string(rank)}, {"form", form_s},
      {"angle_2pi", angle_spec},    {"shells", std::to_string(shells)},
      {"shell_start", std::to_string(shell_start)},
      {"threshold", std::to_string(threshold)},
      {"seed", std::to_string(g.seed)}};

  if (g.format == "json") {
    Json jrows = Json::array();
    for (const auto& r : rows)
      jrows.push_back(Json{{"shell_lo", r.lo},
                           {"shell_hi", r.hi},
                           {"num_weights", r.num_weights},
                           {"max_normalized_abs", r.max_abs},
                           {"argmax_weight_coords", r.argmax}});
    Json out{{"version", kVersion},
             {"config", json_config(config)},
             {"rows", jrows},
             {"first_shell_below_threshold", first_below}};
    write_output(g, out.dump(2) + "\n");
    return 0;
  }
  std::ostringstream os;
  os << csv_header(config);
  os << "shell_lo,shell_hi,num_weights,max_normalized_abs,argmax_weight_coords\n";
  os.precision(17);
  for (const auto& r : rows) {
    os << r.lo << "," << r.hi << "," << r.num_weights << "," << r.max_abs << ",";
    for (size_t i = 0; i < r.argmax.size(); ++i) os << (i ? ";" : "") << r.argmax[i];
    os << "\n";
  }
  os << "# first_shell_below_threshold=" << first_below << "\n";
  write_output(g, os.str());
  return 0;
}

int cmd_multiplier(const GlobalOpts& g, const std::string& in, double horizon,
                   long long gram_dim) {
  ParsedMeasure parsed = parse_measure_json(load_json_file(in));
  Multiplier omega = multiplier_from_measure(parsed.rs, parsed.measure);
  HMDecomposition hm = hm_decompose(parsed.rs, omega, horizon, g.threads);
  GramReport gram =
      cp_gram_check(parsed.rs, omega, gram_basis_by_dim(parsed.rs, gram_dim), {}, g.threads);

  std::vector<std::pair<std::string, std::string>> config = {
      {"subcommand", "multiplier"},
      {"input", in},
      {"horizon", std::to_string(horizon)},
      {"gram_dim", std::to_string(gram_dim)},
      {"seed", std::to_string(g.seed)}};
  Json out{{"version", kVersion},
           {"config", json_config(config)},
           {"measure", Json{{"atoms", parsed.measure.atoms.size()},
                            {"total_variation", parsed.measure.total_variation},
                            {"positive", parsed.measure.positive}}},
           {"decomposition", hm_to_json(hm)},
           {"gram", gram_to_json(gram)}};
  write_output(g, out.dump(2) + "\n");
  return 0;
}

int cmd_fuse(const GlobalOpts& g, const std::string& series, int rank,
             const std::string& form_s, const std::string& lambda_s, const std::string& mu_s) {
  RootSystem rs = build_root_system(series_from_char(series.at(0)), rank, parse_form(form_s));
  Weight lambda{parse_int_list(lambda_s, rank)};
  Weight mu{parse_int_list(mu_s, rank)};
  FusionDecomposition dec = fuse(rs, lambda, mu);
  std::vector<std::pair<std::string, std::string>> config = {
      {"subcommand", "fuse"}, {"series", series}, {"rank", std::to_string(rank)},
      {"form", form_s},       {"lambda", lambda_s}, {"mu", mu_s}};
  Json out = fusion_to_json(rs, dec);
  out["version"] = kVersion;
  out["config"] = json_config(config);
  write_output(g, out.dump(2) + "\n");
  return 0;
}

int cmd_qcentral(const GlobalOpts& g, const std::string& in, double horizon, bool scan_zeros,
                 bool relation, int n, double q, int samples, const std::string& grid_re,
                 const std::string& grid_im, const std::string& direction) {
  if (scan_zeros) {
    QContext ctx = make_su_context(n, q);
    CVec dir(ctx.rs.rank);
    if (direction.empty()) {
      // Default scan direction: incommensurate coordinates, so different
      // roots cross the period lattice at different heights.
      for (int i = 0; i < ctx.rs.rank; ++i) dir[i] = std::pow(0.6180339887498949, i);
    } else {
      IVec d = parse_int_list(direction, ctx.rs.rank);
      for (int i = 0; i < ctx.rs.rank; ++i) dir[i] = double(d[i]);
    }
    auto parse_grid = [](const std::string& s, double dflt_lo, double dflt_hi, int dflt_n) {
      if (s.empty()) return std::tuple<double, double, int>(dflt_lo, dflt_hi, dflt_n);
      double lo, hi;
      int count;
      char c1, c2;
      std::istringstream is(s);
      if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 2)
        throw argument_error("grid must be lo:hi:count");
      return std::tuple<double, double, int>(lo, hi, count);
    };
    auto [re_lo, re_hi, re_n] = parse_grid(grid_re, -0.5, 2.5, 31);
    auto [im_lo, im_hi, im_n] = parse_grid(grid_im, 0.0, 1.2 * ctx.kappa, 41);

    std::vector<std::pair<std::string, std::string>> config = {
        {"subcommand", "qcentral"}, {"mode", "scan-zeros"},
        {"N", std::to_string(n)},   {"q", std::to_string(q)},
        {"grid_re", grid_re.empty() ? "default" : grid_re},
        {"grid_im", grid_im.empty() ? "default" : grid_im}};
    std::ostringstream os;
    os << csv_header(config);
    os << "re_coeff,im_coeff,abs_phi_one_2rho,zero_locus_predicate,in_margin_band\n";
    os.precision(17);
    IVec two_rho(ctx.rs.rank, 2);
    const double margin = 1e-3 * ctx.kappa;
    for (int i = 0; i < re_n; ++i)
      for (int j = 0; j < im_n; ++j) {
        double re = re_lo + (re_hi - re_lo) * i / (re_n - 1);
        double im = im_lo + (im_hi - im_lo) * j / (im_n - 1);
        CVec nu(ctx.rs.rank);
        for (int k = 0; k < ctx.rs.rank; ++k) nu[k] = Cplx(re, im) * dir[k];
        double value = std::abs(phi_one(ctx, nu, to_cvec(two_rho)));
        bool pred = zero_locus_predicate(ctx, nu);
        bool in_band = false;
        for (int ri = 0; ri < static_cast<int>(ctx.rs.positive_roots.size()); ++ri) {
          const Root& alpha = ctx.rs.positive_roots[ri];
          Cplx v = ctx.rs.pair_fw_c(nu, alpha.fw) / double(alpha.d);
          double step = ctx.lattice_step(ri);
          double kk = std::round(v.imag() / step);
          if (kk != 0 && std::hypot(v.real(), v.imag() - kk * step) < margin) in_band = true;
        }
        os << re << "," << im << "," << value << "," << (pred ? 1 : 0) << ","
           << (in_band ? 1 : 0) << "\n";
      }
    write_output(g, os.str());
    return 0;
  }

  if (relation) {
    QContext ctx = make_su_context(n, q);
    DetRng rng(g.seed);
    std::vector<std::pair<std::string, std::string>> config = {
        {"subcommand", "qcentral"}, {"mode", "relation-check"},
        {"N", std::to_string(n)},   {"q", std::to_string(q)},
        {"samples", std::to_string(samples)}, {"seed", std::to_string(g.seed)}};
    std::ostringstream os;
    os << csv_header(config);
    os << "sample,residual\n";
    os.precision(17);
    double worst = 0;
    for (int s = 0; s < samples; ++s) {
      CVec nu(ctx.rs.rank);
      Weight lambda{IVec(ctx.rs.rank, 0)};
      do {
        for (int i = 0; i < ctx.rs.rank; ++i)
          nu[i] = Cplx(rng.range(0.3, 2.5), rng.range(-0.3, 0.3) * ctx.kappa);
      } while (!is_generic_parameter(ctx, nu));
      for (int i = 0; i < ctx.rs.rank; ++i) lambda.fw[i] = rng.integer(0, 4);
      double r = relation_check(ctx, nu, lambda);
      worst = std::max(worst, r);
      os << s << "," << r << "\n";
    }
    os << "# max_residual=" << worst << "\n";
    write_output(g, os.str());
    return 0;
  }

  if (in.empty()) throw argument_error("qcentral decomposition requires --in <state.json>");
  CentralState state = parse_central_state_json(load_json_file(in));
  QContext ctx = make_su_context(state.n, state.q);
  DecompositionReport report = decompose_central_state(ctx, state, horizon, g.threads);
  std::vector<std::pair<std::string, std::string>> config = {
      {"subcommand", "qcentral"},
      {"mode", "decompose"},
      {"input", in},
      {"horizon", std::to_string(horizon)},
      {"seed", std::to_string(g.seed)}};
  Json out = decomposition_to_json(report);
  out["version"] = kVersion;
  out["config"] = json_config(config);
  write_output(g, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weyl characters, fusion rules, multiplier decay, and SU_q(N) "
               "central-state decompositions"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too

  GlobalOpts g;
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_option("--format", g.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "seed for randomized sampling");
  app.add_option("--threads", g.threads, "worker threads (results are thread-count independent)");

  // charconv
  auto* charconv = app.add_subcommand("charconv", "normalized-character convergence table");
  std::string series = "A", form_s = "simply_connected", angle, theta;
  int rank = 1, shells = 50, shell_start = 1;
  double threshold = 0.05;
  charconv->add_option("--series", series);
  charconv->add_option("--rank", rank);
  charconv->add_option("--form", form_s);
  charconv->add_option("--angle", angle, "exact angle coords, fractions of 2*pi, e.g. 1/4,0");
  charconv->add_option("--theta", theta, "rank-1 shorthand for --angle");
  charconv->add_option("--shells", shells);
  charconv->add_option("--shell-start", shell_start);
  charconv->add_option("--threshold", threshold);

  // multiplier
  auto* multiplier = app.add_subcommand("multiplier", "measure -> multiplier -> blind decomposition");
  std::string min_path;
  double mhorizon = 60.0;
  long long gram_dim = 50;
  multiplier->add_option("--in", min_path, "measure JSON")->required();
  multiplier->add_option("--horizon", mhorizon);
  multiplier->add_option("--gram-dim", gram_dim, "Gram basis: dominant weights with dim <= this");

  // fuse
  auto* fusec = app.add_subcommand("fuse", "tensor product decomposition");
  std::string fseries = "A", fform = "simply_connected", lambda_s, mu_s;
  int frank = 1;
  fusec->add_option("--series", fseries);
  fusec->add_option("--rank", frank);
  fusec->add_option("--form", fform);
  fusec->add_option("--lambda", lambda_s)->required();
  fusec->add_option("--mu", mu_s)->required();

  // qcentral (+ zeros alias)
  auto* qc = app.add_subcommand("qcentral", "central-state decomposition / scans");
  std::string qin, grid_re, grid_im, direction;
  double qhorizon = 30.0, qq = 0.5;
  int qn = 2, samples = 100;
  bool scan_zeros = false, relation = false;
  qc->add_option("--in", qin, "central state JSON");
  qc->add_option("--horizon", qhorizon);
  qc->add_flag("--scan-zeros", scan_zeros);
  qc->add_flag("--relation-check", relation);
  qc->add_option("--n", qn, "N of SU_q(N) (scan/relation modes)");
  qc->add_option("--q", qq, "q (scan/relation modes)");
  qc->add_option("--samples", samples);
  qc->add_option("--grid-re", grid_re, "lo:hi:count");
  qc->add_option("--grid-im", grid_im, "lo:hi:count");
  qc->add_option("--direction", direction, "scan direction in fw coords");

  auto* zeros = app.add_subcommand("zeros", "alias for qcentral --scan-zeros");
  std::string zgrid_re, zgrid_im, zdirection;
  double zq = 0.5;
  int zn = 2;
  zeros->add_option("--n", zn);
  zeros->add_option("--q", zq);
  zeros->add_option("--grid-re", zgrid_re, "lo:hi:count");
  zeros->add_option("--grid-im", zgrid_im, "lo:hi:count");
  zeros->add_option("--direction", zdirection);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage problems are semantic argument errors
  }

  try {
    if (charconv->parsed())
      return cmd_charconv(g, series, rank, form_s, angle, theta, shells, shell_start,
                          threshold);
    if (multiplier->parsed()) return cmd_multiplier(g, min_path, mhorizon, gram_dim);
    if (fusec->parsed()) return cmd_fuse(g, fseries, frank, fform, lambda_s, mu_s);
    if (qc->parsed())
      return cmd_qcentral(g, qin, qhorizon, scan_zeros, relation, qn, qq, samples, grid_re,
                          grid_im, direction);
    if (zeros->parsed())
      return cmd_qcentral(g, "", 0.0, true, false, zn, zq, 0, zgrid_re, zgrid_im, zdirection);
  } catch (const weylq::schema_error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const weylq::precision_error& e) {
    std::cerr << "numerical precondition failure: " << e.what() << "\n";
    return 4;
  } catch (const weylq::range_error& e) {
    std::cerr << "numerical range failure: " << e.what() << "\n";
    return 4;
  } catch (const weylq::argument_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weylq::configuration_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weylq::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const weylq::error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
