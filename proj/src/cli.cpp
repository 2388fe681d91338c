#include "polytree/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "polytree/boundary.hpp"
#include "polytree/oracle.hpp"
#include "polytree/solvers.hpp"
#include "polytree/spherical.hpp"
#include "polytree/suite.hpp"

namespace polytree {

namespace {

constexpr const char* kCsvBanner = "# polytree-csv v1\n";

std::vector<int> parse_depths(const std::string& text) {
  int start = 0, stop = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::istringstream is(text);
  if (!(is >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
      !is.eof()) {
    throw ParameterError("depths must be 'start:stop:step', got '" + text + "'");
  }
  if (step < 1 || start < 0 || stop < start) {
    throw ParameterError("depths range '" + text + "' is empty or invalid");
  }
  std::vector<int> out;
  for (int d = start; d <= stop; d += step) out.push_back(d);
  return out;
}

std::string csv(Complex z) {
  return format_sig17(z.real()) + "," + format_sig17(z.imag());
}

// scaled value as two columns; values beyond double range print as inf
std::string csv_scaled(const ScaledComplex& v) {
  if (v.is_zero() || v.log_abs() <= 709.0) return csv(v.to_complex());
  const double inf = std::numeric_limits<double>::infinity();
  return csv(Complex(v.mantissa.real() > 0 ? inf : -inf,
                     v.mantissa.imag() > 0 ? inf : -inf));
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream;

  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream = &fallback;
      return;
    }
    file.open(path);
    if (!file) throw IoError("cannot open output file '" + path + "'");
    stream = &file;
  }
  std::ostream& out() { return *stream; }
};

void emit_report(std::ostream& os, const ConvergenceReport& rep,
                 const std::string& end_text, int k_column) {
  for (const auto& row : rep.rows) {
    if (k_column >= 0) os << k_column << ",";
    os << end_text << "," << rep.width << "," << row.depth << ","
       << to_string(row.vertex) << "," << csv(row.value) << ","
       << csv(rep.target) << "," << format_sig17(row.abs_error) << "\n";
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"lambda-polyharmonic function experiments on the (q+1)-regular tree"};
  app.require_subcommand(1);

  // shared knobs; each subcommand registers the ones it uses
  int q = 2;
  std::string lambda_text = "2";
  int n = 0;
  int a = 0;
  std::string g_path, nu_path, end_text, depths_text = "1:41:5", output_path;
  int max_radius = 40, max_depth = 40, oracle_d = 1, oracle_n = 2000;
  int random_ends = 0;
  std::uint64_t seed = 20250810ull;
  std::vector<std::string> end_texts;
  std::vector<std::string> riquier_paths(8);

  const auto add_common = [&](CLI::App* cmd, bool with_lambda = true) {
    cmd->add_option("--q", q, "branching parameter (each vertex has q+1 neighbours)")
        ->required();
    if (with_lambda) {
      cmd->add_option("--lambda", lambda_text, "eigenvalue, 're' or 're,im'")
          ->required();
    }
    cmd->add_option("--output", output_path, "output file (default: stdout)");
  };

  CLI::App* spectral = app.add_subcommand("spectral", "spectral constants and identity residuals");
  add_common(spectral);

  CLI::App* spherical = app.add_subcommand("spherical", "radial polyspherical profile");
  add_common(spherical);
  spherical->add_option("--n", n, "polyharmonic order index");
  spherical->add_option("--max-radius", max_radius, "largest radius in the profile");

  CLI::App* dirichlet = app.add_subcommand("dirichlet", "Dirichlet boundary-convergence probe");
  add_common(dirichlet);
  dirichlet->add_option("--g", g_path, "boundary function file")->required();
  dirichlet->add_option("--end", end_text, "probe end, '<vertex>|<period>'")->required();
  dirichlet->add_option("--a", a, "cone width");
  dirichlet->add_option("--depths", depths_text, "probe depths start:stop:step");

  CLI::App* riquier = app.add_subcommand("riquier", "Riquier probe for data g_0..g_{n-1}");
  add_common(riquier);
  riquier->add_option("--n", n, "number of boundary data")->required();
  for (int k = 0; k < 8; ++k) {
    riquier->add_option("--g" + std::to_string(k), riquier_paths[k],
                        "boundary function file for order " + std::to_string(k));
  }
  riquier->add_option("--end", end_text, "probe end")->required();
  riquier->add_option("--a", a, "cone width");
  riquier->add_option("--depths", depths_text, "probe depths start:stop:step");

  CLI::App* fatou = app.add_subcommand("fatou", "cone probe of a distribution transform");
  add_common(fatou);
  fatou->add_option("--n", n, "polyharmonic order index");
  fatou->add_option("--nu", nu_path, "distribution file (ac/pm lines)")->required();
  fatou->add_option("--end", end_text, "probe end")->required();
  fatou->add_option("--a", a, "cone width");
  fatou->add_option("--depths", depths_text, "probe depths start:stop:step");

  CLI::App* maximal = app.add_subcommand("maximal", "maximal function inequality per end");
  add_common(maximal);
  maximal->add_option("--n", n, "polyharmonic order index");
  maximal->add_option("--g", g_path, "boundary function file")->required();
  maximal->add_option("--end", end_texts, "probe end (repeatable)");
  maximal->add_option("--random-ends", random_ends, "number of random ends to add");
  maximal->add_option("--seed", seed, "seed for random ends");
  maximal->add_option("--max-depth", max_depth, "deepest cone member sampled");

  CLI::App* oracle = app.add_subcommand("oracle", "first-passage series vs closed form");
  add_common(oracle);
  oracle->add_option("--d", oracle_d, "graph distance");
  oracle->add_option("--N", oracle_n, "series truncation");

  CLI::App* suite = app.add_subcommand("suite", "run all acceptance checks");
  suite->add_option("--seed", seed, "seed for the randomized suites");

  std::vector<const char*> argv;
  argv.push_back("polytree");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (suite->parsed()) {
    OutputTarget target(output_path, out);
    return run_suite(target.out(), seed);
  }

  OutputTarget target(output_path, out);
  std::ostream& os = target.out();

  if (spectral->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    const SpectralResiduals res = spectral_residuals(ctx);
    os << kCsvBanner
       << "q,lambda_re,lambda_im,rho,regime,s_re,s_im,F_re,F_im,Fc_re,Fc_im,"
          "a_re,a_im,ac_re,ac_im,res_quadratic,res_product,res_coefficient,"
          "res_s_squared,margin_lower,margin_upper\n";
    os << q << "," << csv(ctx.lambda) << "," << format_sig17(ctx.rho()) << ","
       << (ctx.regime == SpectralRegime::OutsideDisk ? "outside-disk" : "resolvent-only")
       << "," << csv(ctx.s) << "," << csv(ctx.F) << "," << csv(ctx.Fc) << ","
       << csv(ctx.a) << "," << csv(ctx.ac) << ","
       << format_sig17(res.quadratic) << "," << format_sig17(res.product) << ","
       << format_sig17(res.coefficient) << "," << format_sig17(res.s_squared) << ","
       << format_sig17(res.margin_lower) << "," << format_sig17(res.margin_upper)
       << "\n";
    return 0;
  }

  if (spherical->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    const KernelSpec spec = make_kernel_spec(ctx, n);
    if (max_radius < 1) throw ParameterError("--max-radius must be >= 1");
    os << kCsvBanner
       << "radius,re,im,abs,asymptotic_re,asymptotic_im,ratio_abs\n";
    for (int r = 1; r <= max_radius; ++r) {
      const ScaledComplex value = phi_n_scaled(spec, r);
      const ScaledComplex asym = asymptotic_phi_n_scaled(spec, r);
      const double ratio_abs =
          value.is_zero() ? 0.0 : std::exp(value.log_abs() - asym.log_abs());
      os << r << "," << csv_scaled(value) << ","
         << format_sig17(value.is_zero() ? 0.0
                                         : std::exp(std::min(709.0, value.log_abs())))
         << "," << csv_scaled(asym) << "," << format_sig17(ratio_abs) << "\n";
    }
    return 0;
  }

  if (dirichlet->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    const End xi = parse_end(q, end_text);
    const std::vector<int> depths = parse_depths(depths_text);
    const LocallyConstantFunction g = load_boundary_function(q, g_path);
    const Evaluator h = dirichlet_solve(ctx, g);
    const Complex targetv = evaluate_function(g, xi);
    const ConvergenceReport rep =
        convergence_probe(h, 0, ctx, xi, a, depths, targetv);
    os << kCsvBanner
       << "end,a,depth,vertex,value_re,value_im,target_re,target_im,abs_error\n";
    emit_report(os, rep, end_text, -1);
    return 0;
  }

  if (riquier->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    if (n < 1 || n > 8) throw ParameterError("riquier: --n must be in [1, 8]");
    const End xi = parse_end(q, end_text);
    const std::vector<int> depths = parse_depths(depths_text);
    std::vector<LocallyConstantFunction> data;
    for (int k = 0; k < n; ++k) {
      if (riquier_paths[k].empty()) {
        throw ParameterError("riquier: missing --g" + std::to_string(k));
      }
      data.push_back(load_boundary_function(q, riquier_paths[k]));
    }
    const RiquierSolution sol = riquier_solve(ctx, data);
    os << kCsvBanner
       << "k,end,a,depth,vertex,value_re,value_im,target_re,target_im,abs_error\n";
    for (int k = 0; k < n; ++k) {
      // probe (f_0 + ... + f_k) / Phi_k against g_k(xi)
      std::vector<Evaluator> partial(sol.components.begin(),
                                     sol.components.begin() + k + 1);
      const auto parts = std::make_shared<std::vector<Evaluator>>(std::move(partial));
      const Evaluator numerator(ctx, k, [parts](const Vertex& x) {
        ScaledComplex acc = ScaledComplex::zero();
        for (const Evaluator& f : *parts) acc = acc + f.scaled(x);
        return acc;
      });
      const Complex targetv = evaluate_function(data[k], xi);
      const ConvergenceReport rep =
          convergence_probe(numerator, k, ctx, xi, a, depths, targetv);
      emit_report(os, rep, end_text, k);
    }
    return 0;
  }

  if (fatou->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    const End xi = parse_end(q, end_text);
    const std::vector<int> depths = parse_depths(depths_text);
    const BoundaryDistribution nu = load_distribution(q, nu_path);
    const Evaluator f = poisson_transform(ctx, n, nu);
    const Complex targetv = density_value_at(nu, xi);
    const ConvergenceReport rep =
        convergence_probe(f, n, ctx, xi, a, depths, targetv);
    os << kCsvBanner
       << "end,a,depth,vertex,value_re,value_im,target_re,target_im,abs_error\n";
    emit_report(os, rep, end_text, -1);
    return 0;
  }

  if (maximal->parsed()) {
    const SpectralContext ctx = make_context(q, parse_complex(lambda_text));
    const LocallyConstantFunction g = load_boundary_function(q, g_path);
    std::vector<std::pair<std::string, End>> ends;
    for (const std::string& text : end_texts) {
      ends.emplace_back(text, parse_end(q, text));
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < random_ends; ++i) {
      Vertex prefix;
      const int d = 1 + static_cast<int>(rng() % 3);
      for (int j = 0; j < d; ++j) {
        const int hi = (j == 0) ? q : q - 1;
        prefix.word.push_back(static_cast<int>(rng() % (hi + 1)));
      }
      std::vector<int> period{static_cast<int>(rng() % q)};
      End xi(std::move(prefix), std::move(period));
      ends.emplace_back(to_string(xi), std::move(xi));
    }
    if (ends.empty()) throw ParameterError("maximal: no ends given");
    os << kCsvBanner << "end,a,Mg,frak_M_a,Ca_Mg,satisfied\n";
    for (const auto& [text, xi] : ends) {
      const double mg = hl_maximal(q, g, xi);
      for (int width : {0, 1, 2}) {
        const double lhs = frak_M_a(ctx, n, g, xi, width, max_depth);
        const double rhs = C_a_constant(ctx, n, width) * mg;
        os << text << "," << width << "," << format_sig17(mg) << ","
           << format_sig17(lhs) << "," << format_sig17(rhs) << ","
           << (lhs <= rhs ? 1 : 0) << "\n";
      }
    }
    return 0;
  }

  if (oracle->parsed()) {
    const Complex lambda = parse_complex(lambda_text);
    const SpectralContext ctx = make_context(q, lambda);
    if (oracle_d < 1) throw ParameterError("--d must be >= 1");
    if (oracle_n < 1) throw ParameterError("--N must be >= 1");
    const FirstPassageTable table = first_passage_table(q, oracle_d, oracle_n);
    const SeriesResult r = truncated_series(table, oracle_d, lambda);
    const Complex closed = F_pow(ctx, oracle_d);
    os << kCsvBanner
       << "q,lambda_re,lambda_im,d,N,series_re,series_im,tail_bound,"
          "closed_re,closed_im,abs_diff\n";
    os << q << "," << csv(lambda) << "," << oracle_d << "," << oracle_n << ","
       << csv(r.value) << "," << format_sig17(r.tail_bound) << ","
       << csv(closed) << "," << format_sig17(std::abs(r.value - closed)) << "\n";
    return 0;
  }

  err << "no subcommand selected\n";
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return 3;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const SpectrumError& e) {
    err << "spectrum error: " << e.what() << "\n";
    return 2;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateError& e) {
    err << "degenerate error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const ThresholdError& e) {
    err << "threshold error: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    err << "overflow error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace polytree
