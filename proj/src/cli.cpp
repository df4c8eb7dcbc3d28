#include "opuc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "opuc/families.hpp"
#include "opuc/flows.hpp"
#include "opuc/identities.hpp"
#include "opuc/report.hpp"
#include "opuc/suite.hpp"

namespace opuc::cli {

namespace {

class UsageError : public OpucError {
 public:
  using OpucError::OpucError;
};

struct Options {
  std::vector<std::string> alpha;
  std::string input, output, format = "text";
  std::optional<int> n_max, n;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol;
  std::string z = "1,0", w = "0,1", z0 = "1,0";
  std::optional<int> q;
  std::string id, pair;
  std::string hamiltonian = "norm_inv_R";
  double dt = 1e-2;
  int steps = 100;
  std::size_t k = 0;
};

double parse_double(const std::string& s, const std::string& field) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError(field + ": cannot parse '" + s + "' as a number");
  return x;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VerblunskyData load_data(const Options& o) {
  if (!o.input.empty() && !o.alpha.empty()) throw UsageError("use either --input or --alpha, not both");
  if (!o.input.empty()) return parse_coefficients(read_file(o.input));
  std::vector<cplx> c;
  for (std::size_t k = 0; k < o.alpha.size(); ++k) c.push_back(parse_complex(o.alpha[k], "--alpha[" + std::to_string(k) + "]"));
  return VerblunskyData(std::move(c));
}

std::string cstr(cplx c) { return fmt_double(c.real()) + "," + fmt_double(c.imag()); }

void print_poly(std::ostream& out, const char* name, int n, const CPoly& p) {
  out << "  " << name << "_" << n << " = [";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) out << (i ? "; " : "") << cstr(p.coeffs()[i]);
  out << "]\n";
}

nlohmann::json poly_json(const CPoly& p) {
  auto j = nlohmann::json::array();
  for (cplx c : p.coeffs()) j.push_back(to_json(c));
  return j;
}

void write_output(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + o.output + "'");
  f << text;
  if (!f) throw UsageError("write to '" + o.output + "' failed");
}

int cmd_family(const Options& o, std::ostream& out) {
  const VerblunskyData v = load_data(o);
  const int n_max = o.n_max.value_or(static_cast<int>(v.size()));
  if (n_max < 0 || static_cast<std::size_t>(n_max) > v.size())
    throw UsageError("--n-max " + std::to_string(n_max) + " exceeds the " + std::to_string(v.size()) + " coefficients given");
  const PolyFamily fam = monic_families(v, n_max);
  const ReportFormat fmt = parse_format(o.format);
  std::ostringstream s;
  if (fmt == ReportFormat::Json) {
    nlohmann::json j = nlohmann::json::array();
    for (int n = 0; n <= n_max; ++n) {
      const auto u = static_cast<std::size_t>(n);
      nlohmann::json row{{"n", n},
                         {"Phi", poly_json(fam.phi[u])},
                         {"Phi_star", poly_json(fam.phi_star[u])},
                         {"Psi", poly_json(fam.psi[u])},
                         {"Psi_star", poly_json(fam.psi_star[u])},
                         {"norm", fam.norms[u]}};
      if (u < fam.wall.size()) {
        row["A"] = poly_json(fam.wall[u].a);
        row["A_star"] = poly_json(fam.wall[u].a_star);
        row["B"] = poly_json(fam.wall[u].b);
        row["B_star"] = poly_json(fam.wall[u].b_star);
      }
      j.push_back(row);
    }
    s << j.dump(2) << '\n';
  } else {
    for (int n = 0; n <= n_max; ++n) {
      const auto u = static_cast<std::size_t>(n);
      s << "n = " << n << "  norm = " << fmt_double(fam.norms[u]) << '\n';
      print_poly(s, "Phi", n, fam.phi[u]);
      print_poly(s, "Phi*", n, fam.phi_star[u]);
      print_poly(s, "Psi", n, fam.psi[u]);
      print_poly(s, "Psi*", n, fam.psi_star[u]);
      if (u < fam.wall.size()) {
        print_poly(s, "A", n, fam.wall[u].a);
        print_poly(s, "A*", n, fam.wall[u].a_star);
        print_poly(s, "B", n, fam.wall[u].b);
        print_poly(s, "B*", n, fam.wall[u].b_star);
      }
    }
  }
  write_output(o, out, s.str());
  return kPass;
}

// Pair slots: family members at level n, R (norm_inv_R), alpha:K, alphabar:K.
Jet slot_jet(const std::string& name, const IdentityInput& in, bool at_w) {
  const std::size_t N = in.ctx->dim();
  auto index = [&](const std::string& prefix) {
    const std::string rest = name.substr(prefix.size());
    std::size_t used = 0;
    long k = -1;
    try {
      k = std::stol(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size() || k < 0 || static_cast<std::size_t>(k) >= N)
      throw UsageError("coefficient index in '" + name + "' out of range (0.." + std::to_string(N) + "-1)");
    return static_cast<std::size_t>(k);
  };
  if (name.rfind("alphabar:", 0) == 0) return in.seeds->alpha_bar[index("alphabar:")];
  if (name.rfind("alpha:", 0) == 0) return in.seeds->alpha[index("alpha:")];
  if (name == "R") {
    if (!in.normalized) throw UsageError("R undefined: some rho_j = 0");
    return in.norm_inv;
  }
  static const std::pair<const char*, Obs> names[] = {
      {"Phi", Obs::Phi}, {"PhiStar", Obs::PhiStar}, {"Psi", Obs::Psi}, {"PsiStar", Obs::PsiStar},
      {"phi", Obs::phi}, {"phiStar", Obs::phiStar}, {"psi", Obs::psi}, {"psiStar", Obs::psiStar},
      {"A", Obs::A},     {"AStar", Obs::AStar},     {"B", Obs::B},     {"BStar", Obs::BStar}};
  for (const auto& [n, obs] : names) {
    if (name != n) continue;
    const int i = static_cast<int>(obs);
    if (i >= static_cast<int>(Obs::phi) && i <= static_cast<int>(Obs::psiStar) && !in.normalized)
      throw UsageError("normalized member " + name + " undefined: some rho_j = 0");
    if (obs >= Obs::A && !in.has_wall) throw UsageError(name + " at level " + std::to_string(in.n) + " needs more coefficients");
    return at_w ? in.at_w[obs] : in.at_z[obs];
  }
  throw UsageError("unknown slot '" + name + "'");
}

int cmd_bracket(const Options& o, std::ostream& out) {
  const VerblunskyData v = load_data(o);
  if (o.id.empty() == o.pair.empty()) throw UsageError("give exactly one of --id or --pair");
  const cplx z = parse_complex(o.z, "--z"), w = parse_complex(o.w, "--w");
  const int n = o.n.value_or(v.size() ? static_cast<int>(v.size()) - 1 : 0);
  if (n < 0 || static_cast<std::size_t>(n) > v.size())
    throw UsageError("--n " + std::to_string(n) + " out of range for " + std::to_string(v.size()) + " coefficients");

  const BracketContext ctx(v);
  const JetSeeds<Jet> seeds = seed_point<Jet>(v);
  const JetFamily fam = jet_families_from(seeds, n);
  const IdentityInput in = make_input(fam, seeds, ctx, n, z, w);
  std::ostringstream s;

  if (!o.pair.empty()) {
    const auto comma = o.pair.find(',');
    if (comma == std::string::npos) throw UsageError("--pair expects X,Y");
    const BracketValue b =
        bracket_with_scale(slot_jet(o.pair.substr(0, comma), in, false), slot_jet(o.pair.substr(comma + 1), in, true), ctx);
    s << "pair " << o.pair << " n=" << n << " z=" << cstr(z) << " w=" << cstr(w) << '\n';
    s << "lhs " << cstr(b.value) << '\n';
    write_output(o, out, s.str());
    return kPass;
  }

  std::string id = o.id;
  if (o.q) id += ".q" + std::to_string(*o.q);
  const IdentityDef* def = find_identity(id);
  if (!def) throw UsageError("unknown identity id '" + id + "'");
  if (!def->diagonal && z == w) {
    std::string hint = "z = w is singular for " + id;
    const auto dot = id.find('.');
    const std::string diag = "diag." + id.substr(dot + 1);
    if (find_identity(diag)) hint += "; use " + diag + " for the diagonal limit";
    throw UsageError(hint);
  }
  if (def->diagonal && z != w) throw UsageError(id + " is evaluated at z only; pass --w equal to --z");
  if (def->needs_nonzero_points && (z == cplx{0.0} || w == cplx{0.0})) throw UsageError(id + " needs nonzero z and w");
  if (def->needs_wall && !in.has_wall) throw UsageError(id + " at level n needs at least n+2 coefficients");
  if (def->needs_normalized && !in.normalized) throw UsageError(id + " needs rho_j > 0 for j < n");
  const Evaluation e = def->evaluate(in);
  const double residual = std::abs(e.lhs - e.rhs) / std::max(e.scale, 1.0);
  s << "id " << id << " n=" << n << " z=" << cstr(z) << " w=" << cstr(w) << '\n';
  s << "lhs " << cstr(e.lhs) << '\n' << "rhs " << cstr(e.rhs) << '\n';
  s << "residual " << fmt_double(residual) << " tol " << fmt_double(def->tolerance) << ' '
    << (residual < def->tolerance ? "PASS" : "FAIL") << '\n';
  write_output(o, out, s.str());
  return residual < def->tolerance ? kPass : kVerifyFail;
}

SuiteConfig suite_config(const Options& o) {
  SuiteConfig cfg;
  if (o.n_max) cfg.n_max = *o.n_max;
  if (cfg.n_max < 1) throw UsageError("--n-max must be at least 1");
  cfg.trials = o.trials;
  if (o.seed) {
    cfg.seed = *o.seed;
  } else if (const char* env = std::getenv("OPUC_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError(std::string("OPUC_SEED: cannot parse '") + env + "'");
    }
  }
  for (const auto& t : o.tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--tol expects ID=VALUE, got '" + t + "'");
    cfg.tol_overrides[t.substr(0, eq)] = parse_double(t.substr(eq + 1), "--tol " + t.substr(0, eq));
  }
  return cfg;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const SuiteConfig cfg = suite_config(o);
  const ReportFormat fmt = parse_format(o.format);
  const SuiteReport rep = run_verification(cfg);
  std::ostringstream s;
  write_report(s, rep, fmt);
  write_output(o, out, s.str());
  return rep.all_pass() ? kPass : kVerifyFail;
}

int cmd_flow(const Options& o, std::ostream& out, std::ostream& err) {
  const VerblunskyData v = load_data(o);
  if (v.size() == 0) throw UsageError("flow needs at least one coefficient");
  Hamiltonian h;
  h.kind = parse_hamiltonian(o.hamiltonian);
  h.n = o.n.value_or(1);
  h.z0 = parse_complex(o.z0, "--z");
  h.k = o.k;
  if (o.steps < 0) throw UsageError("--steps must be non-negative");
  if (!(o.dt > 0) || !std::isfinite(o.dt)) throw UsageError("--dt must be positive");
  hamiltonian_jet(h, v);  // validates the level before any output

  const ReportFormat fmt = parse_format(o.format);
  const std::size_t N = v.size();
  const int rn = std::min<int>(h.n, static_cast<int>(N));
  const int dn = std::min<int>(h.n, static_cast<int>(N) - 1);

  std::ostringstream s;
  nlohmann::json rows = nlohmann::json::array();
  if (fmt != ReportFormat::Json) {
    s << (fmt == ReportFormat::Csv ? "" : "# ") << "step,t";
    for (std::size_t k = 0; k < N; ++k) s << ",alpha" << k << "_re,alpha" << k << "_im";
    s << ",R_n,abs_alpha_last,D_re,D_im\n";
  }
  auto observe = [&](int step, const FlowState& st) {
    const double r = norm_inv_value(st.v, rn);
    const double last = std::abs(st.v[N - 1]);
    const cplx d = discriminant(st.v, dn, h.z0);
    if (fmt == ReportFormat::Json) {
      nlohmann::json a = nlohmann::json::array();
      for (cplx c : st.v.coeffs()) a.push_back(to_json(c));
      rows.push_back({{"step", step}, {"t", st.t}, {"alpha", a}, {"R_n", r}, {"abs_alpha_last", last}, {"D", to_json(d)}});
      return;
    }
    s << step << ',' << fmt_double(st.t);
    for (cplx c : st.v.coeffs()) s << ',' << fmt_double(c.real()) << ',' << fmt_double(c.imag());
    s << ',' << fmt_double(r) << ',' << fmt_double(last) << ',' << fmt_double(d.real()) << ',' << fmt_double(d.imag())
      << '\n';
  };
  int code = kPass;
  try {
    rk4_flow({v, 0.0}, h, o.dt, o.steps, observe);
  } catch (const DiscExit& e) {
    err << "error: " << e.what() << '\n';
    code = kVerifyFail;
  }
  if (fmt == ReportFormat::Json) {
    nlohmann::json j{{"hamiltonian", h.name()}, {"n", h.n}, {"dt", o.dt}, {"steps", o.steps}, {"trajectory", rows}};
    s << j.dump(2) << '\n';
  }
  write_output(o, out, s.str());
  return code;
}

void add_data_flags(CLI::App* c, Options& o) {
  c->add_option("--alpha", o.alpha, "Verblunsky coefficient re,im (repeatable)");
  c->add_option("--input", o.input, "JSON coefficient file");
}

}  // namespace

cplx parse_complex(const std::string& text, const std::string& field) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text, field), 0.0};
  return {parse_double(text.substr(0, comma), field), parse_double(text.substr(comma + 1), field)};
}

VerblunskyData parse_coefficients(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("input: invalid JSON: ") + e.what());
  }
  bool terminal = false;
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("alpha")) throw UsageError("input: missing field 'alpha'");
    list = &j["alpha"];
    if (j.contains("terminal_unimodular")) {
      if (!j["terminal_unimodular"].is_boolean()) throw UsageError("input: field 'terminal_unimodular' must be a boolean");
      terminal = j["terminal_unimodular"].get<bool>();
    }
  }
  if (!list->is_array()) throw UsageError("input: 'alpha' must be a list of [re, im] pairs");
  std::vector<cplx> c;
  for (std::size_t k = 0; k < list->size(); ++k) {
    const auto& p = (*list)[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw UsageError("input: alpha[" + std::to_string(k) + "] must be [re, im]");
    c.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return VerblunskyData(std::move(c), terminal);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"OPUC families, Poisson brackets and identity verification"};
  app.require_subcommand(1);
  Options o;

  auto* family = app.add_subcommand("family", "Print Phi, Psi, A, B coefficients and norms");
  add_data_flags(family, o);
  family->add_option("--n-max", o.n_max, "Highest level (default: number of coefficients)");
  family->add_option("--format", o.format, "text or json");
  family->add_option("--output", o.output);

  auto* bracket = app.add_subcommand("bracket", "Evaluate one bracket");
  add_data_flags(bracket, o);
  bracket->add_option("--id", o.id, "identity id");
  bracket->add_option("--pair", o.pair, "X,Y with slots Phi, PhiStar, Psi, PsiStar, phi.., A, AStar, B, BStar, R, alpha:K, alphabar:K");
  bracket->add_option("--n", o.n, "level (default N-1)");
  bracket->add_option("--z", o.z, "re,im");
  bracket->add_option("--w", o.w, "re,im");
  bracket->add_option("--q", o.q, "power for prop27 ids");
  bracket->add_option("--output", o.output);

  auto* verify = app.add_subcommand("verify", "Run the identity suite, axiom and flow checks");
  verify->add_option("--n-max", o.n_max, "highest level (default 8)");
  verify->add_option("--trials", o.trials, "trials per id (default 100)");
  verify->add_option("--seed", o.seed, "RNG seed (fallback: OPUC_SEED)");
  verify->add_option("--tol", o.tol, "ID=VALUE tolerance override (repeatable)");
  verify->add_option("--format", o.format, "text, json or csv");
  verify->add_option("--output", o.output);

  auto* flow = app.add_subcommand("flow", "Integrate a Hamiltonian flow with RK4");
  add_data_flags(flow, o);
  flow->add_option("--hamiltonian", o.hamiltonian, "norm_inv_R, disc_re, disc_im, modulus_sq");
  flow->add_option("--n", o.n, "level of the Hamiltonian (default 1)");
  flow->add_option("--k", o.k, "coefficient index for modulus_sq");
  flow->add_option("--z", o.z0, "discriminant point re,im");
  flow->add_option("--dt", o.dt);
  flow->add_option("--steps", o.steps);
  flow->add_option("--format", o.format, "text, csv or json");
  flow->add_option("--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*family) return cmd_family(o, out);
    if (*bracket) return cmd_bracket(o, out);
    if (*verify) return cmd_verify(o, out);
    return cmd_flow(o, out, err);
  } catch (const OpucError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"opuc_cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace opuc::cli
