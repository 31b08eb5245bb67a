#include "cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "cli/output.hpp"
#include "cli/spec.hpp"
#include "subzeta/error.hpp"
#include "subzeta/expsum.hpp"
#include "subzeta/poincare.hpp"
#include "subzeta/regularize.hpp"
#include "subzeta/smoothing.hpp"
#include "subzeta/variety.hpp"
#include "subzeta/zeta.hpp"

namespace subzeta::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
  ProblemSpec spec;
  PolySystem system;
  Support support;
  unsigned M;
  unsigned workers;
  u64 budget;
  u64 seed;
  fs::path out;
  std::ostream& log;
};

json scan_json(const ConductorScan& scan) {
  return {{"cutoff", scan.cutoff}, {"max_abs_by_conductor", scan.max_abs_by_conductor}, {"guard_ok", scan.guard_ok}};
}

std::optional<RationalFn> try_trivial_zeta(const ZetaTables& tables, json& note) {
  try {
    RationalFn Z = trivial_zeta(tables.trivial);
    note = to_json(Z);
    return Z;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRecurrenceFound && e.kind() != ErrorKind::ValidationFailed) throw;
    note = {{"error", e.what()}};
    return std::nullopt;
  }
}

// |E| scaled by p^{rho m} / m^{m_rho - 1}.
double normalize(double abs, u64 p, unsigned m, double rho, unsigned m_rho) {
  return abs * std::pow(static_cast<double>(p), rho * m) / std::pow(static_cast<double>(m), m_rho - 1.0);
}

int cmd_count(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  CountSeries s = count_series(c.system, atlas, c.M, c.workers, c.budget);
  CsvWriter csv({"m", "N_m", "scaled_num", "scaled_den"});
  for (unsigned m = 0; m < s.Nm.size(); ++m) {
    csv.row({std::to_string(m), s.Nm[m].get_str(), s.scaled[m].get_num().get_str(), s.scaled[m].get_den().get_str()});
  }
  csv.save(c.out / "counts.csv");
  c.log << "count: N_0..N_" << c.M << " written to counts.csv\n";
  return kOk;
}

int cmd_poincare(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  CountSeries s = count_series(c.system, atlas, c.M, c.workers, c.budget);
  CsvWriter csv({"m", "N_m", "scaled_num", "scaled_den"});
  json series = json::array();
  for (unsigned m = 0; m < s.Nm.size(); ++m) {
    csv.row({std::to_string(m), s.Nm[m].get_str(), s.scaled[m].get_num().get_str(), s.scaled[m].get_den().get_str()});
    series.push_back(s.scaled[m].get_str());
  }
  csv.save(c.out / "counts.csv");

  json doc = {{"p", c.system.p()}, {"dim", c.system.dim()}, {"max_level", c.M}, {"series", series},
              {"good_reduction", atlas.good_reduction}, {"chart_level", atlas.L}};
  int code = kOk;
  std::optional<RationalFn> P;
  try {
    P = reconstruct_rational(s.scaled);
    doc["P"] = to_json(*P);
    doc["poles"] = to_json(pole_analysis(*P, c.system.p()));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRecurrenceFound && e.kind() != ErrorKind::ValidationFailed) throw;
    doc["P"] = {{"error", e.what()}};
    code = kVerification;
  }

  if (P) {
    ZetaTables tables = compute_zeta_tables(c.system, atlas, Support::unit_polydisc(), c.M, 0, c.workers, c.budget);
    json znote;
    std::optional<RationalFn> Z = try_trivial_zeta(tables, znote);
    doc["Z"] = znote;
    if (Z) {
      mpq_class mass = tables.masses.total();
      IdentityCheck id = denef_identity_check(*P, *Z, mass);
      doc["identity"] = {{"pass", id.pass}, {"mass", mass.get_str()}, {"residual", to_json(id.residual)},
                         {"unit_mass_form", mass == 1}};
      if (!id.pass) code = kVerification;
    } else {
      code = kVerification;
    }
  }
  save_json(c.out / "poincare.json", doc);
  c.log << "poincare: " << (code == kOk ? "reconstructed, identity holds" : "verification failed") << "\n";
  return code;
}

int cmd_zeta(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  ZetaTables t = compute_zeta_tables(c.system, atlas, c.support, c.M, c.spec.conductor_cap, c.workers, c.budget);

  auto write_table = [&](const CoeffTable& table, const std::string& name) {
    CsvWriter csv({"m", "re", "im", "exact_num", "exact_den", "stabilized"});
    for (unsigned k = 0; k < table.values.size(); ++k) {
      std::string num, den;
      if (k < table.exact.size()) {
        num = table.exact[k].get_num().get_str();
        den = table.exact[k].get_den().get_str();
      }
      csv.row({std::to_string(k), fmt(table.values[k].real()), fmt(table.values[k].imag()), num, den,
               table.stabilized[k] ? "1" : "0"});
    }
    csv.save(c.out / name);
  };
  write_table(t.trivial, "zeta_trivial.csv");
  json chars = json::array();
  for (std::size_t i = 0; i < t.characters.size(); ++i) {
    if (t.characters[i].trivial()) continue;
    std::string name = "zeta_chi" + std::to_string(t.characters[i].index) + ".csv";
    write_table(t.twisted[i], name);
    chars.push_back({{"index", t.characters[i].index}, {"conductor", t.characters[i].conductor},
                     {"level", t.conductor_cap}, {"file", name}, {"vanishes", t.twisted[i].is_zero()}});
  }

  json doc = {{"p", c.system.p()}, {"max_level", c.M}, {"conductor_cap", t.conductor_cap}, {"characters", chars},
              {"mass", t.masses.total().get_str()}, {"conductor_scan", scan_json(conductor_vanishing_scan(t))}};
  int code = kOk;
  json znote;
  std::optional<RationalFn> Z = try_trivial_zeta(t, znote);
  doc["Z"] = znote;
  if (!Z) {
    code = kVerification;
  } else {
    doc["poles"] = to_json(pole_analysis(*Z, c.system.p()));
    if (!c.spec.resolution_data.empty()) {
      CandidateCheck cc = candidate_pole_check(*Z, c.spec.resolution_data, c.system.p());
      doc["candidate_check"] = {{"pass", cc.pass}, {"multiplicities", cc.multiplicities},
                                {"residual", to_json(cc.residual)}};
      if (!cc.pass) code = kVerification;
    }
  }
  save_json(c.out / "zeta.json", doc);
  c.log << "zeta: " << std::max<std::size_t>(t.characters.size(), 1) << " tables, "
        << (code == kOk ? "reconstruction ok" : "verification failed") << "\n";
  return code;
}

CsvWriter expsum_csv() {
  return CsvWriter({"m", "u", "re_direct", "im_direct", "re_form1", "im_form1", "abs", "normalized"});
}

std::optional<PoleData> resolution_poles(const Context& c) {
  if (c.spec.resolution_data.empty()) return std::nullopt;
  return pole_data_from_resolution(c.spec.resolution_data, c.system.p());
}

int cmd_expsum(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  std::optional<PoleData> poles = resolution_poles(c);
  CsvWriter csv = expsum_csv();
  for (unsigned m = 1; m <= c.M; ++m) {
    ValueHistogram h = value_histogram(c.system, atlas, c.support, m, c.workers, c.budget);
    for (u64 u : unit_classes(c.system.p(), m, c.spec.conductor_cap)) {
      std::complex<double> e = exponential_sum(h, u);
      double a = std::abs(e);
      std::string norm = poles ? fmt(normalize(a, c.system.p(), m, poles->rho, poles->m_rho)) : "";
      csv.row({std::to_string(m), std::to_string(u), fmt(e.real()), fmt(e.imag()), "", "", fmt(a), norm});
    }
  }
  csv.save(c.out / "expsum.csv");
  c.log << "expsum: m = 1.." << c.M << " written to expsum.csv\n";
  return kOk;
}

int cmd_sps_verify(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  ZetaTables t = compute_zeta_tables(c.system, atlas, c.support, c.M, c.spec.conductor_cap, c.workers, c.budget);
  json znote;
  std::optional<RationalFn> Z = try_trivial_zeta(t, znote);
  const double threshold = 1e-9;
  SpsReport rep = sps_verify(c.system, atlas, c.support, t, Z, 1, c.M, gauss_sum, threshold, c.workers, c.budget);
  std::optional<PoleData> poles = resolution_poles(c);

  CsvWriter csv = expsum_csv();
  for (const ExpSumRecord& r : rep.records) {
    std::string re_f, im_f;
    if (r.via_form1) {
      re_f = fmt(r.via_form1->real());
      im_f = fmt(r.via_form1->imag());
    }
    std::string norm = poles ? fmt(normalize(r.abs_direct, c.system.p(), r.m, poles->rho, poles->m_rho)) : "";
    csv.row({std::to_string(r.m), std::to_string(r.u), fmt(r.direct.real()), fmt(r.direct.imag()), re_f, im_f,
             fmt(r.abs_direct), norm});
  }
  csv.save(c.out / "expsum.csv");
  json doc = {{"max_discrepancy", rep.max_discrepancy}, {"threshold", threshold}, {"pass", rep.pass},
              {"records", rep.records.size()}, {"skipped_levels", rep.skipped}, {"chart_level", atlas.L},
              {"Z", znote}, {"conductor_scan", scan_json(conductor_vanishing_scan(t))}};
  save_json(c.out / "sps.json", doc);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", rep.max_discrepancy);
  c.log << "sps-verify: " << rep.records.size() << " sums, max discrepancy " << buf << (rep.pass ? " PASS" : " FAIL")
        << "\n";
  return rep.pass ? kOk : kVerification;
}

json chart_json(const SmoothingCertificate& cert, const Atlas& atlas, std::size_t i, const SpotCheck& sc) {
  json center = json::array();
  for (const mpz_class& x : cert.center) center.push_back(x.get_str());
  json rescaled = json::array();
  for (const MPoly& f : cert.rescaled_constraints) rescaled.push_back(f.to_string("y"));
  return {{"center", center},
          {"center_mod", atlas.center_mod(i)},
          {"L", cert.L},
          {"pivot_vals", cert.pivot_vals},
          {"exponents", cert.exponents},
          {"rescaled_constraints", rescaled},
          {"rescaled_target", cert.rescaled_target.to_string("y")},
          {"target_exponent", cert.target_exponent},
          {"target_at_center", cert.target_at_center.get_str()},
          {"points_mod_p", cert.points_mod_p},
          {"verdict", cert.good ? "Good" : "Bad"},
          {"spot_check", {{"pass", sc.pass}, {"samples", sc.samples}, {"seed", sc.seed}}}};
}

int cmd_smooth(Context& c) {
  Atlas atlas = build_atlas(c.system, c.budget);
  bool ok = true;
  json charts = json::array();
  for (std::size_t i = 0; i < atlas.charts.size(); ++i) {
    SpotCheck sc = certificate_spot_check(atlas.charts[i], c.system.p(), 16, c.seed + i);
    ok = ok && sc.pass && atlas.charts[i].good;
    charts.push_back(chart_json(atlas.charts[i], atlas, i, sc));
  }

  json images = json::array();
  unsigned image_hi = std::min(c.M, atlas.L + 2);
  for (unsigned m = 1; m <= image_hi; ++m) {
    mpz_class via_charts = reduction_image_count(c.system, m, c.budget, c.workers);
    ImageOracle oracle = image_oracle(c.system, m, 2, c.budget);
    bool match = via_charts == oracle.points.size();
    ok = ok && match;
    images.push_back({{"m", m}, {"charts", via_charts.get_str()}, {"oracle", oracle.points.size()},
                      {"oracle_stabilized", oracle.stabilized}, {"match", match}});
  }

  json doc = {{"seed", c.seed}, {"good_reduction", atlas.good_reduction}, {"L", atlas.L},
              {"iterations", atlas.iterations}, {"empty_classes", atlas.empty_classes}, {"charts", charts},
              {"image_counts", images}};

  if (!atlas.good_reduction) {
    json dec = json::array();
    double worst = 0;
    for (unsigned m = atlas.L + 1; m <= std::min(c.M, atlas.L + 3); ++m) {
      for (u64 u : unit_classes(c.system.p(), m, c.spec.conductor_cap)) {
        DecompositionCheck d = decomposition_identity_check(c.system, atlas, m, u, c.budget);
        worst = std::max(worst, d.diff);
        dec.push_back({{"m", m}, {"u", u}, {"diff", d.diff}});
      }
    }
    ok = ok && worst < 1e-9;
    Lastform2Report lf = lastform2_check(c.system, atlas, 3, c.budget);
    json rows = json::array();
    for (const Lastform2Row& r : lf.rows) {
      rows.push_back({{"m", r.m}, {"oracle", r.oracle.get_str()}, {"chart_sum", r.chart_sum.get_str()},
                      {"restricted_sum", r.restricted_sum.get_str()}});
    }
    ok = ok && lf.consistent;
    doc["expsum_decomposition"] = {{"checks", dec}, {"max_diff", worst}};
    doc["count_decomposition"] = {{"m0", lf.m0}, {"contributing", lf.contributing}, {"certified", lf.certified},
                                  {"rows", rows}, {"consistent", lf.consistent}};
  }
  save_json(c.out / "smooth.json", doc);
  c.log << "smooth: " << atlas.charts.size() << " chart(s) at level " << atlas.L << (ok ? " PASS" : " FAIL") << "\n";
  return ok ? kOk : kVerification;
}

int cmd_delta_check(Context& c) {
  RegularizationSpec reg = c.spec.regularization.value_or(RegularizationSpec{});
  const u64 p = c.system.p();
  Atlas atlas = build_atlas(c.system, c.budget);
  unsigned depth = reg.scan_depth;
  ZetaTables t = compute_zeta_tables(c.system, atlas, c.support, depth, reg.chi_level, c.workers, c.budget);

  MultChar chi = trivial_character(p, 0);
  const CoeffTable* table = &t.trivial;
  if (reg.chi_level > 0) {
    if (reg.chi_index >= t.characters.size()) throw SpecError("regularization.chi_index: out of range");
    chi = t.characters[reg.chi_index];
    if (!chi.trivial()) table = &t.twisted[reg.chi_index];
  }

  std::complex<double> surface = 0;
  std::optional<mpq_class> surface_exact;
  mpq_class tp = pow_mpq(p, -static_cast<int>(reg.s));
  json surface_note;
  if (chi.trivial()) {
    json znote;
    std::optional<RationalFn> Z = try_trivial_zeta(t, znote);
    if (Z) {
      surface_exact = Z->eval(tp);
      surface = surface_exact->get_d();
      surface_note = {{"source", "rational"}, {"Z", znote}};
    }
  }
  if (!surface_exact) {
    double tk = 1, td = tp.get_d();
    for (const auto& v : table->values) {
      surface += v * tk;
      tk *= td;
    }
    surface_note = {{"source", "truncated_series"}, {"terms", table->values.size()}};
  }

  mpq_class factor = gelfand_leray_factor(atlas, c.system.l());
  surface *= factor.get_d();
  if (surface_exact) *surface_exact *= factor;

  DeltaLimitReport rep =
      delta_limit_check(c.system, c.support, reg.s, chi, reg.r_min, reg.r_max, depth, surface, surface_exact,
                        default_delta_weight, c.budget);
  CsvWriter csv({"r", "value_re", "value_im", "tail_bound", "surface_value", "abs_diff"});
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const DeltaApprox& a = rep.rows[i];
    csv.row({std::to_string(a.r), fmt(a.value.real()), fmt(a.value.imag()), fmt(a.tail_bound.get_d()),
             fmt(surface.real()), fmt(rep.abs_diff[i])});
  }
  csv.save(c.out / "delta.csv");
  json doc = {{"s", reg.s}, {"chi", {{"level", reg.chi_level}, {"index", chi.index}, {"conductor", chi.conductor}}},
              {"scan_depth", depth}, {"surface", to_json(surface)}, {"measure_factor", factor.get_str()}, {"surface_detail", surface_note},
              {"surface_exact", surface_exact ? json(surface_exact->get_str()) : json(nullptr)},
              {"r0", rep.r0 ? json(*rep.r0) : json(nullptr)}, {"pass", rep.pass}};
  save_json(c.out / "delta.json", doc);
  c.log << "delta-check: " << (rep.pass ? "PASS" : "FAIL");
  if (rep.r0) c.log << " r0 = " << *rep.r0;
  c.log << "\n";
  return rep.pass ? kOk : kVerification;
}

int cmd_decay(Context& c) {
  const u64 p = c.system.p();
  Atlas atlas = build_atlas(c.system, c.budget);
  std::optional<PoleData> poles = resolution_poles(c);
  std::string source = "resolution_data";
  if (!poles) {
    ZetaTables t = compute_zeta_tables(c.system, atlas, c.support, c.M, 0, c.workers, c.budget);
    json znote;
    std::optional<RationalFn> Z = try_trivial_zeta(t, znote);
    if (!Z) throw Error(ErrorKind::ValidationFailed, "no pole data: Z did not reconstruct and no resolution data");
    poles = pole_analysis(*Z, p);
    source = "zeta";
  }
  DecayReport rep = decay_report(c.system, atlas, c.support, 1, c.M, poles->rho, poles->m_rho, 1.5, c.workers,
                                 c.budget);
  CsvWriter csv({"m", "max_abs", "normalized"});
  json rows = json::array();
  for (const DecayRow& r : rep.rows) csv.row({std::to_string(r.m), fmt(r.max_abs), fmt(r.normalized)});
  csv.save(c.out / "decay.csv");

  json doc = {{"rho", poles->rho}, {"m_rho", poles->m_rho}, {"source", source}, {"slack", rep.slack},
              {"verdict", rep.bounded ? "Bounded" : "Inconclusive"}};
  CountSeries s = count_series(c.system, atlas, c.M, c.workers, c.budget);
  try {
    RationalFn P = reconstruct_rational(s.scaled);
    PoleData pp = pole_analysis(P, p);
    BoundCheck b = nm_bound_check(s, pp.rho, pp.m_rho);
    doc["count_bound"] = {{"rho", pp.rho}, {"m_rho", pp.m_rho}, {"C", b.C}, {"argmax", b.argmax},
                          {"normalized", b.normalized}, {"verdict", b.bounded ? "Bounded" : "Inconclusive"}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NoRecurrenceFound && e.kind() != ErrorKind::ValidationFailed) throw;
    doc["count_bound"] = {{"error", e.what()}};
  }
  save_json(c.out / "decay.json", doc);
  c.log << "decay: " << (rep.bounded ? "Bounded" : "Inconclusive") << "\n";
  return kOk;
}

int cmd_probe(Context& c) {
  std::vector<CriticalSuspect> sus = critical_locus_probe(c.system, c.M, c.budget);
  std::vector<Point> pts;
  json list = json::array();
  for (const CriticalSuspect& s : sus) {
    pts.push_back(s.point);
    list.push_back({{"point", s.point}, {"target_ord", s.target_ord}});
  }
  std::ofstream out(c.out / "probe.csv", std::ios::binary);
  write_points_csv(out, c.M, pts);
  save_json(c.out / "probe.json", {{"level", c.M}, {"suspects", list}, {"count", sus.size()}});
  c.log << "probe: " << sus.size() << " suspect class(es) at level " << c.M << "\n";
  return kOk;
}

using Handler = std::function<int(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"count", cmd_count},   {"poincare", cmd_poincare},       {"zeta", cmd_zeta},
      {"expsum", cmd_expsum}, {"sps-verify", cmd_sps_verify},   {"smooth", cmd_smooth},
      {"decay", cmd_decay},   {"delta-check", cmd_delta_check}, {"probe", cmd_probe}};
  return table;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"count",        "poincare", "zeta",       "expsum", "sps-verify",
                                                 "smooth",       "delta-check", "decay",   "probe"};
  return names;
}

int run(const std::string& command, const RunOptions& options, std::ostream& log, std::ostream& err) {
  auto it = handlers().find(command);
  if (it == handlers().end()) {
    err << "error: unknown command " << command << "\n";
    return kSchema;
  }
  try {
    ProblemSpec spec = load_spec(options.spec_path);
    PolySystem system = build_system(spec);
    Support support = build_support(spec);
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + options.out_dir);
    Context ctx{spec,
                system,
                support,
                options.max_level.value_or(spec.max_level),
                std::max(1u, options.workers),
                options.budget.value_or(spec.budget),
                options.seed,
                fs::path(options.out_dir),
                log};
    return it->second(ctx);
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::BudgetExceeded) return kBudget;
    return e.kind() == ErrorKind::EvenPrimeUnsupported ? kSchema : kVerification;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerification;
  }
}

}  // namespace subzeta::cli
