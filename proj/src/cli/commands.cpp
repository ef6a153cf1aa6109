// Copyright 2026 The adiastep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "adiastep/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>

#include "adiastep/dynamics.hpp"
#include "adiastep/ec3.hpp"
#include "adiastep/error.hpp"
#include "adiastep/models.hpp"
#include "adiastep/parallel.hpp"
#include "adiastep/spectra.hpp"
#include "adiastep/verify.hpp"

namespace adiastep::cli {

namespace {

/// Verification failure carrying the already-built document.
struct VerificationFailed {
  Document doc;
};

struct Model {
  models::Family family;
  models::PathParams params;
  std::shared_ptr<const ec3::Instance> instance;
};

int thread_count(const RunConfig& c) { return c.threads > 0 ? c.threads : default_thread_count(); }

spectra::SolverOptions solver_options(const RunConfig& c) {
  spectra::SolverOptions o;
  if (c.method == "dense") o.method = spectra::Method::Dense;
  if (c.method == "lanczos") o.method = spectra::Method::Lanczos;
  o.seed = c.seed;
  return o;
}

std::shared_ptr<const ec3::Instance> instance_for(const RunConfig& c) {
  if (!c.instance_path.empty()) {
    return std::make_shared<const ec3::Instance>(ec3::load_instance(c.instance_path));
  }
  return std::make_shared<const ec3::Instance>(
      ec3::random_instance(c.random_n, 4 * c.random_n, c.seed, true));
}

Model build_model(const RunConfig& c, int n_override = 0) {
  Model m;
  m.family = models::parse_family(c.family);
  auto& p = m.params;
  p.n = n_override > 0 ? n_override : c.n;
  p.boundary = c.boundary == "open" ? models::Boundary::Open : models::Boundary::Periodic;
  p.segment_duration = c.segment_duration;
  if (c.penalty > 0.0) p.penalty = models::PenaltyConfig{c.penalty};
  switch (m.family) {
    case models::Family::Cluster2dStepwise:
      if (!c.lattice_path.empty()) {
        p.build_order = models::load_build_order(c.lattice_path);
        p.width = p.build_order->width;
        p.height = p.build_order->height;
      } else if (n_override > 0) {
        p.width = n_override;
        p.height = c.height > 0 ? c.height : n_override;
      } else {
        p.width = c.width;
        p.height = c.height;
      }
      p.n = p.width * p.height;
      break;
    case models::Family::Ec3Projector:
      m.instance = instance_for(c);
      p.instance = m.instance.get();
      p.n = m.instance->n;
      p.clause_order =
          ec3::order_clauses(*m.instance, ec3::parse_order_strategy(c.order), c.seed);
      break;
    default:
      break;
  }
  return m;
}

Document spectrum_cmd(const RunConfig& c) {
  const auto model = build_model(c);
  const auto path = models::make_path(model.family, model.params);
  const auto [k, local_s] = path.locate(c.s * path.total_time());
  const auto h = path.segment_hamiltonian(k, local_s);
  auto opts = solver_options(c);
  opts.sector = spectra::parse_sector(c.sector);
  auto result = spectra::lowest_eigenpairs(h, c.count, true, opts);
  if (opts.sector == spectra::Sector::All) result = spectra::classify_sectors(std::move(result));

  Document doc;
  doc.columns = {"index", "eigenvalue", "sector"};
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
    doc.rows.push_back(Json::array(
        {i, result.eigenvalues[i], std::string(spectra::label_name(result.sector_labels[i]))}));
  }
  doc.summary["segment"] = k;
  doc.summary["local_s"] = local_s;
  return doc;
}

Json minimum_json(const spectra::GapMinimum& m) {
  Json j = Json::object();
  j["segment"] = m.segment;
  j["local_s"] = m.local_s;
  j["s"] = m.global_s;
  j["gap"] = m.gap;
  return j;
}

Document gap_scan_cmd(const RunConfig& c) {
  const auto model = build_model(c);
  const auto path = models::make_path(model.family, model.params);
  spectra::ScanOptions so;
  so.points = c.points;
  so.threads = thread_count(c);
  so.solver = solver_options(c);
  const auto curve = spectra::gap_scan(path, spectra::parse_sector(c.sector), so);

  Document doc;
  doc.columns = {"s", "gap", "lambda0", "lambda1", "segment", "local_s"};
  for (const auto& p : curve.samples) {
    doc.rows.push_back(Json::array({p.global_s, p.gap, p.lambda0, p.lambda1, p.segment, p.local_s}));
  }
  doc.summary["min_gap"] = curve.minimum.gap;
  doc.summary["min_s"] = curve.minimum.global_s;
  doc.summary["min_segment"] = curve.minimum.segment;
  doc.summary["min_local_s"] = curve.minimum.local_s;
  Json segs = Json::array();
  for (const auto& m : curve.segment_minima) segs.push_back(minimum_json(m));
  doc.summary["segment_minima"] = std::move(segs);
  return doc;
}

Document evolve_cmd(const RunConfig& c) {
  const auto model = build_model(c);
  const auto path = models::make_path(model.family, model.params);
  dynamics::EvolveOptions eo;
  eo.accuracy = c.accuracy;
  eo.solver = solver_options(c);
  const auto r = dynamics::evolve(path, dynamics::default_initial_state(path), c.tau, eo);
  Document doc;
  doc.columns = {"tau",           "fidelity",        "norm_drift", "max_norm_drift",
                 "max_parity_deviation", "residual_energy", "steps",      "refinements"};
  doc.rows.push_back(Json::array({r.tau, r.fidelity, r.norm_drift, r.max_norm_drift,
                                  r.max_parity_deviation, r.residual_energy, r.step_count,
                                  r.refinements}));
  return doc;
}

Document scaling_cmd(const RunConfig& c) {
  std::vector<dynamics::ScalingRow> rows(c.n_list.size());
  dynamics::RuntimeOptions ro;
  ro.bisection_steps = c.bisect;
  ro.evolve.accuracy = c.accuracy;
  ro.evolve.solver = solver_options(c);
  parallel_for(rows.size(), thread_count(c), [&](std::size_t i) {
    const auto model = build_model(c, c.n_list[i]);
    rows[i] = dynamics::runtime_for_fidelity(model.family, model.params, c.target_fidelity,
                                             c.tau_grid, ro);
  });
  Document doc;
  doc.columns = {"family", "n", "target_fidelity", "tau_required", "fidelity_at_tau", "reached"};
  for (const auto& r : rows) {
    Json tau = r.tau_required ? Json(*r.tau_required) : Json("not-reached");
    doc.rows.push_back(Json::array({std::string(models::family_name(r.family)), r.n,
                                    r.target_fidelity, tau, r.fidelity_at_tau, r.reached}));
  }
  return doc;
}

Document ec3_cmd(const RunConfig& c) {
  const auto inst = instance_for(c);
  const auto order = ec3::order_clauses(*inst, ec3::parse_order_strategy(c.order), c.seed);
  const auto chain = ec3::solution_counts(*inst, order);
  Document doc;
  doc.columns = {"k", "clause", "N_k", "r_k", "gap"};
  const bool satisfiable = chain.counts.back() > 0;
  std::optional<ec3::PathGaps> gaps;
  if (satisfiable && !order.empty()) gaps = ec3::path_gaps(chain);
  for (std::size_t k = 0; k < chain.counts.size(); ++k) {
    Json clause = nullptr;
    Json r = nullptr;
    Json g = nullptr;
    if (k < order.size()) {
      const auto& cl = inst->clauses[order[k]];
      clause = std::to_string(cl[0]) + " " + std::to_string(cl[1]) + " " + std::to_string(cl[2]);
      r = chain.reductions[k];
      if (gaps) g = gaps->gaps[k];
    }
    doc.rows.push_back(Json::array({k, clause, chain.counts[k], r, g}));
  }
  doc.summary["n"] = inst->n;
  doc.summary["m"] = inst->clause_count();
  doc.summary["solutions"] = chain.counts.back();
  doc.summary["satisfiable"] = satisfiable;
  if (gaps) {
    doc.summary["min_gap"] = gaps->min_gap;
    doc.summary["min_gap_step"] = gaps->argmin;
  }
  doc.summary["grover_gap"] = ec3::grover_gap(inst->n);
  return doc;
}

Document verify_cmd(const RunConfig& c) {
  const auto model = build_model(c);
  verify::VerifyOptions vo;
  vo.s_points = c.s_points;
  vo.max_kappa = c.kappa;
  vo.tolerance = c.tolerance;
  vo.threads = thread_count(c);
  vo.scan.solver = solver_options(c);
  const auto checks = verify::verify_family(model.family, model.params, vo);
  Document doc;
  doc.columns = {"check", "max_deviation", "tolerance", "passed", "evaluations"};
  bool all = true;
  for (const auto& r : checks) {
    doc.rows.push_back(
        Json::array({r.name, r.max_deviation, r.tolerance, r.passed, r.evaluations}));
    all = all && r.passed;
  }
  doc.summary["all_passed"] = all;
  if (!all) throw VerificationFailed{std::move(doc)};
  return doc;
}

void emit(const RunConfig& c, const Document& doc, double wall, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (c.format == Format::Json) {
      write_json(os, doc, wall);
    } else {
      write_csv(os, doc, wall);
    }
  };
  if (c.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw InvalidArgument("cannot open output file '" + c.out + "'");
  write(file);
  if (c.command == Command::GapScan) {
    Document side;
    side.command = doc.command;
    side.config = doc.config;
    side.summary = doc.summary;
    std::ofstream sidecar(c.out + ".min.json");
    if (!sidecar) throw InvalidArgument("cannot open output file '" + c.out + ".min.json'");
    write_json(sidecar, side, wall);
  }
}

}  // namespace

Document execute(const RunConfig& c) {
  Document doc;
  switch (c.command) {
    case Command::Spectrum:
      doc = spectrum_cmd(c);
      break;
    case Command::GapScan:
      doc = gap_scan_cmd(c);
      break;
    case Command::Evolve:
      doc = evolve_cmd(c);
      break;
    case Command::Scaling:
      doc = scaling_cmd(c);
      break;
    case Command::Ec3:
      doc = ec3_cmd(c);
      break;
    case Command::Verify:
      doc = verify_cmd(c);
      break;
  }
  return doc;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  try {
    validate(c);
    Document doc;
    int code = kExitOk;
    try {
      doc = execute(c);
    } catch (VerificationFailed& failed) {
      doc = std::move(failed.doc);
      code = kExitVerification;
    }
    doc.command = command_name(c.command);
    doc.config = config_echo(c);
    emit(c, doc, elapsed(), out);
    if (code == kExitVerification) {
      for (const auto& row : doc.rows) {
        if (!row[3].get<bool>()) {
          err << "adiastep: verification failed: " << row[0].get<std::string>()
              << " deviation " << format_number(row[1].get<double>()) << " > "
              << format_number(row[2].get<double>()) << '\n';
        }
      }
    }
    return code;
  } catch (const InvalidArgument& e) {
    err << "adiastep: error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "adiastep: not converged: " << e.what() << '\n';
    return kExitNonConvergence;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_args(argc, argv);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace adiastep::cli
