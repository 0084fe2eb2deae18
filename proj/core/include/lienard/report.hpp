#pragma once

#include "lienard/analysis.hpp"
#include "lienard/hypotheses.hpp"
#include "lienard/integrate.hpp"
#include "lienard/lyapunov.hpp"
#include "lienard/model.hpp"
#include "lienard/periodic.hpp"

#include <string>
#include <vector>

namespace lienard {

/// Machine-readable reports. Each function renders one analysis result as a
/// JSON document with stable key order and no timestamps, so identical
/// inputs reproduce the bytes exactly. Every document carries a `schema`
/// stamp matching the file of the same name under schemas/, the full system
/// definition, and a `conventions` block spelling out what the numbers do
/// and do not claim.

[[nodiscard]] std::string check_report_json(const HypothesisReport& rep,
                                            const LienardSystem& sys);

[[nodiscard]] std::string simulate_report_json(const Trajectory& traj, const LienardSystem& sys,
                                               const std::string& csv_path,
                                               const std::string& svg_path);

[[nodiscard]] std::string roa_report_json(const RoaReport& rep, const LienardSystem& sys);

[[nodiscard]] std::string eigen_report_json(const Linearization& lin, const LienardSystem& sys);

/// Pairs each seeded point with its departure probe; sizes must match.
[[nodiscard]] std::string probe_report_json(const SeedReport& seeds,
                                            const std::vector<NonInvarianceReport>& probes,
                                            const LienardSystem& sys);

[[nodiscard]] std::string periodic_report_json(const ContinuationResult& res,
                                               const Perturbation& pert,
                                               const LienardSystem& sys);

/// One-paragraph plain-language readings of the same results, naming the
/// mathematical argument each one instantiates.
[[nodiscard]] std::string check_summary(const HypothesisReport& rep, const LienardSystem& sys);
[[nodiscard]] std::string simulate_summary(const Trajectory& traj);
[[nodiscard]] std::string roa_summary(const RoaReport& rep);
[[nodiscard]] std::string eigen_summary(const Linearization& lin);
[[nodiscard]] std::string probe_summary(const SeedReport& seeds,
                                        const std::vector<NonInvarianceReport>& probes);
[[nodiscard]] std::string periodic_summary(const ContinuationResult& res);

}  // namespace lienard
