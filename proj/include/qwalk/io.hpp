#pragma once

#include "qwalk/equilibration.hpp"
#include "qwalk/eth.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/subsystem.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <span>
#include <string>

namespace qwalk {

/// printf "%.17g": round-trips every double.
std::string format_number(double v);

/// Row-major CSV, one matrix row per line, 17 significant digits.
std::string matrix_csv(const Eigen::MatrixXd& m);

/// "x,y,u" header then one line per entry, 1-based labels.
std::string triples_csv(const Eigen::MatrixXd& u);

nlohmann::json matrix_json(const Eigen::MatrixXd& m);

/// Eigenvalues, per-eigenvalue cluster index and cluster sizes.
nlohmann::json spectrum_json(const SpectrumD& s);

nlohmann::json report_json(const EquilibrationReport& r);
/// Columns tau,lhs,rhs.
std::string report_csv(const EquilibrationReport& r);

/// Columns N,u_NN,p_beta_min,p_beta_max,gibbs_matchable.
std::string gibbs_comparison_csv(std::span<const GibbsComparisonRow> rows);
nlohmann::json gibbs_comparison_json(std::span<const GibbsComparisonRow> rows);

/// Columns beta,Z,p_j,p_0.
std::string beta_sweep_csv(std::span<const double> betas);

nlohmann::json eth_json(const EthReport& r);

}  // namespace qwalk
