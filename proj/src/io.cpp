#include "qwalk/io.hpp"

#include <cstdio>
#include <sstream>

namespace qwalk {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_number(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string triples_csv(const Eigen::MatrixXd& u) {
  std::string out = "x,y,u\n";
  for (Eigen::Index x = 0; x < u.rows(); ++x)
    for (Eigen::Index y = 0; y < u.cols(); ++y)
      out += std::to_string(x + 1) + ',' + std::to_string(y + 1) + ',' + format_number(u(x, y)) + '\n';
  return out;
}

nlohmann::json matrix_json(const Eigen::MatrixXd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json spectrum_json(const SpectrumD& s) {
  nlohmann::json j;
  j["basis"] = to_string(s.basis);
  j["dimension"] = s.dim();
  j["n_distinct"] = s.n_distinct();
  auto values = nlohmann::json::array();
  auto index = nlohmann::json::array();
  auto sizes = nlohmann::json::array();
  auto levels = nlohmann::json::array();
  for (std::size_t c = 0; c < s.clusters.size(); ++c) {
    sizes.push_back(s.clusters[c].size);
    levels.push_back(s.level(c));
    for (Eigen::Index k = s.clusters[c].begin; k < s.clusters[c].end(); ++k) {
      values.push_back(s.values(k));
      index.push_back(c);
    }
  }
  j["eigenvalues"] = values;
  j["cluster_index"] = index;
  j["cluster_sizes"] = sizes;
  j["levels"] = levels;
  if (!s.parity.empty()) j["parity"] = s.parity;
  return j;
}

nlohmann::json report_json(const EquilibrationReport& r) {
  nlohmann::json j;
  j["d_eff"] = r.d_eff;
  j["n_lambda"] = r.n_lambda;
  j["log2_n_lambda"] = std::log2(double(r.n_lambda));
  j["n_eps_computed"] = r.n_eps;
  j["n_eps_override"] = r.n_eps_override ? nlohmann::json(*r.n_eps_override) : nlohmann::json(nullptr);
  j["n_eps_used"] = r.n_eps_used();
  j["epsilon"] = r.epsilon;
  j["operator_norm_sq"] = r.operator_norm_sq;
  j["time_averaged_expectation"] = r.time_averaged_expectation;
  j["asymptote"] = r.asymptote();
  j["bound_holds"] = r.bound_holds();
  auto table = nlohmann::json::array();
  for (std::size_t i = 0; i < r.tau_grid.size(); ++i) {
    table.push_back({{"tau", r.tau_grid[i]}, {"lhs", r.lhs[i]}, {"rhs", r.rhs[i]}});
  }
  j["table"] = table;
  return j;
}

std::string report_csv(const EquilibrationReport& r) {
  std::string out = "tau,lhs,rhs\n";
  for (std::size_t i = 0; i < r.tau_grid.size(); ++i) {
    out += format_number(r.tau_grid[i]) + ',' + format_number(r.lhs[i]) + ',' + format_number(r.rhs[i]) + '\n';
  }
  return out;
}

std::string gibbs_comparison_csv(std::span<const GibbsComparisonRow> rows) {
  std::string out = "N,u_NN,p_beta_min,p_beta_max,gibbs_matchable\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + format_number(r.u_nn) + ',' + format_number(r.p_beta_min) + ',' +
           format_number(r.p_beta_max) + ',' + (r.gibbs_matchable ? "true" : "false") + '\n';
  }
  return out;
}

nlohmann::json gibbs_comparison_json(std::span<const GibbsComparisonRow> rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"N", r.n},
                   {"u_NN", r.u_nn},
                   {"p_beta_min", r.p_beta_min},
                   {"p_beta_max", r.p_beta_max},
                   {"min_distance", r.min_distance},
                   {"gibbs_matchable", r.gibbs_matchable}});
  }
  return arr;
}

std::string beta_sweep_csv(std::span<const double> betas) {
  std::string out = "beta,Z,p_j,p_0\n";
  for (double b : betas) {
    const auto g = pentagon_gibbs(b);
    out += format_number(b) + ',' + format_number(g.z) + ',' + format_number(g.node_probs[1]) + ',' +
           format_number(g.node_probs[0]) + '\n';
  }
  return out;
}

nlohmann::json eth_json(const EthReport& r) {
  nlohmann::json j;
  j["basis"] = to_string(r.basis);
  j["diag_mean"] = r.diag_mean;
  j["diag_std"] = r.diag_std;
  j["offdiag_rms"] = r.offdiag_rms;
  j["diagonal"] = std::vector<double>(r.diagonal.data(), r.diagonal.data() + r.diagonal.size());
  j["cluster_averaged_diagonal"] =
      std::vector<double>(r.cluster_diagonal.data(), r.cluster_diagonal.data() + r.cluster_diagonal.size());
  return j;
}

}  // namespace qwalk
