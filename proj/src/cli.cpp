#include "mvc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mvc/dataset.hpp"
#include "mvc/errors.hpp"
#include "mvc/hypotheses.hpp"
#include "mvc/simulation.hpp"
#include "mvc/step_cdf.hpp"

namespace mvc {
namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt_value(double v) { return std::isnan(v) ? "nan" : fmt6(v); }

void print_report_text(std::ostream& out, const TestReport& rep, const std::string& name) {
  out << "hypothesis:    " << name << "\n";
  out << "modification:  " << to_string(rep.modification) << "\n";
  out << "df:            " << rep.df << "\n";
  out << "statistic:     " << fmt_value(rep.statistic) << "\n";
  out << "p-value:       " << fmt_value(rep.p_value) << "\n";
  out << "alpha:         " << fmt6(rep.alpha) << "\n";
  out << "covariance_ok: " << (rep.covariance_ok ? "yes" : "no") << "\n";
  out << "decision:      ";
  if (rep.decision) {
    out << (*rep.decision == Decision::reject ? "reject" : "retain");
  } else {
    out << "none";
  }
  out << "\n";
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputFormatError("alpha must lie in (0,1)");
}

int cmd_test(std::ostream& out, const std::string& data_path, const std::string& hypothesis_text,
             double alpha, const std::string& mod_text, bool renormalize, bool as_json) {
  check_alpha(alpha);
  const DataSet data = load_csv_file(data_path, renormalize);
  const HypothesisSpec spec = HypothesisSpec::parse(hypothesis_text);
  const Hypothesis h = make_hypothesis(spec, data.p.component_count());
  const TestReport rep = run_test(data.x, data.p, h, *modification_from_string(mod_text), alpha);
  if (as_json) {
    out << report_to_json(rep, h.name).dump(2) << "\n";
  } else {
    print_report_text(out, rep, h.name);
  }
  return 0;
}

int cmd_moments(std::ostream& out, const std::string& data_path, bool renormalize, bool as_json) {
  const DataSet data = load_csv_file(data_path, renormalize);
  const int m_count = data.p.component_count();

  MomentModel model;
  for (int m = 0; m < m_count; ++m) {
    model.funcs.push_back(MomentFunction::first_two_powers());
    model.component_of.push_back(m);
  }
  const GramMatrix gram = gram_matrix(data.p);
  std::vector<WeightArray> a;
  a.reserve(m_count);
  for (int m = 0; m < m_count; ++m) a.push_back(minimax_weights(data.p, gram, m));
  const std::vector<Eigen::MatrixXd> basis = evaluate_moment_basis(model, data.x);
  const MomentEstimates simple = estimate_moments(basis, a, model);
  const MomentEstimates improved =
      estimate_moments(basis, improved_weight_set(data.x, a), model);

  const auto mean_of = [](const MomentEstimates& e, int m) { return e.g_hat(2 * m); };
  const auto var_of = [](const MomentEstimates& e, int m) {
    return e.g_hat(2 * m + 1) - e.g_hat(2 * m) * e.g_hat(2 * m);
  };

  if (as_json) {
    nlohmann::json components = nlohmann::json::array();
    for (int m = 0; m < m_count; ++m) {
      nlohmann::json c;
      c["name"] = data.component_names[m];
      c["mean_simple"] = mean_of(simple, m);
      c["mean_improved"] = mean_of(improved, m);
      c["variance_simple"] = var_of(simple, m);
      c["variance_improved"] = var_of(improved, m);
      components.push_back(c);
    }
    nlohmann::json j;
    j["components"] = components;
    out << j.dump(2) << "\n";
  } else {
    out << "stat";
    for (int m = 0; m < m_count; ++m) {
      out << "," << data.component_names[m] << "_simple"
          << "," << data.component_names[m] << "_improved";
    }
    out << "\n";
    out << "mean";
    for (int m = 0; m < m_count; ++m) {
      out << "," << fmt_value(mean_of(simple, m)) << "," << fmt_value(mean_of(improved, m));
    }
    out << "\n";
    out << "variance";
    for (int m = 0; m < m_count; ++m) {
      out << "," << fmt_value(var_of(simple, m)) << "," << fmt_value(var_of(improved, m));
    }
    out << "\n";
  }
  return 0;
}

int cmd_simulate(std::ostream& out, const std::string& config_path, bool seed_given,
                 std::uint64_t seed, int threads, const std::string& out_path) {
  ScenarioConfig cfg = load_scenario_config(config_path);
  if (seed_given) cfg.seed = seed;
  const ScenarioResult result = run_scenario(cfg, threads);
  const std::string csv = result_to_csv(result);
  if (out_path.empty()) {
    out << csv;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw InputFormatError("cannot open output file '" + out_path + "'");
    file << csv;
  }
  return 0;
}

}  // namespace

nlohmann::json report_to_json(const TestReport& report, const std::string& hypothesis_name) {
  nlohmann::json j;
  j["hypothesis"] = hypothesis_name;
  j["modification"] = to_string(report.modification);
  j["df"] = report.df;
  j["alpha"] = report.alpha;
  j["covariance_ok"] = report.covariance_ok;
  j["statistic"] =
      std::isnan(report.statistic) ? nlohmann::json() : nlohmann::json(report.statistic);
  j["p_value"] = std::isnan(report.p_value) ? nlohmann::json() : nlohmann::json(report.p_value);
  if (report.decision) {
    j["decision"] = *report.decision == Decision::reject ? "reject" : "retain";
  } else {
    j["decision"] = nullptr;
  }
  j["T_hat"] = std::vector<double>(report.T_hat.data(), report.T_hat.data() + report.T_hat.size());
  nlohmann::json d = nlohmann::json::array();
  for (Eigen::Index r = 0; r < report.D_hat.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < report.D_hat.cols(); ++c) row.push_back(report.D_hat(r, c));
    d.push_back(row);
  }
  j["D_hat"] = d;
  return j;
}

TestReport report_from_json(const nlohmann::json& j) {
  const auto num = [](const nlohmann::json& v) {
    return v.is_null() ? std::nan("") : v.get<double>();
  };

  TestReport r;
  const auto mod = modification_from_string(j.at("modification").get<std::string>());
  if (!mod) throw InputFormatError("report: unknown modification");
  r.modification = *mod;
  r.df = j.at("df").get<int>();
  r.alpha = j.at("alpha").get<double>();
  r.covariance_ok = j.at("covariance_ok").get<bool>();
  r.statistic = num(j.at("statistic"));
  r.p_value = num(j.at("p_value"));
  const nlohmann::json& dec = j.at("decision");
  if (!dec.is_null()) {
    const std::string s = dec.get<std::string>();
    if (s == "reject") {
      r.decision = Decision::reject;
    } else if (s == "retain") {
      r.decision = Decision::retain;
    } else {
      throw InputFormatError("report: unknown decision '" + s + "'");
    }
  }
  const nlohmann::json& t = j.at("T_hat");
  r.T_hat.resize(static_cast<Eigen::Index>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) r.T_hat(static_cast<Eigen::Index>(i)) = num(t[i]);
  const nlohmann::json& d = j.at("D_hat");
  const std::size_t rows = d.size();
  const std::size_t cols = rows > 0 ? d[0].size() : 0;
  r.D_hat.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t a = 0; a < rows; ++a) {
    if (d[a].size() != cols) throw InputFormatError("report: ragged D_hat");
    for (std::size_t b = 0; b < cols; ++b)
      r.D_hat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = num(d[a][b]);
  }
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypothesis tests on functional moments of mixtures with varying concentrations"};
  app.require_subcommand(1);

  auto* test_cmd = app.add_subcommand("test", "Test a moment hypothesis on CSV data");
  std::string test_data;
  std::string hypothesis_text;
  std::string mod_text = "si";
  double alpha = 0.05;
  bool test_renorm = false;
  bool test_json = false;
  test_cmd->add_option("data", test_data, "CSV file with columns x,p1,...,pM")->required();
  test_cmd
      ->add_option("-H,--hypothesis", hypothesis_text,
                   "hypothesis spec, e.g. \"means-all\", \"vars 1 2\", "
                   "\"dist 1 2 cells=0,1,2\"")
      ->required();
  test_cmd->add_option("--alpha", alpha, "significance level (default 0.05)");
  test_cmd->add_option("--mod", mod_text, "estimator modification: ss, si or ii (default si)")
      ->check(CLI::IsMember({"ss", "si", "ii"}));
  test_cmd->add_flag("--renormalize", test_renorm, "rescale concentration rows to sum to 1");
  test_cmd->add_flag("--json", test_json, "emit the report as JSON");

  auto* mom_cmd =
      app.add_subcommand("moments", "Per-component mean and variance estimates, simple and improved");
  std::string mom_data;
  bool mom_renorm = false;
  bool mom_json = false;
  mom_cmd->add_option("data", mom_data, "CSV file with columns x,p1,...,pM")->required();
  mom_cmd->add_flag("--renormalize", mom_renorm, "rescale concentration rows to sum to 1");
  mom_cmd->add_flag("--json", mom_json, "emit the table as JSON");

  auto* sim_cmd = app.add_subcommand("simulate", "Run a Monte-Carlo sweep from a config file");
  std::string sim_config;
  std::string sim_out;
  std::uint64_t sim_seed = 0;
  int sim_threads = 1;
  sim_cmd->add_option("config", sim_config, "key = value scenario file")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", sim_seed, "override the config file seed");
  sim_cmd->add_option("--threads", sim_threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim_out, "write the CSV to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 3;
  }

  try {
    if (test_cmd->parsed())
      return cmd_test(out, test_data, hypothesis_text, alpha, mod_text, test_renorm, test_json);
    if (mom_cmd->parsed()) return cmd_moments(out, mom_data, mom_renorm, mom_json);
    if (sim_cmd->parsed())
      return cmd_simulate(out, sim_config, seed_opt->count() > 0, sim_seed, sim_threads, sim_out);
  } catch (const SingularDesignError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputFormatError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const DimensionMismatchError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace mvc
