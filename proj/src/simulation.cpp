#include "mvc/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mvc/errors.hpp"

namespace mvc {
namespace {

std::string trim(const std::string& s) {
  const std::size_t first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const std::size_t last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string spaced = value;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::vector<std::string> out;
  std::istringstream in(spaced);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& value, int line_no, const char* key) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputFormatError("config line " + std::to_string(line_no) + ": bad integer for " + key);
}

double parse_double(const std::string& value, int line_no, const char* key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputFormatError("config line " + std::to_string(line_no) + ": bad number for " + key);
}

void validate_scenario_config(const ScenarioConfig& cfg) {
  const int m = cfg.component_count;
  if (m < 1) throw InputFormatError("scenario: M must be at least 1");
  if (static_cast<int>(cfg.means.size()) != m)
    throw DimensionMismatchError("scenario: means must list one value per component");
  if (static_cast<int>(cfg.variances.size()) != m)
    throw DimensionMismatchError("scenario: variances must list one value per component");
  for (double v : cfg.variances) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InputFormatError("scenario: variances must be positive");
  }
  for (double mu : cfg.means) {
    if (!std::isfinite(mu)) throw InputFormatError("scenario: means must be finite");
  }
  if (cfg.replications < 1) throw InputFormatError("scenario: replications must be at least 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw InputFormatError("scenario: alpha must lie in (0,1)");
  if (cfg.sample_sizes.empty()) throw InputFormatError("scenario: sample_sizes must be nonempty");
  for (int n : cfg.sample_sizes) {
    if (n < m) throw InputFormatError("scenario: each sample size must be at least M");
  }
  if (cfg.modifications.empty())
    throw InputFormatError("scenario: modifications must be nonempty");
  make_hypothesis(cfg.hypothesis, m);
}

struct Tally {
  long long replications = 0;
  long long valid = 0;
  long long rejections = 0;
  long long bad_covariance = 0;
};

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  bool have_m = false, have_means = false, have_vars = false, have_hyp = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InputFormatError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw InputFormatError("config line " + std::to_string(line_no) + ": expected key = value");
    if (!seen.insert(key).second)
      throw InputFormatError("config line " + std::to_string(line_no) + ": duplicate key '" + key +
                             "'");

    if (key == "M") {
      cfg.component_count = parse_int(value, line_no, "M");
      have_m = true;
    } else if (key == "means") {
      cfg.means.clear();
      for (const std::string& tok : split_list(value))
        cfg.means.push_back(parse_double(tok, line_no, "means"));
      have_means = true;
    } else if (key == "variances") {
      cfg.variances.clear();
      for (const std::string& tok : split_list(value))
        cfg.variances.push_back(parse_double(tok, line_no, "variances"));
      have_vars = true;
    } else if (key == "sample_sizes") {
      cfg.sample_sizes.clear();
      for (const std::string& tok : split_list(value))
        cfg.sample_sizes.push_back(parse_int(tok, line_no, "sample_sizes"));
    } else if (key == "replications") {
      cfg.replications = parse_int(value, line_no, "replications");
    } else if (key == "alpha") {
      cfg.alpha = parse_double(value, line_no, "alpha");
    } else if (key == "hypothesis") {
      cfg.hypothesis = HypothesisSpec::parse(value);
      have_hyp = true;
    } else if (key == "modifications") {
      cfg.modifications.clear();
      for (const std::string& tok : split_list(value)) {
        const auto mod = modification_from_string(tok);
        if (!mod)
          throw InputFormatError("config line " + std::to_string(line_no) +
                                 ": unknown modification '" + tok + "'");
        cfg.modifications.push_back(*mod);
      }
    } else if (key == "seed") {
      try {
        std::size_t pos = 0;
        cfg.seed = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw InputFormatError("config line " + std::to_string(line_no) + ": bad integer for seed");
      }
    } else if (key == "fixed_concentrations") {
      if (value == "true" || value == "1") {
        cfg.fixed_concentrations = true;
      } else if (value == "false" || value == "0") {
        cfg.fixed_concentrations = false;
      } else {
        throw InputFormatError("config line " + std::to_string(line_no) +
                               ": fixed_concentrations must be true or false");
      }
    } else {
      throw InputFormatError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                             "'");
    }
  }

  if (!have_m || !have_means || !have_vars || !have_hyp)
    throw InputFormatError("config: M, means, variances and hypothesis are required");
  validate_scenario_config(cfg);
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("config: cannot open '" + path + "'");
  return parse_scenario_config(in);
}

double ScenarioCell::rejection_frequency() const {
  if (valid <= 0) return std::nan("");
  return static_cast<double>(rejections) / static_cast<double>(valid);
}

double ScenarioCell::bad_covariance_frequency() const {
  if (replications <= 0) return std::nan("");
  return static_cast<double>(bad_covariance) / static_cast<double>(replications);
}

const ScenarioCell& ScenarioResult::cell(int sample_size, Modification mod) const {
  for (const ScenarioCell& c : cells) {
    if (c.sample_size == sample_size && c.modification == mod) return c;
  }
  throw std::out_of_range("ScenarioResult::cell: no such cell");
}

ConcentrationMatrix generate_concentrations(int obs_count, int component_count, Rng& rng) {
  // Rows are uniform on the probability simplex: normalized unit-rate
  // exponential draws, one per entry.
  Eigen::MatrixXd p(obs_count, component_count);
  for (int j = 0; j < obs_count; ++j) {
    double sum = 0.0;
    for (int m = 0; m < component_count; ++m) {
      p(j, m) = -std::log(rng.uniform01());
      sum += p(j, m);
    }
    p.row(j) /= sum;
  }
  return ConcentrationMatrix::checked(std::move(p));
}

MixtureSample sample_mixture(const ConcentrationMatrix& p, const std::vector<double>& means,
                             const std::vector<double>& variances, Rng& rng) {
  const int n = p.obs_count();
  const int m_count = p.component_count();
  if (static_cast<int>(means.size()) != m_count ||
      static_cast<int>(variances.size()) != m_count)
    throw DimensionMismatchError("sample_mixture: means/variances must match component count");
  std::vector<double> stddev(m_count);
  for (int m = 0; m < m_count; ++m) {
    if (!(variances[m] > 0.0))
      throw InputFormatError("sample_mixture: variances must be positive");
    stddev[m] = std::sqrt(variances[m]);
  }

  MixtureSample out;
  out.x.resize(n);
  out.label.resize(n);
  Eigen::RowVectorXd row(m_count);
  for (int j = 0; j < n; ++j) {
    row = p.P.row(j);
    const int m = rng.categorical(row.data(), m_count);
    out.label[j] = m;
    out.x(j) = rng.normal(means[m], stddev[m]);
  }
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, int thread_count) {
  validate_scenario_config(cfg);
  if (thread_count < 1) thread_count = 1;

  const Hypothesis hyp = make_hypothesis(cfg.hypothesis, cfg.component_count);
  const int mod_count = static_cast<int>(cfg.modifications.size());

  ScenarioResult result;
  for (int n : cfg.sample_sizes) {
    ConcentrationMatrix fixed;
    if (cfg.fixed_concentrations) {
      Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(n), 0));
      fixed = generate_concentrations(n, cfg.component_count, rng);
    }

    auto replicate = [&](int rep, std::vector<Tally>& tally) {
      Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(rep) + 1));
      try {
        const ConcentrationMatrix p =
            cfg.fixed_concentrations ? fixed
                                     : generate_concentrations(n, cfg.component_count, rng);
        const MixtureSample data = sample_mixture(p, cfg.means, cfg.variances, rng);
        const std::vector<TestReport> reports =
            run_test_multi(data.x, p, hyp, cfg.modifications, cfg.alpha);
        for (int t = 0; t < mod_count; ++t) {
          tally[t].replications += 1;
          if (reports[t].covariance_ok) {
            tally[t].valid += 1;
            if (reports[t].decision == Decision::reject) tally[t].rejections += 1;
          } else {
            tally[t].bad_covariance += 1;
          }
        }
      } catch (const SingularDesignError&) {
        for (int t = 0; t < mod_count; ++t) {
          tally[t].replications += 1;
          tally[t].bad_covariance += 1;
        }
      }
    };

    std::vector<Tally> total(mod_count);
    if (thread_count == 1) {
      for (int rep = 0; rep < cfg.replications; ++rep) replicate(rep, total);
    } else {
      std::vector<std::vector<Tally>> local(thread_count, std::vector<Tally>(mod_count));
      std::vector<std::thread> workers;
      workers.reserve(thread_count);
      for (int t = 0; t < thread_count; ++t) {
        workers.emplace_back([&, t] {
          for (int rep = t; rep < cfg.replications; rep += thread_count)
            replicate(rep, local[t]);
        });
      }
      for (std::thread& w : workers) w.join();
      for (int t = 0; t < thread_count; ++t) {
        for (int k = 0; k < mod_count; ++k) {
          total[k].replications += local[t][k].replications;
          total[k].valid += local[t][k].valid;
          total[k].rejections += local[t][k].rejections;
          total[k].bad_covariance += local[t][k].bad_covariance;
        }
      }
    }

    for (int k = 0; k < mod_count; ++k) {
      ScenarioCell cell;
      cell.sample_size = n;
      cell.modification = cfg.modifications[k];
      cell.replications = total[k].replications;
      cell.valid = total[k].valid;
      cell.rejections = total[k].rejections;
      cell.bad_covariance = total[k].bad_covariance;
      result.cells.push_back(cell);
    }
  }
  return result;
}

std::string result_to_csv(const ScenarioResult& result) {
  std::string out = "N,modification,rejection_freq,bad_cov_freq,R_valid\n";
  char buf[128];
  for (const ScenarioCell& c : result.cells) {
    out += std::to_string(c.sample_size);
    out += ',';
    out += to_string(c.modification);
    out += ',';
    if (c.valid > 0) {
      std::snprintf(buf, sizeof buf, "%.6f", c.rejection_frequency());
      out += buf;
    } else {
      out += "nan";
    }
    out += ',';
    if (c.replications > 0) {
      std::snprintf(buf, sizeof buf, "%.6f", c.bad_covariance_frequency());
      out += buf;
    } else {
      out += "nan";
    }
    out += ',';
    out += std::to_string(c.valid);
    out += '\n';
  }
  return out;
}

}  // namespace mvc
