#include "cdpsim/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "cdpsim/errors.hpp"

namespace cdpsim {

double recall(const std::vector<QueryOutcome>& outcomes, const Workload& workload) {
  std::uint64_t retrieved_relevant = 0;
  std::uint64_t relevant = 0;
  for (const QueryOutcome& out : outcomes) {
    if (!out.issued) continue;
    const std::vector<DocId>& rel = workload.relevance[out.query_id];
    relevant += rel.size();
    for (DocId d : rel) {
      if (out.retrieved.count(d) != 0) ++retrieved_relevant;
    }
  }
  if (relevant == 0) return 0.0;
  return static_cast<double>(retrieved_relevant) / static_cast<double>(relevant);
}

double success_rate(const std::vector<QueryOutcome>& outcomes) {
  std::uint64_t issued = 0;
  std::uint64_t resolved = 0;
  for (const QueryOutcome& out : outcomes) {
    if (!out.issued) continue;
    ++issued;
    if (out.resolved()) ++resolved;
  }
  if (issued == 0) return 0.0;
  return static_cast<double>(resolved) / static_cast<double>(issued);
}

double avg_discovery_delay(const std::vector<QueryOutcome>& outcomes) {
  double sum = 0.0;
  std::uint64_t n = 0;
  for (const QueryOutcome& out : outcomes) {
    if (!out.issued || !out.resolved()) continue;
    sum += out.first_hit_time - out.issue_time;
    ++n;
  }
  if (n == 0) throw NoResolvedQueriesError("avg_discovery_delay: no resolved queries");
  return sum / static_cast<double>(n);
}

RunMetrics compute_metrics(const Simulation& sim) {
  RunMetrics m;
  const auto& outs = sim.outcomes();
  m.recall = recall(outs, sim.workload());
  m.success_rate = success_rate(outs);
  m.queries_issued = sim.counters().queries_issued;
  for (const QueryOutcome& out : outs) {
    if (out.issued && out.resolved()) ++m.queries_resolved;
  }
  m.avg_discovery_delay = m.queries_resolved > 0 ? avg_discovery_delay(outs) : 0.0;
  m.hits_lost = sim.counters().hits_lost;
  m.messages_sent = sim.counters().messages_sent;
  m.overflow_drops = sim.counters().overflow_drops;
  return m;
}

nlohmann::json RunMetrics::to_json() const {
  nlohmann::json j;
  j["recall"] = recall;
  j["success_rate"] = success_rate;
  if (queries_resolved > 0) {
    j["avg_discovery_delay"] = avg_discovery_delay;
  } else {
    j["avg_discovery_delay"] = nullptr;
  }
  j["queries_issued"] = queries_issued;
  j["queries_resolved"] = queries_resolved;
  j["hits_lost"] = hits_lost;
  j["messages_sent"] = messages_sent;
  j["overflow_drops"] = overflow_drops;
  return j;
}

RunMetrics run_scenario(const SimConfig& cfg) {
  cfg.validate();
  RngRegistry workload_rng(cfg.seed);
  const Workload w = generate_workload(cfg.content, cfg.n_peers, workload_rng);
  Simulation sim(cfg, w);
  sim.run();
  return compute_metrics(sim);
}

RunMetrics run_scenario(const SimConfig& cfg, const Workload& workload) {
  Simulation sim(cfg, workload);
  sim.run();
  return compute_metrics(sim);
}

SweepAxis sweep_axis_from_string(const std::string& s) {
  if (s == "peers") return SweepAxis::Peers;
  if (s == "speed") return SweepAxis::Speed;
  throw BadConfigError("unknown sweep axis: " + s + " (expected peers or speed)");
}

std::string to_string(SweepAxis axis) {
  return axis == SweepAxis::Peers ? "peers" : "speed";
}

std::vector<double> default_axis_values(SweepAxis axis) {
  if (axis == SweepAxis::Peers) return {25.0, 50.0, 75.0, 100.0};
  return {4.26, 7.73, 11.68};
}

const std::vector<std::string>& metric_names() {
  static const std::vector<std::string> names = {
      "recall",        "success_rate", "avg_discovery_delay",
      "queries_issued", "hits_lost",    "messages_sent"};
  return names;
}

namespace {

double metric_value(const RunMetrics& m, const std::string& name) {
  if (name == "recall") return m.recall;
  if (name == "success_rate") return m.success_rate;
  if (name == "avg_discovery_delay") {
    return m.queries_resolved > 0 ? m.avg_discovery_delay
                                  : std::numeric_limits<double>::quiet_NaN();
  }
  if (name == "queries_issued") return static_cast<double>(m.queries_issued);
  if (name == "hits_lost") return static_cast<double>(m.hits_lost);
  if (name == "messages_sent") return static_cast<double>(m.messages_sent);
  throw SimError("unknown metric: " + name);
}

// Mean/population-std over the defined (non-NaN) values.
std::pair<double, double> mean_std(const std::vector<double>& xs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    if (!std::isnan(x)) {
      sum += x;
      ++n;
    }
  }
  if (n == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan};
  }
  const double mean = sum / static_cast<double>(n);
  double var = 0.0;
  for (double x : xs) {
    if (!std::isnan(x)) var += (x - mean) * (x - mean);
  }
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

std::vector<double> cell_values(const SweepCell& cell, const std::string& metric) {
  std::vector<double> xs;
  xs.reserve(cell.runs.size());
  for (const RunMetrics& m : cell.runs) xs.push_back(metric_value(m, metric));
  return xs;
}

SimConfig cell_config(const SimConfig& base, SweepAxis axis, double value,
                      Protocol protocol, std::uint64_t seed) {
  SimConfig cfg = base;
  if (axis == SweepAxis::Peers) {
    cfg.n_peers = static_cast<int>(value);
  } else {
    cfg.mobility.v_nominal = value;
  }
  cfg.protocol.protocol = protocol;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

double SweepCell::mean_of(const std::string& metric) const {
  return mean_std(cell_values(*this, metric)).first;
}

double SweepCell::std_of(const std::string& metric) const {
  return mean_std(cell_values(*this, metric)).second;
}

std::vector<SweepCell> sweep(const SimConfig& base_cfg, const SweepSpec& spec) {
  if (spec.seeds < 1) throw BadConfigError("sweep: seeds must be >= 1");
  const std::vector<double> values =
      spec.values.empty() ? default_axis_values(spec.axis) : spec.values;
  if (spec.protocols.empty()) throw BadConfigError("sweep: no protocols given");

  struct Job {
    std::size_t cell;
    std::size_t slot;
    SimConfig cfg;
  };
  std::vector<SweepCell> cells;
  std::vector<Job> jobs;
  for (double v : values) {
    for (Protocol proto : spec.protocols) {
      SweepCell cell;
      cell.axis_value = v;
      cell.protocol = proto;
      cell.runs.resize(static_cast<std::size_t>(spec.seeds));
      const std::size_t cell_idx = cells.size();
      for (int s = 0; s < spec.seeds; ++s) {
        jobs.push_back({cell_idx, static_cast<std::size_t>(s),
                        cell_config(base_cfg, spec.axis, v, proto,
                                    base_cfg.seed + static_cast<std::uint64_t>(s))});
      }
      cells.push_back(std::move(cell));
    }
  }

  const int workers = std::max(1, spec.jobs);
  if (workers == 1) {
    for (const Job& job : jobs) {
      cells[job.cell].runs[job.slot] = run_scenario(job.cfg);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= jobs.size()) return;
          cells[jobs[i].cell].runs[jobs[i].slot] = run_scenario(jobs[i].cfg);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return cells;
}

std::string sweep_to_csv(const std::vector<SweepCell>& cells, SweepAxis axis) {
  std::string csv = "axis,axis_value,protocol,seed_count,metric,mean,std\n";
  const std::string axis_name = to_string(axis);
  for (const SweepCell& cell : cells) {
    for (const std::string& metric : metric_names()) {
      const auto [mean, sd] = mean_std(cell_values(cell, metric));
      csv += axis_name;
      csv += ',';
      csv += format_double(cell.axis_value);
      csv += ',';
      csv += to_string(cell.protocol);
      csv += ',';
      csv += std::to_string(cell.runs.size());
      csv += ',';
      csv += metric;
      csv += ',';
      csv += format_double(mean);
      csv += ',';
      csv += format_double(sd);
      csv += '\n';
    }
  }
  return csv;
}

nlohmann::json sweep_runs_to_json(const std::vector<SweepCell>& cells,
                                  SweepAxis axis, std::uint64_t base_seed) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepCell& cell : cells) {
    for (std::size_t s = 0; s < cell.runs.size(); ++s) {
      nlohmann::json entry = cell.runs[s].to_json();
      entry["axis"] = to_string(axis);
      entry["axis_value"] = cell.axis_value;
      entry["protocol"] = to_string(cell.protocol);
      entry["seed"] = base_seed + s;
      arr.push_back(std::move(entry));
    }
  }
  return arr;
}

}  // namespace cdpsim
