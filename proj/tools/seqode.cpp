// Command-line front end: one subcommand per experiment, JSON config in,
// CSV and a JSON run record out.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "seqode/errors.hpp"
#include "seqode/harness/acceptance.hpp"
#include "seqode/harness/experiments.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;
constexpr int kAcceptance = 3;

constexpr const char* kSchemas = R"(CSV schemas (written to --out):
  solve.csv          t,component,value
  converge.csv       n,N,error,ball,radius,cost,scalar_evaluations,bound_total
  truncate.csv       N,n,error,ball,radius,cost,bound_total
  workprecision.csv  epsilon,closed_n,closed_N,closed_cost,grid_n,grid_N,grid_cost,
                     realized,error,ledger_cost,within_epsilon
  lowerbound.csv     case,r,n,N,guaranteed_gap,measured_gap,scaled_gap,identical,condition_c
Each subcommand also writes <out>/<subcommand>.json with the config echo and results.
Exit codes: 0 ok, 1 invalid config, 2 numerical failure, 3 acceptance failure.)";

void write_record(const std::string& out_dir, const std::string& name, const nlohmann::json& record) {
  std::filesystem::create_directories(out_dir);
  std::ofstream file(std::filesystem::path(out_dir) / (name + ".json"));
  file << record.dump(2) << '\n';
  if (!file) throw std::runtime_error("cannot write " + out_dir + "/" + name + ".json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated iterated-Lagrange solver for countable ODE systems"};
  app.footer(kSchemas);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int threads = 0;
  int samples = 0;

  using Command = nlohmann::json (*)(const seqode::ExperimentConfig&, const std::string&);
  const std::vector<std::pair<std::string, Command>> commands{
      {"solve", seqode::cmd_solve},
      {"converge", seqode::cmd_converge},
      {"truncate", seqode::cmd_truncate},
      {"workprecision", seqode::cmd_workprecision},
      {"lowerbound", seqode::cmd_lowerbound}};
  const std::map<std::string, std::string> help{
      {"solve", "one solve; samples the first components of the trajectory"},
      {"converge", "errors over the n list and the fitted order"},
      {"truncate", "errors over the N list and the slope against log N"},
      {"workprecision", "closed-form and grid plans per epsilon, realized runs, cost slope"},
      {"lowerbound", "Case I/II pairs per N, Case III per n, condition (C)"}};

  for (const auto& [name, fn] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", threads, "worker threads (0: config value)")->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", samples, "samples per interval (0: config value)")
        ->check(CLI::NonNegativeNumber);
  }
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--out", out_dir, "output directory")->capture_default_str();
  verify->add_option("--threads", threads, "worker threads (0: all cores)")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      seqode::AcceptanceOptions options;
      options.threads = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
      const auto results = seqode::run_acceptance(
          options, [](const seqode::CriterionResult& r) { std::cout << seqode::format_result(r) << std::endl; });
      nlohmann::json record = nlohmann::json::array();
      bool all = true;
      for (const auto& r : results) {
        record.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                          {"seconds", r.seconds}});
        all = all && r.passed;
      }
      write_record(out_dir, "verify", {{"command", "verify"}, {"criteria", record}, {"passed", all}});
      return all ? kOk : kAcceptance;
    }
    for (const auto& [name, fn] : commands) {
      if (!app.got_subcommand(name)) continue;
      seqode::ExperimentConfig config = seqode::load_config(config_path);
      if (threads > 0) config.threads = threads;
      if (samples > 0) config.samples_per_interval = samples;
      seqode::validate(config);
      write_record(out_dir, name, fn(config, out_dir));
    }
    return kOk;
  } catch (const seqode::ValidationError& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kValidation;
  } catch (const seqode::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
