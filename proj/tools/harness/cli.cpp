#include <algorithm>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "commands.hpp"
#include "qmlbench/types.hpp"

namespace qmlbench::harness {

ResultRecord cmd_acceptance(const AcceptanceOpts& o, const Common& c, std::ostream& log) {
  std::vector<int> only;
  if (!o.only.empty())
    for (long long id : parse_int_list(o.only)) only.push_back((int)id);
  const std::string fixtures = c.fixtures.empty() ? default_fixture_dir() : c.fixtures;
  const auto results = run_acceptance(o.suite, only, fixtures, log);
  if (results.empty()) throw ArgumentError("no criterion matches the selection");

  ResultRecord r;
  r.subcommand = "acceptance";
  r.config["seed"] = c.seed;
  r.config["suite"] = o.suite;
  if (!o.only.empty()) r.config["only"] = o.only;
  r.config["fixtures"] = fixtures;
  json rows = json::array();
  int passed = 0;
  for (auto& x : results) {
    passed += x.pass;
    rows.push_back({{"id", x.id}, {"name", x.name}, {"suite", x.suite}, {"pass", x.pass}, {"detail", x.detail},
                    {"seconds", x.seconds}, {"budget_seconds", x.budget}});
  }
  r.metrics["criteria"] = rows;
  r.metrics["passed"] = passed;
  r.metrics["total"] = (int)results.size();
  r.metrics["all_pass"] = passed == (int)results.size();
  return r;
}

namespace {

// key=value lines, '#' comments; keys are flag names without the dashes
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config '" + path + "'");
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    kv.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return kv;
}

// strips --config and appends its entries for flags not given explicitly
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string cfg;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      cfg = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (cfg.empty()) return out;
  std::set<std::string> given;
  for (auto& a : out)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') - 2));
  for (auto& [k, v] : read_config(cfg))
    if (!given.count(k)) out.push_back("--" + k + "=" + v);
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qmlbench: quantum machine learning benchmark harness"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common common;
  std::function<ResultRecord()> action;
  bool acceptance_run = false;

  auto sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->add_option("--seed", common.seed, "master seed")->capture_default_str();
    s->add_option("--out", common.out, "ResultRecord JSON path, or CSV artifact path where supported");
    s->add_option("--mode", common.mode, "subcommand-specific mode");
    s->add_option("--fixtures", common.fixtures, "fixture directory");
    return s;
  };

  SimulateOpts sim;
  auto* s_sim = sub("simulate", "run a circuit and report the final state");
  s_sim->add_option("--qubits", sim.qubits)->capture_default_str();
  s_sim->add_option("--circuit", sim.circuit, "gates separated by ';', e.g. \"H 0; CNOT 0 1\"")->capture_default_str();
  s_sim->add_option("--noise", sim.noise, "depolarizing strength after each gate")->capture_default_str();
  s_sim->callback([&] { action = [&] { return cmd_simulate(sim, common); }; });

  MeasureOpts mea;
  auto* s_mea = sub("measure", "sample computational-basis or Pauli measurements");
  s_mea->add_option("--qubits", mea.qubits)->capture_default_str();
  s_mea->add_option("--circuit", mea.circuit)->capture_default_str();
  s_mea->add_option("--shots", mea.shots)->capture_default_str();
  s_mea->add_option("--pauli", mea.pauli, "Pauli string to estimate");
  s_mea->callback([&] { action = [&] { return cmd_measure(mea, common); }; });

  TomographyOpts tom;
  auto* s_tom = sub("tomography", "state tomography by linear inversion or MLE");
  s_tom->add_option("--qubits", tom.qubits)->capture_default_str();
  s_tom->add_option("--shots", tom.shots, "shots per setting, 0 for exact probabilities")->capture_default_str();
  s_tom->add_option("--state", tom.state, "random, mixed, or a circuit")->capture_default_str();
  s_tom->callback([&] { action = [&] { return cmd_tomography(tom, common); }; });

  BlockencOpts be;
  auto* s_be = sub("blockenc", "block-encoding demos (modes demo, pinv, exp)");
  s_be->add_option("--qubits", be.qubits)->capture_default_str();
  s_be->add_option("--delta", be.delta)->capture_default_str();
  s_be->add_option("--eps", be.eps)->capture_default_str();
  s_be->callback([&] { action = [&] { return cmd_blockenc(be, common); }; });

  KernelOpts ker;
  auto* s_ker = sub("kernel", "quantum kernel matrix of a CSV dataset");
  s_ker->add_option("--data", ker.data)->required();
  s_ker->add_option("--schema", ker.schema)->capture_default_str();
  s_ker->add_option("--map", ker.map, "basis, amplitude, angleX, angleY, rx")->capture_default_str();
  s_ker->add_option("--limit", ker.limit, "use the first rows only, 0 for all")->capture_default_str();
  s_ker->add_option("--shots", ker.shots, "swap-test shots, 0 for exact")->capture_default_str();
  s_ker->callback([&] { action = [&] { return cmd_kernel(ker, common); }; });

  QnnOpts qnn;
  auto* s_qnn = sub("qnn-train", "train the hardware-efficient QNN classifier");
  s_qnn->add_option("--data", qnn.data, "generic CSV; synthetic margin data when empty");
  s_qnn->add_option("--gamma", qnn.gamma)->capture_default_str();
  s_qnn->add_option("--data-seed", qnn.data_seed)->capture_default_str();
  s_qnn->add_option("--samples", qnn.samples)->capture_default_str();
  s_qnn->add_option("--train-frac", qnn.train_frac)->capture_default_str();
  s_qnn->add_option("--qubits", qnn.qubits)->capture_default_str();
  s_qnn->add_option("--layers", qnn.layers)->capture_default_str();
  s_qnn->add_option("--epochs", qnn.epochs)->capture_default_str();
  s_qnn->add_option("--batch", qnn.batch)->capture_default_str();
  s_qnn->add_option("--lr", qnn.lr)->capture_default_str();
  s_qnn->add_option("--optimizer", qnn.optimizer)->capture_default_str();
  s_qnn->add_option("--entangler", qnn.entangler)->capture_default_str();
  s_qnn->add_option("--axis", qnn.axis)->capture_default_str();
  s_qnn->add_option("--log", qnn.log, "per-epoch CSV log");
  s_qnn->add_option("--params", qnn.params, "write trained parameters here");
  s_qnn->callback([&] { action = [&] { return cmd_qnn_train(qnn, common); }; });

  QganOpts gan;
  auto* s_gan = sub("qgan-train", "train the patch QGAN on 8x8 digits");
  s_gan->add_option("--data", gan.data, "defaults to the optdigits fixture");
  s_gan->add_option("--schema", gan.schema)->capture_default_str();
  s_gan->add_option("--label", gan.label)->capture_default_str();
  s_gan->add_option("--samples", gan.samples)->capture_default_str();
  s_gan->add_option("--patches", gan.patches)->capture_default_str();
  s_gan->add_option("--qubits", gan.qubits)->capture_default_str();
  s_gan->add_option("--ancillas", gan.ancillas)->capture_default_str();
  s_gan->add_option("--layers", gan.layers)->capture_default_str();
  s_gan->add_option("--epochs", gan.epochs)->capture_default_str();
  s_gan->add_option("--batch", gan.batch)->capture_default_str();
  s_gan->add_option("--lr-g", gan.lr_g)->capture_default_str();
  s_gan->add_option("--lr-d", gan.lr_d)->capture_default_str();
  s_gan->add_option("--log", gan.log);
  s_gan->callback([&] { action = [&] { return cmd_qgan_train(gan, common); }; });

  GroverOpts gro;
  auto* s_gro = sub("grover", "Grover search over 2^n items");
  s_gro->add_option("--n", gro.n, "qubits")->capture_default_str();
  s_gro->add_option("--m", gro.m, "number of marked items")->capture_default_str();
  s_gro->callback([&] { action = [&] { return cmd_grover(gro, common); }; });

  QperceptronOpts qp;
  auto* s_qp = sub("qperceptron", "query scaling of the Grover perceptron against sampling");
  s_qp->add_option("--ds", qp.ds, "dataset sizes")->capture_default_str();
  s_qp->add_option("--seeds", qp.seeds)->capture_default_str();
  s_qp->add_option("--gamma", qp.gamma)->capture_default_str();
  s_qp->add_option("--eps", qp.eps)->capture_default_str();
  s_qp->add_option("--c", qp.c)->capture_default_str();
  s_qp->add_option("--dim", qp.dim)->capture_default_str();
  s_qp->callback([&] { action = [&] { return cmd_qperceptron(qp, common); }; });

  BpOpts bp;
  auto* s_bp = sub("bp-experiment", "gradient variance against qubit count");
  s_bp->add_option("--ns", bp.ns)->capture_default_str();
  s_bp->add_option("--samples", bp.samples)->capture_default_str();
  s_bp->add_option("--depth-factor", bp.depth_factor)->capture_default_str();
  s_bp->add_option("--entangler", bp.entangler)->capture_default_str();
  s_bp->callback([&] { action = [&] { return cmd_bp_experiment(bp, common); }; });

  TransformerOpts tr;
  auto* s_tr = sub("transformer", "one transformer row, classical and emulated quantum");
  s_tr->add_option("--instance", tr.instance, "JSON instance, defaults to the fixture");
  s_tr->add_option("--eps", tr.eps, "polynomial accuracy, overrides the instance");
  s_tr->callback([&] { action = [&] { return cmd_transformer(tr, common); }; });

  NormStudyOpts ns;
  auto* s_ns = sub("norm-study", "spectral and Frobenius norms of random sequence matrices");
  s_ns->add_option("--sampler", ns.sampler, "unit, gaussian, orthonormal, repeated")->capture_default_str();
  s_ns->add_option("--ells", ns.ells)->capture_default_str();
  s_ns->add_option("--d", ns.d)->capture_default_str();
  s_ns->add_option("--trials", ns.trials)->capture_default_str();
  s_ns->callback([&] { action = [&] { return cmd_norm_study(ns, common); }; });

  AcceptanceOpts acc;
  auto* s_acc = sub("acceptance", "run the acceptance criteria");
  s_acc->add_option("--suite", acc.suite, "all, core, encodings, blockenc, kernel, learners, grover, qgan, transformer")
      ->capture_default_str();
  s_acc->add_option("--only", acc.only, "comma-separated criterion ids");
  s_acc->callback([&] {
    acceptance_run = true;
    action = [&] { return cmd_acceptance(acc, common, err); };
  });

  try {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 64;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const ResultRecord r = action();
    const std::string text = dump(to_json(r));
    if (!common.out.empty() && !(common.out.size() >= 4 && common.out.substr(common.out.size() - 4) == ".csv"))
      persist_result(r, common.out);
    out << text << "\n";
    if (acceptance_run && !r.metrics.value("all_pass", false)) return 3;
    return 0;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace qmlbench::harness
