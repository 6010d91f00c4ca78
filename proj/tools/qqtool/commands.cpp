#include "qqtool/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "qqbethe/io.hpp"

namespace qqtool {

using qqb::json;

namespace {

struct Options {
  std::optional<std::string> backend;
  std::optional<int> precision;
  std::optional<int> tol_bits;
  unsigned long long seed = 1;
  std::optional<std::string> word;
  std::optional<std::string> out;
  std::optional<std::string> degrees;
  std::vector<std::string> files;
};

class Report {
 public:
  Report(std::string command, const std::vector<std::string>& args) {
    j_["command"] = std::move(command);
    j_["args"] = args;
  }

  void set(const std::string& key, json v) { j_[key] = std::move(v); }

  void check(const std::string& name, bool pass, const std::string& residual = "0", bool informational = false) {
    json c{{"name", name}, {"pass", pass}, {"residual", residual}};
    if (informational)
      c["informational"] = true;
    else
      failed_ = failed_ || !pass;
    checks_.push_back(std::move(c));
  }

  void artifact(const std::string& name, json v) { artifacts_[name] = std::move(v); }

  bool failed() const { return failed_; }

  json finish(int code, double ms) {
    j_["checks"] = checks_;
    if (!artifacts_.empty()) j_["artifacts"] = artifacts_;
    j_["status"] = code == kPass ? "pass" : code == kCheckFailed ? "fail" : code == kInputError ? "input-error" : "no-convergence";
    j_["exit_code"] = code;
    j_["wall_time_ms"] = ms;
    return j_;
  }

 private:
  json j_ = json::object();
  json checks_ = json::array();
  json artifacts_ = json::object();
  bool failed_ = false;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qqb::ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw qqb::ParseError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw qqb::ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string mag(const qqb::Real& r) { return r.is_zero() ? "0" : r.to_string(8); }

qqb::Backend choose_backend(const json& inst, const Options& o) {
  if (o.backend) return qqb::parse_backend(*o.backend);
  if (inst.contains("backend")) return qqb::parse_backend(inst.at("backend").get<std::string>());
  return qqb::Backend::Exact;
}

qqb::Tolerances choose_tolerances(const json& inst, const Options& o) {
  qqb::Tolerances t = qqb::instance_tolerances(inst);
  if (o.precision) {
    if (*o.precision < 64 || *o.precision > 1 << 16) throw qqb::ParseError("--precision out of range");
    t.precision_bits = *o.precision;
  }
  if (o.tol_bits) {
    if (*o.tol_bits <= 0 || *o.tol_bits >= t.precision_bits) throw qqb::ParseError("--tol out of range");
    t.rel_bits = *o.tol_bits;
  }
  return t;
}

template <class S>
qqb::QQInstance<S> load_instance(const json& j, const Options& o) {
  qqb::Tolerances t = choose_tolerances(j, o);
  return qqb::instance_from_json<S>(j, &t);
}

qqb::WeylWord word_for(const qqb::CartanType& t, const Options& o) {
  if (o.word) return qqb::parse_word(*o.word, t.rank);
  return qqb::w0_reduced_word(t);
}

void need_files(const Options& o, size_t n, const char* usage) {
  if (o.files.size() != n) throw qqb::ParseError(std::string("usage: ") + usage);
}

template <class S>
void regularity_checks(const qqb::QQInstance<S>& inst, const qqb::QQSolution<S>& sol, Report& rep) {
  auto nd = qqb::check_nondegenerate(inst, sol.q_plus);
  rep.artifact("nondegeneracy", qqb::nondeg_to_json(nd));
  rep.check("nondegenerate", nd.overall, "0", true);
  if (!nd.overall) return;

  auto run = [&](const auto& ni, const auto& ns, const auto& br) {
    auto reg = qqb::regularity_residues(ni, ns, br);
    auto bethe = qqb::verify_bethe(ni, br);
    qqb::Real worst(0L);
    bool pass = true;
    for (const auto& [key, v] : reg) {
      using T = std::decay_t<decltype(v)>;
      worst = qqb::max(worst, qqb::ScalarTraits<T>::magnitude(v));
      pass = pass && qqb::ScalarTraits<T>::negligible(v, qqb::Real(1L), ni.tol);
    }
    rep.check("regularity_residues", pass, mag(worst));
    rep.check("bethe_equations", bethe.pass, mag(bethe.max_residual));
    rep.artifact("bethe_roots", qqb::roots_to_json(br));
  };
  if constexpr (qqb::is_exact_v<S>) {
    if (auto br = qqb::roots_of(sol.q_plus)) {
      run(inst, sol, *br);
      return;
    }
  }
  qqb::PrecisionScope scope(inst.tol.precision_bits);
  auto ni = qqb::to_numeric(inst);
  auto ns = qqb::to_numeric(sol);
  run(ni, ns, qqb::roots_of(ns.q_plus));
}

template <class S>
int cmd_verify(const Options& o, const json& ij, Report& rep) {
  need_files(o, 2, "verify INSTANCE SOLUTION");
  auto inst = load_instance<S>(ij, o);
  auto sol = qqb::solution_from_json<S>(read_json(o.files[1]), inst.rank(), inst.tol.precision_bits);
  qqb::PrecisionScope scope(inst.tol.precision_bits);
  for (int i = 0; i < inst.rank(); ++i) {
    auto res = qqb::qq_residual(inst, sol, i);
    rep.check("qq_residual_" + std::to_string(i + 1), qqb::qq_equation_holds(inst, sol, i), mag(qqb::coeff_norm(res)));
  }
  for (int i = 0; i < inst.rank(); ++i) {
    if (sol.q_plus[i].is_zero()) {
      rep.check("mp_twist_" + std::to_string(i + 1), false, "q+ is zero");
      continue;
    }
    qqb::Real r = qqb::verify_mp_twist(inst, sol, i);
    qqb::Real scale = qqb::max(qqb::Real(1L), qqb::qq_scale(inst, sol, i));
    bool pass = qqb::is_exact_v<S> ? r.is_zero() : r <= inst.tol.rel() * scale;
    rep.check("mp_twist_" + std::to_string(i + 1), pass, mag(r));
  }
  bool nonzero = std::none_of(sol.q_plus.begin(), sol.q_plus.end(), [](const auto& p) { return p.is_zero(); });
  if (nonzero) regularity_checks(inst, sol, rep);
  return rep.failed() ? kCheckFailed : kPass;
}

int cmd_solve(const Options& o, const json& ij, Report& rep, std::ostream& err) {
  need_files(o, 2, "solve INSTANCE PARTITION_OR_INIT");
  qqb::Tolerances t = choose_tolerances(ij, o);
  qqb::PrecisionScope scope(t.precision_bits);
  // Solving is numeric; exact instances are promoted.
  auto inst = qqb::instance_from_json<qqb::Complex>(ij, &t);
  json pj = read_json(o.files[1]);
  qqb::SolveOptions so;
  so.seed = o.seed;
  so.log = [&err](const qqb::IterationRecord& r) {
    err << json{{"phase", r.phase}, {"step", r.step}, {"iteration", r.iteration}, {"log2_t", r.log2_t},
                {"max_residual", r.max_residual}, {"damping", r.damping}}
               .dump()
        << "\n";
  };
  qqb::BetheRoots<qqb::Complex> br;
  try {
    if (pj.contains("partition")) {
      qqb::InfinitePartition<qqb::Complex> part{
          qqb::values_from_json<qqb::Complex>(pj.at("partition"), inst.rank(), "partition")};
      br = qqb::seed_and_continue(inst, part, so);
      rep.set("method", "seed_and_continue");
    } else if (pj.contains("roots")) {
      qqb::BetheRoots<qqb::Complex> init{qqb::values_from_json<qqb::Complex>(pj.at("roots"), inst.rank(), "roots")};
      br = qqb::solve_newton(inst, init, so);
      rep.set("method", "newton");
    } else {
      throw qqb::ParseError("solve input needs a \"partition\" or \"roots\" key");
    }
  } catch (const json::exception& e) {
    throw qqb::ParseError(e.what());
  }
  auto bethe = qqb::verify_bethe(inst, br);
  rep.check("bethe_equations", bethe.pass, mag(bethe.max_residual));
  auto sol = qqb::complete_minus(inst, qqb::q_plus_from_roots(br));
  for (int i = 0; i < inst.rank(); ++i) {
    auto res = qqb::qq_residual(inst, sol, i);
    rep.check("qq_residual_" + std::to_string(i + 1), qqb::qq_equation_holds(inst, sol, i), mag(qqb::coeff_norm(res)));
  }
  rep.artifact("instance", qqb::instance_to_json(inst));
  rep.artifact("bethe_roots", qqb::roots_to_json(br));
  json sj = qqb::solution_to_json(sol);
  rep.artifact("solution", sj);
  if (o.out) write_json(*o.out, sj);
  return rep.failed() ? kCheckFailed : kPass;
}

template <class S>
int cmd_chain(const Options& o, const json& ij, Report& rep) {
  need_files(o, 2, "chain INSTANCE SOLUTION [--word W]");
  auto inst = load_instance<S>(ij, o);
  auto sol = qqb::solution_from_json<S>(read_json(o.files[1]), inst.rank(), inst.tol.precision_bits);
  qqb::PrecisionScope scope(inst.tol.precision_bits);
  auto word = word_for(inst.type, o);
  if (!qqb::is_reduced(word, inst.cartan)) throw qqb::ParseError("word is not reduced");
  qqb::ChainOptions co;
  co.throw_on_break = false;
  co.seed = o.seed;
  auto tr = qqb::chain(inst, sol, word, co);
  json tj = qqb::trace_to_json(tr);
  rep.artifact("trace", tj);
  rep.check("composable", tr.complete(), tr.complete() ? "0" : "broken at step " + std::to_string(tr.broken_step));
  rep.check("generic", tr.all_generic(), "0", true);
  for (size_t s = 0; s < tr.steps.size(); ++s)
    if (tr.steps[s].composable) {
      const auto& st = tr.steps[s];
      bool ok = qqb::is_qq_solution(st.inst, st.sol);
      rep.check("step_" + std::to_string(s + 1) + "_residual", ok);
    }
  if (o.out) write_json(*o.out, tj);
  return rep.failed() ? kCheckFailed : kPass;
}

int cmd_admissible(const Options& o, const json& ij, Report& rep) {
  need_files(o, 1, "admissible INSTANCE_OR_DATUM [--word W] [--degrees d1,d2,...]");
  qqb::CartanType t = qqb::type_from_json(ij.at("cartan"));
  qqb::CartanMatrix c = qqb::cartan_matrix(t);
  qqb::CombinatorialDatum datum;
  auto parse_list = [&](const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(std::stoi(tok));
    return v;
  };
  if (o.degrees)
    datum.d = parse_list(*o.degrees);
  else if (ij.contains("d"))
    datum.d = ij.at("d").get<std::vector<int>>();
  else
    throw qqb::ParseError("admissible needs degrees d (file key \"d\" or --degrees)");
  if (ij.contains("N")) {
    datum.N = ij.at("N").get<std::vector<int>>();
  } else {
    auto inst = load_instance<qqb::Rational>(ij, o);
    for (int i = 0; i < inst.rank(); ++i) datum.N.push_back(qqb::lambda_degree(inst, i));
  }
  if (static_cast<int>(datum.d.size()) != t.rank || static_cast<int>(datum.N.size()) != t.rank)
    throw qqb::ParseError("d and N need one entry per color");
  auto word = word_for(t, o);
  if (!qqb::is_reduced(word, c)) throw qqb::ParseError("word is not reduced");
  auto ar = qqb::check_admissible(c, datum, word);
  json pre = json::array();
  for (const auto& p : ar.prefixes) pre.push_back({{"prefix", p.prefix}, {"d", p.d}, {"hold", p.hold}, {"pass", p.pass}});
  rep.artifact("prefixes", pre);
  rep.set("word", qqb::format_word(word));
  rep.check("admissible", ar.pass, ar.pass ? "0" : "fails at prefix " + std::to_string(ar.first_failure));
  return rep.failed() ? kCheckFailed : kPass;
}

template <class S>
int cmd_fold(const Options& o, const json& ij, Report& rep) {
  need_files(o, 2, "fold INSTANCE SOLUTION");
  auto inst = load_instance<S>(ij, o);
  auto sol = qqb::solution_from_json<S>(read_json(o.files[1]), inst.rank(), inst.tol.precision_bits);
  qqb::PrecisionScope scope(inst.tol.precision_bits);
  auto [fi, fs] = qqb::fold(inst, sol);
  for (int i = 0; i < fi.rank(); ++i) {
    auto res = qqb::qq_residual(fi, fs, i);
    rep.check("folded_qq_residual_" + std::to_string(i + 1), qqb::qq_equation_holds(fi, fs, i),
              mag(qqb::coeff_norm(res)));
  }
  bool nonzero = std::none_of(fs.q_plus.begin(), fs.q_plus.end(), [](const auto& p) { return p.is_zero(); });
  if (nonzero) {
    auto nd = qqb::check_nondegenerate(fi, fs.q_plus);
    rep.artifact("folded_nondegeneracy", qqb::nondeg_to_json(nd));
    rep.check("folded_nondegenerate", nd.overall, "0", true);
  }
  json fij = qqb::instance_to_json(fi), fsj = qqb::solution_to_json(fs);
  rep.artifact("instance", fij);
  rep.artifact("solution", fsj);
  if (o.out) {
    write_json(*o.out + ".instance.json", fij);
    write_json(*o.out + ".solution.json", fsj);
  }
  return rep.failed() ? kCheckFailed : kPass;
}

template <class S>
int cmd_diagonalize(const Options& o, const json& ij, Report& rep) {
  need_files(o, 2, "diagonalize INSTANCE SOLUTION [--word W]");
  auto inst = load_instance<S>(ij, o);
  auto sol = qqb::solution_from_json<S>(read_json(o.files[1]), inst.rank(), inst.tol.precision_bits);
  qqb::PrecisionScope scope(inst.tol.precision_bits);
  if (inst.type.family != qqb::Family::A) throw qqb::UnsupportedType("diagonalize supports type A only");
  auto word = word_for(inst.type, o);
  qqb::ChainOptions co;
  co.seed = o.seed;
  try {
    auto d = qqb::diagonalize_type_a(inst, sol, word, co);
    bool pass = qqb::is_exact_v<S> ? d.residual.is_zero() : d.residual <= inst.tol.rel() * qqb::Real(1L << 20);
    rep.check("w0_diagonalization", pass, mag(d.residual));
    json m = qqb::matrix_to_json(d.v);
    rep.artifact("v", m);
    rep.artifact("trace", qqb::trace_to_json(d.trace));
    if (o.out) write_json(*o.out, m);
  } catch (const qqb::ChainBroken& e) {
    rep.check("chain", false, e.what());
  } catch (const qqb::FactorizationFailed& e) {
    rep.check("bruhat_factorization", false, e.what());
  }
  return rep.failed() ? kCheckFailed : kPass;
}

template <class S>
int dispatch_typed(const std::string& cmd, const Options& o, const json& ij, Report& rep) {
  if (cmd == "verify") return cmd_verify<S>(o, ij, rep);
  if (cmd == "chain") return cmd_chain<S>(o, ij, rep);
  if (cmd == "fold") return cmd_fold<S>(o, ij, rep);
  if (cmd == "diagonalize") return cmd_diagonalize<S>(o, ij, rep);
  throw qqb::ParseError("unknown command " + cmd);
}

int execute(const std::string& cmd, const Options& o, Report& rep, std::ostream& err) {
  if (o.files.empty()) throw qqb::ParseError("missing input file");
  json ij = read_json(o.files[0]);
  rep.set("instance_digest", qqb::digest_hex(ij));
  if (cmd == "admissible") return cmd_admissible(o, ij, rep);
  if (cmd == "solve") {
    rep.set("backend", "numeric");
    return cmd_solve(o, ij, rep, err);
  }
  qqb::Backend b = choose_backend(ij, o);
  rep.set("backend", qqb::backend_name(b));
  if (b == qqb::Backend::Exact) return dispatch_typed<qqb::Rational>(cmd, o, ij, rep);
  return dispatch_typed<qqb::Complex>(cmd, o, ij, rep);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qqtool: qq-system, Bethe equation and Miura oper computations"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  std::string batch;
  int workers = 0;
  app.add_option("--backend", o.backend, "exact or numeric (overrides the instance file)");
  app.add_option("--precision", o.precision, "binary precision for the numeric backend");
  app.add_option("--tol", o.tol_bits, "relative tolerance exponent: tau = 2^-TOL");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--word", o.word, "Weyl word, 1-based letters, e.g. 1,2,1");
  app.add_option("--out", o.out, "artifact output path");
  auto* batch_cmd = app.add_subcommand("batch", "run a JSON array of argument lists");
  batch_cmd->add_option("file", batch, "batch file")->required();
  batch_cmd->add_option("--workers", workers, "worker threads (default: hardware concurrency)");
  const std::vector<std::pair<std::string, std::string>> names = {
      {"verify", "INSTANCE SOLUTION: residuals, nondegeneracy, Bethe roots"},
      {"solve", "INSTANCE PARTITION|ROOTS: numeric Bethe roots and the completed solution"},
      {"chain", "INSTANCE SOLUTION --word W: Backlund chain trace"},
      {"admissible", "DATUM|INSTANCE --word W: degree inequalities per prefix"},
      {"fold", "INSTANCE SOLUTION: fold B_n or G2 onto the simply laced cover"},
      {"diagonalize", "INSTANCE SOLUTION --word W: gauge the type A oper to its diagonal form"}};
  for (const auto& [n, help] : names) {
    auto* sc = app.add_subcommand(n, help);
    sc->add_option("files", o.files, "input files");
    if (n == "admissible") sc->add_option("--degrees", o.degrees, "degrees of q+, e.g. 1,1");
  }
  // --batch FILE is accepted as a global flag too.
  std::vector<std::string> argv = args;
  for (size_t k = 0; k + 1 < argv.size(); ++k)
    if (argv[k] == "--batch") {
      argv[k] = "batch";
      break;
    }
  std::vector<std::string> rev(argv.rbegin(), argv.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (batch_cmd->parsed()) return run_batch(batch, workers, out, err);

  std::string cmd;
  for (const auto* sc : app.get_subcommands()) cmd = sc->get_name();
  Report rep(cmd, args);
  auto t0 = std::chrono::steady_clock::now();
  int code;
  try {
    code = execute(cmd, o, rep, err);
  } catch (const qqb::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    rep.check("input", false, e.what());
    code = kInputError;
  } catch (const qqb::BadPartition& e) {
    err << "input error: " << e.what() << "\n";
    rep.check("partition", false, e.what());
    code = kInputError;
  } catch (const qqb::UnsupportedType& e) {
    err << "input error: " << e.what() << "\n";
    rep.check("type", false, e.what());
    code = kInputError;
  } catch (const qqb::NoConvergence& e) {
    err << "solver: " << e.what() << "\n";
    rep.check("convergence", false, e.what());
    code = kNoConvergence;
  } catch (const qqb::PathCollision& e) {
    err << "solver: " << e.what() << "\n";
    rep.check("continuation_path", false, e.what());
    code = kNoConvergence;
  } catch (const qqb::SingularJacobian& e) {
    err << "solver: " << e.what() << "\n";
    rep.check("jacobian", false, e.what());
    code = kNoConvergence;
  } catch (const qqb::InconsistentSystem& e) {
    err << "check failed: " << e.what() << "\n";
    rep.check("completion_color_" + std::to_string(e.color() + 1), false, e.what());
    code = kCheckFailed;
  } catch (const qqb::Error& e) {
    err << "error: " << e.what() << "\n";
    rep.check("precondition", false, e.what());
    code = kInputError;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << "\n";
    rep.check("input", false, e.what());
    code = kInputError;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  out << rep.finish(code, ms).dump(2) << "\n";
  return code;
}

int run_batch(const std::string& batch_file, int workers, std::ostream& out, std::ostream& err) {
  json b;
  try {
    b = read_json(batch_file);
  } catch (const qqb::ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  }
  if (!b.is_array()) {
    err << "input error: batch file must be an array of argument arrays\n";
    return kInputError;
  }
  std::vector<std::vector<std::string>> jobs;
  for (const auto& a : b) {
    if (!a.is_array()) {
      err << "input error: batch entries must be argument arrays\n";
      return kInputError;
    }
    std::vector<std::string> args;
    for (const auto& x : a) args.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    if (!args.empty() && (args[0] == "batch" || args[0] == "--batch")) {
      err << "input error: nested batch\n";
      return kInputError;
    }
    jobs.push_back(std::move(args));
  }
  const size_t n = jobs.size();
  std::vector<std::string> outs(n), errs(n);
  std::vector<int> codes(n, 0);
  std::atomic<size_t> next{0};
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<size_t>(workers, std::max<size_t>(n, 1)));
  auto work = [&] {
    for (size_t k; (k = next.fetch_add(1)) < n;) {
      std::ostringstream o, e;
      codes[k] = run(jobs[k], o, e);
      outs[k] = o.str();
      errs[k] = e.str();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  int worst = 0;
  for (size_t k = 0; k < n; ++k) {
    out << outs[k];
    err << errs[k];
    worst = std::max(worst, codes[k]);
  }
  return worst;
}

}  // namespace qqtool
