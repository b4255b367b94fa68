#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gf2sym/bounds.hpp"
#include "gf2sym/canon.hpp"
#include "gf2sym/errors.hpp"
#include "gf2sym/io.hpp"
#include "gf2sym/mc.hpp"
#include "gf2sym/sample.hpp"

namespace gf2sym::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SEED"); env && *env) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw UsageError("SEED must be a non-negative integer");
    return v;
  }
  return 0;
}

Json error_json(const std::string& kind, const std::string& invariant, const std::string& message) {
  Json j;
  j["ok"] = false;
  j["error"] = kind;
  j["invariant"] = invariant;
  j["message"] = message;
  return j;
}

// Options shared by the bounds subcommand.
struct BoundsOptions {
  std::string channel;
  std::size_t n = 0;
  std::string delta = "0";
  std::string dist;
  std::optional<std::size_t> m;
  std::optional<std::string> epsilon;
  std::string sweep;
  std::size_t n_min = 1;
  bool force_exact = false;
  bool force_float = false;
};

ChannelSpec make_channel(const std::string& kind, const std::string& delta, const std::string& dist) {
  ChannelSpec ch;
  ch.kind = channel_kind_from_string(kind);
  if (ch.kind == ChannelKind::Table) {
    if (dist.empty()) throw UsageError("generic channel needs --dist");
    ch.table = dist_table_from_json(read_json(dist));
    ch.table.validate();
  } else {
    ch.delta = parse_rational(delta);
    if (ch.delta < 0 || ch.delta > 1) throw DomainError("probability-in-[0,1]", "delta must lie in [0, 1]");
  }
  return ch;
}

std::string run_bounds(const BoundsOptions& o) {
  ChannelSpec ch = make_channel(o.channel, o.delta, o.dist);
  std::size_t n = o.n;
  if (ch.kind == ChannelKind::Table) n = ch.table.n;
  if (n == 0) throw UsageError("--n must be positive");
  if (o.force_exact && o.force_float) throw UsageError("--exact and --float are exclusive");
  auto exact_for = [&](std::size_t nn) { return o.force_exact || (!o.force_float && nn <= 128); };

  std::ostringstream out;
  if (o.sweep == "m") {
    out << "n,m,rate,p_conv,p_ach,exact\n";
    out.precision(17);
    for (std::size_t m = 0; m <= n; ++m) {
      auto b = channel_bounds(ch, n, m, exact_for(n));
      out << n << ',' << m << ',' << b.rate() << ',';
      if (b.exact) {
        out << rational_to_string(b.p_conv_exact) << ',' << rational_to_string(b.p_ach_exact) << ",true\n";
      } else {
        out << b.p_conv << ',' << b.p_ach << ",false\n";
      }
    }
    return out.str();
  }
  if (o.sweep == "n") {
    if (!o.epsilon) throw UsageError("--sweep n needs --epsilon");
    if (ch.kind == ChannelKind::Table) throw UsageError("--sweep n is not available for a fixed table");
    const Rational eps = parse_rational(*o.epsilon);
    out << "n,r_ach,ach_found,r_conv,conv_found,asymptotic,exact\n";
    out.precision(17);
    for (std::size_t nn = o.n_min; nn <= n; ++nn) {
      auto r = rate_search(ch, nn, eps, exact_for(nn));
      out << nn << ',' << r.r_ach << ',' << (r.ach_found ? "true" : "false") << ',' << r.r_conv << ','
          << (r.conv_found ? "true" : "false") << ',';
      const double d = to_double(ch.delta);
      const double e = to_double(eps);
      if (d > 0 && d < 1 && e > 0 && e < 1) {
        out << asymptotic_rate(ch.kind, nn, d, e);
      }
      out << ',' << (exact_for(nn) ? "true" : "false") << '\n';
    }
    return out.str();
  }
  if (!o.sweep.empty()) throw UsageError("--sweep must be 'm' or 'n'");
  if (o.m.has_value() == o.epsilon.has_value()) throw UsageError("give exactly one of --m and --epsilon");

  Json j;
  j["channel"] = to_string(ch.kind);
  if (ch.kind != ChannelKind::Table) j["delta"] = rational_to_string(ch.delta);
  if (o.m) {
    if (*o.m > 2 * n) throw DomainError("m-at-most-2n", "m must not exceed 2n");
    Json b = bound_to_json(channel_bounds(ch, n, *o.m, exact_for(n)));
    for (auto& [k, v] : b.items()) j[k] = v;
  } else {
    const Rational eps = parse_rational(*o.epsilon);
    auto r = rate_search(ch, n, eps, exact_for(n));
    Json rj = rate_to_json(r);
    for (auto& [k, v] : rj.items()) j[k] = v;
    j["exact"] = ch.kind == ChannelKind::Table || exact_for(n);
    const double d = to_double(ch.delta);
    const double e = to_double(eps);
    if (ch.kind != ChannelKind::Table && d > 0 && d < 1 && e > 0 && e < 1) {
      j["asymptotic"] = asymptotic_rate(ch.kind, n, d, e);
    }
  }
  return j.dump(2) + "\n";
}

std::string matrices_text(const std::vector<Gf2Matrix>& ms) {
  std::string s;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i > 0) s += "\n";
    s += ms[i].to_text();
  }
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Canonical forms, sampling and finite-blocklength bounds for stabilizer codes over GF(2)", "gf2sym"};
  app.require_subcommand(1);
  std::string payload;

  // canon
  std::string canon_mode, in_path;
  auto* canon = app.add_subcommand("canon", "Canonical decomposition A = L Pi R of a matrix file");
  canon->add_option("mode", canon_mode, "unrestricted | pcm | symplectic")
      ->required()
      ->check(CLI::IsMember({"unrestricted", "pcm", "stabilizer", "symplectic"}));
  canon->add_option("--in", in_path, "Matrix in text format")->required();
  canon->callback([&] {
    const Gf2Matrix a = read_matrix_file(in_path);
    const Mode mode = canon_mode == "unrestricted" ? Mode::Unrestricted
                      : canon_mode == "symplectic" ? Mode::Symplectic
                                                   : Mode::Stabilizer;
    payload = quintuple_to_json(decompose(a, mode)).dump(2) + "\n";
  });

  // reconstruct
  std::string rec_format = "text";
  auto* rec = app.add_subcommand("reconstruct", "Multiply out a decomposition JSON after checking its invariants");
  rec->add_option("--in", in_path, "Decomposition JSON")->required();
  rec->add_option("--format", rec_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  rec->callback([&] {
    const Gf2Matrix a = reconstruct(quintuple_from_json(read_json(in_path)));
    if (rec_format == "json") {
      Json j;
      j["rows"] = a.rows();
      j["cols"] = a.cols();
      j["matrix"] = a.to_row_strings();
      payload = j.dump(2) + "\n";
    } else {
      payload = a.to_text();
    }
  });

  // verify
  bool v_symp = false, v_pcm = false, v_quint = false;
  int verify_status = 0;
  auto* verify = app.add_subcommand("verify", "Check a matrix or decomposition");
  auto* g_symp = verify->add_flag("--symplectic", v_symp, "Aᵀ Λ A = Λ");
  auto* g_pcm = verify->add_flag("--pcm", v_pcm, "A Λ Aᵀ = 0");
  auto* g_quint = verify->add_flag("--quintuple", v_quint, "Decomposition JSON invariants");
  g_symp->excludes(g_pcm)->excludes(g_quint);
  g_pcm->excludes(g_quint);
  verify->add_option("--in", in_path, "Input file")->required();
  verify->callback([&] {
    Json j;
    if (v_quint) {
      j["check"] = "quintuple";
      auto bad = quintuple_violation(quintuple_from_json(read_json(in_path)));
      j["ok"] = !bad.has_value();
      if (bad) j["invariant"] = *bad;
    } else if (v_symp) {
      j["check"] = "symplectic";
      const Gf2Matrix a = read_matrix_file(in_path);
      const bool ok = a.is_square() && a.rows() % 2 == 0 && is_symplectic(a);
      j["ok"] = ok;
      if (!ok) j["invariant"] = "symplectic";
    } else if (v_pcm) {
      j["check"] = "pcm";
      const Gf2Matrix a = read_matrix_file(in_path);
      const bool ok = a.cols() % 2 == 0 && is_stabilizer_pcm(a);
      j["ok"] = ok;
      if (!ok) j["invariant"] = "stabilizer-pcm";
    } else {
      throw UsageError("verify needs one of --symplectic, --pcm, --quintuple");
    }
    verify_status = j["ok"].get<bool>() ? 0 : 1;
    payload = j.dump(2) + "\n";
  });

  // sample
  std::string sample_kind, sample_format = "text";
  std::size_t s_n = 0, s_m = 0, s_rank = 0, s_count = 1;
  std::optional<std::uint64_t> seed;
  auto* sample = app.add_subcommand("sample", "Uniformly random symplectic matrices or stabilizer PCMs");
  sample->add_option("kind", sample_kind, "symplectic | pcm")->required()->check(CLI::IsMember({"symplectic", "pcm"}));
  sample->add_option("--n", s_n, "Qubits")->required();
  sample->add_option("--m", s_m, "Rows (pcm)");
  sample->add_option("--rank", s_rank, "Rank (pcm)");
  sample->add_option("--count", s_count, "Number of samples");
  sample->add_option("--seed", seed, "Seed (falls back to $SEED, then 0)");
  sample->add_option("--format", sample_format, "text | json")->check(CLI::IsMember({"text", "json"}));
  sample->callback([&] {
    const std::uint64_t sd = resolve_seed(seed);
    std::vector<Gf2Matrix> ms;
    for (std::size_t k = 0; k < s_count; ++k) {
      Philox rng(sd, k);
      if (sample_kind == "symplectic") {
        if (s_n == 0) throw UsageError("--n must be positive");
        ms.push_back(sample_symplectic(s_n, rng));
      } else {
        ms.push_back(sample_stabilizer_pcm(s_m, s_n, s_rank, rng));
      }
    }
    if (sample_format == "json") {
      Json j;
      j["kind"] = sample_kind;
      j["seed"] = sd;
      Json arr = Json::array();
      for (const auto& m : ms) arr.push_back(m.to_row_strings());
      j["samples"] = std::move(arr);
      payload = j.dump(2) + "\n";
    } else {
      payload = matrices_text(ms);
    }
  });

  // count
  std::string count_kind;
  std::size_t c_n = 0, c_m = 0;
  std::optional<std::size_t> c_rank;
  auto* count = app.add_subcommand("count", "Exact group / PCM counts");
  count->add_option("kind", count_kind, "symplectic | pcm")->required()->check(CLI::IsMember({"symplectic", "pcm"}));
  count->add_option("--n", c_n, "Qubits")->required();
  count->add_option("--m", c_m, "Rows (pcm)");
  count->add_option("--rank", c_rank, "Rank (pcm); all ranks when omitted");
  count->callback([&] {
    Json j;
    j["kind"] = count_kind;
    j["n"] = c_n;
    BigCount total;
    if (count_kind == "symplectic") {
      total = count_symplectic(c_n);
    } else {
      j["m"] = c_m;
      if (c_rank) {
        j["rank"] = *c_rank;
        total = count_stabilizer_pcm(c_m, c_n, *c_rank);
      } else {
        for (std::size_t r = 0; r <= std::min(c_m, c_n); ++r) total += count_stabilizer_pcm(c_m, c_n, r);
      }
    }
    j["count"] = total.get_str();
    payload = j.dump(2) + "\n";
  });

  // bounds
  BoundsOptions bo;
  auto* bounds = app.add_subcommand("bounds", "Finite-blocklength converse/achievability bounds");
  bounds->add_option("channel", bo.channel, "erasure | depolarizing | generic")
      ->required()
      ->check(CLI::IsMember({"erasure", "depolarizing", "generic"}));
  bounds->add_option("--n", bo.n, "Qubits (max n for --sweep n)");
  bounds->add_option("--delta", bo.delta, "Channel parameter, e.g. 0.3 or 3/10 (exact)");
  bounds->add_option("--dist", bo.dist, "Distribution table JSON (generic)");
  bounds->add_option("--m", bo.m, "Syndrome bits");
  bounds->add_option("--epsilon", bo.epsilon, "Target error probability for the rate search");
  bounds->add_option("--sweep", bo.sweep, "m | n: CSV sweep")->check(CLI::IsMember({"m", "n"}));
  bounds->add_option("--n-min", bo.n_min, "First n of --sweep n");
  bounds->add_flag("--exact", bo.force_exact, "Exact rationals (default for n <= 128)");
  bounds->add_flag("--float", bo.force_float, "Floating-point path");
  bounds->callback([&] { payload = run_bounds(bo); });

  // simulate
  std::string sim_channel, sim_delta = "0";
  TrialConfig cfg;
  bool fixed_matrix = false;
  auto* sim = app.add_subcommand("simulate", "Monte-Carlo error-guessing decoder with a random symplectic hash");
  sim->add_option("--channel", sim_channel, "erasure | depolarizing")
      ->required()
      ->check(CLI::IsMember({"erasure", "depolarizing"}));
  sim->add_option("--n", cfg.n, "Qubits")->required();
  sim->add_option("--delta", sim_delta, "Channel parameter")->required();
  sim->add_option("--m", cfg.m, "Syndrome bits")->required();
  sim->add_option("--trials", cfg.trials, "Trials")->required();
  sim->add_option("--seed", seed, "Seed (falls back to $SEED, then 0)");
  sim->add_flag("--fixed-matrix", fixed_matrix, "One matrix for all trials");
  sim->add_flag("--full-search", cfg.full_search, "Do not cap the candidate search at 2^m + 1");
  sim->add_option("--threads", cfg.threads, "Worker threads");
  sim->callback([&] {
    cfg.channel = make_channel(sim_channel, sim_delta, "");
    cfg.seed = resolve_seed(seed);
    cfg.fresh_matrix = !fixed_matrix;
    if (cfg.n == 0) throw UsageError("--n must be positive");
    if (cfg.m > cfg.n) throw DomainError("m-at-most-n", "simulate needs m <= n");
    Json j = mc_to_json(estimate_error(cfg));
    const bool exact = cfg.n <= 128;
    const BoundResult b = channel_bounds(cfg.channel, cfg.n, cfg.m, exact);
    j["p_conv"] = b.p_conv;
    j["p_ach"] = b.p_ach;
    if (exact) {
      j["p_conv_exact"] = rational_to_string(b.p_conv_exact);
      j["p_ach_exact"] = rational_to_string(b.p_ach_exact);
    }
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["seed"] = cfg.seed;
    j["fixed_matrix"] = fixed_matrix;
    payload = j.dump(2) + "\n";
  });

  // gates
  auto* gates = app.add_subcommand("gates", "Gate list for a symplectic matrix");
  gates->add_option("--in", in_path, "Symplectic matrix in text format")->required();
  gates->callback([&] {
    const Gf2Matrix a = read_matrix_file(in_path);
    Json j;
    j["n"] = a.rows() / 2;
    j["gates"] = gates_to_json(to_gates(decompose_symplectic(a)));
    payload = j.dump(2) + "\n";
  });

  std::vector<std::string> argv_store{"gf2sym"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_json("usage", "arguments", e.what()).dump(2) << "\n";
    return 2;
  } catch (const UsageError& e) {
    out << error_json("usage", "arguments", e.what()).dump(2) << "\n";
    return 2;
  } catch (const DomainError& e) {
    out << error_json("domain", e.invariant(), e.what()).dump(2) << "\n";
    return 1;
  } catch (const DimensionError& e) {
    out << error_json("domain", "dimension", e.what()).dump(2) << "\n";
    return 1;
  } catch (const ParseError& e) {
    out << error_json("input", "parse", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    out << error_json("domain", "internal", e.what()).dump(2) << "\n";
    return 1;
  }
  out << payload;
  return verify_status;
}

}  // namespace gf2sym::cli
