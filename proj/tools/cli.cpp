#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mkpolar/encoder.hpp"
#include "mkpolar/fast_ssc.hpp"

namespace mkpolar::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string cell_text(const Cell& c) {
  if (auto u = std::get_if<std::uint64_t>(&c)) return std::to_string(*u);
  if (auto d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

std::string bits_to_string(const BitVector& bits) {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) s += b ? '1' : '0';
  return s;
}

BitVector bits_from_string(const std::string& text) {
  BitVector bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1') bits.push_back(static_cast<Bit>(ch - '0'));
    else if (ch == ',' || ch == ' ') continue;
    else throw UsageError("bit strings may only contain 0 and 1");
  }
  return bits;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string default_out_dir() {
  if (const char* env = std::getenv("MKPOLAR_OUT_DIR"); env && *env) return env;
  return ".";
}

// Code selection shared by construct, encode, decode, simulate and schedule.
struct CodeOptions {
  std::string spec_file;
  std::size_t n = 0;
  std::optional<unsigned> n2, n3;
  std::size_t k = 0;
  std::string order = "last";
  double ebn0 = 3.0;

  void add_to(CLI::App* app, bool allow_spec_file) {
    if (allow_spec_file) app->add_option("--spec", spec_file, "Code spec file written by 'construct'");
    app->add_option("--n", n, "Code length N = 2^n 3^m");
    app->add_option("--n2", n2, "Number of binary kernels (alternative to --n)");
    app->add_option("--n3", n3, "Number of ternary kernels (alternative to --n)");
    app->add_option("--k", k, "Message length K");
    app->add_option("--order", order, "Kernel ordering: first, last or highest")->capture_default_str();
    app->add_option("--ebn0", ebn0, "GA design Eb/N0 in dB")->capture_default_str();
  }

  std::size_t length() const {
    if (n2 || n3) {
      std::size_t len = 1;
      for (unsigned i = 0; i < n2.value_or(0); ++i) len *= 2;
      for (unsigned i = 0; i < n3.value_or(0); ++i) len *= 3;
      if (n != 0 && n != len) throw UsageError("--n disagrees with --n2/--n3");
      return len;
    }
    return n;
  }

  CodeSpec resolve() const {
    if (!spec_file.empty()) return read_spec_file(spec_file);
    const std::size_t len = length();
    if (len == 0) throw UsageError("a code length is required (--n, or --n2/--n3, or --spec)");
    if (!is_valid_length(len)) {
      const auto [below, above] = nearest_valid_lengths(len);
      std::string msg = "N=" + std::to_string(len) + " is not of the form 2^n 3^m; nearest valid lengths: ";
      msg += below ? std::to_string(below) + " and " + std::to_string(above) : std::to_string(above);
      throw UsageError(msg);
    }
    if (k == 0 || k >= len)
      throw UsageError("K must satisfy 0 < K < N (K=" + std::to_string(k) + ", N=" + std::to_string(len) + ")");
    return make_code(len, k, parse_ordering(order), ebn0);
  }
};

struct LimitOptions {
  std::size_t rep3a_max = 27;
  unsigned rep3bc_ternary = 1;
  bool no_spc = false;
  bool general_rep = false;

  void add_to(CLI::App* app) {
    app->add_option("--rep3a-max", rep3a_max, "Largest REP3A node (3, 9 or 27)")->capture_default_str();
    app->add_option("--rep3bc-ternary", rep3bc_ternary, "Ternary stages allowed in REP3B/C nodes")
        ->capture_default_str();
    app->add_flag("--no-spc", no_spc, "Disable SPC nodes");
    app->add_flag("--general-rep", general_rep, "Accept REP nodes with any kernel arrangement");
  }

  NodeLimits resolve() const {
    NodeLimits l;
    l.rep3a_max_span = rep3a_max;
    l.rep3bc_max_ternary_stages = rep3bc_ternary;
    if (no_spc) l.spc_max_span = 0;
    l.general_rep = general_rep;
    l.validate();
    return l;
  }
};

struct OutputOptions {
  std::string path;
  std::string format = "csv";

  void add_to(CLI::App* app) {
    app->add_option("--out", path, "Output file (stdout when omitted)");
    app->add_option("--format", format, "csv or json")->capture_default_str();
  }

  void emit(const Report& r, std::ostream& out) const {
    const Format f = parse_format(format);
    if (path.empty()) emit_report(r, f, out);
    else write_report(r, f, path);
  }
};

std::vector<Llr> read_llrs(std::istream& is) {
  std::vector<Llr> llr;
  std::string tok;
  while (is >> tok) {
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      llr.push_back(std::stod(part));
    }
  }
  return llr;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

Report latency_report(const std::vector<LatencyRow>& rows) {
  Report r;
  r.columns = {"N",    "R",    "ordering", "sc_nodes", "fast_nodes", "r0",           "r1",
               "spc",  "rep2", "rep3a",    "rep3b",    "rep3c",      "reduction_pct"};
  for (const auto& row : rows) {
    const auto& c = row.counts;
    r.rows.push_back({std::uint64_t{row.n_bits}, row.rate, to_string(row.ordering), std::uint64_t{c.sc_nodes},
                      std::uint64_t{c.fast_nodes}, std::uint64_t{c.rate0}, std::uint64_t{c.rate1},
                      std::uint64_t{c.spc}, std::uint64_t{c.rep2}, std::uint64_t{c.rep3a}, std::uint64_t{c.rep3b},
                      std::uint64_t{c.rep3c}, std::round(c.reduction_pct * 10.0) / 10.0});
  }
  return r;
}

Report simulation_report(const SimStats& stats) {
  Report r;
  r.columns = {"ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber"};
  for (const auto& p : stats.points)
    r.rows.push_back({p.ebn0_db, p.frames, p.frame_errors, p.bit_errors, p.fer(), p.ber()});
  return r;
}

void emit_report(const Report& report, Format format, std::ostream& os) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i];
    os << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
      os << '\n';
    }
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { obj[report.columns[i]] = v; }, row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_report(const Report& report, Format format, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  emit_report(report, format, f);
  if (!f) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_spec(std::ostream& os, const CodeSpec& spec) {
  os << "# mkpolar code spec\n";
  os << "N = " << spec.n_bits << '\n';
  os << "K = " << spec.k_bits << '\n';
  os << "kernels = " << spec.kernels.to_string() << '\n';
  os << "frozen = ";
  const auto idx = spec.frozen_indices();
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << '\n';
}

CodeSpec read_spec(std::istream& is) {
  std::optional<std::size_t> n, k;
  std::optional<KernelVector> kernels;
  std::optional<std::vector<std::size_t>> frozen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "N") n = std::stoull(value);
    else if (key == "K") k = std::stoull(value);
    else if (key == "kernels") kernels = KernelVector::parse(value);
    else if (key == "frozen") {
      frozen.emplace();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!trim(item).empty()) frozen->push_back(std::stoull(trim(item)));
    }
  }
  if (!n || !k || !kernels || !frozen) throw std::invalid_argument("spec: N, K, kernels and frozen are all required");
  BitVector mask(*n, 0);
  for (std::size_t i : *frozen) {
    if (i >= *n) throw std::invalid_argument("spec: frozen index " + std::to_string(i) + " out of range");
    mask[i] = 1;
  }
  CodeSpec spec;
  spec.n_bits = *n;
  spec.k_bits = *k;
  spec.kernels = *kernels;
  spec.frozen = std::move(mask);
  spec.validate();
  return spec;
}

CodeSpec read_spec_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open spec file '" + path.string() + "'");
  return read_spec(f);
}

std::vector<double> parse_snr_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
      throw std::invalid_argument("SNR range must be start:step:stop");
    const double start = std::stod(a), step = std::stod(b), stop = std::stod(c);
    if (!(step > 0.0)) throw std::invalid_argument("SNR step must be positive");
    for (int i = 0;; ++i) {
      const double v = start + i * step;
      if (v > stop + 1e-9) break;
      out.push_back(v);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(std::stod(item));
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-kernel polar code construction, decoding and analysis", "mkpolar"};
  app.require_subcommand(1);

  CodeOptions code;
  LimitOptions limits;
  OutputOptions output;

  auto* construct = app.add_subcommand("construct", "GA construction: writes a spec file and reliability CSV");
  code.add_to(construct, false);
  std::string out_dir, name;
  construct->add_option("--out-dir", out_dir, "Output directory (default $MKPOLAR_OUT_DIR or .)");
  construct->add_option("--name", name, "Base name of the output files");

  auto* encode = app.add_subcommand("encode", "Encode a message");
  code.add_to(encode, true);
  std::string message;
  bool random_message = false;
  std::uint64_t seed = 1;
  encode->add_option("--message", message, "K message bits, e.g. 0110");
  encode->add_flag("--random", random_message, "Draw a random message");
  encode->add_option("--seed", seed, "RNG seed")->capture_default_str();

  auto* decode = app.add_subcommand("decode", "Decode channel LLRs");
  code.add_to(decode, true);
  limits.add_to(decode);
  std::string llr_file, decoder_name = "fastssc";
  decode->add_option("--llr", llr_file, "File of N LLRs, whitespace or comma separated ('-' for stdin)")->required();
  decode->add_option("--decoder", decoder_name, "sc or fastssc")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo FER/BER over AWGN");
  code.add_to(simulate, true);
  limits.add_to(simulate);
  output.add_to(simulate);
  std::string snrs = "1:0.5:4";
  StopRule stop;
  unsigned workers = 1;
  bool fixed_frozen = false;
  simulate->add_option("--decoder", decoder_name, "sc or fastssc")->capture_default_str();
  simulate->add_option("--snr", snrs, "Eb/N0 points in dB: start:step:stop or a,b,c")->capture_default_str();
  simulate->add_option("--max-frames", stop.max_frames, "Frame limit per point")->capture_default_str();
  simulate->add_option("--min-errors", stop.min_frame_errors, "Frame errors that end a point")->capture_default_str();
  simulate->add_option("--workers", workers, "Worker threads")->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_flag("--fixed-frozen", fixed_frozen, "Keep the design frozen set instead of re-running GA per point");

  auto* analyze = app.add_subcommand("analyze", "Node-count latency analysis");
  limits.add_to(analyze);
  output.add_to(analyze);
  bool table2 = false;
  std::size_t sweep_k = 0, sweep_n = 0;
  double design = 3.0;
  analyze->add_flag("--table2", table2, "The 24 codes N in {96,432,768,2304}, R in {1/4,1/2,3/4}, last/first");
  analyze->add_option("--sweep-k", sweep_k, "Fixed-K sweep over valid lengths, R in [1/8, 7/8]");
  analyze->add_option("--sweep-n", sweep_n, "Fixed-N sweep over R = 1/8 .. 7/8");
  analyze->add_option("--ebn0", design, "GA design Eb/N0 in dB")->capture_default_str();

  auto* schedule = app.add_subcommand("schedule", "Export the pruned Fast-SSC schedule");
  code.add_to(schedule, true);
  limits.add_to(schedule);
  std::string schedule_out;
  schedule->add_option("--out", schedule_out, "Output file (stdout when omitted)");

  std::vector<std::string> argv_store{"mkpolar"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (construct->parsed()) {
      const CodeSpec spec = code.resolve();
      const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : out_dir;
      std::filesystem::create_directories(dir);
      if (name.empty()) name = "mk_N" + std::to_string(spec.n_bits) + "_K" + std::to_string(spec.k_bits) + "_" + code.order;
      const auto spec_path = dir / (name + ".spec");
      const auto rel_path = dir / (name + "_reliability.csv");
      std::ofstream sf(spec_path);
      if (!sf) throw std::runtime_error("cannot open '" + spec_path.string() + "' for writing");
      write_spec(sf, spec);
      const auto z = ga_reliabilities(spec.kernels, spec.rate(), code.ebn0);
      Report rel;
      rel.columns = {"index", "mean", "frozen"};
      for (std::size_t i = 0; i < z.size(); ++i)
        rel.rows.push_back({std::uint64_t{i}, z[i], std::uint64_t{spec.frozen[i]}});
      write_report(rel, Format::Csv, rel_path);
      out << spec_path.string() << '\n' << rel_path.string() << '\n';
    } else if (encode->parsed()) {
      const CodeSpec spec = code.resolve();
      BitVector a;
      if (random_message) {
        std::mt19937_64 rng(seed);
        a.resize(spec.k_bits);
        for (auto& b : a) b = static_cast<Bit>(rng() & 1u);
      } else {
        a = bits_from_string(message);
      }
      if (a.size() != spec.k_bits)
        throw UsageError("message has " + std::to_string(a.size()) + " bits, expected K=" + std::to_string(spec.k_bits));
      const BitVector u = expand_message(a, spec);
      out << "message=" << bits_to_string(a) << '\n';
      out << "sourceword=" << bits_to_string(u) << '\n';
      out << "codeword=" << bits_to_string(encode_recursive(u, spec)) << '\n';
    } else if (decode->parsed()) {
      const CodeSpec spec = code.resolve();
      std::vector<Llr> llr;
      if (llr_file == "-") {
        llr = read_llrs(std::cin);
      } else {
        std::ifstream f(llr_file);
        if (!f) throw std::runtime_error("cannot open LLR file '" + llr_file + "'");
        llr = read_llrs(f);
      }
      if (llr.size() != spec.n_bits)
        throw UsageError("LLR file has " + std::to_string(llr.size()) + " values, expected N=" + std::to_string(spec.n_bits));
      const DecodeResult r = parse_decoder(decoder_name) == DecoderKind::SC
                                 ? decode_sc(spec, llr)
                                 : decode_fast(spec, build_schedule(spec, limits.resolve()), llr);
      out << "message=" << bits_to_string(extract_message(r.u_hat, spec)) << '\n';
      out << "sourceword=" << bits_to_string(r.u_hat) << '\n';
      out << "codeword=" << bits_to_string(r.x_hat) << '\n';
    } else if (simulate->parsed()) {
      const CodeSpec spec = code.resolve();
      SimOptions opts;
      opts.decoder = parse_decoder(decoder_name);
      opts.limits = limits.resolve();
      opts.snrs_db = parse_snr_list(snrs);
      opts.stop = stop;
      opts.workers = workers;
      opts.seed = seed;
      opts.rebuild_frozen = !fixed_frozen;
      output.emit(simulation_report(run_fer(spec, opts)), out);
    } else if (analyze->parsed()) {
      if (int(table2) + int(sweep_k != 0) + int(sweep_n != 0) != 1)
        throw UsageError("choose exactly one of --table2, --sweep-k, --sweep-n");
      std::vector<LatencyCase> cases;
      if (table2) cases = table2_cases(design);
      else if (sweep_k) cases = sweep_fixed_k(sweep_k, design);
      else {
        if (!is_valid_length(sweep_n)) {
          const auto [below, above] = nearest_valid_lengths(sweep_n);
          throw UsageError("N=" + std::to_string(sweep_n) + " is not of the form 2^n 3^m; nearest valid lengths: " +
                           std::to_string(below) + " and " + std::to_string(above));
        }
        cases = sweep_fixed_n(sweep_n, design);
      }
      output.emit(latency_report(latency_table(cases, limits.resolve())), out);
    } else if (schedule->parsed()) {
      const CodeSpec spec = code.resolve();
      const PrunedSchedule sched = build_schedule(spec, limits.resolve());
      if (schedule_out.empty()) {
        write_schedule_csv(out, sched);
      } else {
        std::ofstream f(schedule_out);
        if (!f) throw std::runtime_error("cannot open '" + schedule_out + "' for writing");
        write_schedule_csv(f, sched);
      }
    }
  } catch (const UsageError& e) {
    err << "mkpolar: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "mkpolar: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mkpolar::cli
