#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsq/errors.hpp"
#include "fsq/scan.hpp"
#include "fsq/serialize.hpp"

namespace fsq::cli {

namespace {

using nlohmann::json;

const std::map<std::string, OutputFormat> kFormats = {
    {"json", OutputFormat::Json}, {"csv", OutputFormat::Csv}, {"text", OutputFormat::Text}};

std::string natural_or_empty(const std::optional<Natural>& v) { return v ? v->get_str() : ""; }

const char* yes_no(bool b) { return b ? "true" : "false"; }

FactorizeOptions factorize_options(const RunConfig& config) {
  FactorizeOptions options;
  options.budget.wall_clock = std::chrono::milliseconds(config.budget_ms);
  options.seed = config.seed;
  return options;
}

ScanOptions scan_options(const RunConfig& config, std::ostream& err) {
  ScanOptions options;
  options.workers = config.workers;
  options.checkpoint = config.checkpoint;
  options.should_stop = [] { return stop_flag().load(); };
  options.progress = [&err, name = config.subcommand](const ScanProgress& p) {
    err << name << ": " << p.done << "/" << p.total << " work items";
    if (p.resumed) err << " (" << p.resumed << " from checkpoint)";
    err << "\n";
  };
  return options;
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int scan_exit_code(const ScanResult& result) {
  const bool violation = std::any_of(result.hits.begin(), result.hits.end(),
                                     [](const ScanHit& h) { return !ExcludedSet::contains(h.n); });
  if (violation) return kExitViolation;
  return result.complete ? kExitOk : kExitIncomplete;
}

int emit_scan(const RunConfig& config, const json& parameters, const ScanResult& result, std::ostream& out) {
  const int code = scan_exit_code(result);
  switch (config.format) {
    case OutputFormat::Json: {
      json hits = json::array();
      for (const auto& h : result.hits) hits.push_back(to_json(h));
      write_json(out, {{"command", config.subcommand},
                       {"parameters", parameters},
                       {"complete", result.complete},
                       {"consistent", code != kExitViolation},
                       {"hits", std::move(hits)}});
      break;
    }
    case OutputFormat::Csv:
      out << "kind,n,p,root,in_S\n";
      for (const auto& h : result.hits) {
        out << to_string(h.kind) << ',' << h.n << ',' << (h.kind == HitKind::Brocard ? "" : std::to_string(h.p))
            << ',' << natural_or_empty(h.root) << ',' << yes_no(ExcludedSet::contains(h.n)) << "\n";
      }
      break;
    case OutputFormat::Text:
      out << config.subcommand << ": " << result.hits.size() << " hit(s)"
          << (result.complete ? "" : " [incomplete]") << "\n";
      for (const auto& h : result.hits) {
        out << "  n = " << h.n;
        if (h.kind == HitKind::Brocard) {
          out << "  " << h.n << "!+1 = " << h.root->get_str() << "^2";
        } else {
          out << "  p = " << h.p << "  (" << h.p << "^2 divides " << h.n << "!+1)";
        }
        out << (ExcludedSet::contains(h.n) ? "  [in S]" : "  [NOT in S]") << "\n";
      }
      break;
  }
  return code;
}

std::string describe_factors(const Factorization& f) {
  std::ostringstream s;
  bool first = true;
  for (const auto& e : f.entries) {
    s << (first ? "" : " * ") << e.prime.get_str();
    if (e.multiplicity > 1) s << '^' << e.multiplicity;
    first = false;
  }
  if (f.cofactor) s << (first ? "" : " * ") << '(' << f.cofactor->get_str() << ")";
  if (first && !f.cofactor) s << '1';
  return s.str();
}

int cmd_factor(const RunConfig& config, std::ostream& out) {
  Natural value;
  if (config.factorial_plus) {
    value = factorial(*config.factorial_plus) + 1;
  } else {
    if (value.set_str(*config.value, 10) != 0 || value < 1) {
      throw CLI::ValidationError("factor", "value must be a positive decimal integer");
    }
  }
  const Factorization f = factorize(value, factorize_options(config));
  const auto squarefree = squarefree_status(f);

  int code = f.complete() ? kExitOk : kExitIncomplete;
  if (config.factorial_plus && !consistent_with_conjecture(*config.factorial_plus, squarefree.verdict)) {
    code = kExitViolation;
  }

  switch (config.format) {
    case OutputFormat::Json: {
      json j = {{"command", "factor"},
                {"n", config.factorial_plus ? json(*config.factorial_plus) : json(nullptr)},
                {"factorization", to_json(f)},
                {"sigma0", f.complete() ? json(sigma0(f).get_str()) : json(nullptr)},
                {"two_pow_omega", f.complete() ? json(two_pow_omega(f).get_str()) : json(nullptr)},
                {"squarefree", to_string(squarefree.verdict)},
                {"witness", squarefree.witness ? json(squarefree.witness->get_str()) : json(nullptr)}};
      write_json(out, j);
      break;
    }
    case OutputFormat::Csv:
      out << "factor,multiplicity,type\n";
      for (const auto& e : f.entries) out << e.prime.get_str() << ',' << e.multiplicity << ",prime\n";
      if (f.cofactor) out << f.cofactor->get_str() << ",1,cofactor\n";
      break;
    case OutputFormat::Text:
      if (config.factorial_plus) out << *config.factorial_plus << "!+1 = ";
      out << f.value.get_str() << " = " << describe_factors(f) << "\n";
      out << "status: " << to_string(f.status) << (f.probabilistic ? " (probable primes)" : "") << "\n";
      if (f.complete()) {
        out << "sigma0 = " << sigma0(f).get_str() << ", 2^omega = " << two_pow_omega(f).get_str() << "\n";
      }
      out << "square-free: " << to_string(squarefree.verdict) << "\n";
      break;
  }
  return code;
}

std::string reference_note(const TableRow& row) {
  const auto ref = reference_row(row.n);
  if (!ref || !row.matches_reference) return "";
  if (*row.matches_reference) return "match";
  return "mismatch (reference " + std::to_string(ref->sigma0) + " & " + std::to_string(ref->two_pow_omega) + ")";
}

int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto options = factorize_options(config);
  const TableResult table = build_table(config.max_n, options, scan_options(config, err));

  int code = table.complete ? kExitOk : kExitIncomplete;
  for (const auto& row : table.rows) {
    if (!row.factorization.complete() && code == kExitOk) code = kExitIncomplete;
  }
  for (const auto& row : table.rows) {
    if (!consistent_with_conjecture(row.n, squarefree_status(row.factorization).verdict)) code = kExitViolation;
  }

  switch (config.format) {
    case OutputFormat::Json: {
      json rows = json::array();
      for (const auto& row : table.rows) rows.push_back(to_json(row));
      write_json(out, {{"command", "table"},
                       {"parameters",
                        {{"max_n", config.max_n}, {"budget_ms", config.budget_ms}, {"seed", config.seed}}},
                       {"complete", table.complete},
                       {"rows", std::move(rows)}});
      break;
    }
    case OutputFormat::Csv:
      out << "n,sigma0,two_pow_omega,status,in_S,probabilistic,reference_match\n";
      for (const auto& row : table.rows) {
        out << row.n << ',' << natural_or_empty(row.sigma0) << ',' << natural_or_empty(row.two_pow_omega) << ','
            << to_string(row.status) << ',' << yes_no(row.in_excluded_set) << ',' << yes_no(row.probabilistic)
            << ',' << (row.matches_reference ? (*row.matches_reference ? "match" : "mismatch") : "") << "\n";
      }
      break;
    case OutputFormat::Text:
      out << "   n | sigma0(n!+1) | 2^omega(n!+1) | status   | notes\n";
      for (const auto& row : table.rows) {
        std::ostringstream line;
        line.width(4);
        line << row.n << " | ";
        line.width(12);
        line << natural_or_empty(row.sigma0) << " | ";
        line.width(13);
        line << natural_or_empty(row.two_pow_omega) << " | ";
        std::string status(to_string(row.status));
        status.resize(8, ' ');
        line << status << " |";
        if (row.in_excluded_set) line << " in S";
        if (row.probabilistic) line << " probable-prime";
        if (const auto note = reference_note(row); !note.empty()) line << ' ' << note;
        out << line.str() << "\n";
      }
      break;
  }
  return code;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const Verdict v = verify_conjecture(config.n, config.max_p, factorize_options(config));
  int code = kExitOk;
  if (v.outcome == Squarefree::Unknown) code = kExitIncomplete;
  if (!v.consistent_with_conjecture) code = kExitViolation;

  switch (config.format) {
    case OutputFormat::Json: {
      json j = to_json(v);
      j["command"] = "verify";
      j["parameters"] = {{"max_p", config.max_p}, {"budget_ms", config.budget_ms}, {"seed", config.seed}};
      write_json(out, j);
      break;
    }
    case OutputFormat::Csv:
      out << "n,outcome,witness,evidence,in_S,consistent\n";
      out << v.n << ',' << to_string(v.outcome) << ',' << natural_or_empty(v.witness) << ',' << v.evidence << ','
          << yes_no(v.in_excluded_set) << ',' << yes_no(v.consistent_with_conjecture) << "\n";
      break;
    case OutputFormat::Text:
      out << v.n << "!+1 is " << to_string(v.outcome);
      if (v.witness) out << " (" << v.witness->get_str() << "^2 divides it)";
      out << " by " << v.evidence << "; " << (v.in_excluded_set ? "n in S" : "n not in S") << "; "
          << (v.consistent_with_conjecture ? "consistent" : "INCONSISTENT") << "\n";
      break;
  }
  return code;
}

void add_common(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--workers", config.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--format", config.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
}

void add_factorize_flags(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--budget-ms", config.budget_ms, "Per-factorization wall-clock budget in ms")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", config.seed, "Pollard rho starting value");
}

}  // namespace

std::atomic<bool>& stop_flag() {
  static std::atomic<bool> flag{false};
  return flag;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.seed = kDefaultRhoSeed;

  CLI::App app{"Factorization and square-divisor searches for n!+1", "factorial-squarefree"};
  app.require_subcommand(1);

  auto* factor = app.add_subcommand("factor", "Factor an integer, or N!+1 with --factorial-plus-one");
  factor->add_option("value", config.value, "Integer to factor");
  auto* fpo = factor->add_option("--factorial-plus-one", config.factorial_plus, "Factor N!+1 instead")
                  ->check(CLI::Range(std::uint64_t{0}, kDefaultFactorialLimit));
  factor->get_option("value")->excludes(fpo);
  add_common(factor, config);
  add_factorize_flags(factor, config);

  auto* table = app.add_subcommand("table", "Tabulate sigma0(n!+1) and 2^omega(n!+1) for n = 1..max-n");
  table->add_option("--max-n", config.max_n, "Largest n")->required()->check(CLI::Range(std::uint64_t{1}, kDefaultFactorialLimit));
  table->add_option("--checkpoint", config.checkpoint, "Checkpoint file");
  add_common(table, config);
  add_factorize_flags(table, config);

  auto* verify = app.add_subcommand("verify", "Decide whether n!+1 is square-free");
  verify->add_option("--n", config.n, "n")->required()->check(CLI::Range(std::uint64_t{1}, kDefaultFactorialLimit));
  verify->add_option("--max-p", config.max_p, "Largest prime for the residue search")
      ->default_val(10000)
      ->check(CLI::Range(std::uint64_t{2}, kMaxScanPrime));
  add_common(verify, config);
  add_factorize_flags(verify, config);

  auto* scan = app.add_subcommand("scan", "Residue and perfect-square scans");
  scan->require_subcommand(1);
  auto* wilson = scan->add_subcommand("wilson", "Primes p with p^2 | (p-1)!+1");
  wilson->add_option("--max-p", config.max_p, "Largest prime")->required()->check(CLI::Range(std::uint64_t{2}, kMaxScanPrime));
  auto* square = scan->add_subcommand("square-divisors", "Pairs (n, p) with p^2 | n!+1");
  square->add_option("--max-n", config.max_n, "Largest n")->required()->check(CLI::PositiveNumber);
  square->add_option("--max-p", config.max_p, "Largest prime")->required()->check(CLI::Range(std::uint64_t{2}, kMaxScanPrime));
  auto* brocard = scan->add_subcommand("brocard", "n with n!+1 a perfect square");
  brocard->add_option("--max-n", config.max_n, "Largest n")->required()->check(CLI::Range(std::uint64_t{1}, kDefaultFactorialLimit));
  for (auto* s : {wilson, square, brocard}) {
    s->add_option("--checkpoint", config.checkpoint, "Checkpoint file");
    add_common(s, config);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (factor->parsed()) {
      if (!config.value && !config.factorial_plus) {
        err << "error: factor needs an integer or --factorial-plus-one N\n";
        return kExitUsage;
      }
      config.subcommand = "factor";
      return cmd_factor(config, out);
    }
    if (table->parsed()) {
      config.subcommand = "table";
      return cmd_table(config, out, err);
    }
    if (verify->parsed()) {
      config.subcommand = "verify";
      return cmd_verify(config, out);
    }
    if (wilson->parsed()) {
      config.subcommand = "scan wilson";
      return emit_scan(config, {{"max_p", config.max_p}}, scan_wilson(config.max_p, scan_options(config, err)),
                       out);
    }
    if (square->parsed()) {
      config.subcommand = "scan square-divisors";
      return emit_scan(config, {{"max_n", config.max_n}, {"max_p", config.max_p}},
                       scan_square_divisors(config.max_n, config.max_p, scan_options(config, err)), out);
    }
    if (brocard->parsed()) {
      config.subcommand = "scan brocard";
      return emit_scan(config, {{"max_n", config.max_n}}, scan_brocard(config.max_n, scan_options(config, err)),
                       out);
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MemoryBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace fsq::cli
