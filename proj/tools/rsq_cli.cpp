// rsq: command-line front end for restricted sums of squares, quadratic form
// counts, local densities, q-series and the verification suites.
//
// Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage
// errors. Machine output goes to stdout, diagnostics to stderr.

#include <atomic>
#include <csignal>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rsq/rsq.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rsq;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

std::atomic<bool> g_interrupted{false};

extern "C" void on_interrupt(int) { g_interrupted.store(true); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  Natural n = 0;
  Natural p = 0;
  unsigned k = 0;
  unsigned cap = kDefaultCap;
  Natural from = 1;
  Natural to = 0;
  std::string form;
  Natural prec = 0;
  std::string suite = "all";
  std::string format;
  unsigned jobs = 1;
  std::string route = "exhaustive";
};

std::string join_parts(const std::vector<Natural>& parts, const char* sep) {
  std::ostringstream out;
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? sep : "") << parts[i];
  return out.str();
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (format == a) return;
  throw UsageError("unsupported --format '" + format + "' for this command");
}

// ---------------------------------------------------------------------------

int cmd_decompose(const Options& o) {
  const std::string format = o.format.empty() ? "json" : o.format;
  require_format(format, {"json", "text"});
  if (o.n == 0 || o.p == 0) throw UsageError("decompose needs --n and --p");

  std::optional<RestrictedWitness> witness;
  std::string route = o.route;
  if (o.route == "constructive") {
    if (o.k != 0) throw UsageError("--route constructive does not take --k");
    auto result = constructive_k4(o.n, o.p);
    witness = result.witness;
    route = result.route;
  } else if (o.route == "exhaustive") {
    witness = o.k != 0 ? restricted_decompose(o.n, o.p, o.k) : min_restricted_k(o.n, o.p, o.cap);
  } else {
    throw UsageError("--route must be exhaustive or constructive");
  }

  if (!witness) {
    // An exact-k query answered by exhaustion is a result; running out of
    // parts below the cap contradicts the bound and counts as a failure.
    ordered_json j;
    j["n"] = o.n;
    j["p"] = o.p;
    if (o.k != 0)
      j["k"] = o.k;
    else
      j["cap"] = o.cap;
    j["possible"] = false;
    j["route"] = route;
    if (format == "json")
      std::cout << j.dump() << "\n";
    else
      std::cout << o.n << ": no decomposition " << (o.k ? "with exactly " + std::to_string(o.k) : "within " + std::to_string(o.cap))
                << " squares prime to " << o.p << "\n";
    return o.k != 0 ? kOk : kCheckFailed;
  }

  if (format == "json") {
    ordered_json j;
    j["n"] = witness->n();
    j["p"] = witness->p();
    j["k"] = witness->k();
    j["parts"] = witness->parts();
    j["route"] = route;
    j["verified"] = true;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << witness->n() << " = ";
    for (std::size_t i = 0; i < witness->k(); ++i) std::cout << (i ? " + " : "") << witness->parts()[i] << "^2";
    std::cout << "  (k=" << witness->k() << ", p=" << witness->p() << ", " << route << ")\n";
  }
  return kOk;
}

int cmd_scan(const Options& o) {
  const std::string format = o.format.empty() ? "tsv" : o.format;
  require_format(format, {"tsv", "json", "text"});
  if (o.p == 0 || o.to == 0) throw UsageError("scan needs --p and --to");
  if (o.from == 0 || o.from > o.to) throw UsageError("scan needs 1 <= --from <= --to");
  if (o.jobs == 0) throw UsageError("--jobs must be positive");

  std::signal(SIGINT, on_interrupt);
  auto progress = [](Natural done, Natural total) {
    std::cerr << "progress " << done << "/" << total << "\n";
  };
  const auto report = sp_scan(o.p, o.from, o.to, o.cap, o.jobs, progress, 10'000, &g_interrupted);

  if (format == "tsv") {
    std::cout << "n\tmin_k\tparts\n";
    for (const auto& row : report.rows) {
      if (row.witness)
        std::cout << row.n << "\t" << row.witness->k() << "\t" << join_parts(row.witness->parts(), ",") << "\n";
      else
        std::cout << row.n << "\tNONE\t\n";
    }
  } else if (format == "json") {
    ordered_json j;
    j["p"] = report.p;
    j["from"] = report.lo;
    j["to"] = report.hi;
    j["cap"] = report.cap;
    j["max_k"] = report.max_k;
    ordered_json hist = ordered_json::object();
    for (const auto& [k, count] : report.histogram) hist[std::to_string(k)] = count;
    j["histogram"] = hist;
    ordered_json exc = ordered_json::array();
    for (const auto& e : report.exceptions) {
      ordered_json item;
      item["n"] = e.n;
      item["min_k"] = e.min_k ? ordered_json(*e.min_k) : ordered_json(nullptr);
      exc.push_back(item);
    }
    j["exceptions"] = exc;
    j["interrupted"] = report.interrupted;
    std::cout << j.dump() << "\n";
  }

  std::ostream& summary = format == "text" ? std::cout : std::cerr;
  summary << "p=" << report.p << " range=[" << report.lo << "," << report.hi << "] cap=" << report.cap
          << " max_k=" << report.max_k << " unresolved=" << report.unresolved << "\n";
  for (const auto& [k, count] : report.histogram) summary << "  k=" << k << ": " << count << "\n";
  for (const auto& e : report.exceptions)
    summary << "  exception n=" << e.n << " min_k=" << (e.min_k ? std::to_string(*e.min_k) : "NONE")
            << (is_predicted_exception(report.p, e.n, e.min_k) ? " (predicted)" : "") << "\n";
  if (report.interrupted) {
    std::cerr << "interrupted; results cover the finished prefix only\n";
    return 130;
  }
  return report.unexpected().empty() && report.unresolved == 0 ? kOk : kCheckFailed;
}

QuadForm form_or_throw(const std::string& text) {
  if (text.empty()) throw UsageError("--form is required");
  try {
    return QuadForm::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_count(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  const QuadForm f = form_or_throw(o.form);
  const Natural count = rep_count(f, o.n);
  if (format == "json") {
    ordered_json j;
    j["form"] = f.to_string();
    j["n"] = o.n;
    j["count"] = count;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "r(" << o.n << ", " << f.to_string() << ") = " << count << "\n";
  }
  return kOk;
}

int cmd_density(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  if (o.n == 0 || o.p == 0) throw UsageError("density needs --n and --p");
  const QuadForm f = form_or_throw(o.form.empty() ? "1,1,1" : o.form);
  const Rational alpha = alpha_p(o.n, f, o.p);
  const Rational ratio = genus_ratio(o.n, o.p, f.discriminant());
  if (format == "json") {
    ordered_json j;
    j["form"] = f.to_string();
    j["n"] = o.n;
    j["p"] = o.p;
    j["alpha_p"] = to_string(alpha);
    j["genus_ratio"] = to_string(ratio);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "alpha_" << o.p << "(" << o.n << ", " << f.to_string() << ") = " << to_string(alpha) << "\n";
    std::cout << "r(" << o.p << "^2*" << o.n << ", gen)/r(" << o.n << ", gen) = " << to_string(ratio) << "\n";
  }
  return kOk;
}

int cmd_series(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  if (o.prec == 0) throw UsageError("series needs --prec");
  const std::string which = o.form.empty() ? "eta" : o.form;
  QSeries<BigInt> series(o.prec);
  if (which == "eta") {
    series = ramanujan_eta_product(o.prec);
  } else if (which == "phi") {
    series = theta_diff_phi(o.prec);
  } else {
    const auto counts = theta_counts(form_or_throw(which), o.prec);
    for (Natural i = 0; i <= o.prec; ++i) series[i] = counts[i];
  }
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& c : series.coefficients()) arr.push_back(c.convert_to<long long>());
    std::cout << arr.dump() << "\n";
  } else {
    for (Natural i = 0; i <= series.precision(); ++i) std::cout << i << ": " << series[i] << "\n";
  }
  return kOk;
}

int cmd_aut(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  const QuadForm f = form_or_throw(o.form);
  const auto group = automorphisms(f);
  if (format == "json") {
    ordered_json j;
    j["form"] = f.to_string();
    j["order"] = group.order;
    ordered_json mats = ordered_json::array();
    for (const auto& m : group.matrices) {
      ordered_json rows = ordered_json::array();
      for (int r = 0; r < m.n; ++r) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < m.n; ++c) row.push_back(m(r, c));
        rows.push_back(row);
      }
      mats.push_back(rows);
    }
    j["matrices"] = mats;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "o(" << f.to_string() << ") = " << group.order << "\n";
  }
  return kOk;
}

int cmd_verify(const Options& o) {
  const std::string format = o.format.empty() ? "text" : o.format;
  require_format(format, {"text", "json"});
  SuiteOptions opt;
  opt.jobs = o.jobs;
  if (o.to != 0) opt.scan_limit = o.to;
  std::vector<CheckResult> results;
  try {
    results = run_suite(o.suite, opt);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : results) {
      ordered_json item;
      item["name"] = r.name;
      item["passed"] = r.passed;
      item["detail"] = r.detail;
      arr.push_back(item);
    }
    std::cout << arr.dump() << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << r.name << " " << (r.passed ? "PASS" : "FAIL") << "\n";
      if (!r.passed && !r.detail.empty()) std::cerr << "  " << r.name << ": " << r.detail << "\n";
    }
  }
  return all_passed(results) ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restricted sums of squares and related quadratic form computations"};
  app.require_subcommand(1);
  Options o;

  auto* decompose = app.add_subcommand("decompose", "Certificate for n as squares prime to p");
  decompose->add_option("--n", o.n, "Target integer")->required();
  decompose->add_option("--p", o.p, "Prime")->required();
  decompose->add_option("--k", o.k, "Exact number of squares (default: minimal)");
  decompose->add_option("--cap", o.cap, "Largest k tried when minimising");
  decompose->add_option("--route", o.route, "exhaustive or constructive (p >= 7)");
  decompose->add_option("--format", o.format, "json or text");

  auto* scan = app.add_subcommand("scan", "Minimal k for every n in a range");
  scan->add_option("--p", o.p, "Prime")->required();
  scan->add_option("--from", o.from, "First n");
  scan->add_option("--to", o.to, "Last n")->required();
  scan->add_option("--cap", o.cap, "Largest k considered");
  scan->add_option("--jobs", o.jobs, "Worker threads");
  scan->add_option("--format", o.format, "tsv, json or text");

  auto* count = app.add_subcommand("count", "Representation count r(n, f)");
  count->add_option("--form", o.form, "Diagonal \"1,1,10\" or Gram \"[[2,0,0],[0,2,1],[0,1,3]]\"")->required();
  count->add_option("--n", o.n, "Target integer")->required();
  count->add_option("--format", o.format, "text or json");

  auto* density = app.add_subcommand("density", "Local density and genus ratio for a ternary form");
  density->add_option("--form", o.form, "Ternary form (default 1,1,1)");
  density->add_option("--n", o.n, "Target integer")->required();
  density->add_option("--p", o.p, "Odd prime not dividing the discriminant")->required();
  density->add_option("--format", o.format, "text or json");

  auto* series = app.add_subcommand("series", "q-expansion coefficients");
  series->add_option("--form", o.form, "eta, phi, or a form for its theta series");
  series->add_option("--prec", o.prec, "Highest power of q")->required();
  series->add_option("--format", o.format, "text or json");

  auto* aut = app.add_subcommand("aut", "Isometry group of a form");
  aut->add_option("--form", o.form, "Form")->required();
  aut->add_option("--format", o.format, "text or json");

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", o.suite, "identities, quadform, density, modforms, restricted or all");
  verify->add_option("--to", o.to, "Upper end of the integer scans");
  verify->add_option("--jobs", o.jobs, "Worker threads for scans");
  verify->add_option("--format", o.format, "text or json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) return cmd_decompose(o);
    if (*scan) return cmd_scan(o);
    if (*count) return cmd_count(o);
    if (*density) return cmd_density(o);
    if (*series) return cmd_series(o);
    if (*aut) return cmd_aut(o);
    if (*verify) return cmd_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
