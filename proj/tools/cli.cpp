#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quasiq/class_solver.hpp"
#include "quasiq/counting.hpp"
#include "quasiq/dynamics.hpp"
#include "quasiq/errors.hpp"
#include "quasiq/order_engine.hpp"
#include "quasiq/padic.hpp"
#include "quasiq/survey.hpp"

namespace quasiq::cli {

namespace {

using nlohmann::json;

// One command's result, rendered as human text, csv or json.
struct Response {
  std::string command;
  json inputs = json::object();
  std::optional<std::string> modulus;
  json values;
  std::string human;
  std::string csv;
};

std::string render(const Response& r, const std::string& format) {
  if (format == "csv") return r.csv;
  if (format == "json") {
    json doc{{"command", r.command}, {"inputs", r.inputs}, {"values", r.values}, {"exact", true}};
    if (r.modulus) doc["modulus"] = *r.modulus;
    return doc.dump(2) + "\n";
  }
  return r.human;
}

mpz_class parse_mpz(const std::string& text) {
  const ExactRational x = ExactRational::parse(text);
  if (!x.is_integer()) throw std::invalid_argument("expected an integer, got " + text);
  return x.num();
}

template <typename T>
std::string join(const std::vector<T>& items, const std::string& sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? sep : "") << items[i];
  return os.str();
}

std::vector<std::string> to_strings(const std::vector<mpz_class>& xs) {
  std::vector<std::string> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    if (item.empty() || item.front() == '-') throw std::invalid_argument("bad list entry '" + item + "'");
    const auto v = std::stoull(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// "1..34", "5" or "1,4,9".
std::vector<std::uint64_t> parse_orders(const std::string& text) {
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_u64_list(text.substr(0, dots));
    const auto hi = parse_u64_list(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] < 1 || lo[0] > hi[0]) {
      throw std::invalid_argument("bad order range '" + text + "'");
    }
    std::vector<std::uint64_t> out;
    for (auto k = lo[0]; k <= hi[0]; ++k) out.push_back(k);
    return out;
  }
  auto out = parse_u64_list(text);
  if (std::find(out.begin(), out.end(), 0u) != out.end()) throw std::invalid_argument("orders start at 1");
  return out;
}

json probability_json(const ExactProbability& p) {
  return json{{"value", p.to_string()}, {"approx", p.approx(12)}};
}

std::string probability_text(const ExactProbability& p) {
  return p.to_string() + "  (approx " + p.approx(12) + ")";
}

std::string aligned_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    width.resize(std::max(width.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << "  ";
      os << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    os << "\n";
  }
  return os.str();
}

unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const unsigned long v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// ---------------------------------------------------------------- commands

Response cmd_ord(const std::string& a_text, std::uint64_t m, std::uint64_t bound) {
  const ExactRational x(parse_mpz(a_text), mpz_class(static_cast<unsigned long>(m)));
  OrderResult result = OrderResult::finite(0);
  if (!x.is_integer()) {
    if (!x.den().fits_ulong_p()) throw std::invalid_argument("denominator too large");
    result = order_bounded(x.num(), x.den().get_ui(), bound);
  }
  Response r{"ord"};
  r.inputs = {{"a", a_text}, {"M", m}, {"bound", bound}};
  r.values = result.is_finite() ? json{{"finite", true}, {"order", result.order()}}
                                : json{{"finite", false}, {"exceeds", result.bound()}};
  r.human = result.to_string() + "\n";
  r.csv = "order\n" + result.to_string() + "\n";
  return r;
}

Response cmd_orbit(const std::string& p, const std::string& q, std::size_t steps, std::size_t digit_limit) {
  const ExactRational x(parse_mpz(p), parse_mpz(q));
  const auto iterates = orbit(x, steps, IterationLimits{digit_limit});
  Response r{"orbit"};
  r.inputs = {{"x", x.to_string()}, {"steps", steps}};
  r.values = json::array();
  r.csv = "step,value\n";
  for (std::size_t i = 0; i < iterates.size(); ++i) {
    const std::string s = iterates[i].to_string();
    r.values.push_back(s);
    r.human += s + "\n";
    r.csv += std::to_string(i + 1) + "," + s + "\n";
  }
  return r;
}

Response classes_response(const std::string& command, const ResidueClassSet& set, json inputs) {
  const auto residues = to_strings(set.residues);
  Response r{command};
  r.inputs = std::move(inputs);
  r.modulus = set.modulus.get_str();
  r.values = residues;
  r.human = std::to_string(set.size()) + " classes modulo " + set.modulus.get_str() + "\n" +
            join(residues, " ") + "\n";
  r.csv = "modulus=" + set.modulus.get_str() + "\n" + join(residues, ",") + "\n";
  return r;
}

Response cmd_count(std::uint64_t n, std::uint64_t m) {
  const std::string value = count_A(n, m).get_str();
  Response r{"count"};
  r.inputs = {{"n", n}, {"M", m}};
  mpz_class modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), m, n + 1);
  r.modulus = modulus.get_str();
  r.values = {{"count", value}};
  r.human = value + "\n";
  r.csv = "n,M,count\n" + std::to_string(n) + "," + std::to_string(m) + "," + value + "\n";
  return r;
}

Response cmd_table(std::uint64_t n_max, std::uint64_t m_max) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"n\\M"};
  for (std::uint64_t m = 2; m <= m_max; ++m) header.push_back(std::to_string(m));
  rows.push_back(header);
  json values = json::array();
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    std::vector<std::string> row{std::to_string(n)};
    for (std::uint64_t m = 2; m <= m_max; ++m) row.push_back(count_A(n, m).get_str());
    values.push_back(std::vector<std::string>(row.begin() + 1, row.end()));
    rows.push_back(std::move(row));
  }
  Response r{"table"};
  r.inputs = {{"n_max", n_max}, {"m_max", m_max}};
  r.values = values;
  r.human = aligned_table(rows);
  for (auto& row : rows) r.csv += join(row, ",") + "\n";
  r.csv.replace(0, 3, "n");
  return r;
}

Response cmd_smallest(std::uint64_t m, const std::string& orders_text, std::uint64_t limit,
                      std::optional<std::uint64_t> bound, unsigned threads) {
  const auto orders = parse_orders(orders_text);
  const std::uint64_t top = *std::max_element(orders.begin(), orders.end());
  const std::uint64_t n = bound.value_or(std::max<std::uint64_t>(top, 40));
  if (n < top) throw std::invalid_argument("--bound must be at least the largest requested order");
  const ScanReport report = scan_orders(m, n, limit, ScanOptions{threads});

  Response r{"smallest"};
  r.inputs = {{"M", m}, {"orders", orders_text}, {"limit", limit}, {"bound", n}};
  r.values = json::array();
  std::vector<std::vector<std::string>> rows{{"order", "smallest"}};
  r.csv = "order,smallest\n";
  for (const auto k : orders) {
    const auto a = report.smallest_of_order(k);
    r.values.push_back({{"order", k}, {"smallest", a ? json(*a) : json(nullptr)}});
    const std::string cell = a ? std::to_string(*a) : "-";
    rows.push_back({std::to_string(k), cell});
    r.csv += std::to_string(k) + "," + (a ? cell : "") + "\n";
  }
  r.human = aligned_table(rows);
  r.inputs["scanned"] = report.scanned;
  r.inputs["work_units"] = report.work_units;
  return r;
}

Response cmd_series(std::uint64_t m, std::uint64_t terms) {
  const auto s = series_partial_sum(m, terms);
  Response r{"series"};
  r.inputs = {{"M", m}, {"N", terms}};
  r.values = probability_json(s);
  r.human = probability_text(s) + "\n";
  r.csv = "value,approx\n" + s.to_string() + "," + s.approx(12) + "\n";
  return r;
}

Response cmd_density(std::uint64_t m, std::uint64_t n, std::uint64_t k) {
  const auto empirical = empirical_density(m, n, k);
  const auto limit = class_density(n, m);
  Response r{"density"};
  r.inputs = {{"M", m}, {"n", n}, {"k", k}};
  r.values = {{"empirical", probability_json(empirical)}, {"limit", probability_json(limit)}};
  r.human = "empirical  " + probability_text(empirical) + "\nlimit      " + probability_text(limit) + "\n";
  r.csv = "kind,value,approx\nempirical," + empirical.to_string() + "," + empirical.approx(12) + "\nlimit," +
          limit.to_string() + "," + limit.approx(12) + "\n";
  return r;
}

Response cmd_process(std::uint64_t n, std::uint64_t m) {
  const auto p = random_process_prob(n, m);
  Response r{"process"};
  r.inputs = {{"n", n}, {"M", m}};
  r.values = probability_json(p);
  r.human = probability_text(p) + "\n";
  r.csv = "value,approx\n" + p.to_string() + "," + p.approx(12) + "\n";
  return r;
}

Response cmd_chain_witness(const std::string& chain_text) {
  const auto chain = parse_u64_list(chain_text);
  const ExactRational x = chain_witness(chain);
  std::vector<std::string> dens{x.den().get_str()};
  if (chain.size() > 1) {
    for (const auto& it : orbit(x, chain.size() - 1, IterationLimits{})) dens.push_back(it.den().get_str());
  }
  Response r{"chain-witness"};
  r.inputs = {{"chain", chain}};
  r.values = {{"witness", x.to_string()}, {"denominators", dens}};
  r.human = x.to_string() + "\ndenominators " + join(dens, ",") + "\n";
  r.csv = "witness,denominators\n" + x.to_string() + "," + join(dens, ";") + "\n";
  return r;
}

Response cmd_lambda(std::uint64_t p, unsigned k, unsigned n) {
  return classes_response("lambda", lambda_classes(p, k, n), {{"p", p}, {"k", k}, {"n", n}});
}

Response cmd_covering(unsigned n_max) {
  const auto levels = covering_gap_demo(n_max);
  Response r{"covering-demo"};
  r.inputs = {{"n_max", n_max}};
  r.values = json::array();
  r.csv = "level,modulus,residues\n";
  for (const auto& level : levels) {
    r.values.push_back({{"level", level.level}, {"modulus", level.modulus}, {"residues", level.residues}});
    r.human += "level " + std::to_string(level.level) + " mod " + std::to_string(level.modulus) + ": " +
               join(level.residues, " ") + "\n";
    r.csv += std::to_string(level.level) + "," + std::to_string(level.modulus) + "," +
             join(level.residues, ";") + "\n";
  }
  // sum_{n <= n_max} 2^n / 3^{n+1} = 1 - (2/3)^{n_max+1}
  mpq_class covered = 0;
  for (const auto& level : levels) {
    mpq_class term{mpz_class(static_cast<unsigned long>(level.residues.size())),
                   mpz_class(static_cast<unsigned long>(level.modulus))};
    term.canonicalize();
    covered += term;
  }
  const ExactProbability density(covered);
  r.human += "density " + probability_text(density) + "\n";
  return r;
}

Response cmd_families(std::uint64_t p, std::uint64_t n) {
  const auto numerators = family_numerators(p, n);
  const bool ok = verify_family(p, n);
  Response r{"verify-families"};
  r.inputs = {{"p", p}, {"n", n}};
  r.values = {{"numerators", to_strings(numerators)}, {"verified", ok}};
  for (const auto& a : numerators) r.human += a.get_str() + "/" + std::to_string(p) + "\n";
  r.human += std::string(ok ? "true" : "false") + "\n";
  r.csv = "numerators,verified\n" + join(to_strings(numerators), ";") + "," + (ok ? "true" : "false") + "\n";
  return r;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact dynamics of the map x -> x * ceil(x) on the rationals", "quasiq"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "human";
  std::string output_path;
  unsigned threads = default_threads();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--output", output_path, "Write results to this file instead of stdout");
  app.add_option("--threads", threads, std::string("Worker threads for scans (default from ") + kThreadsEnv + ")")
      ->check(CLI::Range(1u, 1024u));

  std::function<Response()> action;

  std::string a_text, p_text, q_text, orders = "1..34", chain;
  std::uint64_t m = 0, n = 0, k = 0, bound = 40, limit = 10'000'000, n_max = 5, m_max = 20;
  std::optional<std::uint64_t> scan_bound;
  std::size_t steps = 10, digit_limit = 1'000'000;
  unsigned lk = 1, ln = 1, cover_max = 0;

  auto* ord = app.add_subcommand("ord", "Order of a/M via the bounded-modulus algorithm");
  ord->add_option("a", a_text)->required();
  ord->add_option("M", m)->required()->check(CLI::PositiveNumber);
  ord->add_option("--bound", bound, "Largest order to test")->check(CLI::Range(1u, 1'000'000u));
  ord->callback([&] { action = [&] { return cmd_ord(a_text, m, bound); }; });

  auto* orb = app.add_subcommand("orbit", "Iterates of p/q until an integer or --steps");
  orb->add_option("p", p_text)->required();
  orb->add_option("q", q_text)->required();
  orb->add_option("--steps", steps)->check(CLI::PositiveNumber);
  orb->add_option("--digit-limit", digit_limit)->check(CLI::PositiveNumber);
  orb->callback([&] { action = [&] { return cmd_orbit(p_text, q_text, steps, digit_limit); }; });

  std::uint64_t max_classes = EnumerationLimits{}.max_classes;
  auto* cls = app.add_subcommand("classes", "Residues mod M^{n+1} of the order-n numerators");
  cls->add_option("n", n)->required()->check(CLI::PositiveNumber);
  cls->add_option("M", m)->required()->check(CLI::Range(2ull, 1ull << 32));
  cls->add_option("--max-classes", max_classes)->check(CLI::PositiveNumber);
  cls->callback([&] {
    action = [&] {
      return classes_response("classes", enumerate_classes(n, m, EnumerationLimits{max_classes}),
                              {{"n", n}, {"M", m}});
    };
  });

  auto* cnt = app.add_subcommand("count", "A(n, M), the number of order-n classes");
  cnt->add_option("n", n)->required();
  cnt->add_option("M", m)->required()->check(CLI::Range(1ull, 1ull << 32));
  cnt->callback([&] { action = [&] { return cmd_count(n, m); }; });

  auto* tbl = app.add_subcommand("table", "A(n, M) for 1 <= n <= n-max, 2 <= M <= m-max");
  tbl->add_option("--n-max", n_max)->check(CLI::Range(1u, 1000u));
  tbl->add_option("--m-max", m_max)->check(CLI::Range(2u, 100000u));
  tbl->callback([&] { action = [&] { return cmd_table(n_max, m_max); }; });

  auto* sml = app.add_subcommand("smallest", "Smallest numerator of each order (scan of [1, limit])");
  sml->add_option("M", m)->required()->check(CLI::Range(2ull, 1ull << 32));
  sml->add_option("--orders", orders, "Range like 1..34 or a list like 1,5,9");
  sml->add_option("--limit", limit, "Largest numerator scanned")->check(CLI::PositiveNumber);
  sml->add_option("--bound", scan_bound, "Order bound N (default max(40, largest order))");
  sml->callback([&] { action = [&] { return cmd_smallest(m, orders, limit, scan_bound, threads); }; });

  auto* ser = app.add_subcommand("series", "Partial sum S_N of the finite-order probability series");
  ser->add_option("M", m)->required()->check(CLI::Range(1ull, 1ull << 32));
  ser->add_option("N", n)->required();
  ser->callback([&] { action = [&] { return cmd_series(m, n); }; });

  auto* den = app.add_subcommand("density", "Fraction of a <= k with ord(a/M) = n, and its limit");
  den->add_option("M", m)->required()->check(CLI::Range(2ull, 1ull << 32));
  den->add_option("n", n)->required();
  den->add_option("k", k)->required()->check(CLI::PositiveNumber);
  den->callback([&] { action = [&] { return cmd_density(m, n, k); }; });

  auto* prc = app.add_subcommand("process", "Probability the random divisor process started at M ends after n steps");
  prc->add_option("n", n)->required();
  prc->add_option("M", m)->required()->check(CLI::Range(1ull, 1ull << 32));
  prc->callback([&] { action = [&] { return cmd_process(n, m); }; });

  auto* wit = app.add_subcommand("chain-witness", "A fraction whose orbit has the given denominators");
  wit->add_option("chain", chain, "Comma-separated q0,q1,... with each dividing the previous")->required();
  wit->callback([&] { action = [&] { return cmd_chain_witness(chain); }; });

  std::uint64_t lp = 0;
  auto* lam = app.add_subcommand("lambda", "p-adic classes keeping denominator p^k for n steps");
  lam->add_option("p", lp)->required();
  lam->add_option("k", lk)->required()->check(CLI::PositiveNumber);
  lam->add_option("n", ln)->required()->check(CLI::PositiveNumber);
  lam->callback([&] { action = [&] { return cmd_lambda(lp, lk, ln); }; });

  auto* cov = app.add_subcommand("covering-demo", "Disjoint classes avoiding {1 + 3^n} whose density tends to 1");
  cov->add_option("n_max", cover_max)->required()->check(CLI::Range(0u, 20u));
  cov->callback([&] { action = [&] { return cmd_covering(cover_max); }; });

  std::uint64_t fp = 0, fn = 0;
  auto* fam = app.add_subcommand("verify-families", "Check the three explicit order-n families over p");
  fam->add_option("p", fp)->required();
  fam->add_option("n", fn)->required();
  fam->callback([&] { action = [&] { return cmd_families(fp, fn); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalidArguments;
  }

  try {
    const std::string text = render(action(), format);
    if (output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(output_path);
      if (!(file << text)) {
        err << "error: cannot write " << output_path << "\n";
        return kExitFailure;
      }
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitInvalidArguments;
  } catch (const ResourceLimitError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitResourceLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace quasiq::cli
