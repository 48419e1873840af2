#include "bspir/report.hpp"

#include <boost/rational.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bspir {

const char* const kCsvHeader =
    "model,N,T,B,E,K,l,q,alpha,beta,strategy,trials,errors,err_rate,err_ucb99,analytic_bound,rate,rate_capacity,rho,"
    "rho_threshold,seconds";

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  throw ConfigError("format", "expected csv or json, got '" + s + "'");
}

namespace {

double as_double(const Rational& r) { return boost::rational_cast<double>(r); }

std::string rational_text(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

// Shortest text that parses back to the same double.
std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const char* column) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError(std::string("bad number in column ") + column + ": '" + s + "'");
  return v;
}

std::uint64_t parse_count(const std::string& s, const char* column) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw IoError(std::string("bad integer in column ") + column + ": '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

ReportRow to_row(const ExperimentReport& r) {
  ReportRow row;
  const SchemeConfig& c = r.resolved;
  row.model = to_string(c.model);
  row.N = c.N;
  row.T = c.T;
  row.B = c.B;
  row.E = c.E;
  row.K = c.K;
  row.l = c.l;
  row.q = c.q;
  row.alpha = c.alpha;
  row.beta = c.beta;
  row.strategy = to_string(r.config.strategy);
  row.trials = r.trials;
  row.errors = r.errors;
  row.err_rate = r.err_rate;
  if (r.trials > 0) row.err_ucb99 = r.err_ucb99.upper;
  row.analytic_bound = r.analytic_bound.actual_q;
  row.rate = as_double(r.accounting.rate);
  row.rate_capacity = as_double(r.accounting.rate_capacity);
  row.rho = as_double(r.accounting.rho);
  row.rho_threshold = as_double(r.accounting.rho_threshold);
  row.seconds = r.seconds;
  return row;
}

std::string emit_csv_rows(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : std::string(); };
  for (const ReportRow& r : rows) {
    out << r.model << ',' << r.N << ',' << r.T << ',' << r.B << ',' << r.E << ',' << r.K << ',' << r.l << ',' << r.q
        << ',' << r.alpha << ',' << r.beta << ',' << r.strategy << ',' << r.trials << ',' << r.errors << ','
        << opt(r.err_rate) << ',' << opt(r.err_ucb99) << ',' << number(r.analytic_bound) << ',' << number(r.rate)
        << ',' << number(r.rate_capacity) << ',' << number(r.rho) << ',' << number(r.rho_threshold) << ','
        << number(r.seconds) << '\n';
  }
  return out.str();
}

std::string emit_csv(const std::vector<ExperimentReport>& reports) {
  std::vector<ReportRow> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports) rows.push_back(to_row(r));
  return emit_csv_rows(rows);
}

std::vector<ReportRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw IoError("unexpected CSV header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 21) throw IoError("CSV row has " + std::to_string(f.size()) + " fields, expected 21");
    ReportRow r;
    r.model = f[0];
    r.N = parse_count(f[1], "N");
    r.T = parse_count(f[2], "T");
    r.B = parse_count(f[3], "B");
    r.E = parse_count(f[4], "E");
    r.K = parse_count(f[5], "K");
    r.l = parse_count(f[6], "l");
    r.q = parse_count(f[7], "q");
    r.alpha = parse_count(f[8], "alpha");
    r.beta = parse_count(f[9], "beta");
    r.strategy = f[10];
    r.trials = parse_count(f[11], "trials");
    r.errors = parse_count(f[12], "errors");
    if (!f[13].empty()) r.err_rate = parse_double(f[13], "err_rate");
    if (!f[14].empty()) r.err_ucb99 = parse_double(f[14], "err_ucb99");
    r.analytic_bound = parse_double(f[15], "analytic_bound");
    r.rate = parse_double(f[16], "rate");
    r.rate_capacity = parse_double(f[17], "rate_capacity");
    r.rho = parse_double(f[18], "rho");
    r.rho_threshold = parse_double(f[19], "rho_threshold");
    r.seconds = parse_double(f[20], "seconds");
    rows.push_back(std::move(r));
  }
  return rows;
}

nlohmann::json report_json(const ExperimentReport& r) {
  using nlohmann::json;
  const SchemeConfig& c = r.resolved;
  json j;
  j["config"] = {{"model", to_string(c.model)},
                 {"N", c.N},
                 {"T", c.T},
                 {"B", c.B},
                 {"E", c.E},
                 {"K", c.K},
                 {"l", c.l},
                 {"q", c.q},
                 {"alpha", c.alpha},
                 {"beta", c.beta},
                 {"lambdas", c.lambdas},
                 {"allow_zero_lambda", c.allow_zero_lambda},
                 {"strategy", to_string(r.config.strategy)},
                 {"trials", r.config.trials},
                 {"seed", r.config.seed},
                 {"k", r.config.k},
                 {"hash_scope", to_string(r.config.scope)},
                 {"threads", r.config.threads}};
  j["trials"] = r.trials;
  j["errors"] = r.errors;
  json counts = json::object();
  for (const auto& [cls, n] : r.counts) counts[to_string(cls)] = n;
  j["counts"] = counts;
  j["true_x_listed"] = r.true_x_listed;
  j["err_rate"] = r.err_rate ? json(*r.err_rate) : json(nullptr);
  j["err_rate_defined"] = r.err_rate.has_value();
  j["err_ucb99"] = r.trials > 0 ? json(r.err_ucb99.upper) : json(nullptr);
  j["rule_of_three"] = r.err_ucb99.rule_of_three ? json(*r.err_ucb99.rule_of_three) : json(nullptr);
  j["analytic_bound"] = {{"actual_q", r.analytic_bound.actual_q},
                         {"with_q_l_squared", r.analytic_bound.with_q_l_squared},
                         {"list_term", r.analytic_bound.list_term},
                         {"phase1_term", r.analytic_bound.phase1_term}};
  const Accounting& a = r.accounting;
  j["accounting"] = {{"rate", rational_text(a.rate)},
                     {"rho", rational_text(a.rho)},
                     {"rate_capacity", rational_text(a.rate_capacity)},
                     {"rho_threshold", rational_text(a.rho_threshold)},
                     {"desired_symbols", a.desired_symbols},
                     {"answer_symbols", a.answer_symbols},
                     {"secret_symbols", a.secret_symbols},
                     {"phase1_symbols", a.phase1_symbols},
                     {"phase1_symbols_log_l", a.phase1_symbols_log_l},
                     {"phase1_randomness", a.phase1_randomness},
                     {"phase1_rho", rational_text(a.phase1_rho)}};
  j["rate"] = as_double(a.rate);
  j["rate_capacity"] = as_double(a.rate_capacity);
  j["rho"] = as_double(a.rho);
  j["rho_threshold"] = as_double(a.rho_threshold);
  j["capacity"] = rational_text(r.capacity);
  j["omniscient_capacity"] = rational_text(r.omniscient_capacity);
  j["seconds"] = r.seconds;
  return j;
}

ExperimentReport report_from_json(const nlohmann::json& j) {
  try {
    ExperimentReport r;
    const auto& c = j.at("config");
    SchemeConfig s;
    s.model = parse_model(c.at("model").get<std::string>());
    s.N = c.at("N").get<std::size_t>();
    s.T = c.at("T").get<std::size_t>();
    s.B = c.at("B").get<std::size_t>();
    s.E = c.at("E").get<std::size_t>();
    s.K = c.at("K").get<std::size_t>();
    s.l = c.at("l").get<std::size_t>();
    s.q = c.at("q").get<std::uint64_t>();
    s.alpha = c.at("alpha").get<std::size_t>();
    s.beta = c.at("beta").get<std::size_t>();
    s.lambdas = c.at("lambdas").get<std::vector<Elem>>();
    s.allow_zero_lambda = c.at("allow_zero_lambda").get<bool>();
    r.resolved = s;
    r.config.scheme = s;
    r.config.strategy = parse_strategy(c.at("strategy").get<std::string>());
    r.config.trials = c.at("trials").get<std::size_t>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.k = c.at("k").get<std::size_t>();
    r.config.scope = parse_hash_scope(c.at("hash_scope").get<std::string>());
    r.config.threads = c.at("threads").get<unsigned>();

    r.trials = j.at("trials").get<std::uint64_t>();
    r.errors = j.at("errors").get<std::uint64_t>();
    for (const auto& [name, n] : j.at("counts").items()) r.counts[parse_error_class(name)] = n.get<std::uint64_t>();
    r.true_x_listed = j.at("true_x_listed").get<std::uint64_t>();
    if (!j.at("err_rate").is_null()) r.err_rate = j.at("err_rate").get<double>();
    if (!j.at("err_ucb99").is_null()) r.err_ucb99.upper = j.at("err_ucb99").get<double>();
    if (!j.at("rule_of_three").is_null()) r.err_ucb99.rule_of_three = j.at("rule_of_three").get<double>();
    const auto& b = j.at("analytic_bound");
    r.analytic_bound = {b.at("actual_q").get<double>(), b.at("with_q_l_squared").get<double>(),
                        b.at("list_term").get<double>(), b.at("phase1_term").get<double>()};
    const auto& a = j.at("accounting");
    r.accounting.rate = parse_rational(a.at("rate").get<std::string>());
    r.accounting.rho = parse_rational(a.at("rho").get<std::string>());
    r.accounting.rate_capacity = parse_rational(a.at("rate_capacity").get<std::string>());
    r.accounting.rho_threshold = parse_rational(a.at("rho_threshold").get<std::string>());
    r.accounting.desired_symbols = a.at("desired_symbols").get<std::uint64_t>();
    r.accounting.answer_symbols = a.at("answer_symbols").get<std::uint64_t>();
    r.accounting.secret_symbols = a.at("secret_symbols").get<std::uint64_t>();
    r.accounting.phase1_symbols = a.at("phase1_symbols").get<std::uint64_t>();
    r.accounting.phase1_symbols_log_l = a.at("phase1_symbols_log_l").get<double>();
    r.accounting.phase1_randomness = a.at("phase1_randomness").get<std::uint64_t>();
    r.accounting.phase1_rho = parse_rational(a.at("phase1_rho").get<std::string>());
    r.capacity = parse_rational(j.at("capacity").get<std::string>());
    r.omniscient_capacity = parse_rational(j.at("omniscient_capacity").get<std::string>());
    r.seconds = j.at("seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed report JSON: ") + e.what());
  }
}

std::string emit_report(const ExperimentReport& r, ReportFormat format) {
  if (format == ReportFormat::Csv) return emit_csv({r});
  return report_json(r).dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace bspir
