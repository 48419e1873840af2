#include "bspir/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bspir {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string normalize_key(std::string key) {
  key = trim(key);
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) {
    return c == '-' ? '_' : static_cast<char>(std::tolower(c));
  });
  while (!key.empty() && key.front() == '_') key.erase(key.begin());
  return key;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const std::string t = trim(value);
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string t = trim(value);
  if (t == "1" || t == "true" || t == "yes") return true;
  if (t == "0" || t == "false" || t == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

}  // namespace

void apply_setting(RunSettings& s, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string value = trim(raw_value);
  SchemeConfig& c = s.experiment.scheme;
  auto count = [&] { return static_cast<std::size_t>(parse_unsigned(key, value)); };

  if (key == "model") {
    try {
      c.model = parse_model(value);
    } catch (const std::exception&) {
      throw ConfigError(key, "expected secret or untouched, got '" + value + "'");
    }
  } else if (key == "n") {
    c.N = count();
  } else if (key == "t") {
    c.T = count();
  } else if (key == "b") {
    c.B = count();
  } else if (key == "e") {
    c.E = count();
  } else if (key == "k_messages") {
    c.K = count();
  } else if (key == "l") {
    c.l = count();
  } else if (key == "alpha") {
    c.alpha = count();
  } else if (key == "beta") {
    c.beta = count();
  } else if (key == "q") {
    c.q = parse_unsigned(key, value);
  } else if (key == "lambdas") {
    c.lambdas.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) c.lambdas.push_back(parse_unsigned(key, item));
  } else if (key == "allow_zero_lambda") {
    c.allow_zero_lambda = parse_bool(key, value);
  } else if (key == "strategy") {
    s.experiment.strategy = parse_strategy(value);
  } else if (key == "trials") {
    s.experiment.trials = count();
  } else if (key == "seed") {
    s.experiment.seed = parse_unsigned(key, value);
  } else if (key == "k") {
    s.experiment.k = count();
  } else if (key == "hash_scope") {
    try {
      s.experiment.scope = parse_hash_scope(value);
    } catch (const std::exception&) {
      throw ConfigError(key, "expected all_rows or message_rows, got '" + value + "'");
    }
  } else if (key == "threads") {
    s.experiment.threads = static_cast<unsigned>(count());
  } else if (key == "out") {
    s.out = value;
  } else if (key == "format") {
    s.format = parse_format(value);
  } else {
    throw ConfigError(key, "unknown setting");
  }
}

void apply_config_text(RunSettings& settings, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number), "expected 'key = value'");
    apply_setting(settings, line.substr(0, eq), line.substr(eq + 1));
  }
}

void apply_config_file(RunSettings& settings, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(settings, buf.str());
}

}  // namespace bspir
