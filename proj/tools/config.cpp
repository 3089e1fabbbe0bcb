#include "config.hpp"

#include <algorithm>
#include <iomanip>
#include <openssl/evp.h>
#include <sstream>

namespace talbot::cli {

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::integer: return "integer";
    case Kind::real: return "number";
    case Kind::text: return "string";
    case Kind::integers: return "list of integers";
    case Kind::boolean: return "boolean";
  }
  return "value";
}

[[noreturn]] void bad(const Param& p, const std::string& what) {
  throw ConfigError("config key '" + p.key + "': " + what);
}

}  // namespace

json select_section(const json& doc, const std::string& name) {
  if (doc.is_null()) return json::object();
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  if (auto it = doc.find(name); it != doc.end()) {
    if (!it->is_object()) throw ConfigError("config key '" + name + "': expected an object");
    return *it;
  }
  return doc;
}

void check_type(const Param& p, const json& v) {
  if (v.is_null()) return;
  bool ok = false;
  switch (p.kind) {
    case Kind::integer: ok = v.is_number_integer(); break;
    case Kind::real: ok = v.is_number(); break;
    case Kind::text: ok = v.is_string(); break;
    case Kind::boolean: ok = v.is_boolean(); break;
    case Kind::integers:
      ok = v.is_array();
      if (ok)
        for (const auto& e : v) ok = ok && e.is_number_integer();
      break;
  }
  if (!ok) bad(p, std::string("expected ") + kind_name(p.kind) + ", got " + v.dump());
}

json parse_flag(const Param& p, const std::string& text) {
  json v;
  if (p.kind == Kind::text) {
    v = text;
  } else if (p.kind == Kind::integers) {
    v = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const long long n = std::stoll(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        v.push_back(n);
      } catch (const std::exception&) {
        bad(p, "cannot read '" + text + "' as a comma-separated integer list");
      }
    }
  } else {
    try {
      v = json::parse(text);
    } catch (const json::parse_error&) {
      bad(p, "cannot parse '" + text + "'");
    }
  }
  check_type(p, v);
  return v;
}

json build_config(const std::vector<Param>& params, const json& section,
                  const std::map<std::string, std::string>& flags) {
  json cfg = json::object();
  for (const auto& p : params) cfg[p.key] = p.fallback;
  for (const auto& [key, value] : section.items()) {
    auto it = std::find_if(params.begin(), params.end(), [&](const Param& p) { return p.key == key; });
    if (it == params.end()) throw ConfigError("config key '" + key + "': unknown for this subcommand");
    check_type(*it, value);
    cfg[key] = value;
  }
  for (const auto& [key, text] : flags) {
    auto it = std::find_if(params.begin(), params.end(), [&](const Param& p) { return p.key == key; });
    if (it == params.end()) throw ConfigError("config key '" + key + "': unknown for this subcommand");
    cfg[key] = parse_flag(*it, text);
  }
  return cfg;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

std::string config_hash(const json& cfg) { return sha256_hex(cfg.dump()); }

}  // namespace talbot::cli
