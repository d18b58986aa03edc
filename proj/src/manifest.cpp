#include "kellerpath/manifest.hpp"

#include <filesystem>
#include <fstream>

#include "kellerpath/errors.hpp"

namespace ks {

void write_manifest(const RunManifest& m, const std::string& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["params"] = m.params;
  j["outputs"] = m.outputs;
  j["timings"] = m.timings;
  std::ofstream out(dir + "/manifest.json");
  out << j.dump(2) << "\n";
}

std::map<std::string, std::string> config_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverError(errc::bad_config, "cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t lo = line.find_first_not_of(" \t\r");
    if (lo == std::string::npos) continue;
    std::size_t hi = line.find_last_not_of(" \t\r");
    line = line.substr(lo, hi - lo + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos || eq == 0)
      throw SolverError(errc::bad_config,
                        path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const std::size_t b = s.find_first_not_of(" \t");
      const std::size_t e = s.find_last_not_of(" \t");
      if (b == std::string::npos) return std::string();
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw SolverError(errc::bad_config,
                        path + ":" + std::to_string(lineno) + ": empty key");
    out[key] = val;
  }
  return out;
}

}  // namespace ks
