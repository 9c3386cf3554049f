#include "twist_cli/cache.hpp"

#include <fstream>
#include <iostream>

#include "twist/json_io.hpp"

namespace twist::cli {

CoeffCache::CoeffCache(std::string path) : path_(std::move(path)) { load(); }

void CoeffCache::load() {
  std::ifstream in(path_);
  if (!in) {
    std::ofstream(path_) << Json{{"schema_version", schema_version}}.dump() << '\n';
    return;
  }
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      if (header) {
        header = false;
        if (j.value("schema_version", -1) != schema_version) {
          std::cerr << "twist: cache " << path_ << " has a different schema version; starting afresh\n";
          entries_.clear();
          in.close();
          std::ofstream(path_, std::ios::trunc) << Json{{"schema_version", schema_version}}.dump() << '\n';
          return;
        }
        continue;
      }
      const Key key{parse_kernel_kind(j.at("kind").get<std::string>()) == KernelKind::product ? 0 : 1,
                    j.at("K").get<int>(),
                    j.at("ell").get<int>(),
                    j.at("D").get<long>(),
                    j.at("char").get<long>(),
                    j.at("n").get<int>()};
      entries_.insert_or_assign(key, cyclotomic_from_json(j.at("value")));
    } catch (const std::exception& ex) {
      ++skipped_;
      std::cerr << "twist: skipping cache line " << lineno << ": " << ex.what() << '\n';
    }
  }
}

std::size_t CoeffCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::vector<Cyclotomic> CoeffCache::fetch(const KernelSpec& spec, int n_max) {
  const int kind = spec.kind == KernelKind::product ? 0 : 1;
  auto key = [&](int n) { return Key{kind, spec.K, spec.ell, spec.chi.modulus(), spec.chi.label(), n}; };
  {
    std::lock_guard lock(mutex_);
    std::vector<Cyclotomic> out;
    for (int n = 0; n <= n_max; ++n) {
      auto it = entries_.find(key(n));
      if (it == entries_.end()) break;
      out.push_back(it->second);
    }
    if (static_cast<int>(out.size()) == n_max + 1) {
      ++hits_;
      return out;
    }
  }
  auto values = kernel_coeffs(spec, n_max);
  std::lock_guard lock(mutex_);
  std::ofstream file(path_, std::ios::app);
  for (int n = 0; n <= n_max; ++n) {
    const auto& v = values[static_cast<std::size_t>(n)];
    if (!entries_.emplace(key(n), v).second) continue;
    file << Json{{"kind", to_string(spec.kind)}, {"K", spec.K},   {"ell", spec.ell}, {"D", spec.chi.modulus()},
                 {"char", spec.chi.label()},     {"n", n},        {"value", to_json(v)}}
                .dump()
         << '\n';
  }
  return values;
}

CoeffProvider CoeffCache::provider() {
  return [this](const KernelSpec& spec, int n_max) { return fetch(spec, n_max); };
}

}  // namespace twist::cli
