#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "wrtm/machine_io.hpp"

#ifndef WRTM_CORPUS_DIR
#error "WRTM_CORPUS_DIR must point at tests/corpus"
#endif

namespace corpus {

struct Entry {
  std::string name;
  wrtm::Machine machine;
};

inline std::vector<Entry> load_all() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(WRTM_CORPUS_DIR))
    if (e.path().extension() == ".tm") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<Entry> out;
  for (const auto& f : files) out.push_back({f.stem().string(), wrtm::load_machine(f.string())});
  return out;
}

inline wrtm::Machine load(const std::string& stem) {
  return wrtm::load_machine(std::string(WRTM_CORPUS_DIR) + "/" + stem + ".tm");
}

}  // namespace corpus
