// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lemmagraph/annotate/annotate.hpp"
#include "lemmagraph/auth/auth.hpp"
#include "lemmagraph/ingest/chapter.hpp"
#include "lemmagraph/store/store.hpp"

namespace lemmagraph::testing {

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::filesystem::path data_path(const std::string& name);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

/// Registers a user holding exactly `roles` with the cheapest hash setting.
store::User make_user(store::Store& store, const std::string& name, auth::RoleSet roles);

/// A store with one corpus holding the sample chapter, an admin and an
/// annotator.
struct SeededStore {
  TempDir dir;
  store::Store store;
  store::User admin;
  store::User annotator;
  store::CorpusId corpus;
  store::LineId line;

  SeededStore();
};

}  // namespace lemmagraph::testing
