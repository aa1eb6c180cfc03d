// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include <stdexcept>
#include <stdlib.h>

namespace lemmagraph::testing {

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "lemmagraph-test-XXXXXX").string();
  if (!mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(LEMMAGRAPH_TEST_DATA_DIR) / name;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

store::User make_user(store::Store& store, const std::string& name, auth::RoleSet roles) {
  auto id = auth::register_user(store, name, name + "@example.org", "pw-" + name,
                                auth::HashStrength::Minimal, roles);
  return *store.read([&](const store::StoreView& v) { return v.user(id); });
}

SeededStore::SeededStore() : store(store::Store::open(dir / "store.db")) {
  admin = make_user(store, "admin", {auth::Role::Admin});
  annotator = make_user(store, "annie", {auth::Role::Annotator});
  corpus = store.transact([](store::Transaction& tx) { return tx.insert_corpus("ramayana", ""); });
  auto chapter = ingest::parse_chapter(read_file(data_path("sample_chapter.json")));
  auto summary = ingest::ingest_chapter(store, corpus, "bala", chapter);
  line = store.read([&](const store::StoreView& v) {
    return v.chapter_lines(summary.chapter_id).front().id;
  });
}

}  // namespace lemmagraph::testing
