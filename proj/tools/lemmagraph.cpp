// SPDX-License-Identifier: Apache-2.0
// lemmagraph: store setup, corpus import, graph export and the HTTP service.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lemmagraph/api/config.hpp"
#include "lemmagraph/api/http_server.hpp"
#include "lemmagraph/api/service.hpp"
#include "lemmagraph/error.hpp"
#include "lemmagraph/graph/builder.hpp"
#include "lemmagraph/graph/jsonl.hpp"
#include "lemmagraph/ingest/chapter.hpp"

using namespace lemmagraph;

namespace {

api::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void bootstrap_admin(store::Store& store, const api::Config& config) {
  auth::Authenticator auth(store, api::auth_options(config));
  auth.ensure_admin(config.admin.username, config.admin.email, config.admin.password);
}

void import_corpus(store::Store& store, const std::string& corpus_name,
                   const std::vector<std::string>& files) {
  auto corpus = store.transact([&](store::Transaction& tx) {
    if (auto existing = tx.corpus_by_name(corpus_name)) return existing->id;
    return tx.insert_corpus(corpus_name, "");
  });
  for (const auto& file : files) {
    auto chapter = ingest::parse_chapter(read_file(file));
    std::string name = std::filesystem::path(file).stem().string();
    auto summary = ingest::ingest_chapter(store, corpus, name, chapter);
    std::cout << corpus_name << '/' << name << ": " << summary.verses << " verses, " << summary.lines
              << " lines, " << summary.tokens << " tokens\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Annotation store, knowledge graph and query service"};
  std::string config_path;
  bool init = false;
  bool build = false;
  bool serve = false;
  std::vector<std::string> import_args;
  std::string export_path;

  app.add_option("--config", config_path, "Settings file (JSON)")->required()->check(CLI::ExistingFile);
  app.add_flag("--init", init, "Create the store and the bootstrap administrator");
  app.add_option("--import-corpus", import_args, "Corpus name followed by chapter files")
      ->expected(2, CLI::detail::expected_max_vector_size);
  app.add_flag("--build-graph", build, "Build the graph and report its size");
  app.add_option("--export-graph", export_path, "Build the graph and write it as JSONL");
  app.add_flag("--serve", serve, "Run the HTTP service");
  CLI11_PARSE(app, argc, argv);

  api::Config config = api::load_config(config_path);
  auto store = store::Store::open(config.store_path);

  if (init) {
    bootstrap_admin(store, config);
    std::cout << "store ready at " << store.file().string() << '\n';
  }
  if (!import_args.empty()) {
    import_corpus(store, import_args.front(), {import_args.begin() + 1, import_args.end()});
  }
  if (build || !export_path.empty()) {
    auto graph = graph::build_graph(store, config.graph_policy);
    std::cout << "graph: " << graph.node_count() << " nodes, " << graph.edge_count() << " edges\n";
    if (!export_path.empty()) {
      std::ofstream out(export_path, std::ios::binary);
      if (!out) throw Error(ErrorCode::Io, "cannot write " + export_path);
      out << graph::export_jsonl(graph);
      if (!out) throw Error(ErrorCode::Io, "cannot write " + export_path);
    }
  }
  if (serve) {
    bootstrap_admin(store, config);
    api::ServiceOptions options;
    options.auth = api::auth_options(config);
    options.graph_policy = config.graph_policy;
    options.templates = api::load_templates(config);
    api::Service service(store, std::move(options));
    api::HttpServer server(service);
    int port = server.bind(config.host, config.port);
    std::cout << "listening on " << config.host << ':' << port << std::endl;
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    server.listen();
    g_server = nullptr;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "lemmagraph: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
}
