#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "cyclicity/cli.hpp"

namespace {

int resolve_threads(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("CYCLICITY_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclicity experiments: sweeps, capacity, free and mixed-norm checks"};
  std::string command, configPath, outDir = ".";
  int threads = 0;
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(cyc::cli::commands()));
  app.add_option("--config", configPath, "JSON config file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", outDir, "Output directory");
  app.add_option("--threads", threads, "Worker threads (default: CYCLICITY_THREADS or all cores)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    nlohmann::json config;
    {
      std::ifstream in(configPath);
      config = nlohmann::json::parse(in);
    }
    const cyc::cli::RunResult r = cyc::cli::run(command, config, resolve_threads(threads));
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    std::filesystem::create_directories(outDir);
    const std::filesystem::path dir(outDir);
    write_file(dir / (command + ".json"), cyc::io::dump_canonical(r.document));
    for (const auto& a : r.extra) write_file(dir / a.fileName, a.content);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cyc::cli::exit_code_for(e);
  }
}
