#include <iostream>

#include "CLI11.hpp"
#include "scene.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Riccati holonomy and limit-set experiments driven by JSON scene files"};
  std::string scene;
  bool validate_only = false;
  app.add_option("--scene", scene, "scene file")->required();
  app.add_flag("--validate-only", validate_only, "check the scene against the schema and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return rhol::cli::run_scene_file(scene, validate_only, std::cerr);
}
