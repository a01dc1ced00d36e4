// gen-fractal: exact dyadic point sets from IFS presets or digit patterns.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "projlab/fractal.hpp"

using namespace projlab;

namespace {

std::vector<int> parse_positions(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

void write_out(const DyadicPointSet& s, const std::string& path, bool binary) {
  if (path.empty())
    write_point_set(std::cout, s, false);
  else
    write_point_set_file(path, s, binary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generate exact dyadic fractal point sets"};
  app.require_subcommand(1);

  std::string preset = "four-corner", out_path;
  int depth = 4;
  bool binary = false;
  auto* ifs = app.add_subcommand("ifs", "iterated function system preset");
  ifs->add_option("--preset", preset, "four-corner|sierpinski|square");
  ifs->add_option("--depth", depth, "iteration depth")->required();
  ifs->add_option("--out", out_path, "output file (default stdout)");
  ifs->add_flag("--binary", binary, "binary container instead of text");

  std::string fx, fy;
  int R = 16;
  auto* dig = app.add_subcommand("digits", "digit set: free bit positions");
  dig->add_option("--free-x", fx, "comma-separated positions in 1..R")->required();
  dig->add_option("--free-y", fy, "comma-separated positions in 1..R")->required();
  dig->add_option("--depth", R, "precision R in bits")->required();
  dig->add_option("--out", out_path, "output file (default stdout)");
  dig->add_flag("--binary", binary, "binary container instead of text");

  try {
    app.parse(argc, argv);
    if (ifs->parsed())
      write_out(gen_ifs(preset_maps(preset), depth), out_path, binary);
    else
      write_out(gen_digit_set(parse_positions(fx), parse_positions(fy), R),
                out_path, binary);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
